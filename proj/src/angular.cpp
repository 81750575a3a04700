#include "rte/angular.hpp"

#include "rte/error.hpp"
#include "rte/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace rte {

AngularQuadrature::AngularQuadrature(int dim, std::vector<Direction> directions, std::vector<double> weights,
                                     std::vector<double> angles)
    : dim_(dim), directions_(std::move(directions)), weights_(std::move(weights)), angles_(std::move(angles))
{
    if (dim_ != 2 && dim_ != 3) {
        throw InvalidArgument("angular quadrature dimension must be 2 or 3");
    }
    if (directions_.size() != weights_.size() || directions_.empty()) {
        throw InvalidArgument("angular quadrature needs one weight per direction");
    }
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        if (!(weights_[l] > 0.0)) {
            throw InvalidArgument("angular weight " + std::to_string(l) + " is not positive");
        }
        const auto& d = directions_[l];
        const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (std::abs(len - 1.0) > 1e-12 || (dim_ == 2 && d[2] != 0.0)) {
            throw InvalidArgument("angular direction " + std::to_string(l) + " is not a unit vector");
        }
    }
}

double AngularQuadrature::weight_sum() const
{
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

AngularQuadrature trapezoid_circle(int n_dirs)
{
    if (n_dirs < 2) {
        throw InvalidArgument("trapezoid_circle needs at least 2 directions, got " + std::to_string(n_dirs));
    }
    const double h = 2.0 * std::numbers::pi / n_dirs;
    std::vector<Direction> dirs;
    std::vector<double> weights(static_cast<std::size_t>(n_dirs), h);
    std::vector<double> angles;
    for (int i = 0; i < n_dirs; ++i) {
        const double theta = i * h;
        angles.push_back(theta);
        dirs.push_back({std::cos(theta), std::sin(theta), 0.0});
    }
    return AngularQuadrature(2, std::move(dirs), std::move(weights), std::move(angles));
}

AngularQuadrature gauss_legendre_sphere(int m)
{
    if (m < 1) {
        throw InvalidArgument("gauss_legendre_sphere needs m >= 1, got " + std::to_string(m));
    }
    const auto gl = gauss_legendre(m);
    const double dpsi = std::numbers::pi / m;
    std::vector<Direction> dirs;
    std::vector<double> weights;
    for (int i = 0; i < m; ++i) {
        const double mu = gl.nodes[static_cast<std::size_t>(i)];
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < 2 * m; ++j) {
            const double psi = j * dpsi;
            dirs.push_back({s * std::cos(psi), s * std::sin(psi), mu});
            weights.push_back(dpsi * gl.weights[static_cast<std::size_t>(i)]);
        }
    }
    return AngularQuadrature(3, std::move(dirs), std::move(weights));
}

PhaseFunction PhaseFunction::henyey_greenstein(double eta, int dim)
{
    if (!(std::abs(eta) < 1.0)) {
        throw InvalidArgument("Henyey-Greenstein anisotropy must satisfy |eta| < 1");
    }
    if (dim != 2 && dim != 3) {
        throw InvalidArgument("phase function dimension must be 2 or 3");
    }
    return PhaseFunction(Kind::HenyeyGreenstein, eta, dim);
}

PhaseFunction PhaseFunction::linear_anisotropic()
{
    return PhaseFunction(Kind::LinearAnisotropic, 0.0, 2);
}

double PhaseFunction::operator()(double t) const
{
    t = std::clamp(t, -1.0, 1.0);
    if (kind_ == Kind::LinearAnisotropic) {
        return (1.0 + 0.5 * t) / (2.0 * std::numbers::pi);
    }
    const double a = 1.0 + eta_ * eta_ - 2.0 * eta_ * t;
    if (dim_ == 2) {
        return (1.0 - eta_ * eta_) / (2.0 * std::numbers::pi * a);
    }
    return (1.0 - eta_ * eta_) / (4.0 * std::numbers::pi * a * std::sqrt(a));
}

double PhaseFunction::first_moment() const
{
    if (dim_ != 2) {
        throw InvalidArgument("first_moment is defined for circle phase functions only");
    }
    // HG on the circle is the Poisson kernel: its k-th Fourier coefficient is eta^k
    return kind_ == Kind::LinearAnisotropic ? 0.25 : eta_;
}

ScatterMatrix::ScatterMatrix(const PhaseFunction& phase, const AngularQuadrature& quad) : n_(quad.size())
{
    if (phase.dim() != quad.dim()) {
        throw InvalidArgument("phase function and angular quadrature dimensions differ");
    }
    entries_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    for (int l = 0; l < n_; ++l) {
        const auto& a = quad.direction(l);
        for (int i = 0; i < n_; ++i) {
            const auto& b = quad.direction(i);
            const double t = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            entries_[static_cast<std::size_t>(l) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] =
                quad.weight(i) * phase(t);
        }
    }
}

double ScatterMatrix::row_sum(int l) const
{
    const auto begin = entries_.begin() + static_cast<std::ptrdiff_t>(l) * n_;
    return std::accumulate(begin, begin + n_, 0.0);
}

double m_bound(const ScatterMatrix& g)
{
    double m = 0.0;
    for (int l = 0; l < g.size(); ++l) {
        m = std::max(m, g.row_sum(l));
    }
    return m;
}

}  // namespace rte
