#pragma once

#include "rte/geometry.hpp"

#include <array>
#include <vector>

namespace rte {

using Direction = std::array<double, 3>;

/// Direction set and positive weights on the unit circle (dim 2) or sphere (dim 3).
class AngularQuadrature {
public:
    AngularQuadrature(int dim, std::vector<Direction> directions, std::vector<double> weights,
                      std::vector<double> angles = {});

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(weights_.size()); }
    const std::vector<Direction>& directions() const { return directions_; }
    const std::vector<double>& weights() const { return weights_; }
    /// Polar angles theta_l, 2D only.
    const std::vector<double>& angles() const { return angles_; }

    double weight(int l) const { return weights_[static_cast<std::size_t>(l)]; }
    const Direction& direction(int l) const { return directions_[static_cast<std::size_t>(l)]; }
    /// In-plane part of direction l (2D solver view).
    Vec2 direction2(int l) const { return {direction(l)[0], direction(l)[1]}; }
    double weight_sum() const;

private:
    int dim_;
    std::vector<Direction> directions_;
    std::vector<double> weights_;
    std::vector<double> angles_;
};

/// Periodic trapezoid rule: theta_i = i * 2pi/n, weight 2pi/n.
/// The endpoints theta = 0 and 2pi are the same direction and are merged.
AngularQuadrature trapezoid_circle(int n_dirs);

/// Product rule on the sphere: Gauss-Legendre in cos(theta) (m nodes) times
/// 2m equispaced azimuths; 2m^2 directions.
AngularQuadrature gauss_legendre_sphere(int m);

class PhaseFunction {
public:
    enum class Kind { HenyeyGreenstein, LinearAnisotropic };

    /// Throws InvalidArgument unless |eta| < 1 and dim is 2 or 3.
    static PhaseFunction henyey_greenstein(double eta, int dim = 2);
    /// g(t) = (1 + t/2) / (2 pi), circle only.
    static PhaseFunction linear_anisotropic();

    Kind kind() const { return kind_; }
    double eta() const { return eta_; }
    int dim() const { return dim_; }

    /// t is clamped into [-1, 1].
    double operator()(double t) const;

    /// Integral of g(cos phi) cos phi over the circle (2D only): the factor
    /// by which the scattering operator damps a cos(theta) angular mode.
    double first_moment() const;

private:
    PhaseFunction(Kind kind, double eta, int dim) : kind_(kind), eta_(eta), dim_(dim) {}

    Kind kind_;
    double eta_;
    int dim_;
};

/// G[l][i] = w_i g(omega_l . omega_i), dense row-major.
class ScatterMatrix {
public:
    ScatterMatrix(const PhaseFunction& phase, const AngularQuadrature& quad);

    int size() const { return n_; }
    double operator()(int l, int i) const
    {
        return entries_[static_cast<std::size_t>(l) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)];
    }
    const std::vector<double>& entries() const { return entries_; }
    double row_sum(int l) const;

private:
    int n_;
    std::vector<double> entries_;
};

/// max_l sum_i G[l][i].
double m_bound(const ScatterMatrix& g);

}  // namespace rte
