#include "rte/quadrature.hpp"

#include "rte/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rte {

GaussLegendre gauss_legendre(int n)
{
    if (n < 1) {
        throw InvalidArgument("gauss_legendre: need n >= 1, got " + std::to_string(n));
    }
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double step = pn / dp;
            x -= step;
            if (std::abs(step) < 1e-15) {
                break;
            }
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double pn = n == 1 ? x : p1;
        const double pnm1 = n == 1 ? 1.0 : p0;
        dp = n * (x * pn - pnm1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        gl.nodes[lo] = -x;
        gl.nodes[hi] = x;
        gl.weights[lo] = w;
        gl.weights[hi] = w;
    }
    if (n % 2 == 1) {
        gl.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return gl;
}

EdgeRule edge_rule(int degree)
{
    if (degree < 0) {
        throw InvalidArgument("edge_rule: negative degree");
    }
    const int n = degree / 2 + 1;
    const auto gl = gauss_legendre(n);
    EdgeRule rule;
    rule.degree = 2 * n - 1;
    for (int i = 0; i < n; ++i) {
        rule.points.push_back(0.5 * (gl.nodes[static_cast<std::size_t>(i)] + 1.0));
        rule.weights.push_back(0.5 * gl.weights[static_cast<std::size_t>(i)]);
    }
    return rule;
}

namespace {

void add_orbit3(TriangleRule& r, double a, double w)
{
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({a, a, b});
    r.points.push_back({a, b, a});
    r.points.push_back({b, a, a});
    for (int i = 0; i < 3; ++i) {
        r.weights.push_back(w);
    }
}

void add_orbit6(TriangleRule& r, double a, double b, double w)
{
    const double c = 1.0 - a - b;
    r.points.push_back({a, b, c});
    r.points.push_back({a, c, b});
    r.points.push_back({b, a, c});
    r.points.push_back({b, c, a});
    r.points.push_back({c, a, b});
    r.points.push_back({c, b, a});
    for (int i = 0; i < 6; ++i) {
        r.weights.push_back(w);
    }
}

TriangleRule make_degree4()
{
    TriangleRule r;
    r.degree = 4;
    add_orbit3(r, 0.445948490915965, 0.223381589678011);
    add_orbit3(r, 0.091576213509771, 0.109951743655322);
    return r;
}

TriangleRule make_degree6()
{
    TriangleRule r;
    r.degree = 6;
    add_orbit3(r, 0.249286745170910, 0.116786275726379);
    add_orbit3(r, 0.063089014491502, 0.050844906370207);
    add_orbit6(r, 0.053145049844817, 0.310352451033784, 0.082851075618374);
    return r;
}

}  // namespace

const TriangleRule& triangle_rule_degree4()
{
    static const TriangleRule rule = make_degree4();
    return rule;
}

const TriangleRule& triangle_rule_degree6()
{
    static const TriangleRule rule = make_degree6();
    return rule;
}

TriangleRule conical_product_rule(int degree)
{
    if (degree < 0) {
        throw InvalidArgument("conical_product_rule: negative degree");
    }
    // the collapse Jacobian adds one degree in the first coordinate
    const int n = (degree + 3) / 2;
    const auto gl = gauss_legendre(n);
    TriangleRule r;
    r.degree = degree;
    for (int i = 0; i < n; ++i) {
        const double s = 0.5 * (gl.nodes[static_cast<std::size_t>(i)] + 1.0);
        const double ws = 0.5 * gl.weights[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(j)] + 1.0);
            const double wt = 0.5 * gl.weights[static_cast<std::size_t>(j)];
            const double l1 = s;
            const double l2 = t * (1.0 - s);
            r.points.push_back({1.0 - l1 - l2, l1, l2});
            // reference area is 1/2, weights normalised to sum 1
            r.weights.push_back(2.0 * ws * wt * (1.0 - s));
        }
    }
    return r;
}

TriangleRule triangle_rule(int degree)
{
    if (degree <= 4) {
        return triangle_rule_degree4();
    }
    if (degree <= 6) {
        return triangle_rule_degree6();
    }
    return conical_product_rule(degree);
}

}  // namespace rte
