#pragma once

// Test-side reference computations. Nothing here calls into the library's
// quadrature or assembly code.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Adaptive Simpson on [a, b].
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13)
{
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Integral over a triangle by splitting into 4^depth subtriangles and using the
// centroid-free 3-point edge-midpoint rule (degree 2) on each.
inline double integrate_triangle(const std::function<double(double, double)>& f, std::array<double, 2> a,
                                 std::array<double, 2> b, std::array<double, 2> c, int depth)
{
    if (depth == 0) {
        const double area = 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
        const auto mid = [](std::array<double, 2> p, std::array<double, 2> q) {
            return std::array<double, 2>{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
        };
        const auto ab = mid(a, b);
        const auto bc = mid(b, c);
        const auto ca = mid(c, a);
        return area / 3.0 * (f(ab[0], ab[1]) + f(bc[0], bc[1]) + f(ca[0], ca[1]));
    }
    const auto mid = [](std::array<double, 2> p, std::array<double, 2> q) {
        return std::array<double, 2>{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
    };
    const auto ab = mid(a, b);
    const auto bc = mid(b, c);
    const auto ca = mid(c, a);
    return integrate_triangle(f, a, ab, ca, depth - 1) + integrate_triangle(f, ab, b, bc, depth - 1) +
           integrate_triangle(f, ca, bc, c, depth - 1) + integrate_triangle(f, ab, bc, ca, depth - 1);
}

inline double hg2d(double eta, double t)
{
    return (1.0 - eta * eta) / (2.0 * pi * (1.0 + eta * eta - 2.0 * eta * t));
}

// Manufactured intensities for the four benchmarks, written out by hand
// (sigma_t = 10, sigma_s = 0.1).
inline double case_u(int id, double x, double y, double th)
{
    if (id <= 3) {
        return std::sin(pi * x) * std::sin(pi * y);
    }
    const double a = 9.9 / 3.0;
    const double c = 9.9 / (9.9 + 0.6);
    return std::exp(-a * x - a * y) * (1.0 + c * std::cos(th));
}

inline std::array<double, 2> case_grad(int id, double x, double y, double th)
{
    if (id <= 3) {
        return {pi * std::cos(pi * x) * std::sin(pi * y), pi * std::sin(pi * x) * std::cos(pi * y)};
    }
    const double a = 9.9 / 3.0;
    const double u = case_u(id, x, y, th);
    return {-a * u, -a * u};
}

inline double case_phase(int id, double t)
{
    static constexpr std::array<double, 3> eta{0.2, 0.5, 0.9};
    return id <= 3 ? hg2d(eta[static_cast<std::size_t>(id - 1)], t) : (1.0 + 0.5 * t) / (2.0 * pi);
}

// S u by an n-point periodic rule in the incoming angle.
inline double case_scattered(int id, double x, double y, double th, int n)
{
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double thi = 2.0 * pi * i / n;
        s += 2.0 * pi / n * case_phase(id, std::cos(th - thi)) * case_u(id, x, y, thi);
    }
    return s;
}

// Residual of the transport equation for the hand-coded intensity.
inline double case_residual(int id, double x, double y, double th, double f)
{
    const auto g = case_grad(id, x, y, th);
    return std::cos(th) * g[0] + std::sin(th) * g[1] + 10.0 * case_u(id, x, y, th) -
           0.1 * case_scattered(id, x, y, th, 4096) - f;
}

inline std::mt19937_64 rng(unsigned seed = 20240611u)
{
    return std::mt19937_64(seed);
}

}  // namespace oracle
