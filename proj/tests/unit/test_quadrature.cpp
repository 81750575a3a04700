#include "rte/error.hpp"
#include "rte/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace rte;

namespace {

double factorial(int n)
{
    return std::tgamma(n + 1.0);
}

// Integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1).
double monomial_exact(int a, int b)
{
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}

double monomial_rule(const TriangleRule& r, int a, int b)
{
    double s = 0.0;
    for (int q = 0; q < r.size(); ++q) {
        const auto& p = r.points[static_cast<std::size_t>(q)];
        s += r.weights[static_cast<std::size_t>(q)] * std::pow(p[1], a) * std::pow(p[2], b);
    }
    return 0.5 * s;
}

void expect_exact_to(const TriangleRule& r, int degree)
{
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 1.0, 1e-14);
    for (double w : r.weights) {
        EXPECT_GT(w, 0.0);
    }
    for (const auto& p : r.points) {
        EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-14);
        for (double c : p) {
            EXPECT_GE(c, -1e-15);
        }
    }
    for (int a = 0; a <= degree; ++a) {
        for (int b = 0; a + b <= degree; ++b) {
            EXPECT_NEAR(monomial_rule(r, a, b), monomial_exact(a, b), 1e-15) << "x^" << a << " y^" << b;
        }
    }
}

}  // namespace

TEST(GaussLegendre, ExactOnMonomials)
{
    for (int n = 1; n <= 8; ++n) {
        const auto gl = gauss_legendre(n);
        ASSERT_EQ(static_cast<int>(gl.nodes.size()), n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                s += gl.weights[static_cast<std::size_t>(i)] * std::pow(gl.nodes[static_cast<std::size_t>(i)], k);
            }
            const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
            EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
        }
        for (int i = 1; i < n; ++i) {
            EXPECT_LT(gl.nodes[static_cast<std::size_t>(i - 1)], gl.nodes[static_cast<std::size_t>(i)]);
        }
    }
    EXPECT_THROW(gauss_legendre(0), InvalidArgument);
}

TEST(EdgeRule, DegreeAndUnitInterval)
{
    for (int degree : {1, 3, 5, 7}) {
        const auto r = edge_rule(degree);
        EXPECT_EQ(r.size(), degree / 2 + 1);
        for (int k = 0; k <= degree; ++k) {
            double s = 0.0;
            for (int q = 0; q < r.size(); ++q) {
                s += r.weights[static_cast<std::size_t>(q)] * std::pow(r.points[static_cast<std::size_t>(q)], k);
            }
            EXPECT_NEAR(s, 1.0 / (k + 1), 1e-15);
        }
    }
    EXPECT_EQ(edge_rule(7).size(), 4);
}

TEST(TriangleRule, TabulatedRulesAreExact)
{
    expect_exact_to(triangle_rule_degree4(), 4);
    EXPECT_EQ(triangle_rule_degree4().size(), 6);
    expect_exact_to(triangle_rule_degree6(), 6);
    EXPECT_EQ(triangle_rule_degree6().size(), 12);
}

TEST(TriangleRule, ProductRuleAnyDegree)
{
    for (int degree = 1; degree <= 12; ++degree) {
        expect_exact_to(conical_product_rule(degree), degree);
    }
    EXPECT_EQ(triangle_rule(4).size(), 6);
    EXPECT_EQ(triangle_rule(7).degree, 7);
}

TEST(TriangleRule, TabulatedAgreesWithProductRuleOnSmoothData)
{
    // not polynomial: both rules carry an error, but of matching size
    const auto f = [](const std::array<double, 3>& p) { return std::exp(p[1] - 2.0 * p[2]); };
    const auto apply = [&](const TriangleRule& r) {
        double s = 0.0;
        for (int q = 0; q < r.size(); ++q) {
            s += r.weights[static_cast<std::size_t>(q)] * f(r.points[static_cast<std::size_t>(q)]);
        }
        return s;
    };
    const double ref = apply(conical_product_rule(20));
    EXPECT_NEAR(apply(triangle_rule_degree4()), ref, 1e-3);
    EXPECT_NEAR(apply(triangle_rule_degree6()), ref, 1e-5);
}
