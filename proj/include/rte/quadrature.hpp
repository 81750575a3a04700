#pragma once

#include <array>
#include <vector>

namespace rte {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
/// Nodes come from Newton iteration on P_n, converged to a 1e-15 step.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Rule on the unit interval [0,1]; weights sum to 1.
struct EdgeRule {
    std::vector<double> points;
    std::vector<double> weights;
    int degree = 0;

    int size() const { return static_cast<int>(points.size()); }
};

/// Gauss rule with the fewest points that is exact to `degree`.
EdgeRule edge_rule(int degree);

/// Rule on the reference triangle in barycentric coordinates; weights sum to 1
/// (multiply by the element area).
struct TriangleRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int degree = 0;

    int size() const { return static_cast<int>(points.size()); }
};

/// 6-point degree-4 rule (Dunavant).
const TriangleRule& triangle_rule_degree4();
/// 12-point degree-6 rule (Dunavant).
const TriangleRule& triangle_rule_degree6();
/// Collapsed Gauss-Legendre product rule, positive weights, any degree.
TriangleRule conical_product_rule(int degree);
/// Degree 4 and 6 map to the tabulated rules, anything else to the product rule.
TriangleRule triangle_rule(int degree);

}  // namespace rte
