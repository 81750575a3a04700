#pragma once

#include "rte/angular.hpp"
#include "rte/geometry.hpp"
#include "rte/mesh.hpp"
#include "rte/quadrature.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace rte {

using ScalarField = std::function<double(Point)>;
/// Function of position and direction, e.g. an exact intensity u(x, omega).
using AngularField = std::function<double(Point, const Direction&)>;

/// Linear barycentric basis on one triangle. phi_j = lambda_j, so the local
/// coefficients are nodal values at the corners.
struct ElementBasis {
    std::array<Point, 3> corners;
    std::array<Vec2, 3> grads;    // constant gradients of lambda_j
    std::array<Vec2, 3> normals;  // outward unit normal of local edge k (corner k -> k+1)
    std::array<double, 3> edge_lengths{};
    double area = 0.0;
    double diameter = 0.0;

    /// Throws InvalidMesh when the signed area is not positive.
    static ElementBasis from_corners(const std::array<Point, 3>& corners);

    Point map(const std::array<double, 3>& bary) const
    {
        return bary[0] * corners[0] + bary[1] * corners[1] + bary[2] * corners[2];
    }
    /// Point at parameter s in [0,1] along local edge k.
    Point edge_point(int k, double s) const;
};

std::vector<ElementBasis> element_bases(const TriangleMesh& mesh);

/// Quadrature used when assembling element systems.
const TriangleRule& assembly_triangle_rule();
const EdgeRule& assembly_edge_rule();
inline constexpr int kAssemblyEdgePoints = 3;

/// Known data on one inflow edge: |omega.n| and the upwind trace sampled at
/// the assembly edge points, ordered from corner k to corner k+1.
struct InflowFace {
    int local_edge = 0;
    double flux = 0.0;
    std::array<double, kAssemblyEdgePoints> upwind{};
};

struct LocalSystem {
    std::array<std::array<double, 3>, 3> A{};
    std::array<double, 3> b{};
};

/// Element system of the streamline-diffusion DG scheme for one direction:
///   A_ij = (omega.grad phi_j + sigma_t phi_j, phi_i + delta omega.grad phi_i)_K
///          + sum_inflow <phi_j, phi_i |omega.n|>_e
///   b_i  = (s, phi_i + delta omega.grad phi_i)_K + sum_inflow <u_upwind, phi_i |omega.n|>_e
/// sigma_t and the source are given at the assembly triangle rule points.
/// delta = 0 gives the plain upwind DG scheme.
LocalSystem assemble_local(const ElementBasis& K, Vec2 omega, double delta, std::span<const double> sigma_t_qp,
                           std::span<const double> source_qp, std::span<const InflowFace> inflow);

/// Convenience overload sampling point functions. `inflow_edges` lists local
/// edge indices; `upwind_trace` is evaluated on those edges.
LocalSystem assemble_local(const ElementBasis& K, Vec2 omega, double delta, const ScalarField& sigma_t,
                           std::span<const int> inflow_edges, const ScalarField& upwind_trace,
                           const ScalarField& source);

/// 3x3 Gaussian elimination with partial pivoting. Throws StabilityError if a
/// pivot falls below 1e-14 ||A||_inf; element/direction only label the error.
std::array<double, 3> solve_local(const LocalSystem& sys, int element = -1, int direction = -1);

/// Per-direction, per-element P1 coefficients.
class DGSolution {
public:
    DGSolution() = default;
    DGSolution(int n_dirs, int n_elems)
        : n_dirs_(n_dirs), n_elems_(n_elems),
          data_(static_cast<std::size_t>(n_dirs) * static_cast<std::size_t>(n_elems))
    {
    }

    int num_directions() const { return n_dirs_; }
    int num_elements() const { return n_elems_; }

    std::array<double, 3>& coeffs(int l, int K) { return data_[index(l, K)]; }
    const std::array<double, 3>& coeffs(int l, int K) const { return data_[index(l, K)]; }

    std::span<std::array<double, 3>> slice(int l)
    {
        return {data_.data() + index(l, 0), static_cast<std::size_t>(n_elems_)};
    }
    std::span<const std::array<double, 3>> slice(int l) const
    {
        return {data_.data() + index(l, 0), static_cast<std::size_t>(n_elems_)};
    }
    std::span<const std::array<double, 3>> data() const { return data_; }
    std::span<std::array<double, 3>> data() { return data_; }

private:
    std::size_t index(int l, int K) const
    {
        return static_cast<std::size_t>(l) * static_cast<std::size_t>(n_elems_) + static_cast<std::size_t>(K);
    }

    int n_dirs_ = 0;
    int n_elems_ = 0;
    std::vector<std::array<double, 3>> data_;
};

/// sum_j coeffs[l][K][j] phi_j(bary). Throws InvalidArgument for bad indices
/// or a point outside the reference simplex.
double eval_field(const DGSolution& sol, int l, int K, const std::array<double, 3>& bary);

/// Elementwise L2 projection of u(., omega_l) onto P1 for every direction.
DGSolution project_exact(const AngularField& u, const TriangleMesh& mesh, const AngularQuadrature& quad);

/// Exact P1 mass matrix on a triangle of the given area.
std::array<std::array<double, 3>, 3> mass_matrix(double area);

}  // namespace rte
