#pragma once

#include "rte/angular.hpp"
#include "rte/dg.hpp"
#include "rte/mesh.hpp"

#include <vector>

namespace rte {

/// omega.grad u + sigma_t u = sigma_s S u + f in the domain, u = inflow on the
/// inflow boundary. An empty `inflow` means homogeneous inflow.
struct TransportProblem {
    ScalarField sigma_t;
    ScalarField sigma_s;
    PhaseFunction phase;
    AngularField source;
    AngularField inflow;
    AngularQuadrature quad;
};

enum class Method { DODSD, DODG };

struct SolverConfig {
    Method method = Method::DODSD;
    double c_bar = 1.0;       // delta = c_bar * h
    double tol = 1e-10;       // relative weighted L2 update
    int max_iter = 1000;
    bool local_delta = false; // delta_K = c_bar * h_K instead of the global h
    int threads = 0;          // 0: RTE_THREADS or hardware concurrency
    /// Accepted for interface stability: reductions are always summed in
    /// direction order, so results never depend on the thread count.
    bool deterministic = false;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
    double delta_used = 0.0;  // global delta (max over elements when local)
    double m = 0.0;           // max scattering row sum
    double c0_prime = 0.0;    // min over sample points of sigma_t - m sigma_s
};

struct SolveResult {
    DGSolution solution;
    SolveReport report;
};

/// Throws InvalidArgument for a config outside its documented ranges.
void validate(const SolverConfig& config);

/// Streamline-diffusion parameter for an element of diameter h_K on a mesh of size h.
double stabilization_delta(const SolverConfig& config, double mesh_h, double element_h);

/// Source iteration over all directions, starting from zero. Each pass sweeps
/// every direction with the scattering source lagged one iterate; stops when
/// ||u^j - u^{j-1}||_w <= tol ||u^j||_w with ||v||_w^2 = sum_l w_l ||v^l||^2.
/// When sigma_s vanishes at every sample point the directions decouple and a
/// single pass is exact (history records a zero update).
/// Throws NonConvergence after max_iter passes, AssumptionViolation when
/// sigma_s < 0 or sigma_t - sigma_s <= 0 at a sample point.
SolveResult solve(const TransportProblem& problem, const TriangleMesh& mesh, const SolverConfig& config);

/// sum_i G[l][i] c^i on every element: the angular coupling applied to the
/// coefficients of `sol`, one result per direction.
DGSolution scatter_coefficients(const DGSolution& sol, const ScatterMatrix& g);

/// x -> sigma_s(x) sum_i G[l][i] u^i(x) for a fixed direction l.
class ScatteringSource {
public:
    ScatteringSource(const DGSolution& sol, const ScatterMatrix& g, ScalarField sigma_s, int l,
                     const TriangleMesh& mesh);

    /// Value at a point given by element and barycentric coordinates.
    double at(int K, const std::array<double, 3>& bary) const;
    /// Value at a physical point; locates a containing element by search.
    /// Throws InvalidArgument when x lies outside the mesh.
    double operator()(Point x) const;

private:
    const TriangleMesh* mesh_;
    ScalarField sigma_s_;
    std::vector<std::array<double, 3>> scattered_;
};

ScatteringSource scattering_source(const DGSolution& sol, const ScatterMatrix& g, const ScalarField& sigma_s, int l,
                                   const TriangleMesh& mesh);

/// min over assembly sample points of sigma_t - m sigma_s.
double coercivity_constant(const TransportProblem& problem, const TriangleMesh& mesh);

/// Global bilinear form of the scheme with zero upwind trace on the inflow
/// boundary: volume, upwind jump and scattering terms, weighted by w_l.
double apply_ah(const DGSolution& u, const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh,
                double delta);

/// Linear form: sum_l w_l [ sum_K (f_l, v + delta omega.grad v)_K
///                          + <inflow_l, v_+ |omega.n|> on the inflow boundary ].
double apply_load(const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh, double delta);

/// The four squared contributions of the stability norm.
struct TripleNormTerms {
    double l2 = 0.0;        // c0' sum w_l ||v||^2
    double outflow = 0.0;   // boundary outflow trace term
    double streamline = 0.0;// delta sum w_l ||omega.grad v||^2
    double jump = 0.0;      // inflow jumps, [v] = v_+ on the boundary

    double squared() const { return l2 + outflow + streamline + jump; }
};

/// Throws AssumptionViolation if c0_prime <= 0.
TripleNormTerms triple_norm_terms(const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh,
                                  double delta, double c0_prime);
double triple_norm_stability(const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh,
                             double delta, double c0_prime);

}  // namespace rte
