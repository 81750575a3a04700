#pragma once

#include "rte/angular.hpp"
#include "rte/dg.hpp"
#include "rte/mesh.hpp"
#include "rte/solver.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace rte {

using AngularGradient = std::function<Vec2(Point, const Direction&)>;

/// Overrides for the manufactured benchmarks; unset fields keep the defaults
/// (sigma_t = 10, sigma_s = 0.1, case-specific direction count and phase).
struct CaseOptions {
    double sigma_t = 10.0;
    double sigma_s = 0.1;
    std::optional<int> n_dirs;
    std::optional<PhaseFunction> phase;
};

/// Manufactured benchmark on the unit square.
///   cases 1-3: u = sin(pi x) sin(pi y), Henyey-Greenstein eta = 0.2, 0.5, 0.9,
///              20/40/60 directions;
///   case 4:    u = exp(-a x - b y)(1 + c cos theta), g = (1 + t/2)/(2 pi),
///              a = b = sigma_a/3, c = sigma_a/(sigma_a + 6 sigma_s), 20 directions.
/// The source is built with the continuous scattering operator.
struct ManufacturedCase {
    int id = 0;
    PhaseFunction phase = PhaseFunction::henyey_greenstein(0.0);
    double sigma_t = 10.0;
    double sigma_s = 0.1;
    int n_dirs = 0;
    double h_theta = 0.0;
    AngularField exact_u;
    AngularGradient exact_grad;
    AngularField exact_f;
    /// Continuous S u, used to build exact_f.
    AngularField exact_scattered;

    AngularQuadrature quadrature() const;
    /// Transport problem with inflow data equal to the exact trace.
    TransportProblem problem() const;
};

/// Throws InvalidArgument for id outside 1..4 or sigma_t - sigma_s <= 0.
ManufacturedCase make_case(int id, const CaseOptions& options = {});

struct ErrorReport {
    double e1 = 0.0;  // weighted L2
    double e2 = 0.0;  // outflow boundary trace
    double e3 = 0.0;  // h_K-weighted streamline derivative
    double e4 = 0.0;  // inflow jumps
    double eh = 0.0;  // sqrt(e1^2 + e2^2 + e3^2 + e4^2)
    double h = 0.0;
    int level = 0;
    int iterations = 0;
    int n_elems = 0;
    int n_dirs = 0;
    /// Unweighted ||u(., omega_l) - u_h^l||^2 per direction.
    std::vector<double> e1_sq_by_direction;
};

/// Error between an exact field and a DG solution in the four reporting norms.
/// Element integrals use the degree-6 rule, edge integrals 4-point Gauss.
ErrorReport error_norms(const DGSolution& sol, const AngularField& exact_u, const AngularGradient& exact_grad,
                        const TriangleMesh& mesh, const AngularQuadrature& quad);
ErrorReport error_norms(const DGSolution& sol, const ManufacturedCase& mcase, const TriangleMesh& mesh,
                        const AngularQuadrature& quad);

inline constexpr int kNumNorms = 5;  // e1, e2, e3, e4, eh
using NormRates = std::array<double, kNumNorms>;

/// Below this an error is treated as exact and rates are NaN.
inline constexpr double kRateFloor = 1e-10;

/// log2(coarse / fine), NaN when either error is below kRateFloor.
double observed_rate(double coarse, double fine);

struct ConvergenceTable {
    std::vector<ErrorReport> rows;
    std::vector<NormRates> rates;  // rates[i] between rows i and i+1

    /// Rates of the last level pair (all NaN with fewer than two rows).
    NormRates finest_rates() const;
};

std::array<double, kNumNorms> norm_values(const ErrorReport& r);
std::vector<NormRates> compute_rates(const std::vector<ErrorReport>& rows);

/// Solves on `initial` and its regular refinements (levels meshes in total)
/// with delta = c_bar * h_l per level. Solver errors are rethrown with the level.
ConvergenceTable convergence_study(const ManufacturedCase& mcase, int levels, const SolverConfig& config,
                                   const TriangleMesh& initial);
ConvergenceTable convergence_study(const ManufacturedCase& mcase, int levels, const SolverConfig& config, int n0 = 10);

struct MethodComparison {
    ConvergenceTable dodsd;
    ConvergenceTable dodg;
    std::vector<double> eh_ratio;  // dodsd eh / dodg eh per level
};

/// Same meshes and quadrature for both schemes; `config` supplies c_bar and
/// the iteration controls, its method field is ignored.
MethodComparison compare_methods(const ManufacturedCase& mcase, int levels, const SolverConfig& config,
                                 const TriangleMesh& initial);
MethodComparison compare_methods(const ManufacturedCase& mcase, int levels, const SolverConfig& config = {},
                                 int n0 = 10);

}  // namespace rte
