#pragma once

#include "rte/dg.hpp"
#include "rte/mesh.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace rte {

/// Marks a local edge that is not an inflow edge in SweepSchedule::upwind.
inline constexpr int kNotInflow = -2;

/// Layered element ordering for one direction. Layer 0 holds the elements
/// whose inflow edges all lie on the domain boundary (or that have none);
/// layer s holds those whose upwind neighbours all sit in layers < s.
struct SweepSchedule {
    Vec2 omega;
    std::vector<std::vector<int>> layers;  // ids ascending inside each layer
    std::vector<int> layer_of;
    /// Per (element, local edge): upwind element, kBoundary for inflow on the
    /// domain boundary, kNotInflow otherwise.
    std::vector<std::array<int, 3>> upwind;
    /// |omega . n| per (element, local edge); zero on non-inflow edges.
    std::vector<std::array<double, 3>> flux;

    int num_layers() const { return static_cast<int>(layers.size()); }
};

/// Kahn-style peeling of the upwind dependency graph. Tangential edges
/// (|omega.n| <= eps_n) carry no dependency. Throws CycleError if peeling stalls.
SweepSchedule build_schedule(const TriangleMesh& mesh, Vec2 omega, double eps_n = kTangentialTolerance);

/// Per-element data for one direction's transport solve. sigma_t and source
/// are sampled at the assembly triangle rule points, element-major.
struct SweepData {
    std::span<const ElementBasis> bases;
    std::span<const double> delta;       // per element
    std::span<const double> sigma_t_qp;  // n_elems * n_qp
    std::span<const double> source_qp;   // n_elems * n_qp
    const ScalarField* inflow = nullptr;  // boundary data on inflow edges; nullptr means zero
};

/// Walks the layers in order, solving each element with upwind traces from
/// already-solved neighbours (or boundary data). Writes one coefficient
/// triple per element into `out`. Stability errors gain layer context.
void sweep_direction(const TriangleMesh& mesh, const SweepSchedule& schedule, const SweepData& data,
                     std::span<std::array<double, 3>> out, int direction = -1);

/// Function-sampling convenience overload with a single global delta.
void sweep_direction(const TriangleMesh& mesh, const SweepSchedule& schedule, double delta,
                     const ScalarField& sigma_t, const ScalarField& source, const ScalarField& inflow,
                     std::span<std::array<double, 3>> out);

/// One line per layer, element ids separated by spaces.
void write_schedule(const SweepSchedule& schedule, std::ostream& os);

}  // namespace rte
