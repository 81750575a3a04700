#include "rte/sweep.hpp"

#include "rte/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <string>

namespace rte {

SweepSchedule build_schedule(const TriangleMesh& mesh, Vec2 omega, double eps_n)
{
    if (std::abs(norm(omega) - 1.0) > 1e-12) {
        throw InvalidArgument("build_schedule: direction is not a unit vector");
    }
    const int n = mesh.num_triangles();
    SweepSchedule s;
    s.omega = omega;
    s.upwind.assign(static_cast<std::size_t>(n), {kNotInflow, kNotInflow, kNotInflow});
    s.flux.assign(static_cast<std::size_t>(n), {0.0, 0.0, 0.0});
    s.layer_of.assign(static_cast<std::size_t>(n), -1);

    std::vector<int> pending(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> downwind(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        for (int k = 0; k < 3; ++k) {
            const double wn = dot(omega, mesh.outward_normal(t, k));
            if (wn < -eps_n) {
                const int nb = mesh.face(t, k).neighbor;
                s.upwind[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = nb;
                s.flux[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = -wn;
                if (nb != kBoundary) {
                    ++pending[static_cast<std::size_t>(t)];
                    downwind[static_cast<std::size_t>(nb)].push_back(t);
                }
            }
        }
    }

    std::vector<int> front;
    for (int t = 0; t < n; ++t) {
        if (pending[static_cast<std::size_t>(t)] == 0) {
            front.push_back(t);
        }
    }
    int placed = 0;
    while (!front.empty()) {
        const int layer = s.num_layers();
        std::vector<int> next;
        for (int t : front) {
            s.layer_of[static_cast<std::size_t>(t)] = layer;
            for (int d : downwind[static_cast<std::size_t>(t)]) {
                if (--pending[static_cast<std::size_t>(d)] == 0) {
                    next.push_back(d);
                }
            }
        }
        placed += static_cast<int>(front.size());
        s.layers.push_back(std::move(front));
        std::sort(next.begin(), next.end());
        front = std::move(next);
    }

    if (placed != n) {
        std::vector<int> stuck;
        for (int t = 0; t < n; ++t) {
            if (s.layer_of[static_cast<std::size_t>(t)] < 0) {
                stuck.push_back(t);
            }
        }
        std::string msg = "sweep dependency cycle among " + std::to_string(stuck.size()) + " elements:";
        for (std::size_t i = 0; i < stuck.size() && i < 16; ++i) {
            msg += " " + std::to_string(stuck[i]);
        }
        throw CycleError(msg, std::move(stuck));
    }
    return s;
}

void sweep_direction(const TriangleMesh& mesh, const SweepSchedule& schedule, const SweepData& data,
                     std::span<std::array<double, 3>> out, int direction)
{
    const auto n = static_cast<std::size_t>(mesh.num_triangles());
    const auto nq = static_cast<std::size_t>(assembly_triangle_rule().size());
    if (out.size() != n || data.bases.size() != n || data.delta.size() != n || data.sigma_t_qp.size() != n * nq ||
        data.source_qp.size() != n * nq) {
        throw InvalidArgument("sweep_direction: input sizes do not match the mesh");
    }
    const auto& erule = assembly_edge_rule();

#ifndef NDEBUG
    std::vector<char> solved(n, 0);
#endif

    std::array<InflowFace, 3> faces;
    for (int layer = 0; layer < schedule.num_layers(); ++layer) {
        for (int t : schedule.layers[static_cast<std::size_t>(layer)]) {
            const auto ti = static_cast<std::size_t>(t);
            const ElementBasis& K = data.bases[ti];
            std::size_t nfaces = 0;
            for (int k = 0; k < 3; ++k) {
                const int up = schedule.upwind[ti][static_cast<std::size_t>(k)];
                if (up == kNotInflow) {
                    continue;
                }
                InflowFace& f = faces[nfaces++];
                f.local_edge = k;
                f.flux = schedule.flux[ti][static_cast<std::size_t>(k)];
                if (up == kBoundary) {
                    for (int q = 0; q < erule.size(); ++q) {
                        f.upwind[static_cast<std::size_t>(q)] =
                            data.inflow ? (*data.inflow)(K.edge_point(k, erule.points[static_cast<std::size_t>(q)]))
                                        : 0.0;
                    }
                } else {
#ifndef NDEBUG
                    assert(solved[static_cast<std::size_t>(up)] && "upwind neighbour read before it was solved");
#endif
                    // the shared edge runs the opposite way inside the neighbour
                    const auto kn = static_cast<std::size_t>(mesh.face(t, k).neighbor_edge);
                    const auto& c = out[static_cast<std::size_t>(up)];
                    for (int q = 0; q < erule.size(); ++q) {
                        const double s = erule.points[static_cast<std::size_t>(q)];
                        f.upwind[static_cast<std::size_t>(q)] = c[kn] * s + c[(kn + 1) % 3] * (1.0 - s);
                    }
                }
            }
            const auto sys = assemble_local(K, schedule.omega, data.delta[ti], data.sigma_t_qp.subspan(ti * nq, nq),
                                            data.source_qp.subspan(ti * nq, nq),
                                            std::span<const InflowFace>(faces.data(), nfaces));
            try {
                out[ti] = solve_local(sys, t, direction);
            } catch (const StabilityError& e) {
                throw StabilityError(std::string(e.what()) + " in sweep layer " + std::to_string(layer), t,
                                     direction);
            }
#ifndef NDEBUG
            solved[ti] = 1;
#endif
        }
    }
}

void sweep_direction(const TriangleMesh& mesh, const SweepSchedule& schedule, double delta,
                     const ScalarField& sigma_t, const ScalarField& source, const ScalarField& inflow,
                     std::span<std::array<double, 3>> out)
{
    const auto bases = element_bases(mesh);
    const auto& rule = assembly_triangle_rule();
    const auto nq = static_cast<std::size_t>(rule.size());
    std::vector<double> st(bases.size() * nq);
    std::vector<double> src(st.size());
    for (std::size_t t = 0; t < bases.size(); ++t) {
        for (std::size_t q = 0; q < nq; ++q) {
            const Point x = bases[t].map(rule.points[q]);
            st[t * nq + q] = sigma_t(x);
            src[t * nq + q] = source(x);
        }
    }
    const std::vector<double> deltas(bases.size(), delta);
    SweepData data{bases, deltas, st, src, &inflow};
    sweep_direction(mesh, schedule, data, out);
}

void write_schedule(const SweepSchedule& schedule, std::ostream& os)
{
    for (const auto& layer : schedule.layers) {
        for (std::size_t i = 0; i < layer.size(); ++i) {
            os << (i ? " " : "") << layer[i];
        }
        os << '\n';
    }
}

}  // namespace rte
