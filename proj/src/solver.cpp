#include "rte/solver.hpp"

#include "rte/error.hpp"
#include "rte/parallel.hpp"
#include "rte/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rte {

namespace {

void check_problem(const TransportProblem& problem)
{
    if (problem.quad.dim() != 2 || problem.phase.dim() != 2) {
        throw InvalidArgument("the transport solver works on the circle (2D) only");
    }
    if (!problem.sigma_t || !problem.sigma_s || !problem.source) {
        throw InvalidArgument("transport problem needs sigma_t, sigma_s and a source");
    }
}

double trace_value(const std::array<double, 3>& c, int k, double s)
{
    return c[static_cast<std::size_t>(k)] * (1.0 - s) + c[static_cast<std::size_t>((k + 1) % 3)] * s;
}

// value of the neighbour's field at parameter s of our local edge k
double neighbor_trace(const TriangleMesh& mesh, std::span<const std::array<double, 3>> field, int t, int k, double s)
{
    const auto& link = mesh.face(t, k);
    if (link.neighbor == kBoundary) {
        return 0.0;
    }
    return trace_value(field[static_cast<std::size_t>(link.neighbor)], link.neighbor_edge, 1.0 - s);
}

}  // namespace

void validate(const SolverConfig& config)
{
    if (!(config.tol > 0.0)) {
        throw InvalidArgument("solver tolerance must be positive");
    }
    if (config.max_iter < 1) {
        throw InvalidArgument("max_iter must be at least 1");
    }
    if (config.method == Method::DODSD && !(config.c_bar > 0.0)) {
        throw InvalidArgument("streamline-diffusion scheme needs c_bar > 0");
    }
}

double stabilization_delta(const SolverConfig& config, double mesh_h, double element_h)
{
    if (config.method == Method::DODG) {
        return 0.0;
    }
    return config.c_bar * (config.local_delta ? element_h : mesh_h);
}

DGSolution scatter_coefficients(const DGSolution& sol, const ScatterMatrix& g)
{
    const int nd = sol.num_directions();
    if (g.size() != nd) {
        throw InvalidArgument("scatter matrix size does not match the number of directions");
    }
    DGSolution out(nd, sol.num_elements());
    for (int l = 0; l < nd; ++l) {
        auto dst = out.slice(l);
        for (int i = 0; i < nd; ++i) {
            const double gli = g(l, i);
            const auto src = sol.slice(i);
            for (std::size_t K = 0; K < dst.size(); ++K) {
                dst[K][0] += gli * src[K][0];
                dst[K][1] += gli * src[K][1];
                dst[K][2] += gli * src[K][2];
            }
        }
    }
    return out;
}

ScatteringSource::ScatteringSource(const DGSolution& sol, const ScatterMatrix& g, ScalarField sigma_s, int l,
                                   const TriangleMesh& mesh)
    : mesh_(&mesh), sigma_s_(std::move(sigma_s))
{
    if (l < 0 || l >= sol.num_directions() || g.size() != sol.num_directions()) {
        throw InvalidArgument("scattering_source: direction index or matrix size mismatch");
    }
    if (sol.num_elements() != mesh.num_triangles()) {
        throw InvalidArgument("scattering_source: solution and mesh sizes differ");
    }
    scattered_.assign(static_cast<std::size_t>(sol.num_elements()), {0.0, 0.0, 0.0});
    for (int i = 0; i < sol.num_directions(); ++i) {
        const double gli = g(l, i);
        const auto src = sol.slice(i);
        for (std::size_t K = 0; K < scattered_.size(); ++K) {
            for (std::size_t j = 0; j < 3; ++j) {
                scattered_[K][j] += gli * src[K][j];
            }
        }
    }
}

double ScatteringSource::at(int K, const std::array<double, 3>& bary) const
{
    const auto& c = scattered_.at(static_cast<std::size_t>(K));
    const auto corners = mesh_->corners(K);
    const Point x = bary[0] * corners[0] + bary[1] * corners[1] + bary[2] * corners[2];
    return sigma_s_(x) * (c[0] * bary[0] + c[1] * bary[1] + c[2] * bary[2]);
}

double ScatteringSource::operator()(Point x) const
{
    constexpr double tol = 1e-12;
    for (int K = 0; K < mesh_->num_triangles(); ++K) {
        const auto p = mesh_->corners(K);
        const double a2 = cross(p[1] - p[0], p[2] - p[0]);
        const std::array<double, 3> bary{cross(p[1] - x, p[2] - x) / a2, cross(p[2] - x, p[0] - x) / a2,
                                         cross(p[0] - x, p[1] - x) / a2};
        if (bary[0] >= -tol && bary[1] >= -tol && bary[2] >= -tol) {
            return at(K, bary);
        }
    }
    throw InvalidArgument("scattering_source: point outside the mesh");
}

ScatteringSource scattering_source(const DGSolution& sol, const ScatterMatrix& g, const ScalarField& sigma_s, int l,
                                   const TriangleMesh& mesh)
{
    return ScatteringSource(sol, g, sigma_s, l, mesh);
}

double coercivity_constant(const TransportProblem& problem, const TriangleMesh& mesh)
{
    const double m = m_bound(ScatterMatrix(problem.phase, problem.quad));
    const auto& rule = assembly_triangle_rule();
    double c0 = std::numeric_limits<double>::infinity();
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto K = ElementBasis::from_corners(mesh.corners(t));
        for (const auto& bary : rule.points) {
            const Point x = K.map(bary);
            c0 = std::min(c0, problem.sigma_t(x) - m * problem.sigma_s(x));
        }
    }
    return c0;
}

SolveResult solve(const TransportProblem& problem, const TriangleMesh& mesh, const SolverConfig& config)
{
    check_problem(problem);
    validate(config);

    const int nd = problem.quad.size();
    const int ne = mesh.num_triangles();
    const auto bases = element_bases(mesh);
    const auto& rule = assembly_triangle_rule();
    const auto nq = static_cast<std::size_t>(rule.size());
    const auto nen = static_cast<std::size_t>(ne);

    std::vector<double> sigma_t_qp(nen * nq);
    std::vector<double> sigma_s_qp(nen * nq);
    std::vector<Point> qp(nen * nq);
    bool coupled = false;
    for (std::size_t t = 0; t < nen; ++t) {
        for (std::size_t q = 0; q < nq; ++q) {
            const Point x = bases[t].map(rule.points[q]);
            const double st = problem.sigma_t(x);
            const double ss = problem.sigma_s(x);
            if (ss < 0.0) {
                throw AssumptionViolation("sigma_s is negative at a sample point");
            }
            if (!(st - ss > 0.0)) {
                throw AssumptionViolation("sigma_t - sigma_s must be positive (absorption bounded below)");
            }
            coupled = coupled || ss != 0.0;
            qp[t * nq + q] = x;
            sigma_t_qp[t * nq + q] = st;
            sigma_s_qp[t * nq + q] = ss;
        }
    }

    const ScatterMatrix g(problem.phase, problem.quad);
    SolveReport report;
    report.m = m_bound(g);
    report.c0_prime = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sigma_t_qp.size(); ++i) {
        report.c0_prime = std::min(report.c0_prime, sigma_t_qp[i] - report.m * sigma_s_qp[i]);
    }

    std::vector<double> delta(nen);
    for (std::size_t t = 0; t < nen; ++t) {
        delta[t] = stabilization_delta(config, mesh.h(), bases[t].diameter);
    }
    report.delta_used = nen ? *std::max_element(delta.begin(), delta.end()) : 0.0;

    const int threads = resolve_thread_count(config.threads);

    std::vector<SweepSchedule> schedules(static_cast<std::size_t>(nd));
    std::vector<double> f_qp(static_cast<std::size_t>(nd) * nen * nq);
    parallel_for(nd, threads, [&](int l) {
        const auto& omega = problem.quad.direction(l);
        schedules[static_cast<std::size_t>(l)] = build_schedule(mesh, problem.quad.direction2(l));
        double* f = f_qp.data() + static_cast<std::size_t>(l) * nen * nq;
        for (std::size_t i = 0; i < nen * nq; ++i) {
            f[i] = problem.source(qp[i], omega);
        }
    });

    std::vector<ScalarField> inflow(static_cast<std::size_t>(nd));
    if (problem.inflow) {
        for (int l = 0; l < nd; ++l) {
            const Direction omega = problem.quad.direction(l);
            inflow[static_cast<std::size_t>(l)] = [&problem, omega](Point x) { return problem.inflow(x, omega); };
        }
    }

    DGSolution current(nd, ne);
    DGSolution next(nd, ne);
    std::vector<double> diff_sq(static_cast<std::size_t>(nd));
    std::vector<double> norm_sq(static_cast<std::size_t>(nd));

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        const DGSolution scattered = scatter_coefficients(current, g);
        parallel_for(nd, threads, [&](int l) {
            const auto lu = static_cast<std::size_t>(l);
            std::vector<double> source(nen * nq);
            const double* f = f_qp.data() + lu * nen * nq;
            const auto sc = scattered.slice(l);
            for (std::size_t t = 0; t < nen; ++t) {
                for (std::size_t q = 0; q < nq; ++q) {
                    const auto& phi = rule.points[q];
                    const double su = sc[t][0] * phi[0] + sc[t][1] * phi[1] + sc[t][2] * phi[2];
                    source[t * nq + q] = sigma_s_qp[t * nq + q] * su + f[t * nq + q];
                }
            }
            SweepData data{bases, delta, sigma_t_qp, source, problem.inflow ? &inflow[lu] : nullptr};
            auto out = next.slice(l);
            sweep_direction(mesh, schedules[lu], data, out, l);

            const auto old = current.slice(l);
            double d2 = 0.0;
            double n2 = 0.0;
            for (std::size_t t = 0; t < nen; ++t) {
                const auto mm = mass_matrix(bases[t].area);
                std::array<double, 3> e{out[t][0] - old[t][0], out[t][1] - old[t][1], out[t][2] - old[t][2]};
                for (std::size_t i = 0; i < 3; ++i) {
                    for (std::size_t j = 0; j < 3; ++j) {
                        d2 += mm[i][j] * e[i] * e[j];
                        n2 += mm[i][j] * out[t][i] * out[t][j];
                    }
                }
            }
            diff_sq[lu] = problem.quad.weight(l) * d2;
            norm_sq[lu] = problem.quad.weight(l) * n2;
        });
        std::swap(current, next);

        double d2 = 0.0;
        double n2 = 0.0;
        for (int l = 0; l < nd; ++l) {
            d2 += diff_sq[static_cast<std::size_t>(l)];
            n2 += norm_sq[static_cast<std::size_t>(l)];
        }
        double residual = n2 > 0.0 ? std::sqrt(d2 / n2) : std::sqrt(d2);
        if (!coupled) {
            residual = 0.0;
        }
        report.residual_history.push_back(residual);
        report.iterations = iter;
        if (residual <= config.tol) {
            report.converged = true;
            return {std::move(current), std::move(report)};
        }
    }
    throw NonConvergence("source iteration did not reach tol " + std::to_string(config.tol) + " in " +
                             std::to_string(config.max_iter) + " iterations",
                         report.residual_history);
}

double apply_ah(const DGSolution& u, const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh,
                double delta)
{
    check_problem(problem);
    const int nd = problem.quad.size();
    if (u.num_directions() != nd || v.num_directions() != nd || u.num_elements() != mesh.num_triangles() ||
        v.num_elements() != mesh.num_triangles()) {
        throw InvalidArgument("apply_ah: field sizes do not match the mesh/quadrature");
    }
    const ScatterMatrix g(problem.phase, problem.quad);
    const DGSolution su = scatter_coefficients(u, g);
    const auto& rule = assembly_triangle_rule();
    const auto& erule = assembly_edge_rule();
    const auto bases = element_bases(mesh);

    double total = 0.0;
    for (int l = 0; l < nd; ++l) {
        const Vec2 omega = problem.quad.direction2(l);
        const auto ul = u.slice(l);
        const auto vl = v.slice(l);
        const auto sl = su.slice(l);
        double acc = 0.0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto ti = static_cast<std::size_t>(t);
            const auto& K = bases[ti];
            double du = 0.0;
            double dv = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                du += ul[ti][j] * dot(omega, K.grads[j]);
                dv += vl[ti][j] * dot(omega, K.grads[j]);
            }
            for (int q = 0; q < rule.size(); ++q) {
                const auto& phi = rule.points[static_cast<std::size_t>(q)];
                const Point x = K.map(phi);
                const double uq = ul[ti][0] * phi[0] + ul[ti][1] * phi[1] + ul[ti][2] * phi[2];
                const double vq = vl[ti][0] * phi[0] + vl[ti][1] * phi[1] + vl[ti][2] * phi[2];
                const double sq = sl[ti][0] * phi[0] + sl[ti][1] * phi[1] + sl[ti][2] * phi[2];
                acc += rule.weights[static_cast<std::size_t>(q)] * K.area *
                       (du + problem.sigma_t(x) * uq - problem.sigma_s(x) * sq) * (vq + delta * dv);
            }
            for (int k = 0; k < 3; ++k) {
                const double wn = dot(omega, K.normals[static_cast<std::size_t>(k)]);
                if (!(wn < -kTangentialTolerance)) {
                    continue;
                }
                for (int q = 0; q < erule.size(); ++q) {
                    const double s = erule.points[static_cast<std::size_t>(q)];
                    const double jump = trace_value(ul[ti], k, s) - neighbor_trace(mesh, ul, t, k, s);
                    acc += erule.weights[static_cast<std::size_t>(q)] * K.edge_lengths[static_cast<std::size_t>(k)] *
                           jump * trace_value(vl[ti], k, s) * (-wn);
                }
            }
        }
        total += problem.quad.weight(l) * acc;
    }
    return total;
}

double apply_load(const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh, double delta)
{
    check_problem(problem);
    const auto& rule = assembly_triangle_rule();
    const auto& erule = assembly_edge_rule();
    const auto bases = element_bases(mesh);
    double total = 0.0;
    for (int l = 0; l < problem.quad.size(); ++l) {
        const Direction& dir = problem.quad.direction(l);
        const Vec2 omega = problem.quad.direction2(l);
        const auto vl = v.slice(l);
        double acc = 0.0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto ti = static_cast<std::size_t>(t);
            const auto& K = bases[ti];
            double dv = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                dv += vl[ti][j] * dot(omega, K.grads[j]);
            }
            for (int q = 0; q < rule.size(); ++q) {
                const auto& phi = rule.points[static_cast<std::size_t>(q)];
                const double vq = vl[ti][0] * phi[0] + vl[ti][1] * phi[1] + vl[ti][2] * phi[2];
                acc += rule.weights[static_cast<std::size_t>(q)] * K.area * problem.source(K.map(phi), dir) *
                       (vq + delta * dv);
            }
            if (!problem.inflow) {
                continue;
            }
            for (int k = 0; k < 3; ++k) {
                const double wn = dot(omega, K.normals[static_cast<std::size_t>(k)]);
                if (!(wn < -kTangentialTolerance) || mesh.face(t, k).neighbor != kBoundary) {
                    continue;
                }
                for (int q = 0; q < erule.size(); ++q) {
                    const double s = erule.points[static_cast<std::size_t>(q)];
                    acc += erule.weights[static_cast<std::size_t>(q)] * K.edge_lengths[static_cast<std::size_t>(k)] *
                           problem.inflow(K.edge_point(k, s), dir) * trace_value(vl[ti], k, s) * (-wn);
                }
            }
        }
        total += problem.quad.weight(l) * acc;
    }
    return total;
}

TripleNormTerms triple_norm_terms(const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh,
                                  double delta, double c0_prime)
{
    if (!(c0_prime > 0.0)) {
        throw AssumptionViolation("c0' = min(sigma_t - m sigma_s) must be positive, got " + std::to_string(c0_prime));
    }
    check_problem(problem);
    const auto& erule = assembly_edge_rule();
    const auto bases = element_bases(mesh);
    TripleNormTerms terms;
    for (int l = 0; l < problem.quad.size(); ++l) {
        const Vec2 omega = problem.quad.direction2(l);
        const double w = problem.quad.weight(l);
        const auto vl = v.slice(l);
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto ti = static_cast<std::size_t>(t);
            const auto& K = bases[ti];
            const auto& c = vl[ti];
            const auto mm = mass_matrix(K.area);
            double l2 = 0.0;
            double dv = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                dv += c[i] * dot(omega, K.grads[i]);
                for (std::size_t j = 0; j < 3; ++j) {
                    l2 += mm[i][j] * c[i] * c[j];
                }
            }
            terms.l2 += w * c0_prime * l2;
            terms.streamline += w * delta * K.area * dv * dv;
            for (int k = 0; k < 3; ++k) {
                const double wn = dot(omega, K.normals[static_cast<std::size_t>(k)]);
                const bool inflow = wn < -kTangentialTolerance;
                const bool boundary = mesh.face(t, k).neighbor == kBoundary;
                if (!inflow && !boundary) {
                    continue;
                }
                double edge = 0.0;
                for (int q = 0; q < erule.size(); ++q) {
                    const double s = erule.points[static_cast<std::size_t>(q)];
                    const double own = trace_value(c, k, s);
                    const double val = inflow ? own - neighbor_trace(mesh, vl, t, k, s) : own;
                    edge += erule.weights[static_cast<std::size_t>(q)] * val * val;
                }
                edge *= K.edge_lengths[static_cast<std::size_t>(k)] * std::abs(wn) * w;
                (inflow ? terms.jump : terms.outflow) += edge;
            }
        }
    }
    return terms;
}

double triple_norm_stability(const DGSolution& v, const TransportProblem& problem, const TriangleMesh& mesh,
                             double delta, double c0_prime)
{
    return std::sqrt(triple_norm_terms(v, problem, mesh, delta, c0_prime).squared());
}

}  // namespace rte
