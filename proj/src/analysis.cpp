#include "rte/analysis.hpp"

#include "rte/error.hpp"
#include "rte/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rte {

namespace {

constexpr double pi = std::numbers::pi;

// rethrow a solver failure with the refinement level attached
[[noreturn]] void rethrow_with_level(int level)
{
    const std::string tag = "level " + std::to_string(level) + ": ";
    try {
        throw;
    } catch (const NonConvergence& e) {
        throw NonConvergence(tag + e.what(), e.residual_history());
    } catch (const StabilityError& e) {
        throw StabilityError(tag + e.what(), e.element(), e.direction());
    } catch (const CycleError& e) {
        throw CycleError(tag + e.what(), e.elements());
    } catch (const Error& e) {
        throw Error(e.code(), tag + e.what());
    }
}

}  // namespace

AngularQuadrature ManufacturedCase::quadrature() const
{
    return trapezoid_circle(n_dirs);
}

TransportProblem ManufacturedCase::problem() const
{
    const double st = sigma_t;
    const double ss = sigma_s;
    return TransportProblem{
        [st](Point) { return st; }, [ss](Point) { return ss; }, phase, exact_f, exact_u, quadrature(),
    };
}

ManufacturedCase make_case(int id, const CaseOptions& options)
{
    if (id < 1 || id > 4) {
        throw InvalidArgument("manufactured case id must be 1..4, got " + std::to_string(id));
    }
    if (options.sigma_s < 0.0 || !(options.sigma_t - options.sigma_s > 0.0)) {
        throw InvalidArgument("manufactured case needs sigma_s >= 0 and sigma_t - sigma_s > 0");
    }
    static constexpr std::array<int, 4> default_dirs{20, 40, 60, 20};
    static constexpr std::array<double, 3> default_eta{0.2, 0.5, 0.9};

    ManufacturedCase mc;
    mc.id = id;
    mc.sigma_t = options.sigma_t;
    mc.sigma_s = options.sigma_s;
    mc.n_dirs = options.n_dirs.value_or(default_dirs[static_cast<std::size_t>(id - 1)]);
    if (mc.n_dirs < 2) {
        throw InvalidArgument("manufactured case needs at least 2 directions");
    }
    mc.h_theta = 2.0 * pi / mc.n_dirs;
    if (options.phase) {
        mc.phase = *options.phase;
    } else {
        mc.phase = id == 4 ? PhaseFunction::linear_anisotropic()
                           : PhaseFunction::henyey_greenstein(default_eta[static_cast<std::size_t>(id - 1)]);
    }
    if (mc.phase.dim() != 2) {
        throw InvalidArgument("manufactured cases live on the circle; phase function must be 2D");
    }

    const double st = mc.sigma_t;
    const double ss = mc.sigma_s;
    if (id <= 3) {
        mc.exact_u = [](Point x, const Direction&) { return std::sin(pi * x.x) * std::sin(pi * x.y); };
        mc.exact_grad = [](Point x, const Direction&) {
            return Vec2{pi * std::cos(pi * x.x) * std::sin(pi * x.y), pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
        };
        // u does not depend on omega and g integrates to one, so S u = u
        mc.exact_scattered = mc.exact_u;
    } else {
        const double sa = st - ss;
        const double a = sa / 3.0;
        const double b = sa / 3.0;
        const double c = sa / (sa + 6.0 * ss);
        const double g1 = mc.phase.first_moment();
        mc.exact_u = [a, b, c](Point x, const Direction& w) { return std::exp(-a * x.x - b * x.y) * (1.0 + c * w[0]); };
        mc.exact_grad = [a, b, c](Point x, const Direction& w) {
            const double u = std::exp(-a * x.x - b * x.y) * (1.0 + c * w[0]);
            return Vec2{-a * u, -b * u};
        };
        mc.exact_scattered = [a, b, c, g1](Point x, const Direction& w) {
            return std::exp(-a * x.x - b * x.y) * (1.0 + c * g1 * w[0]);
        };
    }
    mc.exact_f = [u = mc.exact_u, grad = mc.exact_grad, su = mc.exact_scattered, st, ss](Point x,
                                                                                         const Direction& w) {
        const Vec2 gu = grad(x, w);
        return w[0] * gu.x + w[1] * gu.y + st * u(x, w) - ss * su(x, w);
    };
    return mc;
}

ErrorReport error_norms(const DGSolution& sol, const AngularField& exact_u, const AngularGradient& exact_grad,
                        const TriangleMesh& mesh, const AngularQuadrature& quad)
{
    const int nd = quad.size();
    const int ne = mesh.num_triangles();
    if (sol.num_directions() != nd || sol.num_elements() != ne) {
        throw InvalidArgument("error_norms: solution does not match mesh/quadrature");
    }
    const auto& rule = triangle_rule_degree6();
    const EdgeRule erule = edge_rule(7);
    const auto bases = element_bases(mesh);

    std::vector<std::array<double, 4>> per_dir(static_cast<std::size_t>(nd));
    parallel_for(nd, resolve_thread_count(), [&](int l) {
        const Direction& dir = quad.direction(l);
        const Vec2 omega = quad.direction2(l);
        const auto ul = sol.slice(l);
        std::array<double, 4> acc{};
        for (int t = 0; t < ne; ++t) {
            const auto ti = static_cast<std::size_t>(t);
            const auto& K = bases[ti];
            const auto& c = ul[ti];
            double duh = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                duh += c[j] * dot(omega, K.grads[j]);
            }
            double l2 = 0.0;
            double st = 0.0;
            for (int q = 0; q < rule.size(); ++q) {
                const auto& phi = rule.points[static_cast<std::size_t>(q)];
                const Point x = K.map(phi);
                const double e = exact_u(x, dir) - (c[0] * phi[0] + c[1] * phi[1] + c[2] * phi[2]);
                const double de = dot(omega, exact_grad(x, dir)) - duh;
                l2 += rule.weights[static_cast<std::size_t>(q)] * e * e;
                st += rule.weights[static_cast<std::size_t>(q)] * de * de;
            }
            acc[0] += K.area * l2;
            acc[2] += K.diameter * K.area * st;

            for (int k = 0; k < 3; ++k) {
                const double wn = dot(omega, K.normals[static_cast<std::size_t>(k)]);
                const bool inflow = wn < -kTangentialTolerance;
                const auto& link = mesh.face(t, k);
                if (!inflow && link.neighbor != kBoundary) {
                    continue;
                }
                double edge = 0.0;
                for (int q = 0; q < erule.size(); ++q) {
                    const double s = erule.points[static_cast<std::size_t>(q)];
                    const Point x = K.edge_point(k, s);
                    const double ux = exact_u(x, dir);
                    const auto kk = static_cast<std::size_t>(k);
                    const double own = ux - (c[kk] * (1.0 - s) + c[(kk + 1) % 3] * s);
                    double val = own;
                    if (inflow && link.neighbor != kBoundary) {
                        const auto& cn = ul[static_cast<std::size_t>(link.neighbor)];
                        const auto kn = static_cast<std::size_t>(link.neighbor_edge);
                        val = own - (ux - (cn[kn] * s + cn[(kn + 1) % 3] * (1.0 - s)));
                    }
                    edge += erule.weights[static_cast<std::size_t>(q)] * val * val;
                }
                edge *= K.edge_lengths[static_cast<std::size_t>(k)] * std::abs(wn);
                acc[inflow ? 3 : 1] += edge;
            }
        }
        per_dir[static_cast<std::size_t>(l)] = acc;
    });

    ErrorReport r;
    std::array<double, 4> sq{};
    for (int l = 0; l < nd; ++l) {
        const auto& acc = per_dir[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < 4; ++i) {
            sq[i] += quad.weight(l) * acc[i];
        }
        r.e1_sq_by_direction.push_back(acc[0]);
    }
    r.e1 = std::sqrt(sq[0]);
    r.e2 = std::sqrt(sq[1]);
    r.e3 = std::sqrt(sq[2]);
    r.e4 = std::sqrt(sq[3]);
    r.eh = std::sqrt(sq[0] + sq[1] + sq[2] + sq[3]);
    r.h = mesh.h();
    r.level = mesh.level();
    r.n_elems = ne;
    r.n_dirs = nd;
    return r;
}

ErrorReport error_norms(const DGSolution& sol, const ManufacturedCase& mcase, const TriangleMesh& mesh,
                        const AngularQuadrature& quad)
{
    return error_norms(sol, mcase.exact_u, mcase.exact_grad, mesh, quad);
}

double observed_rate(double coarse, double fine)
{
    if (!(coarse >= kRateFloor) || !(fine >= kRateFloor)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::log2(coarse / fine);
}

std::array<double, kNumNorms> norm_values(const ErrorReport& r)
{
    return {r.e1, r.e2, r.e3, r.e4, r.eh};
}

std::vector<NormRates> compute_rates(const std::vector<ErrorReport>& rows)
{
    std::vector<NormRates> rates;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const auto a = norm_values(rows[i]);
        const auto b = norm_values(rows[i + 1]);
        NormRates r{};
        for (std::size_t k = 0; k < r.size(); ++k) {
            r[k] = observed_rate(a[k], b[k]);
        }
        rates.push_back(r);
    }
    return rates;
}

NormRates ConvergenceTable::finest_rates() const
{
    if (rates.empty()) {
        NormRates r;
        r.fill(std::numeric_limits<double>::quiet_NaN());
        return r;
    }
    return rates.back();
}

ConvergenceTable convergence_study(const ManufacturedCase& mcase, int levels, const SolverConfig& config,
                                   const TriangleMesh& initial)
{
    if (levels < 2) {
        throw InvalidArgument("convergence study needs at least 2 levels");
    }
    const auto problem = mcase.problem();
    ConvergenceTable table;
    TriangleMesh mesh = initial;
    for (int level = 0; level < levels; ++level) {
        if (level > 0) {
            mesh = refine_regular(mesh);
        }
        try {
            auto result = solve(problem, mesh, config);
            auto report = error_norms(result.solution, mcase, mesh, problem.quad);
            report.level = level;
            report.iterations = result.report.iterations;
            table.rows.push_back(std::move(report));
        } catch (const Error&) {
            rethrow_with_level(level);
        }
    }
    table.rates = compute_rates(table.rows);
    return table;
}

ConvergenceTable convergence_study(const ManufacturedCase& mcase, int levels, const SolverConfig& config, int n0)
{
    return convergence_study(mcase, levels, config, build_structured_unit_square(n0));
}

MethodComparison compare_methods(const ManufacturedCase& mcase, int levels, const SolverConfig& config,
                                 const TriangleMesh& initial)
{
    SolverConfig sd = config;
    sd.method = Method::DODSD;
    SolverConfig dg = config;
    dg.method = Method::DODG;
    MethodComparison out;
    out.dodsd = convergence_study(mcase, levels, sd, initial);
    out.dodg = convergence_study(mcase, levels, dg, initial);
    for (std::size_t i = 0; i < out.dodsd.rows.size(); ++i) {
        out.eh_ratio.push_back(out.dodsd.rows[i].eh / out.dodg.rows[i].eh);
    }
    return out;
}

MethodComparison compare_methods(const ManufacturedCase& mcase, int levels, const SolverConfig& config, int n0)
{
    return compare_methods(mcase, levels, config, build_structured_unit_square(n0));
}

}  // namespace rte
