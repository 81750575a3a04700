#include "rte/cli.hpp"

#include "rte/error.hpp"
#include "rte/mesh.hpp"
#include "rte/sweep.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace rte::cli {

namespace {

const std::map<std::string, Command> kCommands{
    {"solve", Command::Solve},
    {"convergence", Command::Convergence},
    {"compare", Command::Compare},
    {"quad-check", Command::QuadCheck},
};

// option names accepted in a config file, and whether they are bare flags
const std::map<std::string, bool> kConfigKeys{
    {"case", false},  {"levels", false},   {"n0", false},    {"n-dirs", false},  {"eta", false},
    {"phase", false}, {"sigma-t", false},  {"sigma-s", false}, {"method", false}, {"c-bar", false},
    {"tol", false},   {"max-iter", false}, {"out", false},   {"mesh", false},    {"dump-schedule", false},
    {"deterministic", true},
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// config file -> equivalent flag tokens
std::vector<std::string> config_file_tokens(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        line = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = kConfigKeys.find(key);
        if (it == kConfigKeys.end()) {
            throw ConfigError(where + "unknown key '" + key + "'");
        }
        if (it->second) {
            if (value == "true" || value == "1") {
                tokens.push_back("--" + key);
            } else if (value != "false" && value != "0") {
                throw ConfigError(where + "field '" + key + "' expects true or false");
            }
            continue;
        }
        if (value.empty()) {
            throw ConfigError(where + "field '" + key + "' has no value");
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

std::optional<PhaseFunction> phase_override(const RunConfig& c)
{
    if (!c.phase && !c.eta) {
        return std::nullopt;
    }
    const std::string kind = c.phase.value_or(c.case_id == 4 && !c.eta ? "linear" : "hg");
    if (kind == "linear") {
        if (c.eta) {
            throw ConfigError("field 'eta' applies to --phase hg only");
        }
        return PhaseFunction::linear_anisotropic();
    }
    double eta = 0.0;
    if (c.eta) {
        eta = *c.eta;
    } else if (c.case_id <= 3) {
        eta = std::array{0.2, 0.5, 0.9}[static_cast<std::size_t>(c.case_id - 1)];
    }
    if (!(std::abs(eta) < 1.0)) {
        throw ConfigError("field 'eta' must satisfy |eta| < 1");
    }
    return PhaseFunction::henyey_greenstein(eta);
}

TriangleMesh initial_mesh(const RunConfig& c)
{
    return c.mesh ? load_mesh(*c.mesh) : build_structured_unit_square(c.n0);
}

void open_out(std::ofstream& f, const std::filesystem::path& path)
{
    f.open(path);
    if (!f) {
        throw IoError("cannot write " + path.string());
    }
}

void print_table(const std::string& title, const ConvergenceTable& t, std::ostream& log)
{
    log << title << '\n';
    log << "  level        h   elems  dirs          e1          e2          e3          e4          eh  iters\n";
    for (const auto& r : t.rows) {
        log << "  " << std::setw(5) << r.level << ' ' << std::setw(8) << std::fixed << std::setprecision(5) << r.h
            << ' ' << std::setw(7) << r.n_elems << ' ' << std::setw(5) << r.n_dirs << std::scientific
            << std::setprecision(4);
        for (double v : norm_values(r)) {
            log << ' ' << std::setw(11) << v;
        }
        log << ' ' << std::setw(6) << r.iterations << '\n';
        log << std::defaultfloat;
    }
    if (!t.rates.empty()) {
        const auto fr = t.finest_rates();
        log << "  finest-pair rates: e1 " << std::fixed << std::setprecision(3) << fr[0] << "  e2 " << fr[1]
            << "  e3 " << fr[2] << "  e4 " << fr[3] << "  eh " << fr[4] << std::defaultfloat << '\n';
    }
}

void write_table_files(const ConvergenceTable& t, const std::filesystem::path& dir, const std::string& prefix)
{
    std::ofstream table;
    open_out(table, dir / (prefix + "table.csv"));
    write_table_csv(t, table);
    std::ofstream rates;
    open_out(rates, dir / (prefix + "rates.csv"));
    write_rates_csv(t, rates);
}

int run_quad_check(const RunConfig& c, std::ostream& log)
{
    const auto mc = make_case(c);
    const auto quad = mc.quadrature();
    const ScatterMatrix g(mc.phase, quad);
    double min_row = g.row_sum(0);
    double max_dev = 0.0;
    for (int l = 0; l < g.size(); ++l) {
        min_row = std::min(min_row, g.row_sum(l));
        max_dev = std::max(max_dev, std::abs(g.row_sum(l) - 1.0));
    }
    const double m = m_bound(g);
    const double c0 = mc.sigma_t - m * mc.sigma_s;
    const std::string phase = mc.phase.kind() == PhaseFunction::Kind::LinearAnisotropic ? "linear" : "hg";

    std::ofstream f;
    open_out(f, c.out / "quad_check.csv");
    f << "n_dirs,phase,eta,weight_sum,m_bound,min_row_sum,max_row_deviation,c0_prime\n";
    f << quad.size() << ',' << phase << ',' << format_number(mc.phase.eta()) << ',' << format_number(quad.weight_sum())
      << ',' << format_number(m) << ',' << format_number(min_row) << ',' << format_number(max_dev) << ','
      << format_number(c0) << '\n';

    log << std::setprecision(16) << "quad-check: n_dirs " << quad.size() << ", phase " << phase << ", eta "
        << mc.phase.eta() << '\n'
        << "  weight sum     " << quad.weight_sum() << '\n'
        << "  m bound        " << m << "  (|m - 1| = " << std::abs(m - 1.0) << ")\n"
        << "  min row sum    " << min_row << '\n'
        << "  c0' = sigma_t - m sigma_s = " << c0 << std::defaultfloat << std::setprecision(6) << '\n';
    return 0;
}

int run_solve(const RunConfig& c, std::ostream& log)
{
    const auto mc = make_case(c);
    const auto mesh = initial_mesh(c);
    const auto problem = mc.problem();
    const auto result = solve(problem, mesh, solver_config(c));

    std::ofstream field;
    open_out(field, c.out / "field.csv");
    field << "l,K,centroid_x,centroid_y,u_mean\n";
    for (int l = 0; l < result.solution.num_directions(); ++l) {
        for (int K = 0; K < mesh.num_triangles(); ++K) {
            const auto& cf = result.solution.coeffs(l, K);
            const Point x = mesh.centroid(K);
            field << l << ',' << K << ',' << format_number(x.x) << ',' << format_number(x.y) << ','
                  << format_number((cf[0] + cf[1] + cf[2]) / 3.0) << '\n';
        }
    }

    auto report = error_norms(result.solution, mc, mesh, problem.quad);
    report.iterations = result.report.iterations;
    ConvergenceTable single;
    single.rows.push_back(report);
    std::ofstream summary;
    open_out(summary, c.out / "table.csv");
    write_table_csv(single, summary);

    if (c.dump_schedule) {
        const int l = *c.dump_schedule;
        if (l < 0 || l >= problem.quad.size()) {
            throw ConfigError("field 'dump-schedule' must be a direction index in [0, " +
                              std::to_string(problem.quad.size()) + ")");
        }
        std::ofstream sched;
        open_out(sched, c.out / ("schedule_" + std::to_string(l) + ".txt"));
        write_schedule(build_schedule(mesh, problem.quad.direction2(l)), sched);
    }

    log << "solve: case " << mc.id << ", " << mesh.num_triangles() << " elements, " << problem.quad.size()
        << " directions, delta " << result.report.delta_used << ", " << result.report.iterations
        << " source iterations (last update " << result.report.residual_history.back() << ")\n";
    print_table("errors:", single, log);
    return result.report.converged ? 0 : static_cast<int>(ErrorCode::NonConvergence);
}

int run_convergence(const RunConfig& c, std::ostream& log)
{
    const auto mc = make_case(c);
    const auto table = convergence_study(mc, c.levels, solver_config(c), initial_mesh(c));
    write_table_files(table, c.out, "");
    print_table(std::string("convergence: case ") + std::to_string(mc.id) + ", " +
                    (c.method == Method::DODG ? "DODG" : "DODSD"),
                table, log);
    return 0;
}

int run_compare(const RunConfig& c, std::ostream& log)
{
    const auto mc = make_case(c);
    const auto cmp = compare_methods(mc, c.levels, solver_config(c), initial_mesh(c));
    write_table_files(cmp.dodsd, c.out, "dodsd_");
    write_table_files(cmp.dodg, c.out, "dodg_");
    std::ofstream f;
    open_out(f, c.out / "delta_effect.csv");
    f << "level,h,eh_dodsd,eh_dodg,ratio\n";
    for (std::size_t i = 0; i < cmp.eh_ratio.size(); ++i) {
        f << cmp.dodsd.rows[i].level << ',' << format_number(cmp.dodsd.rows[i].h) << ','
          << format_number(cmp.dodsd.rows[i].eh) << ',' << format_number(cmp.dodg.rows[i].eh) << ','
          << format_number(cmp.eh_ratio[i]) << '\n';
    }
    print_table("DODSD (c_bar = " + format_number(c.c_bar) + "):", cmp.dodsd, log);
    print_table("DODG:", cmp.dodg, log);
    log << "eh ratio DODSD/DODG:";
    for (double r : cmp.eh_ratio) {
        log << ' ' << std::fixed << std::setprecision(4) << r;
    }
    log << std::defaultfloat << '\n';
    return 0;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out)
{
    // config-file values go first so that explicit flags take precedence
    std::vector<std::string> tokens;
    std::optional<std::filesystem::path> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw ConfigError("--config needs a file argument");
            }
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            tokens.push_back(args[i]);
        }
    }
    if (config_path) {
        auto file_tokens = config_file_tokens(*config_path);
        tokens.insert(tokens.begin(), file_tokens.begin(), file_tokens.end());
    }

    RunConfig c;
    CLI::App app{"Discrete-ordinate streamline-diffusion DG solver for 2D radiative transfer", "dodsd"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string command;
    app.add_option("command", command, "solve | convergence | compare | quad-check")
        ->required()
        ->check(CLI::IsMember({"solve", "convergence", "compare", "quad-check"}));
    app.add_option("--config", "key = value file; command-line flags override it");
    app.add_option("--case", c.case_id, "manufactured case 1..4")->check(CLI::Range(1, 4));
    app.add_option("--levels", c.levels, "number of meshes in the refinement sequence")->check(CLI::Range(1, 12));
    app.add_option("--n0", c.n0, "structured initial mesh: n x n squares")->check(CLI::PositiveNumber);
    app.add_option("--n-dirs", c.n_dirs, "number of angular directions")->check(CLI::Range(2, 100000));
    app.add_option("--eta", c.eta, "Henyey-Greenstein anisotropy");
    app.add_option("--phase", c.phase, "phase function: hg | linear")->check(CLI::IsMember({"hg", "linear"}));
    app.add_option("--sigma-t", c.sigma_t, "total cross section");
    app.add_option("--sigma-s", c.sigma_s, "scattering cross section");
    std::string method = "dodsd";
    app.add_option("--method", method, "dodsd | dodg")->check(CLI::IsMember({"dodsd", "dodg"}));
    app.add_option("--c-bar", c.c_bar, "delta = c_bar * h");
    app.add_option("--tol", c.tol, "source-iteration tolerance");
    app.add_option("--max-iter", c.max_iter, "source-iteration cap");
    std::string out_dir;
    app.add_option("--out", out_dir, "output directory");
    std::string mesh_path;
    app.add_option("--mesh", mesh_path, "initial mesh file (overrides --n0)");
    app.add_flag("--deterministic", c.deterministic, "fixed reduction order");
    app.add_option("--dump-schedule", c.dump_schedule, "solve: write the sweep layers of direction L");

    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("argument error: ") + e.what());
    }

    c.command = kCommands.at(command);
    c.method = method == "dodg" ? Method::DODG : Method::DODSD;
    if (!out_dir.empty()) {
        c.out = out_dir;
    }
    if (!mesh_path.empty()) {
        c.mesh = mesh_path;
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c)
{
    if (c.case_id < 1 || c.case_id > 4) {
        throw ConfigError("field 'case' must be 1..4");
    }
    if (c.levels < 1 || (c.command != Command::Solve && c.command != Command::QuadCheck && c.levels < 2)) {
        throw ConfigError("field 'levels' must be at least 2 for convergence/compare");
    }
    if (c.n0 < 1) {
        throw ConfigError("field 'n0' must be positive");
    }
    if (c.n_dirs && *c.n_dirs < 2) {
        throw ConfigError("field 'n-dirs' must be at least 2");
    }
    if (c.sigma_s < 0.0 || !(c.sigma_t - c.sigma_s > 0.0)) {
        throw ConfigError("fields 'sigma-t'/'sigma-s' need sigma_s >= 0 and sigma_t - sigma_s > 0");
    }
    if (!(c.c_bar > 0.0) && c.method == Method::DODSD) {
        throw ConfigError("field 'c-bar' must be positive");
    }
    if (!(c.tol > 0.0)) {
        throw ConfigError("field 'tol' must be positive");
    }
    if (c.max_iter < 1) {
        throw ConfigError("field 'max-iter' must be at least 1");
    }
    phase_override(c);
}

ManufacturedCase make_case(const RunConfig& c)
{
    CaseOptions opts;
    opts.sigma_t = c.sigma_t;
    opts.sigma_s = c.sigma_s;
    opts.n_dirs = c.n_dirs;
    opts.phase = phase_override(c);
    return rte::make_case(c.case_id, opts);
}

SolverConfig solver_config(const RunConfig& c)
{
    SolverConfig s;
    s.method = c.method;
    s.c_bar = c.c_bar;
    s.tol = c.tol;
    s.max_iter = c.max_iter;
    s.deterministic = c.deterministic;
    return s;
}

int run(const RunConfig& c, std::ostream& log)
{
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec) {
        throw IoError("cannot create output directory " + c.out.string() + ": " + ec.message());
    }
    switch (c.command) {
    case Command::QuadCheck: return run_quad_check(c, log);
    case Command::Solve: return run_solve(c, log);
    case Command::Convergence: return run_convergence(c, log);
    case Command::Compare: return run_compare(c, log);
    }
    return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        const auto config = parse_args(args, out);
        if (!config) {
            return 0;
        }
        return run(*config, out);
    } catch (const Error& e) {
        err << "error[" << to_string(e.code()) << "]: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rte::cli
