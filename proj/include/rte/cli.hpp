#pragma once

#include "rte/analysis.hpp"
#include "rte/error.hpp"
#include "rte/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rte::cli {

enum class Command { Solve, Convergence, Compare, QuadCheck };

struct RunConfig {
    Command command = Command::Convergence;
    int case_id = 1;
    int levels = 4;
    int n0 = 10;
    std::optional<int> n_dirs;
    std::optional<double> eta;
    std::optional<std::string> phase;  // "hg" | "linear"
    double sigma_t = 10.0;
    double sigma_s = 0.1;
    Method method = Method::DODSD;
    double c_bar = 1.0;
    double tol = 1e-10;
    int max_iter = 1000;
    std::filesystem::path out = "out";
    std::optional<std::filesystem::path> mesh;
    bool deterministic = false;
    std::optional<int> dump_schedule;
};

/// Bad flags, values or config-file lines. Carries the offending field and,
/// for config files, the line number.
class ConfigError : public rte::InvalidArgument {
public:
    using rte::InvalidArgument::InvalidArgument;
};

/// Parses `dodsd <command> [flags]`. `--config FILE` reads `key = value`
/// lines (keys are flag names without dashes); flags on the command line win.
/// Returns std::nullopt when help was printed to `out`.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Throws ConfigError when a field is outside its documented range.
void validate(const RunConfig& config);

ManufacturedCase make_case(const RunConfig& config);
SolverConfig solver_config(const RunConfig& config);

/// Executes the command, writing artifacts under config.out and a summary to
/// `log`. Returns 0 when every requested solve converged; solver errors
/// propagate as rte::Error.
int run(const RunConfig& config, std::ostream& log);

/// parse_args + run with error reporting on `err`: prints
/// "error[<code>]: message" and returns the numeric ErrorCode.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// CSV emission. Numbers use the shortest representation that parses back to
// the same double; NaN is written as "nan".
inline constexpr const char* kTableHeader = "level,h,n_elems,n_dirs,e1,e2,e3,e4,eh,iters";
inline constexpr const char* kRatesHeader = "level_from,level_to,e1,e2,e3,e4,eh";

std::string format_number(double v);
void write_table_csv(const ConvergenceTable& table, std::ostream& os);
void write_rates_csv(const ConvergenceTable& table, std::ostream& os);
/// Parses what write_table_csv emits; rates are recomputed from the rows.
ConvergenceTable read_table_csv(std::istream& is);

}  // namespace rte::cli
