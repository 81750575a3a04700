#include "rte/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rte;
using namespace rte::cli;

namespace {

std::filesystem::path scratch_dir(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("rte_cli_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig parse(const std::vector<std::string>& args)
{
    std::ostringstream out;
    const auto c = parse_args(args, out);
    if (!c) {
        throw std::runtime_error("help printed");
    }
    return *c;
}

}  // namespace

TEST(Args, DefaultsFollowTheBenchmarkSetup)
{
    const auto c = parse({"convergence"});
    EXPECT_EQ(c.command, Command::Convergence);
    EXPECT_EQ(c.case_id, 1);
    EXPECT_EQ(c.levels, 4);
    EXPECT_EQ(c.n0, 10);
    EXPECT_EQ(c.c_bar, 1.0);
    EXPECT_EQ(c.tol, 1e-10);
    EXPECT_EQ(c.max_iter, 1000);
    EXPECT_EQ(c.method, Method::DODSD);
    EXPECT_FALSE(c.deterministic);
}

TEST(Args, AllFlags)
{
    const auto c = parse({"compare", "--case", "3", "--levels", "3", "--n0", "6", "--n-dirs", "24", "--eta", "0.4",
                          "--phase", "hg", "--method", "dodg", "--c-bar", "0.5", "--tol", "1e-8", "--max-iter", "50",
                          "--out", "/tmp/x", "--mesh", "m.txt", "--deterministic", "--dump-schedule", "2",
                          "--sigma-t", "5", "--sigma-s", "1"});
    EXPECT_EQ(c.command, Command::Compare);
    EXPECT_EQ(c.case_id, 3);
    EXPECT_EQ(c.levels, 3);
    EXPECT_EQ(c.n0, 6);
    EXPECT_EQ(c.n_dirs, 24);
    EXPECT_EQ(c.eta, 0.4);
    EXPECT_EQ(c.method, Method::DODG);
    EXPECT_EQ(c.c_bar, 0.5);
    EXPECT_EQ(c.tol, 1e-8);
    EXPECT_EQ(c.max_iter, 50);
    EXPECT_EQ(c.out, "/tmp/x");
    EXPECT_EQ(c.mesh, std::filesystem::path("m.txt"));
    EXPECT_TRUE(c.deterministic);
    EXPECT_EQ(c.dump_schedule, 2);
    EXPECT_EQ(c.sigma_t, 5.0);
    EXPECT_EQ(c.sigma_s, 1.0);
    const auto mc = make_case(c);
    EXPECT_EQ(mc.n_dirs, 24);
    EXPECT_NEAR(mc.phase.eta(), 0.4, 0);
}

TEST(Args, RangeErrors)
{
    EXPECT_THROW(parse({"solve", "--case", "5"}), ConfigError);
    EXPECT_THROW(parse({"explode"}), ConfigError);
    EXPECT_THROW(parse({"solve", "--method", "fem"}), ConfigError);
    EXPECT_THROW(parse({"solve", "--eta", "1.0"}), ConfigError);
    EXPECT_THROW(parse({"solve", "--sigma-s", "10"}), ConfigError);
    EXPECT_THROW(parse({"solve", "--tol", "0"}), ConfigError);
    EXPECT_THROW(parse({"convergence", "--levels", "1"}), ConfigError);
    EXPECT_THROW(parse({"solve", "--phase", "linear", "--eta", "0.3"}), ConfigError);
    EXPECT_THROW(parse({"solve", "--n-dirs", "1"}), ConfigError);
}

TEST(Args, HelpReturnsNothing)
{
    std::ostringstream out;
    EXPECT_FALSE(parse_args({"--help"}, out).has_value());
    EXPECT_NE(out.str().find("--dump-schedule"), std::string::npos);
}

TEST(ConfigFile, FlagsOverrideFile)
{
    const auto dir = scratch_dir("config");
    const auto path = dir / "run.cfg";
    std::ofstream(path) << "# benchmark 2\ncase = 2\nlevels = 3\nc-bar = 0.5\ndeterministic = true\n";
    const auto c = parse({"convergence", "--config", path.string(), "--levels", "2"});
    EXPECT_EQ(c.case_id, 2);
    EXPECT_EQ(c.levels, 2);
    EXPECT_EQ(c.c_bar, 0.5);
    EXPECT_TRUE(c.deterministic);
}

TEST(ConfigFile, DiagnosticsNameLineAndField)
{
    const auto dir = scratch_dir("config_bad");
    const auto path = dir / "bad.cfg";
    std::ofstream(path) << "case = 2\n\nwidth = 3\n";
    try {
        parse({"convergence", "--config", path.string()});
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
        EXPECT_NE(msg.find("width"), std::string::npos) << msg;
    }
    std::ofstream(path) << "case 2\n";
    EXPECT_THROW(parse({"convergence", "--config", path.string()}), ConfigError);
    EXPECT_THROW(parse({"convergence", "--config", (dir / "missing.cfg").string()}), ConfigError);
}

TEST(Csv, RoundTripIsExact)
{
    const auto t = convergence_study(make_case(4), 2, {}, 3);
    std::stringstream ss;
    write_table_csv(t, ss);
    std::string header;
    std::getline(std::stringstream(ss.str()), header);
    EXPECT_EQ(header, kTableHeader);
    const auto back = read_table_csv(ss);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].level, t.rows[i].level);
        EXPECT_EQ(back.rows[i].h, t.rows[i].h);
        EXPECT_EQ(back.rows[i].n_elems, t.rows[i].n_elems);
        EXPECT_EQ(back.rows[i].n_dirs, t.rows[i].n_dirs);
        EXPECT_EQ(back.rows[i].iterations, t.rows[i].iterations);
        EXPECT_EQ(norm_values(back.rows[i]), norm_values(t.rows[i]));
    }
    EXPECT_EQ(back.rates, t.rates);
}

TEST(Csv, NumbersAndMalformedInput)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
    std::stringstream bad(std::string(kTableHeader) + "\n0,0.1,8,4,x,1,1,1,1,3\n");
    EXPECT_THROW(read_table_csv(bad), IoError);
    std::stringstream wrong_header("level,h\n");
    EXPECT_THROW(read_table_csv(wrong_header), IoError);
}

TEST(Run, QuadCheckIsotropic)
{
    const auto dir = scratch_dir("quad");
    std::ostringstream log;
    const int rc = run(parse({"quad-check", "--eta", "0", "--n-dirs", "20", "--out", dir.string()}), log);
    EXPECT_EQ(rc, 0);
    const auto csv = slurp(dir / "quad_check.csv");
    std::istringstream in(csv);
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header.rfind("n_dirs,phase,eta,weight_sum,m_bound", 0), 0u);
    const auto fields = [&] {
        std::vector<std::string> f;
        std::stringstream rs(row);
        std::string item;
        while (std::getline(rs, item, ',')) {
            f.push_back(item);
        }
        return f;
    }();
    ASSERT_GE(fields.size(), 5u);
    EXPECT_LE(std::abs(std::stod(fields[4]) - 1.0), 1e-14);
}

TEST(Run, ConvergenceWritesTables)
{
    const auto dir = scratch_dir("conv");
    std::ostringstream log;
    EXPECT_EQ(run(parse({"convergence", "--case", "4", "--levels", "2", "--n0", "4", "--out", dir.string()}), log), 0);
    const auto table = slurp(dir / "table.csv");
    EXPECT_EQ(table.rfind(std::string(kTableHeader) + "\n", 0), 0u);
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
    EXPECT_EQ(table.find('\r'), std::string::npos);
    const auto rates = slurp(dir / "rates.csv");
    EXPECT_EQ(rates.rfind(std::string(kRatesHeader) + "\n", 0), 0u);
}

TEST(Run, CompareAndSolveArtifacts)
{
    const auto dir = scratch_dir("cmp");
    std::ostringstream log;
    EXPECT_EQ(run(parse({"compare", "--case", "1", "--levels", "2", "--n0", "3", "--out", dir.string()}), log), 0);
    for (const char* f : {"dodsd_table.csv", "dodg_table.csv", "dodsd_rates.csv", "dodg_rates.csv", "delta_effect.csv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    EXPECT_EQ(slurp(dir / "delta_effect.csv").rfind("level,h,eh_dodsd,eh_dodg,ratio\n", 0), 0u);

    EXPECT_EQ(run(parse({"solve", "--case", "2", "--n0", "2", "--n-dirs", "6", "--dump-schedule", "1", "--out",
                         dir.string()}),
                  log),
              0);
    const auto field = slurp(dir / "field.csv");
    EXPECT_EQ(field.rfind("l,K,centroid_x,centroid_y,u_mean\n", 0), 0u);
    EXPECT_EQ(std::count(field.begin(), field.end(), '\n'), 1 + 6 * 8);
    EXPECT_TRUE(std::filesystem::exists(dir / "schedule_1.txt"));
}

TEST(Run, MeshFileOverridesStructuredGrid)
{
    const auto dir = scratch_dir("mesh");
    save_mesh(refine_regular(build_structured_unit_square(1)), dir / "m.txt");
    std::ostringstream log;
    EXPECT_EQ(run(parse({"solve", "--mesh", (dir / "m.txt").string(), "--out", dir.string()}), log), 0);
    const auto field = slurp(dir / "field.csv");
    EXPECT_EQ(std::count(field.begin(), field.end(), '\n'), 1 + 20 * 8);
}

TEST(MainEntry, ExitCodes)
{
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(main_entry({"convergence", "--case", "9"}, out, err), static_cast<int>(ErrorCode::InvalidArgument));
    EXPECT_EQ(err.str().rfind("error[invalid-argument]:", 0), 0u);

    const auto dir = scratch_dir("exit");
    err.str("");
    EXPECT_EQ(main_entry({"solve", "--mesh", (dir / "none.txt").string(), "--out", dir.string()}, out, err),
              static_cast<int>(ErrorCode::Io));
    err.str("");
    EXPECT_EQ(main_entry({"solve", "--n0", "2", "--sigma-s", "5", "--max-iter", "2", "--out", dir.string()}, out, err),
              static_cast<int>(ErrorCode::NonConvergence));
    EXPECT_NE(err.str().find("error[non-convergence]"), std::string::npos);
    EXPECT_EQ(main_entry({"quad-check", "--out", dir.string()}, out, err), 0);
}
