#include "rte/cli.hpp"

#include "rte/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace rte::cli {

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_number(const std::string& s, int line)
{
    if (s == "nan") {
        return std::nan("");
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw IoError("table csv line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

}  // namespace

void write_table_csv(const ConvergenceTable& table, std::ostream& os)
{
    os << kTableHeader << '\n';
    for (const auto& r : table.rows) {
        os << r.level << ',' << format_number(r.h) << ',' << r.n_elems << ',' << r.n_dirs << ','
           << format_number(r.e1) << ',' << format_number(r.e2) << ',' << format_number(r.e3) << ','
           << format_number(r.e4) << ',' << format_number(r.eh) << ',' << r.iterations << '\n';
    }
}

void write_rates_csv(const ConvergenceTable& table, std::ostream& os)
{
    os << kRatesHeader << '\n';
    for (std::size_t i = 0; i < table.rates.size(); ++i) {
        os << table.rows[i].level << ',' << table.rows[i + 1].level;
        for (double r : table.rates[i]) {
            os << ',' << format_number(r);
        }
        os << '\n';
    }
}

ConvergenceTable read_table_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kTableHeader) {
        throw IoError("table csv: missing or unexpected header");
    }
    ConvergenceTable table;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (fields.size() != 10) {
            throw IoError("table csv line " + std::to_string(lineno) + ": expected 10 fields");
        }
        ErrorReport r;
        r.level = static_cast<int>(parse_number(fields[0], lineno));
        r.h = parse_number(fields[1], lineno);
        r.n_elems = static_cast<int>(parse_number(fields[2], lineno));
        r.n_dirs = static_cast<int>(parse_number(fields[3], lineno));
        r.e1 = parse_number(fields[4], lineno);
        r.e2 = parse_number(fields[5], lineno);
        r.e3 = parse_number(fields[6], lineno);
        r.e4 = parse_number(fields[7], lineno);
        r.eh = parse_number(fields[8], lineno);
        r.iterations = static_cast<int>(parse_number(fields[9], lineno));
        table.rows.push_back(r);
    }
    table.rates = compute_rates(table.rows);
    return table;
}

}  // namespace rte::cli
