#include "rte/analysis.hpp"
#include "rte/angular.hpp"
#include "rte/error.hpp"
#include "rte/mesh.hpp"
#include "rte/solver.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace rte;

namespace {

Method parse_method(const std::string& name)
{
    if (name == "dodsd") {
        return Method::DODSD;
    }
    if (name == "dodg") {
        return Method::DODG;
    }
    throw InvalidArgument("method must be 'dodsd' or 'dodg', got '" + name + "'");
}

SolverConfig make_config(const std::string& method, double c_bar, double tol, int max_iter, int threads)
{
    SolverConfig c;
    c.method = parse_method(method);
    c.c_bar = c_bar;
    c.tol = tol;
    c.max_iter = max_iter;
    c.threads = threads;
    validate(c);
    return c;
}

ManufacturedCase case_from_args(int id, double sigma_t, double sigma_s, std::optional<int> n_dirs,
                                std::optional<double> eta)
{
    CaseOptions o;
    o.sigma_t = sigma_t;
    o.sigma_s = sigma_s;
    o.n_dirs = n_dirs;
    if (eta) {
        o.phase = PhaseFunction::henyey_greenstein(*eta);
    }
    return make_case(id, o);
}

py::dict report_dict(const ErrorReport& r)
{
    py::dict d;
    d["level"] = r.level;
    d["h"] = r.h;
    d["n_elems"] = r.n_elems;
    d["n_dirs"] = r.n_dirs;
    d["e1"] = r.e1;
    d["e2"] = r.e2;
    d["e3"] = r.e3;
    d["e4"] = r.e4;
    d["eh"] = r.eh;
    d["iters"] = r.iterations;
    return d;
}

py::dict table_dict(const ConvergenceTable& t)
{
    py::list rows;
    for (const auto& r : t.rows) {
        rows.append(report_dict(r));
    }
    py::list rates;
    for (const auto& r : t.rates) {
        rates.append(py::make_tuple(r[0], r[1], r[2], r[3], r[4]));
    }
    py::dict d;
    d["rows"] = rows;
    d["rates"] = rates;
    return d;
}

py::array_t<double> coefficients(const DGSolution& sol)
{
    py::array_t<double> a({sol.num_directions(), sol.num_elements(), 3});
    auto v = a.mutable_unchecked<3>();
    for (int l = 0; l < sol.num_directions(); ++l) {
        for (int k = 0; k < sol.num_elements(); ++k) {
            for (int j = 0; j < 3; ++j) {
                v(l, k, j) = sol.coeffs(l, k)[static_cast<std::size_t>(j)];
            }
        }
    }
    return a;
}

}  // namespace

PYBIND11_MODULE(_dodsd, m)
{
    m.doc() = "Discrete-ordinate streamline-diffusion DG solver for 2D radiative transfer";

    static py::exception<Error> error(m, "DodsdError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            py::object exc = py::handle(error.ptr())(std::string(to_string(e.code())) + ": " + e.what());
            exc.attr("code") = static_cast<int>(e.code());
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<TriangleMesh>(m, "Mesh")
        .def_property_readonly("num_triangles", &TriangleMesh::num_triangles)
        .def_property_readonly("num_vertices", &TriangleMesh::num_vertices)
        .def_property_readonly("num_edges", &TriangleMesh::num_edges)
        .def_property_readonly("h", &TriangleMesh::h)
        .def_property_readonly("level", &TriangleMesh::level)
        .def("total_area", &TriangleMesh::total_area)
        .def("vertices",
             [](const TriangleMesh& mesh) {
                 py::array_t<double> a({mesh.num_vertices(), 2});
                 auto v = a.mutable_unchecked<2>();
                 for (int i = 0; i < mesh.num_vertices(); ++i) {
                     v(i, 0) = mesh.vertex(i).x;
                     v(i, 1) = mesh.vertex(i).y;
                 }
                 return a;
             })
        .def("triangles", [](const TriangleMesh& mesh) {
            py::array_t<int> a({mesh.num_triangles(), 3});
            auto v = a.mutable_unchecked<2>();
            for (int t = 0; t < mesh.num_triangles(); ++t) {
                for (int j = 0; j < 3; ++j) {
                    v(t, j) = mesh.triangle(t).vertex_ids[static_cast<std::size_t>(j)];
                }
            }
            return a;
        });

    m.def("unit_square_mesh", &build_structured_unit_square, py::arg("n"),
          "n x n squares on the unit square, each cut along the lower-left to upper-right diagonal.");
    m.def("refine", &refine_regular, py::arg("mesh"), "Split every triangle into four at the edge midpoints.");
    m.def("load_mesh", &load_mesh, py::arg("path"));
    m.def("save_mesh", &save_mesh, py::arg("mesh"), py::arg("path"));

    m.def(
        "m_bound",
        [](int n_dirs, double eta, const std::string& phase) {
            const auto pf = phase == "linear" ? PhaseFunction::linear_anisotropic() : PhaseFunction::henyey_greenstein(eta);
            return m_bound(ScatterMatrix(pf, trapezoid_circle(n_dirs)));
        },
        py::arg("n_dirs"), py::arg("eta") = 0.0, py::arg("phase") = "hg",
        "Largest row sum of the discrete scattering matrix on the trapezoid rule.");

    m.def(
        "solve",
        [](int case_id, const TriangleMesh& mesh, const std::string& method, double c_bar, double tol, int max_iter,
           double sigma_t, double sigma_s, std::optional<int> n_dirs, std::optional<double> eta, int threads) {
            const auto mc = case_from_args(case_id, sigma_t, sigma_s, n_dirs, eta);
            const auto problem = mc.problem();
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = solve(problem, mesh, make_config(method, c_bar, tol, max_iter, threads));
            }
            auto rep = error_norms(r.solution, mc, mesh, problem.quad);
            rep.iterations = r.report.iterations;
            py::dict d;
            d["coefficients"] = coefficients(r.solution);
            d["iterations"] = r.report.iterations;
            d["residual_history"] = r.report.residual_history;
            d["converged"] = r.report.converged;
            d["delta"] = r.report.delta_used;
            d["errors"] = report_dict(rep);
            return d;
        },
        py::arg("case_id"), py::arg("mesh"), py::arg("method") = "dodsd", py::arg("c_bar") = 1.0,
        py::arg("tol") = 1e-10, py::arg("max_iter") = 1000, py::arg("sigma_t") = 10.0, py::arg("sigma_s") = 0.1,
        py::arg("n_dirs") = py::none(), py::arg("eta") = py::none(), py::arg("threads") = 0,
        "Solve a manufactured benchmark on `mesh`. Coefficients have shape (n_dirs, n_elems, 3).");

    m.def(
        "convergence_study",
        [](int case_id, int levels, int n0, const std::string& method, double c_bar, double sigma_t, double sigma_s,
           std::optional<int> n_dirs, std::optional<double> eta) {
            const auto mc = case_from_args(case_id, sigma_t, sigma_s, n_dirs, eta);
            const auto cfg = make_config(method, c_bar, 1e-10, 1000, 0);
            ConvergenceTable t;
            {
                py::gil_scoped_release release;
                t = convergence_study(mc, levels, cfg, n0);
            }
            return table_dict(t);
        },
        py::arg("case_id"), py::arg("levels") = 4, py::arg("n0") = 10, py::arg("method") = "dodsd",
        py::arg("c_bar") = 1.0, py::arg("sigma_t") = 10.0, py::arg("sigma_s") = 0.1, py::arg("n_dirs") = py::none(),
        py::arg("eta") = py::none());

    m.def(
        "compare_methods",
        [](int case_id, int levels, int n0, double c_bar) {
            const auto mc = make_case(case_id);
            SolverConfig cfg;
            cfg.c_bar = c_bar;
            MethodComparison c;
            {
                py::gil_scoped_release release;
                c = compare_methods(mc, levels, cfg, n0);
            }
            py::dict d;
            d["dodsd"] = table_dict(c.dodsd);
            d["dodg"] = table_dict(c.dodg);
            d["eh_ratio"] = c.eh_ratio;
            return d;
        },
        py::arg("case_id"), py::arg("levels") = 4, py::arg("n0") = 10, py::arg("c_bar") = 1.0);
}
