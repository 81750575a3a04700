#include "rte/dg.hpp"

#include "rte/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rte {

ElementBasis ElementBasis::from_corners(const std::array<Point, 3>& corners)
{
    ElementBasis K;
    K.corners = corners;
    K.area = 0.5 * cross(corners[1] - corners[0], corners[2] - corners[0]);
    if (!(K.area > 0.0)) {
        throw InvalidMesh("element has non-positive signed area");
    }
    const double inv2a = 1.0 / (2.0 * K.area);
    for (int i = 0; i < 3; ++i) {
        const Point& a = corners[static_cast<std::size_t>((i + 1) % 3)];
        const Point& b = corners[static_cast<std::size_t>((i + 2) % 3)];
        K.grads[static_cast<std::size_t>(i)] = inv2a * Vec2{a.y - b.y, b.x - a.x};

        const Vec2 d = corners[static_cast<std::size_t>((i + 1) % 3)] - corners[static_cast<std::size_t>(i)];
        const double len = norm(d);
        K.edge_lengths[static_cast<std::size_t>(i)] = len;
        K.normals[static_cast<std::size_t>(i)] = (1.0 / len) * Vec2{d.y, -d.x};
        K.diameter = std::max(K.diameter, len);
    }
    return K;
}

Point ElementBasis::edge_point(int k, double s) const
{
    return (1.0 - s) * corners[static_cast<std::size_t>(k)] + s * corners[static_cast<std::size_t>((k + 1) % 3)];
}

std::vector<ElementBasis> element_bases(const TriangleMesh& mesh)
{
    std::vector<ElementBasis> out;
    out.reserve(static_cast<std::size_t>(mesh.num_triangles()));
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        out.push_back(ElementBasis::from_corners(mesh.corners(t)));
    }
    return out;
}

const TriangleRule& assembly_triangle_rule()
{
    return triangle_rule_degree4();
}

const EdgeRule& assembly_edge_rule()
{
    static const EdgeRule rule = edge_rule(5);
    return rule;
}

LocalSystem assemble_local(const ElementBasis& K, Vec2 omega, double delta, std::span<const double> sigma_t_qp,
                           std::span<const double> source_qp, std::span<const InflowFace> inflow)
{
    const auto& rule = assembly_triangle_rule();
    const auto nq = static_cast<std::size_t>(rule.size());
    if (sigma_t_qp.size() != nq || source_qp.size() != nq) {
        throw InvalidArgument("assemble_local: coefficient samples do not match the triangle rule");
    }

    std::array<double, 3> stream{};  // omega . grad phi_j
    for (std::size_t j = 0; j < 3; ++j) {
        stream[j] = dot(omega, K.grads[j]);
    }

    LocalSystem sys;
    for (std::size_t q = 0; q < nq; ++q) {
        const auto& phi = rule.points[q];
        const double w = rule.weights[q] * K.area;
        const double st = sigma_t_qp[q];
        for (std::size_t i = 0; i < 3; ++i) {
            const double test = phi[i] + delta * stream[i];
            for (std::size_t j = 0; j < 3; ++j) {
                sys.A[i][j] += w * (stream[j] + st * phi[j]) * test;
            }
            sys.b[i] += w * source_qp[q] * test;
        }
    }

    const auto& erule = assembly_edge_rule();
    for (const auto& face : inflow) {
        const auto k = static_cast<std::size_t>(face.local_edge);
        const auto k1 = (k + 1) % 3;
        const double scale = face.flux * K.edge_lengths[k];
        for (int q = 0; q < erule.size(); ++q) {
            const double s = erule.points[static_cast<std::size_t>(q)];
            const double w = scale * erule.weights[static_cast<std::size_t>(q)];
            std::array<double, 3> phi{};
            phi[k] = 1.0 - s;
            phi[k1] = s;
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    sys.A[i][j] += w * phi[j] * phi[i];
                }
                sys.b[i] += w * face.upwind[static_cast<std::size_t>(q)] * phi[i];
            }
        }
    }
    return sys;
}

LocalSystem assemble_local(const ElementBasis& K, Vec2 omega, double delta, const ScalarField& sigma_t,
                           std::span<const int> inflow_edges, const ScalarField& upwind_trace,
                           const ScalarField& source)
{
    const auto& rule = assembly_triangle_rule();
    std::vector<double> st(static_cast<std::size_t>(rule.size()));
    std::vector<double> src(st.size());
    for (std::size_t q = 0; q < st.size(); ++q) {
        const Point x = K.map(rule.points[q]);
        st[q] = sigma_t(x);
        src[q] = source(x);
    }
    const auto& erule = assembly_edge_rule();
    std::vector<InflowFace> faces;
    for (int k : inflow_edges) {
        if (k < 0 || k > 2) {
            throw InvalidArgument("assemble_local: local edge index out of range");
        }
        InflowFace f;
        f.local_edge = k;
        f.flux = std::abs(dot(omega, K.normals[static_cast<std::size_t>(k)]));
        for (int q = 0; q < erule.size(); ++q) {
            f.upwind[static_cast<std::size_t>(q)] = upwind_trace(K.edge_point(k, erule.points[static_cast<std::size_t>(q)]));
        }
        faces.push_back(f);
    }
    return assemble_local(K, omega, delta, st, src, faces);
}

std::array<double, 3> solve_local(const LocalSystem& sys, int element, int direction)
{
    auto A = sys.A;
    auto b = sys.b;
    double norm_inf = 0.0;
    for (const auto& row : A) {
        norm_inf = std::max(norm_inf, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
    }
    const double floor = 1e-14 * norm_inf;
    auto fail = [&] {
        throw StabilityError("singular element system (element " + std::to_string(element) + ", direction " +
                                 std::to_string(direction) + ")",
                             element, direction);
    };
    if (!(norm_inf > 0.0)) {
        fail();
    }

    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < 3; ++i) {
            if (std::abs(A[i][k]) > std::abs(A[p][k])) {
                p = i;
            }
        }
        if (!(std::abs(A[p][k]) > floor)) {
            fail();
        }
        std::swap(A[k], A[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < 3; ++i) {
            const double f = A[i][k] / A[k][k];
            for (std::size_t j = k; j < 3; ++j) {
                A[i][j] -= f * A[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    std::array<double, 3> x{};
    for (std::size_t ii = 0; ii < 3; ++ii) {
        const std::size_t i = 2 - ii;
        double s = b[i];
        for (std::size_t j = i + 1; j < 3; ++j) {
            s -= A[i][j] * x[j];
        }
        x[i] = s / A[i][i];
    }
    return x;
}

double eval_field(const DGSolution& sol, int l, int K, const std::array<double, 3>& bary)
{
    if (l < 0 || l >= sol.num_directions() || K < 0 || K >= sol.num_elements()) {
        throw InvalidArgument("eval_field: direction or element index out of range");
    }
    constexpr double tol = 1e-12;
    const double sum = bary[0] + bary[1] + bary[2];
    if (std::abs(sum - 1.0) > tol || bary[0] < -tol || bary[1] < -tol || bary[2] < -tol) {
        throw InvalidArgument("eval_field: point outside the reference simplex");
    }
    const auto& c = sol.coeffs(l, K);
    return c[0] * bary[0] + c[1] * bary[1] + c[2] * bary[2];
}

std::array<std::array<double, 3>, 3> mass_matrix(double area)
{
    const double d = area / 6.0;
    const double o = area / 12.0;
    return {{{d, o, o}, {o, d, o}, {o, o, d}}};
}

DGSolution project_exact(const AngularField& u, const TriangleMesh& mesh, const AngularQuadrature& quad)
{
    const auto& rule = triangle_rule_degree6();
    DGSolution sol(quad.size(), mesh.num_triangles());
    for (int K = 0; K < mesh.num_triangles(); ++K) {
        const auto basis = ElementBasis::from_corners(mesh.corners(K));
        for (int l = 0; l < quad.size(); ++l) {
            const auto& omega = quad.direction(l);
            std::array<double, 3> rhs{};
            for (int q = 0; q < rule.size(); ++q) {
                const auto& phi = rule.points[static_cast<std::size_t>(q)];
                const double val = rule.weights[static_cast<std::size_t>(q)] * u(basis.map(phi), omega);
                for (std::size_t i = 0; i < 3; ++i) {
                    rhs[i] += val * phi[i];
                }
            }
            // rhs holds the moments divided by the area; M^{-1} = (3/area) [3 -1 -1; ...]
            auto& c = sol.coeffs(l, K);
            for (std::size_t i = 0; i < 3; ++i) {
                c[i] = 3.0 * (3.0 * rhs[i] - rhs[(i + 1) % 3] - rhs[(i + 2) % 3]);
            }
        }
    }
    return sol;
}

}  // namespace rte
