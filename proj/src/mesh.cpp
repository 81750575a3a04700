#include "rte/mesh.hpp"

#include "rte/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

namespace rte {

TriangleMesh::TriangleMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles, int level)
    : vertices_(std::move(vertices)), level_(level)
{
    const int nv = num_vertices();
    for (int v = 0; v < nv; ++v) {
        const auto& p = vertices_[static_cast<std::size_t>(v)];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InvalidMesh("vertex " + std::to_string(v) + " has non-finite coordinates");
        }
    }

    triangles_.reserve(triangles.size());
    faces_.assign(triangles.size(), {});
    std::map<std::pair<int, int>, int> edge_index;

    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& ids = triangles[t];
        for (int id : ids) {
            if (id < 0 || id >= nv) {
                throw InvalidMesh("triangle " + std::to_string(t) + " references vertex " + std::to_string(id) +
                                  " out of range");
            }
        }
        if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2]) {
            throw InvalidMesh("triangle " + std::to_string(t) + " has repeated vertices");
        }
        const Point a = vertices_[static_cast<std::size_t>(ids[0])];
        const Point b = vertices_[static_cast<std::size_t>(ids[1])];
        const Point c = vertices_[static_cast<std::size_t>(ids[2])];
        if (!(cross(b - a, c - a) > 0.0)) {
            throw InvalidMesh("triangle " + std::to_string(t) + " is degenerate or clockwise");
        }

        Triangle tri;
        tri.vertex_ids = ids;
        for (int k = 0; k < 3; ++k) {
            const int va = ids[static_cast<std::size_t>(k)];
            const int vb = ids[static_cast<std::size_t>((k + 1) % 3)];
            const auto key = std::minmax(va, vb);
            auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, num_edges());
            if (inserted) {
                Edge e;
                e.vertex_ids = {va, vb};
                e.left_tri = static_cast<int>(t);
                const Vec2 d = vertices_[static_cast<std::size_t>(vb)] - vertices_[static_cast<std::size_t>(va)];
                e.length = norm(d);
                // ccw traversal: the outward normal is the tangent rotated clockwise
                e.unit_normal = (1.0 / e.length) * Vec2{d.y, -d.x};
                edges_.push_back(e);
            } else {
                Edge& e = edges_[static_cast<std::size_t>(it->second)];
                if (e.right_tri != kBoundary) {
                    throw InvalidMesh("edge (" + std::to_string(va) + "," + std::to_string(vb) +
                                      ") shared by more than two triangles");
                }
                if (e.vertex_ids[0] != vb || e.vertex_ids[1] != va) {
                    throw InvalidMesh("edge (" + std::to_string(va) + "," + std::to_string(vb) +
                                      ") traversed with the same orientation by two triangles");
                }
                e.right_tri = static_cast<int>(t);
            }
            tri.edge_ids[static_cast<std::size_t>(k)] = it->second;
        }
        triangles_.push_back(tri);
    }

    for (int t = 0; t < num_triangles(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const Edge& e = edge(triangle(t).edge_ids[static_cast<std::size_t>(k)]);
            FaceLink link;
            if (!e.is_boundary()) {
                link.neighbor = e.left_tri == t ? e.right_tri : e.left_tri;
                const auto& nedges = triangle(link.neighbor).edge_ids;
                const auto pos = std::find(nedges.begin(), nedges.end(), triangle(t).edge_ids[static_cast<std::size_t>(k)]);
                link.neighbor_edge = static_cast<int>(pos - nedges.begin());
            }
            faces_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = link;
        }
    }

    h_ = 0.0;
    for (const auto& e : edges_) {
        h_ = std::max(h_, e.length);
    }
}

std::array<Point, 3> TriangleMesh::corners(int t) const
{
    const auto& ids = triangle(t).vertex_ids;
    return {vertex(ids[0]), vertex(ids[1]), vertex(ids[2])};
}

double TriangleMesh::area(int t) const
{
    const auto p = corners(t);
    return 0.5 * cross(p[1] - p[0], p[2] - p[0]);
}

double TriangleMesh::total_area() const
{
    double sum = 0.0;
    for (int t = 0; t < num_triangles(); ++t) {
        sum += area(t);
    }
    return sum;
}

double TriangleMesh::diameter(int t) const
{
    double d = 0.0;
    for (int e : triangle(t).edge_ids) {
        d = std::max(d, edge(e).length);
    }
    return d;
}

Point TriangleMesh::centroid(int t) const
{
    const auto p = corners(t);
    return (1.0 / 3.0) * (p[0] + p[1] + p[2]);
}

Vec2 TriangleMesh::outward_normal(int t, int k) const
{
    const Edge& e = edge(triangle(t).edge_ids[static_cast<std::size_t>(k)]);
    return e.left_tri == t ? e.unit_normal : -e.unit_normal;
}

double TriangleMesh::edge_length(int t, int k) const
{
    return edge(triangle(t).edge_ids[static_cast<std::size_t>(k)]).length;
}

TriangleMesh build_structured_unit_square(int n)
{
    if (n < 1) {
        throw InvalidArgument("structured mesh needs n >= 1, got " + std::to_string(n));
    }
    std::vector<Point> vertices;
    vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        }
    }
    auto id = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::array<int, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return TriangleMesh(std::move(vertices), std::move(triangles), 0);
}

TriangleMesh refine_regular(const TriangleMesh& mesh)
{
    std::vector<Point> vertices(mesh.vertices().begin(), mesh.vertices().end());
    std::vector<int> midpoint(static_cast<std::size_t>(mesh.num_edges()));
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const auto& ids = mesh.edge(e).vertex_ids;
        midpoint[static_cast<std::size_t>(e)] = static_cast<int>(vertices.size());
        vertices.push_back(0.5 * (mesh.vertex(ids[0]) + mesh.vertex(ids[1])));
    }

    std::vector<std::array<int, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(4 * mesh.num_triangles()));
    for (const auto& tri : mesh.triangles()) {
        const auto& v = tri.vertex_ids;
        const int m01 = midpoint[static_cast<std::size_t>(tri.edge_ids[0])];
        const int m12 = midpoint[static_cast<std::size_t>(tri.edge_ids[1])];
        const int m20 = midpoint[static_cast<std::size_t>(tri.edge_ids[2])];
        triangles.push_back({v[0], m01, m20});
        triangles.push_back({m01, v[1], m12});
        triangles.push_back({m20, m12, v[2]});
        triangles.push_back({m01, m12, m20});
    }
    return TriangleMesh(std::move(vertices), std::move(triangles), mesh.level() + 1);
}

int EdgeClassification::inflow_count(int t) const
{
    const auto& f = inflow[static_cast<std::size_t>(t)];
    return static_cast<int>(f[0]) + static_cast<int>(f[1]) + static_cast<int>(f[2]);
}

EdgeClassification classify_edges(const TriangleMesh& mesh, Vec2 omega, double eps_n)
{
    if (std::abs(norm(omega) - 1.0) > 1e-12) {
        throw InvalidArgument("classify_edges: direction is not a unit vector");
    }
    EdgeClassification out;
    out.inflow.resize(static_cast<std::size_t>(mesh.num_triangles()));
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        for (int k = 0; k < 3; ++k) {
            out.inflow[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] =
                dot(omega, mesh.outward_normal(t, k)) < -eps_n;
        }
    }
    return out;
}

TriangleMesh load_mesh(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open mesh file " + path.string());
    }
    long nv = -1;
    long nt = -1;
    if (!(in >> nv >> nt) || nv < 3 || nt < 1) {
        throw InvalidMesh(path.string() + ": bad header, expected 'nv nt'");
    }
    std::vector<Point> vertices(static_cast<std::size_t>(nv));
    for (auto& p : vertices) {
        if (!(in >> p.x >> p.y)) {
            throw InvalidMesh(path.string() + ": truncated vertex block");
        }
    }
    std::vector<std::array<int, 3>> triangles(static_cast<std::size_t>(nt));
    for (auto& t : triangles) {
        if (!(in >> t[0] >> t[1] >> t[2])) {
            throw InvalidMesh(path.string() + ": truncated triangle block");
        }
    }
    return TriangleMesh(std::move(vertices), std::move(triangles), 0);
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write mesh file " + path.string());
    }
    out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
    out << std::setprecision(17);
    for (const auto& p : mesh.vertices()) {
        out << p.x << ' ' << p.y << '\n';
    }
    for (const auto& t : mesh.triangles()) {
        out << t.vertex_ids[0] << ' ' << t.vertex_ids[1] << ' ' << t.vertex_ids[2] << '\n';
    }
}

}  // namespace rte
