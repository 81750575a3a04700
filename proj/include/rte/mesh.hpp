#pragma once

#include "rte/geometry.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <vector>

namespace rte {

/// Marker for "no neighbour" in edge and face adjacency.
inline constexpr int kBoundary = -1;

struct Triangle {
    std::array<int, 3> vertex_ids{};  // counterclockwise
    std::array<int, 3> edge_ids{};    // local edge k joins vertex k and vertex k+1
};

struct Edge {
    std::array<int, 2> vertex_ids{};
    int left_tri = kBoundary;
    int right_tri = kBoundary;  // kBoundary on the domain boundary
    Vec2 unit_normal;           // outward from left_tri
    double length = 0.0;

    bool is_boundary() const { return right_tri == kBoundary; }
};

/// Neighbour across local edge k of a triangle, and that edge's local index
/// inside the neighbour. Both are kBoundary on the domain boundary.
struct FaceLink {
    int neighbor = kBoundary;
    int neighbor_edge = kBoundary;
};

/// Conforming triangulation with edge adjacency. Immutable after construction.
class TriangleMesh {
public:
    TriangleMesh() = default;

    /// Builds adjacency from raw connectivity. Throws InvalidMesh on
    /// clockwise/degenerate triangles, repeated vertices or non-conforming edges.
    TriangleMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles, int level = 0);

    std::span<const Point> vertices() const { return vertices_; }
    std::span<const Triangle> triangles() const { return triangles_; }
    std::span<const Edge> edges() const { return edges_; }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_triangles() const { return static_cast<int>(triangles_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// Maximum edge length.
    double h() const { return h_; }
    int level() const { return level_; }

    const Point& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
    const Triangle& triangle(int t) const { return triangles_[static_cast<std::size_t>(t)]; }
    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

    std::array<Point, 3> corners(int t) const;
    double area(int t) const;
    double total_area() const;
    /// Longest edge of triangle t.
    double diameter(int t) const;
    Point centroid(int t) const;

    /// Outward unit normal of triangle t across its local edge k.
    Vec2 outward_normal(int t, int k) const;
    double edge_length(int t, int k) const;
    const FaceLink& face(int t, int k) const { return faces_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]; }

private:
    std::vector<Point> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::vector<std::array<FaceLink, 3>> faces_;
    double h_ = 0.0;
    int level_ = 0;
};

/// n x n squares on (0,1)^2, each cut along its lower-left to upper-right diagonal.
TriangleMesh build_structured_unit_square(int n);

/// Red refinement: triangle t becomes children 4t..4t+3 (three corner
/// children in vertex order, then the middle one).
TriangleMesh refine_regular(const TriangleMesh& mesh);

/// Per-triangle inflow flags for one direction: local edge k is inflow when
/// omega . n < -eps_n; everything else (tangential included) is outflow.
struct EdgeClassification {
    std::vector<std::array<bool, 3>> inflow;

    bool is_inflow(int t, int k) const { return inflow[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]; }
    int inflow_count(int t) const;
};

inline constexpr double kTangentialTolerance = 1e-12;

EdgeClassification classify_edges(const TriangleMesh& mesh, Vec2 omega, double eps_n = kTangentialTolerance);

/// Plain-text format: "nv nt", nv lines "x y", nt lines "i j k" (0-based, ccw).
TriangleMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace rte
