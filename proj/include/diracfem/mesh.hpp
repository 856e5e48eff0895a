#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "diracfem/common.hpp"

namespace diracfem {

struct BoundaryEdge {
    int v1 = -1;
    int v2 = -1;
    int marker = 1;
};

/// Conforming triangulation with positively oriented (CCW) elements.
/// Built by the generators or the Triangle-format reader and treated as
/// immutable afterwards.
struct Mesh {
    std::vector<Point2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    double h_max = 0.0;  // largest element diameter
    double h_min = 0.0;  // smallest element diameter

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    double signed_area(int t) const;
    double diameter(int t) const;
    Point2 barycenter(int t) const;
};

struct Rect {
    Point2 lo{0.0, 0.0};
    Point2 hi{1.0, 1.0};
};

/// Structured triangulation of a rectangle: n x n cells, each split along
/// its SW-NE diagonal. All elements are congruent right triangles.
Mesh gen_square(int n, const Rect& bounds = {});

/// Concentric-ring triangulation of a disk: ring j carries 6j vertices, the
/// center is fanned by six triangles, and each ring pair is filled with an
/// alternating strip. 6*rings^2 elements in total.
Mesh gen_disk(int rings, double radius = 1.0, Point2 center = {0.0, 0.0});

/// Barycentric coordinates of p with respect to triangle t.
std::array<double, 3> barycentric_coords(const Mesh& mesh, int t, Point2 p);

/// Index of the element whose closure contains p; ties on shared edges or
/// vertices resolve to the lowest element index. Throws OutsideDomainError
/// when no element contains p.
int locate(const Mesh& mesh, Point2 p);

enum class SubdomainKind { Annulus, ExclusionBall, Rectangle };

/// Region predicate used for measurement subdomains. Comparisons are closed
/// with an absolute slack of 1e-12 so mesh vertices sitting exactly on a
/// radius or box face count as inside.
struct SubdomainSpec {
    SubdomainKind kind = SubdomainKind::Rectangle;
    Point2 center{0.0, 0.0};
    double r_inner = 0.0;
    double r_outer = 0.0;
    Rect rect{};

    static SubdomainSpec annulus(Point2 center, double r_inner, double r_outer);
    static SubdomainSpec exclusion_ball(Point2 center, double r);
    static SubdomainSpec rectangle(const Rect& r);

    bool contains(Point2 p) const;
};

/// Element inclusion rule for norms: all three vertices and the barycenter
/// satisfy the predicate.
bool element_inside(const Mesh& mesh, int t, const SubdomainSpec& region);

/// Sampled "element touches region" test (vertices, edge midpoints,
/// barycenter). Exact for complements of balls since elements are convex.
bool element_meets(const Mesh& mesh, int t, const SubdomainSpec& region);

struct SeparationReport {
    bool ok = false;
    std::vector<int> offending;  // elements meeting omega0 with a vertex outside omega1
};

/// Checks that every element meeting omega0 lies inside omega1 (vertex-wise),
/// i.e. the discrete neighborhood of omega0 stays separated from the
/// singularity region excluded by omega1.
SeparationReport check_separation(const Mesh& mesh, const SubdomainSpec& omega0,
                                  const SubdomainSpec& omega1);

struct MeshMetrics {
    double h_max = 0.0;
    double h_min = 0.0;
    double min_angle_deg = 0.0;
    int num_elements = 0;
};

MeshMetrics mesh_metrics(const Mesh& mesh);

/// Edge table with sorted endpoint pairs. triangle_edges lists, per element,
/// the edge ids in local order (v0v1, v1v2, v2v0).
struct MeshEdges {
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangle_edges;
    std::vector<int> use_count;

    int num_edges() const { return static_cast<int>(edges.size()); }
    int find(int v1, int v2) const;

    std::unordered_map<long long, int> index;
};

MeshEdges build_edges(const Mesh& mesh);

/// Structural checks: finite coordinates, positive orientation, conforming
/// edges (every edge used once or twice), boundary list matching the
/// once-used edges, size fields consistent with the geometry.
/// Throws Error on the first violation.
void validate_mesh(const Mesh& mesh);

/// Triangle-format ASCII pair stem.node / stem.ele (1-based indices).
void write_triangle_mesh(const Mesh& mesh, const std::string& stem);
Mesh read_triangle_mesh(const std::string& stem);

}  // namespace diracfem
