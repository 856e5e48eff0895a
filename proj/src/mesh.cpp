#include "diracfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace diracfem {

namespace {

constexpr double kRegionTol = 1e-12;
constexpr double kBaryTol = 1e-12;

long long edge_key(int v1, int v2) {
    const int a = std::min(v1, v2);
    const int b = std::max(v1, v2);
    return static_cast<long long>(a) * (1LL << 32) + b;
}

void set_size_fields(Mesh& mesh) {
    double hmax = 0.0;
    double hmin = std::numeric_limits<double>::max();
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double d = mesh.diameter(t);
        hmax = std::max(hmax, d);
        hmin = std::min(hmin, d);
    }
    mesh.h_max = hmax;
    mesh.h_min = mesh.num_triangles() > 0 ? hmin : 0.0;
}

}  // namespace

double Mesh::signed_area(int t) const {
    const auto& tri = triangles[t];
    const Point2 a = vertices[tri[0]];
    const Point2 b = vertices[tri[1]];
    const Point2 c = vertices[tri[2]];
    return 0.5 * cross(b - a, c - a);
}

double Mesh::diameter(int t) const {
    const auto& tri = triangles[t];
    const Point2 a = vertices[tri[0]];
    const Point2 b = vertices[tri[1]];
    const Point2 c = vertices[tri[2]];
    return std::max({distance(a, b), distance(b, c), distance(c, a)});
}

Point2 Mesh::barycenter(int t) const {
    const auto& tri = triangles[t];
    const Point2 a = vertices[tri[0]];
    const Point2 b = vertices[tri[1]];
    const Point2 c = vertices[tri[2]];
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

Mesh gen_square(int n, const Rect& bounds) {
    if (n < 1) throw Error("gen_square: resolution must be >= 1");
    if (!is_finite(bounds.lo) || !is_finite(bounds.hi))
        throw Error("gen_square: bounds must be finite");
    const double w = bounds.hi.x - bounds.lo.x;
    const double h = bounds.hi.y - bounds.lo.y;
    if (!(w > 0.0) || !(h > 0.0)) throw Error("gen_square: degenerate bounds");

    Mesh mesh;
    const double dx = w / n;
    const double dy = h / n;
    mesh.vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.vertices.push_back({bounds.lo.x + i * dx, bounds.lo.y + j * dy});

    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    mesh.triangles.reserve(static_cast<size_t>(2) * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int sw = vid(i, j), se = vid(i + 1, j);
            const int ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
            mesh.triangles.push_back({sw, se, ne});
            mesh.triangles.push_back({sw, ne, nw});
        }
    }

    for (int i = 0; i < n; ++i) mesh.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), 1});
    for (int j = 0; j < n; ++j) mesh.boundary_edges.push_back({vid(n, j), vid(n, j + 1), 1});
    for (int i = n; i > 0; --i) mesh.boundary_edges.push_back({vid(i, n), vid(i - 1, n), 1});
    for (int j = n; j > 0; --j) mesh.boundary_edges.push_back({vid(0, j), vid(0, j - 1), 1});

    // All elements are congruent; the diameter is the cell diagonal, so the
    // refinement relation h(2n) = h(n)/2 holds exactly in floating point.
    mesh.h_max = std::sqrt(dx * dx + dy * dy);
    mesh.h_min = mesh.h_max;
    return mesh;
}

Mesh gen_disk(int rings, double radius, Point2 center) {
    if (rings < 1) throw Error("gen_disk: rings must be >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw Error("gen_disk: radius must be positive");
    if (!is_finite(center)) throw Error("gen_disk: center must be finite");

    Mesh mesh;
    mesh.vertices.push_back(center);
    // ring j starts at index 1 + 3j(j-1) and carries 6j vertices
    for (int j = 1; j <= rings; ++j) {
        const double r = (radius * j) / rings;
        const int count = 6 * j;
        for (int t = 0; t < count; ++t) {
            const double theta = 2.0 * kPi * t / count;
            mesh.vertices.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
        }
    }

    auto ring_start = [](int j) { return 1 + 3 * j * (j - 1); };

    // center fan
    for (int t = 0; t < 6; ++t)
        mesh.triangles.push_back({0, ring_start(1) + t, ring_start(1) + (t + 1) % 6});

    // strips between ring j and ring j+1, six sectors each
    for (int j = 1; j < rings; ++j) {
        const int inner = ring_start(j), outer = ring_start(j + 1);
        const int ni = 6 * j, no = 6 * (j + 1);
        for (int s = 0; s < 6; ++s) {
            auto I = [&](int t) { return inner + (s * j + t) % ni; };
            auto O = [&](int t) { return outer + (s * (j + 1) + t) % no; };
            for (int t = 0; t <= j; ++t) {
                mesh.triangles.push_back({O(t), O(t + 1), I(std::min(t, j))});
                if (t < j) mesh.triangles.push_back({I(t), O(t + 1), I(t + 1)});
            }
        }
    }

    const int last = ring_start(rings);
    const int nb = 6 * rings;
    for (int t = 0; t < nb; ++t)
        mesh.boundary_edges.push_back({last + t, last + (t + 1) % nb, 1});

    set_size_fields(mesh);
    return mesh;
}

std::array<double, 3> barycentric_coords(const Mesh& mesh, int t, Point2 p) {
    const auto& tri = mesh.triangles[t];
    const Point2 a = mesh.vertices[tri[0]];
    const Point2 b = mesh.vertices[tri[1]];
    const Point2 c = mesh.vertices[tri[2]];
    const double area2 = cross(b - a, c - a);
    return {cross(b - p, c - p) / area2, cross(c - p, a - p) / area2, cross(a - p, b - p) / area2};
}

int locate(const Mesh& mesh, Point2 p) {
    if (!is_finite(p)) throw Error("locate: point must be finite");
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto l = barycentric_coords(mesh, t, p);
        if (l[0] >= -kBaryTol && l[1] >= -kBaryTol && l[2] >= -kBaryTol) return t;
    }
    throw OutsideDomainError("locate: point outside mesh");
}

SubdomainSpec SubdomainSpec::annulus(Point2 center, double r_inner, double r_outer) {
    if (!(0.0 <= r_inner && r_inner < r_outer))
        throw Error("SubdomainSpec: annulus requires 0 <= r_inner < r_outer");
    SubdomainSpec s;
    s.kind = SubdomainKind::Annulus;
    s.center = center;
    s.r_inner = r_inner;
    s.r_outer = r_outer;
    return s;
}

SubdomainSpec SubdomainSpec::exclusion_ball(Point2 center, double r) {
    if (!(r > 0.0)) throw Error("SubdomainSpec: exclusion ball requires r > 0");
    SubdomainSpec s;
    s.kind = SubdomainKind::ExclusionBall;
    s.center = center;
    s.r_inner = r;
    return s;
}

SubdomainSpec SubdomainSpec::rectangle(const Rect& r) {
    if (!(r.lo.x < r.hi.x && r.lo.y < r.hi.y))
        throw Error("SubdomainSpec: degenerate rectangle");
    SubdomainSpec s;
    s.kind = SubdomainKind::Rectangle;
    s.rect = r;
    return s;
}

bool SubdomainSpec::contains(Point2 p) const {
    switch (kind) {
        case SubdomainKind::Annulus: {
            const double d = distance(p, center);
            return d >= r_inner - kRegionTol && d <= r_outer + kRegionTol;
        }
        case SubdomainKind::ExclusionBall:
            return distance(p, center) >= r_inner - kRegionTol;
        case SubdomainKind::Rectangle:
            return p.x >= rect.lo.x - kRegionTol && p.x <= rect.hi.x + kRegionTol &&
                   p.y >= rect.lo.y - kRegionTol && p.y <= rect.hi.y + kRegionTol;
    }
    return false;
}

bool element_inside(const Mesh& mesh, int t, const SubdomainSpec& region) {
    const auto& tri = mesh.triangles[t];
    return region.contains(mesh.vertices[tri[0]]) && region.contains(mesh.vertices[tri[1]]) &&
           region.contains(mesh.vertices[tri[2]]) && region.contains(mesh.barycenter(t));
}

bool element_meets(const Mesh& mesh, int t, const SubdomainSpec& region) {
    const auto& tri = mesh.triangles[t];
    const Point2 a = mesh.vertices[tri[0]];
    const Point2 b = mesh.vertices[tri[1]];
    const Point2 c = mesh.vertices[tri[2]];
    const Point2 samples[] = {a,
                              b,
                              c,
                              0.5 * (a + b),
                              0.5 * (b + c),
                              0.5 * (c + a),
                              mesh.barycenter(t)};
    for (const Point2& p : samples)
        if (region.contains(p)) return true;
    return false;
}

SeparationReport check_separation(const Mesh& mesh, const SubdomainSpec& omega0,
                                  const SubdomainSpec& omega1) {
    SeparationReport report;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (!element_meets(mesh, t, omega0)) continue;
        const auto& tri = mesh.triangles[t];
        const bool inside = omega1.contains(mesh.vertices[tri[0]]) &&
                            omega1.contains(mesh.vertices[tri[1]]) &&
                            omega1.contains(mesh.vertices[tri[2]]);
        if (!inside) report.offending.push_back(t);
    }
    report.ok = report.offending.empty();
    return report;
}

MeshMetrics mesh_metrics(const Mesh& mesh) {
    if (mesh.num_triangles() == 0) throw Error("mesh_metrics: empty mesh");
    MeshMetrics m;
    m.num_elements = mesh.num_triangles();
    m.h_min = std::numeric_limits<double>::max();
    m.min_angle_deg = 180.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double d = mesh.diameter(t);
        m.h_max = std::max(m.h_max, d);
        m.h_min = std::min(m.h_min, d);
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k) {
            const Point2 v = mesh.vertices[tri[k]];
            const Point2 u = mesh.vertices[tri[(k + 1) % 3]] - v;
            const Point2 w = mesh.vertices[tri[(k + 2) % 3]] - v;
            double cosang = dot(u, w) / (norm(u) * norm(w));
            cosang = std::clamp(cosang, -1.0, 1.0);
            m.min_angle_deg = std::min(m.min_angle_deg, std::acos(cosang) * 180.0 / kPi);
        }
    }
    return m;
}

int MeshEdges::find(int v1, int v2) const {
    const auto it = index.find(edge_key(v1, v2));
    return it == index.end() ? -1 : it->second;
}

MeshEdges build_edges(const Mesh& mesh) {
    MeshEdges table;
    table.triangle_edges.resize(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const int pairs[3][2] = {{tri[0], tri[1]}, {tri[1], tri[2]}, {tri[2], tri[0]}};
        for (int e = 0; e < 3; ++e) {
            const long long key = edge_key(pairs[e][0], pairs[e][1]);
            auto it = table.index.find(key);
            int id;
            if (it == table.index.end()) {
                id = table.num_edges();
                table.index.emplace(key, id);
                table.edges.push_back({std::min(pairs[e][0], pairs[e][1]),
                                       std::max(pairs[e][0], pairs[e][1])});
                table.use_count.push_back(0);
            } else {
                id = it->second;
            }
            ++table.use_count[id];
            table.triangle_edges[t][e] = id;
        }
    }
    return table;
}

void validate_mesh(const Mesh& mesh) {
    if (mesh.num_vertices() < 3 || mesh.num_triangles() < 1)
        throw Error("validate_mesh: too few vertices or triangles");
    for (const Point2& p : mesh.vertices)
        if (!is_finite(p)) throw Error("validate_mesh: non-finite vertex");
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        for (int v : mesh.triangles[t])
            if (v < 0 || v >= mesh.num_vertices())
                throw Error("validate_mesh: vertex index out of range");
        if (!(mesh.signed_area(t) > 0.0))
            throw Error("validate_mesh: non-positive element orientation");
    }

    const MeshEdges table = build_edges(mesh);
    std::set<std::pair<int, int>> once_used;
    for (int e = 0; e < table.num_edges(); ++e) {
        if (table.use_count[e] < 1 || table.use_count[e] > 2)
            throw Error("validate_mesh: non-conforming edge");
        if (table.use_count[e] == 1) once_used.insert({table.edges[e][0], table.edges[e][1]});
    }
    std::set<std::pair<int, int>> declared;
    for (const auto& be : table.index) (void)be;
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        declared.insert({std::min(be.v1, be.v2), std::max(be.v1, be.v2)});
    }
    if (declared != once_used)
        throw Error("validate_mesh: boundary edges do not match once-used edges");

    const MeshMetrics m = mesh_metrics(mesh);
    if (std::abs(m.h_max - mesh.h_max) > 1e-12 * std::max(1.0, m.h_max) ||
        std::abs(m.h_min - mesh.h_min) > 1e-12 * std::max(1.0, m.h_min))
        throw Error("validate_mesh: size fields inconsistent with geometry");
}

}  // namespace diracfem
