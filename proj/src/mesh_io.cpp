#include <cstdio>
#include <fstream>
#include <sstream>

#include "diracfem/mesh.hpp"

namespace diracfem {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// strips Triangle-style '#' comments and empty lines
bool next_data_line(std::istream& in, std::istringstream& line) {
    std::string raw;
    while (std::getline(in, raw)) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream probe(raw);
        std::string tok;
        if (probe >> tok) {
            line.clear();
            line.str(raw);
            return true;
        }
    }
    return false;
}

}  // namespace

void write_triangle_mesh(const Mesh& mesh, const std::string& stem) {
    std::vector<int> vertex_marker(mesh.num_vertices(), 0);
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        vertex_marker[be.v1] = std::max(vertex_marker[be.v1], be.marker);
        vertex_marker[be.v2] = std::max(vertex_marker[be.v2], be.marker);
    }

    std::ofstream node(stem + ".node");
    if (!node) throw Error("write_triangle_mesh: cannot open " + stem + ".node");
    node << mesh.num_vertices() << " 2 0 1\n";
    for (int v = 0; v < mesh.num_vertices(); ++v)
        node << (v + 1) << ' ' << fmt(mesh.vertices[v].x) << ' ' << fmt(mesh.vertices[v].y) << ' '
             << vertex_marker[v] << '\n';

    std::ofstream ele(stem + ".ele");
    if (!ele) throw Error("write_triangle_mesh: cannot open " + stem + ".ele");
    ele << mesh.num_triangles() << " 3 0\n";
    for (int t = 0; t < mesh.num_triangles(); ++t)
        ele << (t + 1) << ' ' << (mesh.triangles[t][0] + 1) << ' ' << (mesh.triangles[t][1] + 1)
            << ' ' << (mesh.triangles[t][2] + 1) << '\n';
}

Mesh read_triangle_mesh(const std::string& stem) {
    std::ifstream node(stem + ".node");
    if (!node) throw Error("read_triangle_mesh: cannot open " + stem + ".node");
    std::istringstream line;
    if (!next_data_line(node, line)) throw Error("read_triangle_mesh: empty .node file");
    int nv = 0, dim = 0, nattr = 0, nmark = 0;
    line >> nv >> dim >> nattr >> nmark;
    if (nv < 1 || dim != 2 || nattr != 0 || nmark < 0 || nmark > 1)
        throw Error("read_triangle_mesh: unsupported .node header");

    Mesh mesh;
    mesh.vertices.resize(nv);
    std::vector<int> vertex_marker(nv, 0);
    for (int k = 0; k < nv; ++k) {
        if (!next_data_line(node, line)) throw Error("read_triangle_mesh: truncated .node file");
        int idx = 0;
        double x = 0.0, y = 0.0;
        line >> idx >> x >> y;
        if (idx < 1 || idx > nv) throw Error("read_triangle_mesh: vertex index out of range");
        if (!std::isfinite(x) || !std::isfinite(y))
            throw Error("read_triangle_mesh: non-finite vertex coordinate");
        if (nmark == 1) line >> vertex_marker[idx - 1];
        mesh.vertices[idx - 1] = {x, y};
    }

    std::ifstream ele(stem + ".ele");
    if (!ele) throw Error("read_triangle_mesh: cannot open " + stem + ".ele");
    if (!next_data_line(ele, line)) throw Error("read_triangle_mesh: empty .ele file");
    int nt = 0, per = 0, eattr = 0;
    line >> nt >> per >> eattr;
    if (nt < 1 || per != 3 || eattr != 0)
        throw Error("read_triangle_mesh: unsupported .ele header");
    mesh.triangles.resize(nt);
    for (int k = 0; k < nt; ++k) {
        if (!next_data_line(ele, line)) throw Error("read_triangle_mesh: truncated .ele file");
        int idx = 0, a = 0, b = 0, c = 0;
        line >> idx >> a >> b >> c;
        if (idx < 1 || idx > nt) throw Error("read_triangle_mesh: element index out of range");
        if (a < 1 || a > nv || b < 1 || b > nv || c < 1 || c > nv)
            throw Error("read_triangle_mesh: element vertex out of range");
        mesh.triangles[idx - 1] = {a - 1, b - 1, c - 1};
    }

    // normalize orientation, then recover boundary edges from edge usage
    for (int t = 0; t < mesh.num_triangles(); ++t)
        if (mesh.signed_area(t) < 0.0) std::swap(mesh.triangles[t][1], mesh.triangles[t][2]);

    const MeshEdges table = build_edges(mesh);
    for (int e = 0; e < table.num_edges(); ++e) {
        if (table.use_count[e] != 1) continue;
        const int v1 = table.edges[e][0], v2 = table.edges[e][1];
        int marker = 1;
        if (nmark == 1 && vertex_marker[v1] > 0 && vertex_marker[v2] > 0)
            marker = std::min(vertex_marker[v1], vertex_marker[v2]);
        mesh.boundary_edges.push_back({v1, v2, marker});
    }

    double hmax = 0.0, hmin = std::numeric_limits<double>::max();
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double d = mesh.diameter(t);
        hmax = std::max(hmax, d);
        hmin = std::min(hmin, d);
    }
    mesh.h_max = hmax;
    mesh.h_min = hmin;
    validate_mesh(mesh);
    return mesh;
}

}  // namespace diracfem
