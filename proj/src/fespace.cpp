#include "diracfem/fespace.hpp"

#include <cmath>

namespace diracfem {

namespace {

// prod_{i<m} (t - i) / (m - i); the 1D building block of the lattice basis
double lattice_poly(int m, double t) {
    double v = 1.0;
    for (int i = 0; i < m; ++i) v *= (t - i) / static_cast<double>(m - i);
    return v;
}

double lattice_poly_deriv(int m, double t) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        double prod = 1.0;
        for (int i = 0; i < m; ++i)
            if (i != j) prod *= (t - i);
        sum += prod;
    }
    double denom = 1.0;
    for (int i = 0; i < m; ++i) denom *= static_cast<double>(m - i);
    return sum / denom;
}

}  // namespace

ReferenceBasis::ReferenceBasis(int order) : order_(order) {
    if (order < 1 || order > 4) throw Error("ReferenceBasis: order must be in 1..4");
    const int k = order;
    nodes_.push_back({k, 0, 0});
    nodes_.push_back({0, k, 0});
    nodes_.push_back({0, 0, k});
    for (int t = 1; t < k; ++t) nodes_.push_back({k - t, t, 0});  // edge v0 -> v1
    for (int t = 1; t < k; ++t) nodes_.push_back({0, k - t, t});  // edge v1 -> v2
    for (int t = 1; t < k; ++t) nodes_.push_back({t, 0, k - t});  // edge v2 -> v0
    for (int a = 1; a <= k - 2; ++a)
        for (int b = 1; b <= k - 1 - a; ++b) nodes_.push_back({a, b, k - a - b});
}

std::array<double, 3> ReferenceBasis::node_bary(int local) const {
    const auto& n = nodes_[local];
    const double k = order_;
    return {n[0] / k, n[1] / k, n[2] / k};
}

void ReferenceBasis::eval(const std::array<double, 3>& bary, std::span<double> values) const {
    const double k = order_;
    for (int i = 0; i < size(); ++i) {
        const auto& n = nodes_[i];
        values[i] = lattice_poly(n[0], k * bary[0]) * lattice_poly(n[1], k * bary[1]) *
                    lattice_poly(n[2], k * bary[2]);
    }
}

void ReferenceBasis::eval_grad(const std::array<double, 3>& bary,
                               std::span<std::array<double, 3>> grads) const {
    const double k = order_;
    for (int i = 0; i < size(); ++i) {
        const auto& n = nodes_[i];
        const double p0 = lattice_poly(n[0], k * bary[0]);
        const double p1 = lattice_poly(n[1], k * bary[1]);
        const double p2 = lattice_poly(n[2], k * bary[2]);
        grads[i][0] = k * lattice_poly_deriv(n[0], k * bary[0]) * p1 * p2;
        grads[i][1] = p0 * k * lattice_poly_deriv(n[1], k * bary[1]) * p2;
        grads[i][2] = p0 * p1 * k * lattice_poly_deriv(n[2], k * bary[2]);
    }
}

ElementGeometry element_geometry(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Point2 p1 = mesh.vertices[tri[0]];
    const Point2 p2 = mesh.vertices[tri[1]];
    const Point2 p3 = mesh.vertices[tri[2]];
    const double area2 = cross(p2 - p1, p3 - p1);
    ElementGeometry g;
    g.area = 0.5 * area2;
    g.grad_lambda[0] = {(p2.y - p3.y) / area2, (p3.x - p2.x) / area2};
    g.grad_lambda[1] = {(p3.y - p1.y) / area2, (p1.x - p3.x) / area2};
    g.grad_lambda[2] = {(p1.y - p2.y) / area2, (p2.x - p1.x) / area2};
    return g;
}

Point2 map_to_physical(const Mesh& mesh, int t, const std::array<double, 3>& bary) {
    const auto& tri = mesh.triangles[t];
    const Point2 a = mesh.vertices[tri[0]];
    const Point2 b = mesh.vertices[tri[1]];
    const Point2 c = mesh.vertices[tri[2]];
    return {bary[0] * a.x + bary[1] * b.x + bary[2] * c.x,
            bary[0] * a.y + bary[1] * b.y + bary[2] * c.y};
}

FeSpace build_space(const Mesh& mesh, int order) {
    if (order < 1 || order > 4) throw Error("build_space: order must be in 1..4");
    FeSpace space;
    space.mesh = &mesh;
    space.order = order;
    space.basis_ptr = std::make_shared<ReferenceBasis>(order);

    const MeshEdges edges = build_edges(mesh);
    const int k = order;
    const int per_edge = k - 1;
    const int per_cell = (k - 1) * (k - 2) / 2;
    const int nv = mesh.num_vertices();
    const int ne = edges.num_edges();
    const int nt = mesh.num_triangles();
    space.n_dofs = nv + per_edge * ne + per_cell * nt;

    // dof coordinates: vertices, then edge nodes walked low -> high endpoint,
    // then element interiors. Edge coordinates come from the edge endpoints
    // so both incident elements agree bitwise.
    space.dof_coords.resize(space.n_dofs);
    for (int v = 0; v < nv; ++v) space.dof_coords[v] = mesh.vertices[v];
    for (int e = 0; e < ne; ++e) {
        const Point2 p = mesh.vertices[edges.edges[e][0]];
        const Point2 q = mesh.vertices[edges.edges[e][1]];
        for (int t = 0; t < per_edge; ++t) {
            const double s = static_cast<double>(t + 1) / k;
            space.dof_coords[nv + e * per_edge + t] = p + s * (q - p);
        }
    }

    const ReferenceBasis& basis = *space.basis_ptr;
    const int stride = basis.size();
    space.element_dofs.assign(static_cast<size_t>(nt) * stride, -1);
    const int interior_base = nv + per_edge * ne;
    for (int t = 0; t < nt; ++t) {
        int* dofs = space.element_dofs.data() + static_cast<size_t>(t) * stride;
        const auto& tri = mesh.triangles[t];
        dofs[0] = tri[0];
        dofs[1] = tri[1];
        dofs[2] = tri[2];
        int local = 3;
        const int locals[3][2] = {{0, 1}, {1, 2}, {2, 0}};
        for (int e = 0; e < 3; ++e) {
            const int a = tri[locals[e][0]], b = tri[locals[e][1]];
            const int eid = edges.triangle_edges[t][e];
            for (int s = 0; s < per_edge; ++s) {
                const int slot = a < b ? s : per_edge - 1 - s;
                dofs[local++] = nv + eid * per_edge + slot;
            }
        }
        for (int s = 0; s < per_cell; ++s) {
            const int gid = interior_base + t * per_cell + s;
            dofs[local + s] = gid;
            space.dof_coords[gid] = map_to_physical(mesh, t, basis.node_bary(local + s));
        }
    }

    std::vector<char> on_boundary(space.n_dofs, 0);
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        on_boundary[be.v1] = 1;
        on_boundary[be.v2] = 1;
        const int eid = edges.find(be.v1, be.v2);
        if (eid < 0) throw Error("build_space: boundary edge missing from edge table");
        for (int s = 0; s < per_edge; ++s) on_boundary[nv + eid * per_edge + s] = 1;
    }
    for (int d = 0; d < space.n_dofs; ++d)
        if (on_boundary[d]) space.boundary_dofs.push_back(d);

    return space;
}

double eval_fe(const FeSpace& space, std::span<const double> coeffs, Point2 p) {
    const int t = locate(*space.mesh, p);
    const auto bary = barycentric_coords(*space.mesh, t, p);
    std::vector<double> phi(space.dofs_per_element());
    space.basis().eval(bary, phi);
    const auto dofs = space.dofs_of(t);
    double v = 0.0;
    for (int i = 0; i < space.dofs_per_element(); ++i) v += coeffs[dofs[i]] * phi[i];
    return v;
}

Point2 eval_fe_gradient(const FeSpace& space, std::span<const double> coeffs, Point2 p) {
    const int t = locate(*space.mesh, p);
    const auto bary = barycentric_coords(*space.mesh, t, p);
    std::vector<std::array<double, 3>> dphi(space.dofs_per_element());
    space.basis().eval_grad(bary, dphi);
    const ElementGeometry geom = element_geometry(*space.mesh, t);
    const auto dofs = space.dofs_of(t);
    Point2 g{0.0, 0.0};
    for (int i = 0; i < space.dofs_per_element(); ++i) {
        Point2 grad{0.0, 0.0};
        for (int d = 0; d < 3; ++d) grad = grad + dphi[i][d] * geom.grad_lambda[d];
        g = g + coeffs[dofs[i]] * grad;
    }
    return g;
}

}  // namespace diracfem
