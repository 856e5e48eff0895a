#include "diracfem/assembly.hpp"

#include <cmath>

#include "diracfem/quadrature.hpp"
#include "diracfem/runtime.hpp"

namespace diracfem {

int stiffness_quadrature_degree(int order) {
    switch (order) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 4;
        case 4: return 6;
        default: throw Error("stiffness_quadrature_degree: order must be in 1..4");
    }
}

SparseSpd assemble_stiffness(const FeSpace& space) {
    const Mesh& mesh = *space.mesh;
    const ReferenceBasis& basis = space.basis();
    const int nloc = basis.size();
    const QuadratureRule& rule = triangle_rule(stiffness_quadrature_degree(space.order));

    // reference-space barycentric gradients once per quadrature point
    std::vector<std::vector<std::array<double, 3>>> dphi(rule.size());
    for (int q = 0; q < rule.size(); ++q) {
        dphi[q].resize(nloc);
        basis.eval_grad(rule.points[q], dphi[q]);
    }

    const int nt = mesh.num_triangles();
    std::vector<std::vector<double>> local(nt);
    parallel_for(nt, [&](int t) {
        const ElementGeometry geom = element_geometry(mesh, t);
        std::vector<Point2> grads(nloc);
        std::vector<double>& k_loc = local[t];
        k_loc.assign(static_cast<size_t>(nloc) * nloc, 0.0);
        for (int q = 0; q < rule.size(); ++q) {
            for (int i = 0; i < nloc; ++i) {
                Point2 g{0.0, 0.0};
                for (int d = 0; d < 3; ++d) g = g + dphi[q][i][d] * geom.grad_lambda[d];
                grads[i] = g;
            }
            const double w = rule.weights[q] * geom.area;
            for (int i = 0; i < nloc; ++i)
                for (int j = 0; j < nloc; ++j)
                    k_loc[static_cast<size_t>(i) * nloc + j] += w * dot(grads[i], grads[j]);
        }
    });

    TripletBuilder builder(space.n_dofs);
    builder.reserve(static_cast<size_t>(nt) * nloc * nloc);
    for (int t = 0; t < nt; ++t) {
        const auto dofs = space.dofs_of(t);
        const std::vector<double>& k_loc = local[t];
        for (int i = 0; i < nloc; ++i)
            for (int j = 0; j < nloc; ++j)
                builder.add(dofs[i], dofs[j], k_loc[static_cast<size_t>(i) * nloc + j]);
    }
    return builder.compress();
}

std::vector<double> assemble_load(const FeSpace& space, const std::function<double(Point2)>& f,
                                  int degree) {
    const Mesh& mesh = *space.mesh;
    const ReferenceBasis& basis = space.basis();
    const int nloc = basis.size();
    if (degree < 0) degree = 2 * space.order + 4;
    const QuadratureRule& rule = triangle_rule(degree);

    std::vector<std::vector<double>> phi(rule.size());
    for (int q = 0; q < rule.size(); ++q) {
        phi[q].resize(nloc);
        basis.eval(rule.points[q], phi[q]);
    }

    const int nt = mesh.num_triangles();
    std::vector<std::vector<double>> local(nt);
    parallel_for(nt, [&](int t) {
        const double area = mesh.signed_area(t);
        std::vector<double>& f_loc = local[t];
        f_loc.assign(nloc, 0.0);
        for (int q = 0; q < rule.size(); ++q) {
            const Point2 x = map_to_physical(mesh, t, rule.points[q]);
            const double w = rule.weights[q] * area * f(x);
            for (int i = 0; i < nloc; ++i) f_loc[i] += w * phi[q][i];
        }
    });

    std::vector<double> b(space.n_dofs, 0.0);
    for (int t = 0; t < nt; ++t) {
        const auto dofs = space.dofs_of(t);
        for (int i = 0; i < nloc; ++i) b[dofs[i]] += local[t][i];
    }
    return b;
}

std::vector<double> interpolate(const FeSpace& space, const std::function<double(Point2)>& f) {
    std::vector<double> u(space.n_dofs);
    for (int d = 0; d < space.n_dofs; ++d) {
        u[d] = f(space.dof_coords[d]);
        if (!std::isfinite(u[d])) throw Error("interpolate: non-finite sample value");
    }
    return u;
}

DirichletSystem apply_dirichlet(const FeSpace& space, const SparseSpd& a,
                                std::span<const double> b,
                                const std::function<double(Point2)>& g) {
    if (a.n != space.n_dofs || static_cast<int>(b.size()) != space.n_dofs)
        throw Error("apply_dirichlet: size mismatch");

    DirichletSystem sys;
    std::vector<char> constrained(space.n_dofs, 0);
    sys.constrained_values.assign(space.n_dofs, 0.0);
    for (int d : space.boundary_dofs) {
        constrained[d] = 1;
        const double val = g(space.dof_coords[d]);
        if (!std::isfinite(val)) throw Error("apply_dirichlet: non-finite boundary value");
        sys.constrained_values[d] = val;
    }

    std::vector<int> global_to_interior(space.n_dofs, -1);
    for (int d = 0; d < space.n_dofs; ++d) {
        if (constrained[d]) continue;
        global_to_interior[d] = static_cast<int>(sys.interior_to_global.size());
        sys.interior_to_global.push_back(d);
    }
    const int ni = static_cast<int>(sys.interior_to_global.size());
    if (ni == 0) throw Error("apply_dirichlet: no interior dofs");

    std::vector<double> lifted(space.n_dofs);
    a.multiply(sys.constrained_values, lifted);

    sys.rhs.resize(ni);
    TripletBuilder builder(ni);
    for (int row = 0; row < ni; ++row) {
        const int d = sys.interior_to_global[row];
        sys.rhs[row] = b[d] - lifted[d];
        for (int k = a.row_ptr[d]; k < a.row_ptr[d + 1]; ++k) {
            const int col = global_to_interior[a.col_idx[k]];
            if (col >= 0) builder.add(row, col, a.values[k]);
        }
    }
    sys.matrix = builder.compress();
    return sys;
}

std::vector<double> expand_solution(const DirichletSystem& system,
                                    std::span<const double> interior) {
    if (interior.size() != system.interior_to_global.size())
        throw Error("expand_solution: size mismatch");
    std::vector<double> full = system.constrained_values;
    for (size_t i = 0; i < interior.size(); ++i)
        full[system.interior_to_global[i]] = interior[i];
    return full;
}

}  // namespace diracfem
