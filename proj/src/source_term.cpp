#include "diracfem/source_term.hpp"

#include <algorithm>
#include <cmath>

#include "diracfem/quadrature.hpp"

namespace diracfem {

std::vector<double> assemble_dirac_rhs(const FeSpace& space, Point2 x0) {
    const Mesh& mesh = *space.mesh;
    const int t0 = locate(mesh, x0);
    const auto bary = barycentric_coords(mesh, t0, x0);
    std::vector<double> phi(space.dofs_per_element());
    space.basis().eval(bary, phi);

    std::vector<double> rhs(space.n_dofs, 0.0);
    const auto dofs = space.dofs_of(t0);
    for (int i = 0; i < space.dofs_per_element(); ++i) rhs[dofs[i]] = phi[i];
    return rhs;
}

double distance_to_element_boundary(const Mesh& mesh, int t, Point2 p) {
    // for a point inside a convex element the nearest boundary point is a
    // perpendicular edge foot, so the minimum over edge lines suffices
    const auto& tri = mesh.triangles[t];
    double d = std::numeric_limits<double>::max();
    for (int e = 0; e < 3; ++e) {
        const Point2 a = mesh.vertices[tri[e]];
        const Point2 b = mesh.vertices[tri[(e + 1) % 3]];
        d = std::min(d, std::abs(cross(b - a, p - a)) / distance(a, b));
    }
    return d;
}

double choose_epsilon(const Mesh& mesh, Point2 x0) {
    const int t0 = locate(mesh, x0);
    const auto bary = barycentric_coords(mesh, t0, x0);
    if (*std::min_element(bary.begin(), bary.end()) <= 1e-12)
        throw Error("choose_epsilon: x0 lies on an element boundary; perturb x0 off the edge");
    return std::min(mesh.h_max / 10.0, 0.9 * distance_to_element_boundary(mesh, t0, x0));
}

std::vector<double> assemble_ball_rhs(const FeSpace& space, Point2 x0, double eps) {
    if (!(eps > 0.0)) throw Error("assemble_ball_rhs: eps must be positive");
    const Mesh& mesh = *space.mesh;
    const int t0 = locate(mesh, x0);
    const int nloc = space.dofs_per_element();
    const double mass = kPi * eps * eps;

    std::vector<double> rhs(space.n_dofs, 0.0);
    std::vector<double> phi(nloc);

    const bool contained = distance_to_element_boundary(mesh, t0, x0) >= eps;
    if (contained) {
        const PolarRule rule = ball_rule(x0, eps, 8, 32);
        const auto dofs = space.dofs_of(t0);
        for (int q = 0; q < rule.size(); ++q) {
            const auto bary = barycentric_coords(mesh, t0, rule.points[q]);
            space.basis().eval(bary, phi);
            const double w = rule.weights[q] / mass;
            for (int i = 0; i < nloc; ++i) rhs[dofs[i]] += w * phi[i];
        }
        return rhs;
    }

    // straddling ball: locate every quadrature point and evaluate the basis
    // of its own element; the denser rule compensates for the kinks the
    // element interfaces introduce in the integrand
    const PolarRule rule = ball_rule(x0, eps, 16, 128);
    for (int q = 0; q < rule.size(); ++q) {
        int t;
        try {
            t = locate(mesh, rule.points[q]);
        } catch (const OutsideDomainError&) {
            throw Error("assemble_ball_rhs: ball crosses the domain boundary");
        }
        const auto bary = barycentric_coords(mesh, t, rule.points[q]);
        space.basis().eval(bary, phi);
        const auto dofs = space.dofs_of(t);
        const double w = rule.weights[q] / mass;
        for (int i = 0; i < nloc; ++i) rhs[dofs[i]] += w * phi[i];
    }
    return rhs;
}

double mean_value_check(Point2 x, double eps, const std::function<double(Point2)>& v) {
    if (!(eps > 0.0)) throw Error("mean_value_check: eps must be positive");
    const PolarRule rule = ball_rule(x, eps, 8, 32);
    KahanSum sum;
    for (int q = 0; q < rule.size(); ++q) sum.add(rule.weights[q] * v(rule.points[q]));
    const double average = sum.value() / (kPi * eps * eps);
    return std::abs(average - v(x));
}

}  // namespace diracfem
