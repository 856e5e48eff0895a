#include "diracfem/norms.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "diracfem/quadrature.hpp"
#include "diracfem/runtime.hpp"

namespace diracfem {

std::string NormTag::key() const {
    switch (kind) {
        case NormKind::L2: return "l2";
        case NormKind::H1Semi: return "h1semi";
        case NormKind::H1: return "h1";
        case NormKind::W1p: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "w1p:%g", p);
            return buf;
        }
    }
    return "?";
}

NormTag NormTag::parse(const std::string& text) {
    if (text == "l2") return {NormKind::L2, 2.0};
    if (text == "h1semi") return {NormKind::H1Semi, 2.0};
    if (text == "h1") return {NormKind::H1, 2.0};
    if (text.rfind("w1p:", 0) == 0) {
        const double p = std::atof(text.c_str() + 4);
        if (!(p >= 1.0 && p <= 2.0)) throw Error("NormTag: w1p exponent must be in [1, 2]");
        return {NormKind::W1p, p};
    }
    throw Error("NormTag: unknown norm '" + text + "'");
}

double ErrorReport::value(const NormTag& tag) const {
    const auto it = values.find(tag.key());
    if (it == values.end()) throw Error("ErrorReport: norm '" + tag.key() + "' not computed");
    return it->second;
}

namespace {

struct ElementContrib {
    double e2 = 0.0;       // integral of e^2
    double g2 = 0.0;       // integral of |grad e|^2
    std::vector<double> gp;  // integral of |grad e|^p per requested p
};

bool closure_contains(const Mesh& mesh, int t, Point2 p) {
    const auto l = barycentric_coords(mesh, t, p);
    return l[0] >= -1e-12 && l[1] >= -1e-12 && l[2] >= -1e-12;
}

// integrates the error and error-gradient powers of u against exact over the
// given elements; shared by error_norms and error_field
std::vector<ElementContrib> integrate_elements(const FeSpace& space, std::span<const double> u,
                                               const ExactSolution& exact,
                                               const std::vector<int>& elements,
                                               const std::vector<double>& p_list,
                                               int quad_degree) {
    const Mesh& mesh = *space.mesh;
    const ReferenceBasis& basis = space.basis();
    const int nloc = basis.size();
    const QuadratureRule& rule = triangle_rule(quad_degree);

    std::vector<std::vector<double>> phi(rule.size());
    std::vector<std::vector<std::array<double, 3>>> dphi(rule.size());
    for (int q = 0; q < rule.size(); ++q) {
        phi[q].resize(nloc);
        dphi[q].resize(nloc);
        basis.eval(rule.points[q], phi[q]);
        basis.eval_grad(rule.points[q], dphi[q]);
    }

    std::vector<ElementContrib> out(elements.size());
    parallel_for(static_cast<int>(elements.size()), [&](int idx) {
        const int t = elements[idx];
        const ElementGeometry geom = element_geometry(mesh, t);
        const auto dofs = space.dofs_of(t);
        ElementContrib c;
        c.gp.assign(p_list.size(), 0.0);
        for (int q = 0; q < rule.size(); ++q) {
            const Point2 x = map_to_physical(mesh, t, rule.points[q]);
            double uh = 0.0;
            Point2 guh{0.0, 0.0};
            for (int i = 0; i < nloc; ++i) {
                const double coef = u[dofs[i]];
                uh += coef * phi[q][i];
                for (int d = 0; d < 3; ++d)
                    guh = guh + (coef * dphi[q][i][d]) * geom.grad_lambda[d];
            }
            const double w = rule.weights[q] * geom.area;
            const double e = exact.value(x) - uh;
            const Point2 ge = exact.gradient(x) - guh;
            const double ge2 = dot(ge, ge);
            c.e2 += w * e * e;
            c.g2 += w * ge2;
            for (size_t k = 0; k < p_list.size(); ++k)
                c.gp[k] += w * std::pow(ge2, 0.5 * p_list[k]);
        }
        out[idx] = std::move(c);
    });
    return out;
}

}  // namespace

ErrorReport error_norms(const FeSpace& space, std::span<const double> u,
                        const ExactSolution& exact, const SubdomainSpec& subdomain,
                        std::span<const NormTag> tags, bool per_element, int quad_degree) {
    if (static_cast<int>(u.size()) != space.n_dofs) throw Error("error_norms: size mismatch");
    if (tags.empty()) throw Error("error_norms: no norms requested");
    const Mesh& mesh = *space.mesh;

    ErrorReport report;
    for (int t = 0; t < mesh.num_triangles(); ++t)
        if (element_inside(mesh, t, subdomain)) report.included_elements.push_back(t);
    if (report.included_elements.empty())
        throw Error("error_norms: no element lies inside the subdomain");

    if (exact.singular_point) {
        for (int t : report.included_elements)
            if (closure_contains(mesh, t, *exact.singular_point))
                throw Error("error_norms: singular point inside the measured subdomain");
    }

    std::vector<double> p_list;
    for (const NormTag& tag : tags)
        if (tag.kind == NormKind::W1p) p_list.push_back(tag.p);

    if (quad_degree < 0) quad_degree = 2 * space.order + 4;
    const auto contribs = integrate_elements(space, u, exact, report.included_elements, p_list,
                                             quad_degree);

    KahanSum e2, g2;
    std::vector<KahanSum> gp(p_list.size());
    for (const ElementContrib& c : contribs) {
        e2.add(c.e2);
        g2.add(c.g2);
        for (size_t k = 0; k < p_list.size(); ++k) gp[k].add(c.gp[k]);
    }

    for (const NormTag& tag : tags) {
        double value = 0.0;
        switch (tag.kind) {
            case NormKind::L2: value = std::sqrt(std::max(0.0, e2.value())); break;
            case NormKind::H1Semi: value = std::sqrt(std::max(0.0, g2.value())); break;
            case NormKind::H1:
                value = std::sqrt(std::max(0.0, e2.value() + g2.value()));
                break;
            case NormKind::W1p: {
                size_t k = 0;
                while (p_list[k] != tag.p) ++k;
                value = std::pow(std::max(0.0, gp[k].value()), 1.0 / tag.p);
                break;
            }
        }
        report.values[tag.key()] = value;
    }

    if (per_element) {
        report.element_l2.reserve(contribs.size());
        for (const ElementContrib& c : contribs)
            report.element_l2.push_back(std::sqrt(std::max(0.0, c.e2)));
    }
    return report;
}

std::vector<FieldEntry> error_field(const FeSpace& space, std::span<const double> u,
                                    const ExactSolution& exact, int quad_degree) {
    if (static_cast<int>(u.size()) != space.n_dofs) throw Error("error_field: size mismatch");
    const Mesh& mesh = *space.mesh;

    std::vector<FieldEntry> field(mesh.num_triangles());
    std::vector<int> regular;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        field[t].element = t;
        field[t].barycenter = mesh.barycenter(t);
        field[t].singular =
            exact.singular_point && closure_contains(mesh, t, *exact.singular_point);
        if (!field[t].singular) regular.push_back(t);
    }

    if (quad_degree < 0) quad_degree = 2 * space.order + 4;
    const auto contribs = integrate_elements(space, u, exact, regular, {}, quad_degree);
    for (size_t i = 0; i < regular.size(); ++i)
        field[regular[i]].l2_error = std::sqrt(std::max(0.0, contribs[i].e2));
    return field;
}

void write_error_field_csv(std::span<const FieldEntry> field, std::ostream& out) {
    out << "elem,xc,yc,err2\n";
    char buf[128];
    for (const FieldEntry& entry : field) {
        if (entry.singular) continue;
        std::snprintf(buf, sizeof(buf), "%d,%.12e,%.12e,%.12e\n", entry.element,
                      entry.barycenter.x, entry.barycenter.y, entry.l2_error);
        out << buf;
    }
}

double field_l2(std::span<const FieldEntry> field) {
    KahanSum sum;
    for (const FieldEntry& entry : field)
        if (!entry.singular) sum.add(entry.l2_error * entry.l2_error);
    return std::sqrt(std::max(0.0, sum.value()));
}

FeNorms fe_function_norms(const FeSpace& space, std::span<const double> u) {
    if (static_cast<int>(u.size()) != space.n_dofs)
        throw Error("fe_function_norms: size mismatch");
    ExactSolution zero;
    zero.value = [](Point2) { return 0.0; };
    zero.gradient = [](Point2) { return Point2{0.0, 0.0}; };

    std::vector<int> all(space.mesh->num_triangles());
    for (int t = 0; t < space.mesh->num_triangles(); ++t) all[t] = t;
    const auto contribs = integrate_elements(space, u, zero, all, {}, 2 * space.order + 2);
    KahanSum e2, g2;
    for (const ElementContrib& c : contribs) {
        e2.add(c.e2);
        g2.add(c.g2);
    }
    return {std::sqrt(std::max(0.0, e2.value())), std::sqrt(std::max(0.0, g2.value()))};
}

double inverse_ratio(const FeSpace& space, std::span<const double> u) {
    const FeNorms norms = fe_function_norms(space, u);
    if (norms.l2 == 0.0) throw Error("inverse_ratio: zero function");
    return norms.h1semi * space.mesh->h_min / norms.l2;
}

}  // namespace diracfem
