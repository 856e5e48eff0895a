#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "diracfem/assembly.hpp"
#include "diracfem/exact.hpp"
#include "diracfem/norms.hpp"

using namespace diracfem;

namespace {

ExactSolution polynomial_solution() {
    ExactSolution s;
    s.value = [](Point2 p) { return p.x * p.x + p.x * p.y - 2.0 * p.y + 0.5; };
    s.gradient = [](Point2 p) { return Point2{2.0 * p.x + p.y, p.x - 2.0}; };
    s.validity = "quadratic polynomial, smooth everywhere";
    return s;
}

const NormTag kL2{NormKind::L2, 2.0};
const NormTag kH1Semi{NormKind::H1Semi, 2.0};
const NormTag kH1{NormKind::H1, 2.0};

// Nodal interpolant of a singular solution: exact dof values everywhere
// except at the singular point itself, which gets zero. Elements touching
// the singularity are excluded or flagged by the norms module anyway.
std::vector<double> capped_interpolant(const FeSpace& space, const ExactSolution& exact) {
    std::vector<double> u(static_cast<size_t>(space.n_dofs));
    for (int i = 0; i < space.n_dofs; ++i) {
        const Point2 p = space.dof_coords[static_cast<size_t>(i)];
        const bool at_singularity =
            exact.singular_point && distance(p, *exact.singular_point) < 1e-14;
        u[static_cast<size_t>(i)] = at_singularity ? 0.0 : exact.value(p);
    }
    return u;
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("norm tags parse and print consistently") {
    CHECK(NormTag::parse("l2").kind == NormKind::L2);
    CHECK(NormTag::parse("h1semi").kind == NormKind::H1Semi);
    CHECK(NormTag::parse("h1").kind == NormKind::H1);
    const NormTag w = NormTag::parse("w1p:1.5");
    CHECK(w.kind == NormKind::W1p);
    CHECK(w.p == 1.5);
    for (const char* text : {"l2", "h1semi", "h1", "w1p:1.5", "w1p:1.25"}) {
        CHECK(NormTag::parse(text).key() == text);
    }
    CHECK_THROWS_AS(NormTag::parse("w1p:2.5"), Error);
    CHECK_THROWS_AS(NormTag::parse("w1p:0.5"), Error);
    CHECK_THROWS_AS(NormTag::parse("energy"), Error);
    CHECK_THROWS_AS(NormTag::parse(""), Error);
}

TEST_CASE("interpolant of a matching-degree polynomial has zero error") {
    const Mesh m = gen_square(3);
    const ExactSolution exact = polynomial_solution();
    const SubdomainSpec whole = SubdomainSpec::rectangle({{0.0, 0.0}, {1.0, 1.0}});
    const std::vector<NormTag> tags = {kL2, kH1Semi, kH1, {NormKind::W1p, 1.5}};
    for (int k = 2; k <= 4; ++k) {
        const FeSpace space = build_space(m, k);
        const std::vector<double> u = interpolate(space, exact.value);
        const ErrorReport report = error_norms(space, u, exact, whole, tags);
        for (const NormTag& tag : tags) CHECK(report.value(tag) <= 1e-10);
        CHECK(static_cast<int>(report.included_elements.size()) == m.num_triangles());
    }
}

TEST_CASE("w1p with p=2 reproduces the H1 seminorm") {
    const Mesh m = gen_disk(4);
    const FeSpace space = build_space(m, 1);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    const SubdomainSpec region = SubdomainSpec::annulus({0.0, 0.0}, 0.3, 1.0);
    const std::vector<NormTag> tags = {kH1Semi, {NormKind::W1p, 2.0}};
    const ErrorReport report = error_norms(space, u, exact, region, tags);
    const double h1semi = report.value(kH1Semi);
    const double w12 = report.value({NormKind::W1p, 2.0});
    CHECK(w12 == doctest::Approx(h1semi).epsilon(1e-12));
    CHECK(h1semi > 0.0);
}

TEST_CASE("the full H1 norm is the root of the squared sum") {
    const Mesh m = gen_square(8);
    const FeSpace space = build_space(m, 1);
    const auto u_smooth = [](Point2 p) { return std::sin(kPi * p.x) * std::sin(kPi * p.y); };
    ExactSolution exact;
    exact.value = u_smooth;
    exact.gradient = [](Point2 p) {
        return Point2{kPi * std::cos(kPi * p.x) * std::sin(kPi * p.y),
                      kPi * std::sin(kPi * p.x) * std::cos(kPi * p.y)};
    };
    exact.validity = "smooth";
    const std::vector<double> u = interpolate(space, u_smooth);
    const SubdomainSpec whole = SubdomainSpec::rectangle({{0.0, 0.0}, {1.0, 1.0}});
    const std::vector<NormTag> tags = {kL2, kH1Semi, kH1};
    const ErrorReport r = error_norms(space, u, exact, whole, tags);
    const double combined = std::hypot(r.value(kL2), r.value(kH1Semi));
    CHECK(r.value(kH1) == doctest::Approx(combined).epsilon(1e-10));
}

TEST_CASE("shrinking the subdomain cannot grow the error") {
    const Mesh m = gen_disk(6);
    const FeSpace space = build_space(m, 1);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    const std::vector<NormTag> tags = {kL2, kH1};
    // inner radii chosen to bracket a vertex ring (r = 1/3 on this mesh) so
    // the two element sets genuinely differ
    const SubdomainSpec big = SubdomainSpec::annulus({0.0, 0.0}, 0.2, 1.0);
    const SubdomainSpec small = SubdomainSpec::annulus({0.0, 0.0}, 0.4, 1.0);
    const ErrorReport rb = error_norms(space, u, exact, big, tags);
    const ErrorReport rs = error_norms(space, u, exact, small, tags);
    CHECK(rs.value(kL2) <= rb.value(kL2));
    CHECK(rs.value(kH1) <= rb.value(kH1));
    CHECK(rs.included_elements.size() < rb.included_elements.size());
}

TEST_CASE("per-element contributions add up to the subdomain L2 error") {
    const Mesh m = gen_disk(5);
    const FeSpace space = build_space(m, 2);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    const SubdomainSpec region = SubdomainSpec::annulus({0.0, 0.0}, 0.25, 1.0);
    const ErrorReport with = error_norms(space, u, exact, region,
                                         std::span(&kL2, 1), /*per_element=*/true);
    REQUIRE(with.element_l2.size() == with.included_elements.size());
    double sum2 = 0.0;
    for (double e : with.element_l2) sum2 += e * e;
    CHECK(std::sqrt(sum2) == doctest::Approx(with.value(kL2)).epsilon(1e-12));

    const ErrorReport without = error_norms(space, u, exact, region, std::span(&kL2, 1));
    CHECK(without.element_l2.empty());
}

TEST_CASE("included elements honor the vertex-and-barycenter rule") {
    const Mesh m = gen_disk(5);
    const FeSpace space = build_space(m, 1);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    const SubdomainSpec region = SubdomainSpec::exclusion_ball({0.0, 0.0}, 0.3);
    const ErrorReport r = error_norms(space, u, exact, region, std::span(&kL2, 1));
    CHECK(!r.included_elements.empty());
    for (int t : r.included_elements) {
        CHECK(element_inside(m, t, region));
        for (int v : m.triangles[static_cast<size_t>(t)])
            CHECK(norm(m.vertices[static_cast<size_t>(v)]) >= 0.3 - 1e-12);
    }
    // elements not included genuinely violate the rule
    for (int t = 0; t < m.num_triangles(); ++t) {
        if (std::find(r.included_elements.begin(), r.included_elements.end(), t) ==
            r.included_elements.end())
            CHECK_FALSE(element_inside(m, t, region));
    }
}

TEST_CASE("measuring across the singular point is refused") {
    const Mesh m = gen_disk(4);
    const FeSpace space = build_space(m, 1);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    // annulus starting at radius 0 contains the source
    const SubdomainSpec bad = SubdomainSpec::annulus({0.0, 0.0}, 0.0, 1.0);
    CHECK_THROWS_AS(error_norms(space, u, exact, bad, std::span(&kL2, 1)), Error);
    // empty regions are rejected as well
    const SubdomainSpec empty = SubdomainSpec::annulus({0.0, 0.0}, 5.0, 6.0);
    CHECK_THROWS_AS(error_norms(space, u, exact, empty, std::span(&kL2, 1)), Error);
}

TEST_CASE("interpolate must match the space it is measured in") {
    const Mesh m = gen_square(2);
    const FeSpace space = build_space(m, 2);
    const std::vector<double> wrong(3, 0.0);
    CHECK_THROWS_AS(error_norms(space, wrong, polynomial_solution(),
                                SubdomainSpec::rectangle({{0.0, 0.0}, {1.0, 1.0}}),
                                std::span(&kL2, 1)),
                    Error);
}

TEST_CASE("norm values are stable under extra quadrature accuracy") {
    const Mesh m = gen_disk(8);
    const FeSpace space = build_space(m, 2);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    const SubdomainSpec region = SubdomainSpec::annulus({0.0, 0.0}, 0.2, 1.0);
    const std::vector<NormTag> tags = {kL2, kH1};
    const ErrorReport base = error_norms(space, u, exact, region, tags, false, -1);
    const ErrorReport fine = error_norms(space, u, exact, region, tags, false, 16);
    for (const NormTag& tag : tags) {
        const double rel = std::abs(base.value(tag) - fine.value(tag)) / fine.value(tag);
        CHECK(rel < 1e-4);  // default degree is already deep in the flat regime
    }
}

TEST_CASE("error field: whole-mesh per-element map with singular flags") {
    const Mesh m = gen_disk(4);
    const FeSpace space = build_space(m, 1);
    const ExactSolution exact = disk_solution();
    const std::vector<double> u = capped_interpolant(space, exact);
    const std::vector<FieldEntry> field = error_field(space, u, exact);
    REQUIRE(static_cast<int>(field.size()) == m.num_triangles());

    int singular = 0;
    double sum2 = 0.0;
    for (const FieldEntry& e : field) {
        if (e.singular) {
            ++singular;
            // flagged elements touch the source point: the center vertex
            const auto& tri = m.triangles[static_cast<size_t>(e.element)];
            CHECK((tri[0] == 0 || tri[1] == 0 || tri[2] == 0));
            CHECK(e.l2_error == 0.0);
        } else {
            CHECK(e.l2_error >= 0.0);
            sum2 += e.l2_error * e.l2_error;
        }
        CHECK(distance(e.barycenter, m.barycenter(e.element)) <= 1e-14);
    }
    CHECK(singular == 6);  // the six fan elements at the center
    CHECK(field_l2(field) == doctest::Approx(std::sqrt(sum2)).epsilon(1e-12));

    std::ostringstream csv;
    write_error_field_csv(field, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("elem,xc,yc,err2", 0) == 0);
    // one line per non-singular element plus the header
    const long lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == m.num_triangles() - 6 + 1);
}

TEST_CASE("error field of an exactly represented function vanishes") {
    const Mesh m = gen_square(3);
    const FeSpace space = build_space(m, 2);
    const ExactSolution exact = polynomial_solution();
    const std::vector<double> u = interpolate(space, exact.value);
    for (const FieldEntry& e : error_field(space, u, exact)) {
        CHECK_FALSE(e.singular);
        CHECK(e.l2_error <= 1e-12);
    }
}

TEST_CASE("norms of the finite-element function itself") {
    const Mesh m = gen_square(4);
    const FeSpace space = build_space(m, 1);
    const std::vector<double> ones(static_cast<size_t>(space.n_dofs), 1.0);
    const FeNorms constant = fe_function_norms(space, ones);
    CHECK(constant.l2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(constant.h1semi <= 1e-12);

    const std::vector<double> linear = interpolate(space, [](Point2 p) { return p.x; });
    const FeNorms ramp = fe_function_norms(space, linear);
    CHECK(ramp.l2 == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-13));
    CHECK(ramp.h1semi == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("inverse ratio: hand value, constants, and rejection of zero") {
    Mesh tri;
    tri.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    tri.triangles = {{0, 1, 2}};
    tri.boundary_edges = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
    tri.h_max = tri.h_min = tri.diameter(0);
    const FeSpace space = build_space(tri, 1);

    // hat at the right-angle vertex: |u|_1 = 1, ||u||_0 = 1/sqrt(12), h = sqrt(2)
    const std::vector<double> hat = {1.0, 0.0, 0.0};
    CHECK(inverse_ratio(space, hat) ==
          doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));

    const std::vector<double> ones = {1.0, 1.0, 1.0};
    CHECK(inverse_ratio(space, ones) <= 1e-10);

    const std::vector<double> zero = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(inverse_ratio(space, zero), Error);
}

TEST_CASE("inverse ratio stays in a factor-four band across refinement") {
    std::uint64_t state = 19;
    for (int k = 1; k <= 3; ++k) {
        double lo = 1e300, hi = 0.0;
        for (int n : {8, 16, 32}) {
            const Mesh mesh = gen_square(n);
            const FeSpace space = build_space(mesh, k);
            for (int rep = 0; rep < 5; ++rep) {
                std::vector<double> u(static_cast<size_t>(space.n_dofs));
                for (double& v : u) v = oracle::mixed_unit(state);
                const double r = inverse_ratio(space, u);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
        CHECK(hi / lo <= 4.0);
        CHECK(lo > 0.0);
    }
}

}  // TEST_SUITE
