#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "diracfem/assembly.hpp"
#include "diracfem/fespace.hpp"
#include "diracfem/norms.hpp"

using namespace diracfem;

namespace {

// deterministic point strictly inside element t
Point2 random_point_in(const Mesh& mesh, int t, std::uint64_t& state) {
    double u = 0.5 * (oracle::mixed_unit(state) + 1.0);
    double v = 0.5 * (oracle::mixed_unit(state) + 1.0);
    if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    const std::array<double, 3> bary = {1.0 - u - v, u, v};
    return map_to_physical(mesh, t, bary);
}

int expected_dofs(const Mesh& mesh, int k) {
    const MeshEdges edges = build_edges(mesh);
    return mesh.num_vertices() + (k - 1) * edges.num_edges() +
           (k - 1) * (k - 2) / 2 * mesh.num_triangles();
}

}  // namespace

TEST_SUITE("fespace") {

TEST_CASE("reference basis: lattice layout and cardinality") {
    for (int k = 1; k <= 4; ++k) {
        const ReferenceBasis basis(k);
        CHECK(basis.order() == k);
        CHECK(basis.size() == (k + 1) * (k + 2) / 2);
        for (int j = 0; j < basis.size(); ++j) {
            const auto node = basis.nodes()[static_cast<size_t>(j)];
            CHECK(node[0] + node[1] + node[2] == k);
            CHECK(node[0] >= 0);
            CHECK(node[1] >= 0);
            CHECK(node[2] >= 0);
        }
        // cardinal: basis function i is 1 at node i, 0 at the others
        std::vector<double> values(static_cast<size_t>(basis.size()));
        for (int j = 0; j < basis.size(); ++j) {
            basis.eval(basis.node_bary(j), values);
            for (int i = 0; i < basis.size(); ++i)
                CHECK(values[static_cast<size_t>(i)] ==
                      doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(ReferenceBasis(0), Error);
    CHECK_THROWS_AS(ReferenceBasis(5), Error);
}

TEST_CASE("dof counts follow the vertex/edge/interior formula") {
    const Mesh m1 = gen_square(1);
    CHECK(build_space(m1, 1).n_dofs == 4);
    CHECK(build_space(m1, 2).n_dofs == 9);
    CHECK(build_space(m1, 3).n_dofs == 16);
    CHECK(build_space(m1, 4).n_dofs == 25);

    for (const Mesh& m : {gen_square(3), gen_disk(2)}) {
        for (int k = 1; k <= 4; ++k) {
            const FeSpace space = build_space(m, k);
            CHECK(space.n_dofs == expected_dofs(m, k));
            CHECK(space.order == k);
            CHECK(space.dofs_per_element() == (k + 1) * (k + 2) / 2);
            CHECK(static_cast<int>(space.dof_coords.size()) == space.n_dofs);
        }
    }
    CHECK_THROWS_AS(build_space(m1, 0), Error);
    CHECK_THROWS_AS(build_space(m1, 5), Error);
}

TEST_CASE("vertex dofs keep the mesh coordinates") {
    const Mesh m = gen_disk(2);
    for (int k = 1; k <= 4; ++k) {
        const FeSpace space = build_space(m, k);
        for (int v = 0; v < m.num_vertices(); ++v) {
            CHECK(space.dof_coords[static_cast<size_t>(v)].x ==
                  m.vertices[static_cast<size_t>(v)].x);
            CHECK(space.dof_coords[static_cast<size_t>(v)].y ==
                  m.vertices[static_cast<size_t>(v)].y);
        }
    }
}

TEST_CASE("shared dofs agree geometrically from every element") {
    // dof_coords must match the element-local lattice position from each
    // element referencing the dof; this pins the shared-edge orientation
    for (const Mesh& m : {gen_square(2), gen_disk(2)}) {
        for (int k = 2; k <= 4; ++k) {
            const FeSpace space = build_space(m, k);
            for (int t = 0; t < m.num_triangles(); ++t) {
                const auto dofs = space.dofs_of(t);
                for (int j = 0; j < space.dofs_per_element(); ++j) {
                    const Point2 from_element =
                        map_to_physical(m, t, space.basis().node_bary(j));
                    const Point2 stored = space.dof_coords[static_cast<size_t>(dofs[j])];
                    CHECK(distance(from_element, stored) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("boundary dofs are exactly the dofs on the boundary") {
    const Mesh m = gen_square(2);
    for (int k = 1; k <= 3; ++k) {
        const FeSpace space = build_space(m, k);
        // 8 boundary vertices and 8 boundary edges on the 2x2 square
        CHECK(static_cast<int>(space.boundary_dofs.size()) == 8 + 8 * (k - 1));
        for (size_t i = 1; i < space.boundary_dofs.size(); ++i)
            CHECK(space.boundary_dofs[i] > space.boundary_dofs[i - 1]);
        for (int dof : space.boundary_dofs) {
            const Point2 p = space.dof_coords[static_cast<size_t>(dof)];
            const bool on_edge = std::abs(p.x) <= 1e-14 || std::abs(p.x - 1.0) <= 1e-14 ||
                                 std::abs(p.y) <= 1e-14 || std::abs(p.y - 1.0) <= 1e-14;
            CHECK(on_edge);
        }
    }
    const Mesh d = gen_disk(2);
    CHECK(static_cast<int>(build_space(d, 3).boundary_dofs.size()) == 3 * 12);
}

TEST_CASE("partition of unity at random points") {
    const Mesh m = gen_square(2);
    std::uint64_t state = 7;
    for (int k = 1; k <= 4; ++k) {
        const FeSpace space = build_space(m, k);
        const std::vector<double> ones(static_cast<size_t>(space.n_dofs), 1.0);
        for (int t = 0; t < m.num_triangles(); ++t) {
            for (int rep = 0; rep < 25; ++rep) {
                const Point2 p = random_point_in(m, t, state);
                CHECK(eval_fe(space, ones, p) == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(norm(eval_fe_gradient(space, ones, p)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("element geometry: barycentric gradients and area") {
    Mesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    m.triangles = {{0, 1, 2}};
    m.boundary_edges = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
    m.h_max = m.h_min = m.diameter(0);

    const ElementGeometry geom = element_geometry(m, 0);
    CHECK(geom.area == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(geom.grad_lambda[0].x == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(geom.grad_lambda[0].y == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(geom.grad_lambda[1].x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(geom.grad_lambda[1].y) <= 1e-14);
    CHECK(std::abs(geom.grad_lambda[2].x) <= 1e-14);
    CHECK(geom.grad_lambda[2].y == doctest::Approx(1.0).epsilon(1e-14));
    // gradients of the barycentric coordinates always sum to zero
    const Point2 sum = geom.grad_lambda[0] + geom.grad_lambda[1] + geom.grad_lambda[2];
    CHECK(norm(sum) <= 1e-14);
}

TEST_CASE("map_to_physical hits the barycenter at (1/3,1/3,1/3)") {
    const Mesh m = gen_disk(2);
    for (int t = 0; t < m.num_triangles(); ++t) {
        const Point2 p = map_to_physical(m, t, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        CHECK(distance(p, m.barycenter(t)) <= 1e-14);
    }
}

TEST_CASE("interpolation reproduces polynomials of the space's degree") {
    struct Case {
        int k;
        std::function<double(Point2)> f;
        std::function<Point2(Point2)> grad;
    };
    const std::vector<Case> cases = {
        {1, [](Point2 p) { return 2.0 * p.x - 3.0 * p.y + 0.25; },
         [](Point2) { return Point2{2.0, -3.0}; }},
        {2, [](Point2 p) { return p.x * p.x + 2.0 * p.x * p.y - p.y + 1.0; },
         [](Point2 p) { return Point2{2.0 * p.x + 2.0 * p.y, 2.0 * p.x - 1.0}; }},
        {3, [](Point2 p) { return p.x * p.x * p.y - p.y * p.y * p.y + 0.5 * p.x; },
         [](Point2 p) {
             return Point2{2.0 * p.x * p.y + 0.5, p.x * p.x - 3.0 * p.y * p.y};
         }},
        {4, [](Point2 p) { return p.x * p.x * p.x * p.x - 3.0 * p.x * p.x * p.y * p.y; },
         [](Point2 p) {
             return Point2{4.0 * p.x * p.x * p.x - 6.0 * p.x * p.y * p.y,
                           -6.0 * p.x * p.x * p.y};
         }},
    };

    const Mesh m = gen_square(2);
    std::uint64_t state = 11;
    for (const Case& c : cases) {
        const FeSpace space = build_space(m, c.k);
        const std::vector<double> coeffs = interpolate(space, c.f);
        for (int t = 0; t < m.num_triangles(); ++t) {
            for (int rep = 0; rep < 10; ++rep) {
                const Point2 p = random_point_in(m, t, state);
                CHECK(eval_fe(space, coeffs, p) == doctest::Approx(c.f(p)).epsilon(1e-11));
                const Point2 g = eval_fe_gradient(space, coeffs, p);
                CHECK(norm(g - c.grad(p)) <= 1e-10 * (1.0 + norm(c.grad(p))));
            }
        }
    }
}

TEST_CASE("a degree above the space is not reproduced") {
    const Mesh m = gen_square(2);
    const FeSpace space = build_space(m, 1);
    const auto f = [](Point2 p) { return p.x * p.x; };
    const std::vector<double> coeffs = interpolate(space, f);
    // midpoint of the first cell's diagonal: interpolation error h^2/8-ish
    const double dev = std::abs(eval_fe(space, coeffs, {0.25, 0.25}) - f({0.25, 0.25}));
    CHECK(dev > 1e-3);
}

TEST_CASE("eval_fe outside the mesh throws") {
    const Mesh m = gen_square(2);
    const FeSpace space = build_space(m, 1);
    const std::vector<double> coeffs(static_cast<size_t>(space.n_dofs), 1.0);
    CHECK_THROWS_AS(eval_fe(space, coeffs, {2.0, 2.0}), OutsideDomainError);
    CHECK_THROWS_AS(eval_fe_gradient(space, coeffs, {2.0, 2.0}), OutsideDomainError);
}

TEST_CASE("interpolation error decays at order k+1 in L2") {
    const auto u = [](Point2 p) { return std::sin(kPi * p.x) * std::sin(kPi * p.y); };
    ExactSolution exact;
    exact.value = u;
    exact.gradient = [](Point2 p) {
        return Point2{kPi * std::cos(kPi * p.x) * std::sin(kPi * p.y),
                      kPi * std::sin(kPi * p.x) * std::cos(kPi * p.y)};
    };
    exact.validity = "smooth product of sines on the unit square";

    const SubdomainSpec whole = SubdomainSpec::rectangle({{0.0, 0.0}, {1.0, 1.0}});
    const NormTag l2{NormKind::L2, 2.0};
    const std::vector<int> levels = {8, 16, 32, 64};

    for (int k = 1; k <= 3; ++k) {
        std::vector<double> hs, errs;
        for (int n : levels) {
            const Mesh m = gen_square(n);
            const FeSpace space = build_space(m, k);
            const std::vector<double> coeffs = interpolate(space, u);
            const ErrorReport report =
                error_norms(space, coeffs, exact, whole, std::span(&l2, 1));
            hs.push_back(m.h_max);
            errs.push_back(report.value(l2));
        }
        const oracle::LogLogFit fit = oracle::loglog_fit(hs, errs);
        CHECK(std::abs(fit.slope - (k + 1.0)) <= 0.15);
    }
}

}  // TEST_SUITE
