#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "diracfem/quadrature.hpp"

using namespace diracfem;

TEST_SUITE("quadrature") {

TEST_CASE("triangle rules: positive weights summing to one") {
    for (int degree = 0; degree <= 12; ++degree) {
        const QuadratureRule& rule = triangle_rule(degree);
        CHECK(rule.degree >= std::max(degree, 1));
        double sum = 0.0;
        for (size_t q = 0; q < rule.weights.size(); ++q) {
            CHECK(rule.weights[q] > 0.0);
            sum += rule.weights[q];
            const auto& l = rule.points[q];
            CHECK(l[0] >= -1e-15);
            CHECK(l[1] >= -1e-15);
            CHECK(l[2] >= -1e-15);
            CHECK(l[0] + l[1] + l[2] == doctest::Approx(1.0).epsilon(1e-14));
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(triangle_rule(-1), Error);
}

TEST_CASE("triangle rules: monomial exactness up to the stated degree") {
    // reference triangle (0,0), (1,0), (0,1): x = lambda_1, y = lambda_2,
    // integral = area * sum of weighted values with area = 1/2
    for (int degree = 1; degree <= 12; ++degree) {
        const QuadratureRule& rule = triangle_rule(degree);
        for (int a = 0; a <= rule.degree; ++a) {
            for (int b = 0; a + b <= rule.degree; ++b) {
                double sum = 0.0;
                for (size_t q = 0; q < rule.points.size(); ++q)
                    sum += rule.weights[q] * std::pow(rule.points[q][1], a) *
                           std::pow(rule.points[q][2], b);
                const double exact = oracle::triangle_monomial_integral(a, b);
                CHECK(std::abs(0.5 * sum - exact) <= 1e-13);
            }
        }
    }
}

TEST_CASE("triangle rules: a rule one degree short misses a monomial") {
    // sanity that the exactness test has teeth: degree-2 rule on a cubic
    const QuadratureRule& rule = triangle_rule(2);
    double sum = 0.0;
    for (size_t q = 0; q < rule.points.size(); ++q)
        sum += rule.weights[q] * std::pow(rule.points[q][1], 3);
    CHECK(std::abs(0.5 * sum - oracle::triangle_monomial_integral(3, 0)) > 1e-6);
}

TEST_CASE("triangle rules are cached") {
    const QuadratureRule* first = &triangle_rule(5);
    const QuadratureRule* second = &triangle_rule(5);
    CHECK(first == second);
}

TEST_CASE("Gauss-Legendre on [0,1]: structure") {
    for (int n : {1, 2, 3, 5, 8, 13, 20}) {
        std::vector<double> x, w;
        gauss_legendre_01(n, x, w);
        REQUIRE(static_cast<int>(x.size()) == n);
        REQUIRE(static_cast<int>(w.size()) == n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(x[static_cast<size_t>(i)] > 0.0);
            CHECK(x[static_cast<size_t>(i)] < 1.0);
            CHECK(w[static_cast<size_t>(i)] > 0.0);
            if (i > 0) CHECK(x[static_cast<size_t>(i)] > x[static_cast<size_t>(i - 1)]);
            // nodes are symmetric about 1/2
            CHECK(x[static_cast<size_t>(i)] + x[static_cast<size_t>(n - 1 - i)] ==
                  doctest::Approx(1.0).epsilon(1e-14));
            sum += w[static_cast<size_t>(i)];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    std::vector<double> x, w;
    CHECK_THROWS_AS(gauss_legendre_01(0, x, w), Error);
}

TEST_CASE("Gauss-Legendre on [0,1]: exact for degree 2n-1") {
    for (int n : {1, 2, 3, 5, 8, 12}) {
        std::vector<double> x, w;
        gauss_legendre_01(n, x, w);
        for (int m = 0; m <= 2 * n - 1; ++m) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                sum += w[static_cast<size_t>(i)] * std::pow(x[static_cast<size_t>(i)], m);
            CHECK(sum == doctest::Approx(1.0 / (m + 1)).epsilon(1e-14));
        }
        // and not exact one degree past that; beyond n=8 the analytic error
        // ((n!)^2/(2n)!)^2/(2n+1) sinks below roundoff, so skip large n
        if (n >= 2 && n <= 8) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                sum += w[static_cast<size_t>(i)] * std::pow(x[static_cast<size_t>(i)], 2 * n);
            CHECK(std::abs(sum - 1.0 / (2 * n + 1)) > 1e-12);
        }
    }
}

TEST_CASE("polar ball rule: mass, centroid, and second moment") {
    const Point2 c{0.3, -0.2};
    for (double eps : {0.05, 0.125, 0.5}) {
        const PolarRule rule = ball_rule(c, eps, 8, 32);
        REQUIRE(rule.points.size() == rule.weights.size());
        double mass = 0.0, mx = 0.0, my = 0.0, second = 0.0;
        for (size_t q = 0; q < rule.points.size(); ++q) {
            const double w = rule.weights[q];
            CHECK(w > 0.0);
            const Point2 d = rule.points[q] - c;
            CHECK(norm(d) < eps);
            mass += w;
            mx += w * d.x;
            my += w * d.y;
            second += w * dot(d, d);
        }
        const double area = kPi * eps * eps;
        CHECK(mass == doctest::Approx(area).epsilon(1e-14));
        CHECK(std::abs(mx) <= 1e-14 * area);
        CHECK(std::abs(my) <= 1e-14 * area);
        CHECK(second == doctest::Approx(kPi * std::pow(eps, 4) / 2.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(ball_rule(c, 0.0, 4, 8), Error);
    CHECK_THROWS_AS(ball_rule(c, -0.1, 4, 8), Error);
    CHECK_THROWS_AS(ball_rule(c, 0.1, 0, 8), Error);
}

}  // TEST_SUITE
