#include "diracfem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace diracfem {

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw Error("gauss_legendre_01: n must be >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n with the Chebyshev-like initial guess
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double weight = 2.0 / ((1.0 - z * z) * pp * pp);
        x[i] = 0.5 * (1.0 - z);
        x[n - 1 - i] = 0.5 * (1.0 + z);
        w[i] = 0.5 * weight;
        w[n - 1 - i] = 0.5 * weight;
    }
}

namespace {

QuadratureRule centroid_rule() {
    QuadratureRule r;
    r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {1.0};
    r.degree = 1;
    return r;
}

QuadratureRule three_point_rule() {
    QuadratureRule r;
    const double a = 2.0 / 3.0, b = 1.0 / 6.0;
    r.points = {{a, b, b}, {b, a, b}, {b, b, a}};
    r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    r.degree = 2;
    return r;
}

QuadratureRule seven_point_rule() {
    // classical degree-5 rule: centroid plus two symmetric orbits
    QuadratureRule r;
    const double s = std::sqrt(15.0);
    const double a = (6.0 - s) / 21.0, wa = (155.0 - s) / 1200.0;
    const double b = (6.0 + s) / 21.0, wb = (155.0 + s) / 1200.0;
    r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                {1.0 - 2.0 * a, a, a},
                {a, 1.0 - 2.0 * a, a},
                {a, a, 1.0 - 2.0 * a},
                {1.0 - 2.0 * b, b, b},
                {b, 1.0 - 2.0 * b, b},
                {b, b, 1.0 - 2.0 * b}};
    r.weights = {9.0 / 40.0, wa, wa, wa, wb, wb, wb};
    r.degree = 5;
    return r;
}

// Gauss product rule on the collapsed square: x = xi, y = eta (1 - xi).
// m points per direction give exactness for total degree 2m - 2.
QuadratureRule collapsed_rule(int degree) {
    const int m = (degree + 3) / 2;
    std::vector<double> gx, gw;
    gauss_legendre_01(m, gx, gw);
    QuadratureRule r;
    r.degree = 2 * m - 2;
    r.points.reserve(static_cast<size_t>(m) * m);
    r.weights.reserve(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double xi = gx[i];
            const double eta = gx[j] * (1.0 - xi);
            r.points.push_back({1.0 - xi - eta, xi, eta});
            // factor 2 normalizes the weights to sum to one
            r.weights.push_back(2.0 * gw[i] * gw[j] * (1.0 - xi));
        }
    }
    return r;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree) {
    if (degree < 0) throw Error("triangle_rule: degree must be >= 0");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const int key = std::max(degree, 1);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    QuadratureRule rule;
    if (key <= 1)
        rule = centroid_rule();
    else if (key == 2)
        rule = three_point_rule();
    else if (key <= 5)
        rule = seven_point_rule();
    else
        rule = collapsed_rule(key);
    return cache.emplace(key, std::move(rule)).first->second;
}

PolarRule ball_rule(Point2 center, double eps, int n_radial, int n_angular) {
    if (!(eps > 0.0)) throw Error("ball_rule: eps must be positive");
    if (n_radial < 1 || n_angular < 1) throw Error("ball_rule: empty rule");
    std::vector<double> gx, gw;
    gauss_legendre_01(n_radial, gx, gw);
    PolarRule rule;
    rule.points.reserve(static_cast<size_t>(n_radial) * n_angular);
    rule.weights.reserve(static_cast<size_t>(n_radial) * n_angular);
    const double dtheta = 2.0 * kPi / n_angular;
    for (int i = 0; i < n_radial; ++i) {
        const double r = eps * gx[i];
        const double wr = eps * gw[i] * r * dtheta;
        for (int j = 0; j < n_angular; ++j) {
            const double theta = dtheta * (j + 0.5);
            rule.points.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
            rule.weights.push_back(wr);
        }
    }
    return rule;
}

}  // namespace diracfem
