#include "diracfem/exact.hpp"

#include <cmath>

namespace diracfem {

double green_value(Point2 x, Point2 x0) {
    const double r = distance(x, x0);
    if (r == 0.0) throw SingularityError("green_value: evaluation at the source point");
    return -std::log(r) / (2.0 * kPi);
}

Point2 green_gradient(Point2 x, Point2 x0) {
    const Point2 d = x - x0;
    const double r2 = dot(d, d);
    if (r2 == 0.0) throw SingularityError("green_gradient: evaluation at the source point");
    return (-1.0 / (2.0 * kPi * r2)) * d;
}

ExactSolution green_solution(Point2 x0) {
    ExactSolution s;
    s.value = [x0](Point2 x) { return green_value(x, x0); };
    s.gradient = [x0](Point2 x) { return green_gradient(x, x0); };
    s.singular_point = x0;
    s.validity = "x != x0";
    return s;
}

double disk_exact_value(Point2 x) {
    const double r2 = dot(x, x);
    if (r2 == 0.0) throw SingularityError("disk_exact_value: evaluation at the origin");
    return -std::log(r2) / (4.0 * kPi);
}

Point2 disk_exact_gradient(Point2 x) { return green_gradient(x, {0.0, 0.0}); }

ExactSolution disk_solution() {
    ExactSolution s;
    s.value = disk_exact_value;
    s.gradient = disk_exact_gradient;
    s.singular_point = Point2{0.0, 0.0};
    s.validity = "0 < |x| <= 1";
    return s;
}

double radial_ball_value(double r, double eps) {
    if (!(eps > 0.0) || eps >= 1.0) throw Error("radial_ball_value: eps must be in (0, 1)");
    if (r < 0.0 || r > 1.0) throw Error("radial_ball_value: r must be in [0, 1]");
    if (r >= eps) return -std::log(r) / (2.0 * kPi);
    const double s = r / eps;
    return -std::log(eps) / (2.0 * kPi) + (1.0 - s * s) / (4.0 * kPi);
}

OneDValues one_d_exact(double a, double b, double x0, double eps, double x) {
    if (!(a < b)) throw Error("one_d_exact: requires a < b");
    if (!(eps > 0.0)) throw Error("one_d_exact: eps must be positive");
    if (!(a < x0 - eps && x0 + eps < b))
        throw Error("one_d_exact: the interval [x0 - eps, x0 + eps] must sit inside (a, b)");
    if (x < a || x > b) throw Error("one_d_exact: x outside [a, b]");

    OneDValues v;
    const double len = b - a;
    v.u_delta = x <= x0 ? (b - x0) * (x - a) / len : (x0 - a) * (b - x) / len;

    if (x <= x0 - eps || x >= x0 + eps) {
        v.u_eps = v.u_delta;
    } else {
        v.u_eps = -x * x / (4.0 * eps) +
                  (x0 / (2.0 * eps) + (a + b - 2.0 * x0) / (2.0 * len)) * x +
                  (a * (x0 - b) + b * (x0 - a)) / (2.0 * len) -
                  (x0 * x0 + eps * eps) / (4.0 * eps);
    }
    return v;
}

double w1p_green_annulus_pow(double p, double a) {
    if (!(p >= 1.0 && p < 2.0))
        throw Error("w1p_green_annulus_pow: requires 1 <= p < 2 (divergent otherwise)");
    if (!(a >= 0.0 && a < 1.0)) throw Error("w1p_green_annulus_pow: requires 0 <= a < 1");
    const double inner = a == 0.0 ? 0.0 : std::pow(a, 2.0 - p);
    return std::pow(2.0 * kPi, 1.0 - p) * (1.0 - inner) / (2.0 - p);
}

double w1p_blowup_asymptote(double p) {
    if (!(p >= 1.0 && p < 2.0)) throw Error("w1p_blowup_asymptote: requires 1 <= p < 2");
    return 1.0 / std::sqrt(2.0 * kPi * (2.0 - p));
}

}  // namespace diracfem
