#pragma once

#include <functional>
#include <optional>
#include <string>

#include "diracfem/common.hpp"

namespace diracfem {

/// Closed-form reference solution used for error measurement.
struct ExactSolution {
    std::function<double(Point2)> value;
    std::function<Point2(Point2)> gradient;
    std::optional<Point2> singular_point;
    std::string validity;
};

/// Fundamental solution of the Laplacian: -log|x - x0| / (2 pi).
/// Throws SingularityError at x == x0.
double green_value(Point2 x, Point2 x0);
Point2 green_gradient(Point2 x, Point2 x0);
ExactSolution green_solution(Point2 x0);

/// Unit-disk solution with the point source at the origin:
/// -log(x^2 + y^2) / (4 pi); vanishes on the unit circle.
double disk_exact_value(Point2 x);
Point2 disk_exact_gradient(Point2 x);
ExactSolution disk_solution();

/// Unit-disk solution with the uniform ball source of radius eps at the
/// origin. Matches the point-source solution for r >= eps and is the C^1
/// parabolic cap -log(eps)/(2 pi) + (1 - (r/eps)^2)/(4 pi) inside.
double radial_ball_value(double r, double eps);

/// 1D interval (a, b), unit point source at x0: the piecewise-linear hat
/// solution and its ball-regularized counterpart (parabolic inside
/// [x0 - eps, x0 + eps], identical to the hat outside).
struct OneDValues {
    double u_delta = 0.0;
    double u_eps = 0.0;
};
OneDValues one_d_exact(double a, double b, double x0, double eps, double x);

/// p-th power of the W^{1,p} seminorm of the fundamental solution over the
/// annulus {a < |x| < 1}: (2 pi)^(1-p) (1 - a^(2-p)) / (2 - p), for p in
/// [1, 2). Equals exactly 1 at p = 1, a = 0.
double w1p_green_annulus_pow(double p, double a);

/// Leading blow-up amplitude of the W^{1,p} norm as p -> 2:
/// 1 / sqrt(2 pi (2 - p)).
double w1p_blowup_asymptote(double p);

}  // namespace diracfem
