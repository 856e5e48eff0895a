#pragma once

#include <array>
#include <vector>

#include "diracfem/common.hpp"

namespace diracfem {

/// Quadrature rule on the reference triangle. Points are barycentric and
/// weights sum to one; integrals are Sum_i w_i f(x_i) scaled by the element
/// area. `degree` is the certified polynomial exactness.
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int degree = 0;
    int size() const { return static_cast<int>(points.size()); }
};

/// Smallest cached rule exact at least to the requested total degree.
const QuadratureRule& triangle_rule(int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w);

/// Product rule for integrals over the disk B(center, eps): Gauss radially,
/// uniform angles. Weights are absolute (they carry the r dr dtheta measure)
/// and sum to pi*eps^2 exactly up to roundoff.
struct PolarRule {
    std::vector<Point2> points;
    std::vector<double> weights;
    int size() const { return static_cast<int>(points.size()); }
};

PolarRule ball_rule(Point2 center, double eps, int n_radial = 8, int n_angular = 32);

}  // namespace diracfem
