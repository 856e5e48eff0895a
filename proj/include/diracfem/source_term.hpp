#pragma once

#include <functional>
#include <span>
#include <vector>

#include "diracfem/fespace.hpp"

namespace diracfem {

/// Right-hand side of the point-source problem: F_i = phi_i(x0). Nonzero only
/// on the dofs of the element containing x0 (lowest index on ties).
std::vector<double> assemble_dirac_rhs(const FeSpace& space, Point2 x0);

/// Radius for the uniform ball source so the ball stays strictly inside the
/// element containing x0: min(h_max / 10, 0.9 * dist(x0, element boundary)).
/// Rejects x0 sitting on an element edge or vertex.
double choose_epsilon(const Mesh& mesh, Point2 x0);

/// Right-hand side for the uniform source of total mass one on B(x0, eps),
/// integrated with a polar Gauss rule. When the ball is contained in one
/// element the entries are exact for the polynomial basis; when it straddles
/// elements each quadrature point is located and evaluated in its own
/// element (documented lower per-entry accuracy near the interface cuts).
/// Either way the entries sum to one up to roundoff, since the basis is a
/// partition of unity at every quadrature point. Throws when the ball
/// crosses the domain boundary.
std::vector<double> assemble_ball_rhs(const FeSpace& space, Point2 x0, double eps);

/// |average of v over B(x, eps) - v(x)|; zero for v harmonic on the closed
/// ball by the mean value property.
double mean_value_check(Point2 x, double eps, const std::function<double(Point2)>& v);

/// Distance from an interior point of element t to the element boundary.
double distance_to_element_boundary(const Mesh& mesh, int t, Point2 p);

}  // namespace diracfem
