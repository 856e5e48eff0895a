#pragma once

#include <functional>
#include <span>
#include <vector>

#include "diracfem/fespace.hpp"
#include "diracfem/sparse.hpp"

namespace diracfem {

/// Stiffness quadrature degree for each polynomial order: exact for the
/// piecewise-polynomial integrand grad(phi_i) . grad(phi_j).
int stiffness_quadrature_degree(int order);

/// Global Laplace stiffness matrix. Element matrices are computed in
/// parallel; insertion happens serially in element order, so the result is
/// independent of the worker count.
SparseSpd assemble_stiffness(const FeSpace& space);

/// Load vector integral of f against the basis. degree < 0 picks 2k + 4.
std::vector<double> assemble_load(const FeSpace& space,
                                  const std::function<double(Point2)>& f, int degree = -1);

/// Nodal interpolant: coefficients are f at the dof coordinates.
std::vector<double> interpolate(const FeSpace& space, const std::function<double(Point2)>& f);

/// Reduced system after eliminating Dirichlet dofs:
/// A_II x_I = b_I - A_IB g_B.
struct DirichletSystem {
    SparseSpd matrix;
    std::vector<double> rhs;
    std::vector<int> interior_to_global;
    std::vector<double> constrained_values;  // full length; g on boundary dofs, 0 inside
};

DirichletSystem apply_dirichlet(const FeSpace& space, const SparseSpd& a,
                                std::span<const double> b,
                                const std::function<double(Point2)>& g);

/// Full-length solution with boundary values set exactly to g.
std::vector<double> expand_solution(const DirichletSystem& system,
                                    std::span<const double> interior);

}  // namespace diracfem
