#pragma once

#include <span>
#include <vector>

#include "diracfem/sparse.hpp"

namespace diracfem {

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;  // final true-residual 2-norm
};

/// Jacobi-preconditioned conjugate gradients. Stops when the true residual
/// satisfies ||b - A x|| <= rel_tol * ||b||; throws ConvergenceError after
/// 20 * n iterations. Single-threaded and deterministic.
std::vector<double> solve_spd(const SparseSpd& a, std::span<const double> b,
                              double rel_tol = 1e-12, SolveStats* stats = nullptr);

}  // namespace diracfem
