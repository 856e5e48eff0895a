#include "diracfem/solver.hpp"

#include <cmath>
#include <cstdio>

namespace diracfem {

namespace {

double dot2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double true_residual(const SparseSpd& a, std::span<const double> b,
                     std::span<const double> x, std::span<double> r) {
    a.multiply(x, r);
    for (int i = 0; i < a.n; ++i) r[i] = b[i] - r[i];
    return std::sqrt(dot2(r, r));
}

}  // namespace

std::vector<double> solve_spd(const SparseSpd& a, std::span<const double> b, double rel_tol,
                              SolveStats* stats) {
    const int n = a.n;
    if (static_cast<int>(b.size()) != n) throw Error("solve_spd: rhs size mismatch");
    std::vector<double> x(n, 0.0);
    const double nb = std::sqrt(dot2(b, b));
    if (stats) *stats = {};
    if (nb == 0.0) return x;

    std::vector<double> inv_diag = a.diagonal();
    for (int i = 0; i < n; ++i) {
        if (!(inv_diag[i] > 0.0)) throw Error("solve_spd: non-positive diagonal entry");
        inv_diag[i] = 1.0 / inv_diag[i];
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n), p(n), ap(n);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot2(r, z);

    const long long max_iters = 20LL * n;
    const double target = rel_tol * nb;
    int it = 0;
    double res = std::sqrt(dot2(r, r));
    double last_restart_res = -1.0;  // true residual at the previous restart
    while (res > target) {
        if (it >= max_iters) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "solve_spd: no convergence after %d iterations (residual %.3e)", it, res);
            throw ConvergenceError(msg, it, res);
        }
        a.multiply(p, ap);
        const double pap = dot2(p, ap);
        if (!(pap > 0.0) || !std::isfinite(pap)) {
            // breakdown: the search direction carries no energy, so the
            // matrix is singular (or indefinite) and the iteration stalls
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "solve_spd: breakdown at iteration %d (residual %.3e); "
                          "matrix is not positive definite", it, res);
            throw ConvergenceError(msg, it, res);
        }
        const double alpha = rz / pap;
        for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        ++it;
        res = std::sqrt(dot2(r, r));
        if (!std::isfinite(res)) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "solve_spd: non-finite residual at iteration %d", it);
            throw ConvergenceError(msg, it, res);
        }
        if (res <= target) {
            // guard against recursion drift before declaring victory
            res = true_residual(a, b, x, r);
            if (res <= target) break;
            // the recurrence must be restarted from the recomputed residual;
            // reusing the old direction would poison the iteration
            if (last_restart_res >= 0.0 && res > 0.9 * last_restart_res) {
                // no progress since the previous restart: the target sits
                // below the roundoff floor of evaluating b - A*x
                char msg[160];
                std::snprintf(msg, sizeof(msg),
                              "solve_spd: residual stagnated at %.3e after %d iterations; "
                              "the requested tolerance is below attainable precision",
                              res, it);
                throw ConvergenceError(msg, it, res);
            }
            last_restart_res = res;
            for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            p = z;
            rz = dot2(r, z);
            continue;
        }
        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_new = dot2(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    if (stats) {
        stats->iterations = it;
        stats->residual = res;
    }
    return x;
}

}  // namespace diracfem
