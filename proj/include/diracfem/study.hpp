#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "diracfem/mesh.hpp"
#include "diracfem/norms.hpp"

namespace diracfem {

enum class DomainKind { Square, Disk };
enum class RhsKind { Dirac, Ball, Manufactured };
enum class BcKind { ExactData, Zero };

std::string to_string(DomainKind k);
std::string to_string(RhsKind k);
std::string to_string(BcKind k);

/// Full description of a refinement study. `levels` is the resolution
/// parameter of the mesh generator (cells per side for the square, rings for
/// the disk). For the point-source and ball-source cases the errors are
/// measured on omega0 and the discrete separation check (every element
/// touching omega0 has its vertices in omega1) must pass at every level.
struct StudyConfig {
    DomainKind domain = DomainKind::Disk;
    Point2 x0{0.0, 0.0};
    std::vector<int> orders{1};
    std::vector<int> levels{10, 15, 20, 30, 45};
    RhsKind rhs = RhsKind::Dirac;
    BcKind bc = BcKind::ExactData;
    SubdomainSpec omega0 = SubdomainSpec::annulus({0.0, 0.0}, 0.2, 1.0);
    SubdomainSpec omega1 = SubdomainSpec::annulus({0.0, 0.0}, 0.1, 1.0);
    std::vector<NormTag> norms{{NormKind::H1, 2.0}};
    double solver_tol = 1e-12;

    /// Throws Error on structurally invalid configs (empty or non-increasing
    /// levels, orders outside 1..4, x0 inside omega1 for singular sources,
    /// measurement subdomains that do not nest, ...).
    void validate() const;
};

/// JSON round-trip. Parsing rejects unknown keys; missing keys keep the
/// defaults above. The JSON form is embedded in study result files.
std::string config_to_json(const StudyConfig& cfg);
StudyConfig config_from_json(const std::string& text);
StudyConfig load_config_file(const std::string& path);

struct LevelRow {
    int level = 0;
    double h_max = 0.0;
    int dofs = 0;
    std::map<std::string, double> errors;  // keyed by NormTag::key()
};

/// Least-squares fit of log(error) against log(h), plus the order computed
/// from the last two rows alone.
struct FitResult {
    double slope = 0.0;
    double r_squared = 0.0;
    double incremental = 0.0;
};

/// Slope of log e against log h by ordinary least squares. Requires at least
/// three samples and strictly positive h and e.
FitResult fit_order(std::span<const double> h, std::span<const double> e);

struct ConvergenceTable {
    int order = 0;  // polynomial degree the table belongs to
    std::vector<NormTag> norms;
    std::vector<LevelRow> rows;
    std::map<std::string, FitResult> fits;  // filled when >= 3 rows

    const FitResult& fit(const NormTag& tag) const;
};

/// One convergence table per requested polynomial order, plus the config
/// that produced them.
struct StudyResult {
    StudyConfig config;
    std::vector<ConvergenceTable> tables;  // in cfg.orders order
};

/// Runs the refinement study described by cfg: per level build the mesh and
/// space, assemble the source, impose boundary data, solve, and measure the
/// requested error norms on omega0. Separation failures and solver failures
/// abort with the offending level in the message.
StudyResult run_convergence(const StudyConfig& cfg);

/// CSV with schema `level,h_max,dofs,norm,value` and a trailing comment
/// block carrying the fitted orders. Byte-deterministic for a given table.
void write_table_csv(const ConvergenceTable& table, std::ostream& out);
/// JSON mirror of a whole study with the config embedded.
void write_study_json(const StudyResult& result, std::ostream& out);

/// 1D point-source problem on (a, b): piecewise-linear elements on a uniform
/// grid, assembled tridiagonal system solved directly.
struct OneDSolve {
    std::vector<double> nodes;
    std::vector<double> u;  // nodal values, boundary entries zero
};
OneDSolve solve_1d_dirac(double a, double b, double x0, int cells);

struct OneDStudyResult {
    ConvergenceTable table;
    /// max nodal |u_h - u| when x0 is moved onto the nearest grid node of the
    /// finest level (the discrete solution then reproduces the hat exactly)
    double matched_nodal_error = 0.0;
    /// max nodal |u_h - u| away from the element containing x0, finest level
    double off_element_error = 0.0;
};

/// Refinement study for the 1D problem: H1 and L2 errors integrated exactly
/// (the error is piecewise linear once the kink element is split at x0).
OneDStudyResult run_1d_study(double a, double b, double x0, std::span<const int> levels);

/// Discrete equivalence of the point source and the contained ball source
/// (piecewise-linear elements, radius from choose_epsilon): entrywise RHS
/// agreement and sup-norm agreement of the two solutions, per level.
struct RhsEqualityRow {
    int level = 0;
    double h_max = 0.0;
    double eps = 0.0;
    double rhs_diff = 0.0;       // max_i |F_eps[i] - F_dirac[i]|
    double solution_diff = 0.0;  // max_i |u_eps[i] - u_dirac[i]|
};
std::vector<RhsEqualityRow> rhs_equality_experiment(const StudyConfig& cfg);

}  // namespace diracfem
