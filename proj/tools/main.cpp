// Command-line front end: mesh generation, single solves, error reports,
// refinement studies, and self-checking verification batteries. Every verb
// writes a machine-readable artifact and exits nonzero when a contract is
// breached, printing a one-line `error: ...` reason to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "diracfem/assembly.hpp"
#include "diracfem/exact.hpp"
#include "diracfem/mesh.hpp"
#include "diracfem/norms.hpp"
#include "diracfem/quadrature.hpp"
#include "diracfem/solver.hpp"
#include "diracfem/source_term.hpp"
#include "diracfem/study.hpp"

using nlohmann::json;
using namespace diracfem;

namespace {

Point2 parse_point(const std::string& text) {
    double x = 0.0, y = 0.0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &x, &y, &extra) != 2)
        throw Error("expected a point as X,Y but got '" + text + "'");
    return {x, y};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

// Mesh provenance carried inside solution files so `errors` can rebuild the
// exact same mesh (regenerate, or re-read the .node/.ele pair).
struct MeshRef {
    std::string source;  // "generated" | "file"
    std::string domain;  // for generated meshes
    int res = 0;
    std::string stem;  // for file meshes

    json to_json() const {
        json j;
        j["source"] = source;
        if (source == "generated") {
            j["domain"] = domain;
            j["res"] = res;
        } else {
            j["stem"] = stem;
        }
        return j;
    }

    static MeshRef from_json(const json& j) {
        MeshRef ref;
        ref.source = j.at("source").get<std::string>();
        if (ref.source == "generated") {
            ref.domain = j.at("domain").get<std::string>();
            ref.res = j.at("res").get<int>();
        } else if (ref.source == "file") {
            ref.stem = j.at("stem").get<std::string>();
        } else {
            throw Error("solution file: unknown mesh source '" + ref.source + "'");
        }
        return ref;
    }

    Mesh build() const {
        if (source == "file") return read_triangle_mesh(stem);
        if (domain == "square") return gen_square(res);
        if (domain == "disk") return gen_disk(res);
        throw Error("unknown domain '" + domain + "'");
    }
};

// Keeps the mesh at a stable address for the FE space that points into it.
struct Problem {
    std::unique_ptr<Mesh> mesh;
    FeSpace space;
};

Problem make_problem(const MeshRef& ref, int order) {
    Problem p;
    p.mesh = std::make_unique<Mesh>(ref.build());
    p.space = build_space(*p.mesh, order);
    return p;
}

BcKind parse_bc(const std::string& text) {
    if (text == "exact" || text == "exact-data") return BcKind::ExactData;
    if (text == "zero") return BcKind::Zero;
    throw Error("unknown bc '" + text + "' (expected exact|zero)");
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    const size_t slash = path.find_last_of('/');
    const size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

std::string insert_suffix(const std::string& path, const std::string& suffix) {
    const size_t slash = path.find_last_of('/');
    const size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

// ---------------------------------------------------------------- mesh gen

void cmd_mesh_gen(const std::string& domain, int res, const std::string& out) {
    MeshRef ref{"generated", domain, res, ""};
    const Mesh mesh = ref.build();
    validate_mesh(mesh);
    write_triangle_mesh(mesh, out);
    const MeshMetrics metrics = mesh_metrics(mesh);
    std::printf("mesh: domain=%s res=%d vertices=%d triangles=%d h_max=%.6e min_angle=%.2f\n",
                domain.c_str(), res, mesh.num_vertices(), mesh.num_triangles(), metrics.h_max,
                metrics.min_angle_deg);
    std::printf("wrote %s.node and %s.ele\n", out.c_str(), out.c_str());
}

// -------------------------------------------------------------------- solve

void cmd_solve(const MeshRef& ref, int order, const std::string& rhs, Point2 x0,
               const std::string& eps_text, const std::string& bc_text, double tol,
               const std::string& out) {
    if (rhs != "dirac" && rhs != "ball") throw Error("unknown rhs '" + rhs + "'");
    const BcKind bc = parse_bc(bc_text);

    const Problem problem = make_problem(ref, order);
    const FeSpace& space = problem.space;

    double eps = 0.0;
    std::vector<double> b;
    if (rhs == "dirac") {
        b = assemble_dirac_rhs(space, x0);
    } else {
        eps = eps_text == "auto" ? choose_epsilon(*problem.mesh, x0) : std::stod(eps_text);
        if (!(eps > 0.0)) throw Error("eps must be positive");
        b = assemble_ball_rhs(space, x0, eps);
    }

    const ExactSolution reference = green_solution(x0);
    const auto boundary_values =
        bc == BcKind::Zero ? std::function<double(Point2)>([](Point2) { return 0.0; })
                           : reference.value;

    const SparseSpd a = assemble_stiffness(space);
    const DirichletSystem system = apply_dirichlet(space, a, b, boundary_values);
    SolveStats stats;
    const std::vector<double> interior = solve_spd(system.matrix, system.rhs, tol, &stats);
    const std::vector<double> u = expand_solution(system, interior);

    json j;
    j["format"] = "diracfem-solution-1";
    j["mesh"] = ref.to_json();
    j["order"] = order;
    j["rhs"] = rhs;
    j["x0"] = json::array({x0.x, x0.y});
    j["eps"] = eps;
    j["bc"] = to_string(bc);
    j["solver"] = {{"iterations", stats.iterations}, {"residual", stats.residual}, {"tol", tol}};
    j["u"] = u;
    write_text_file(out, j.dump(2) + "\n");
    std::printf("solve: dofs=%d iterations=%d residual=%.3e -> %s\n", space.n_dofs,
                stats.iterations, stats.residual, out.c_str());
}

// ------------------------------------------------------------------- errors

void cmd_errors(const std::string& sol_path, double exclude_r, const std::string& norms_text,
                const std::string& field_path, const std::string& out) {
    const json sol = read_json_file(sol_path);
    if (sol.value("format", "") != "diracfem-solution-1")
        throw Error("'" + sol_path + "' is not a solution file");

    const MeshRef ref = MeshRef::from_json(sol.at("mesh"));
    const int order = sol.at("order").get<int>();
    const Point2 x0 = {sol.at("x0")[0].get<double>(), sol.at("x0")[1].get<double>()};
    const double eps = sol.at("eps").get<double>();
    const std::string rhs = sol.at("rhs").get<std::string>();
    const std::string bc = sol.at("bc").get<std::string>();
    const std::vector<double> u = sol.at("u").get<std::vector<double>>();

    const Problem problem = make_problem(ref, order);
    if (static_cast<int>(u.size()) != problem.space.n_dofs)
        throw Error("solution length does not match the rebuilt mesh");

    const bool centered_disk = ref.domain == "disk" && norm(x0) <= 1e-14;
    if (bc == "zero" && !centered_disk)
        throw Error(
            "zero-boundary solutions have no closed-form reference on this domain; solve with "
            "--bc exact");
    if (rhs == "ball" && exclude_r < eps)
        throw Error("--exclude-r must be >= the ball radius (reference is the point source)");

    std::vector<NormTag> tags;
    std::stringstream stream(norms_text);
    std::string item;
    while (std::getline(stream, item, ',')) tags.push_back(NormTag::parse(item));
    if (tags.empty()) throw Error("no norms requested");

    const ExactSolution reference = green_solution(x0);
    const SubdomainSpec region = SubdomainSpec::exclusion_ball(x0, exclude_r);
    const ErrorReport report =
        error_norms(problem.space, u, reference, region, tags);

    json j;
    j["format"] = "diracfem-errors-1";
    j["solution"] = sol_path;
    j["exclude_r"] = exclude_r;
    j["included_elements"] = report.included_elements.size();
    json values;
    for (const NormTag& tag : tags) values[tag.key()] = report.value(tag);
    j["norms"] = values;

    if (!field_path.empty()) {
        const std::vector<FieldEntry> field = error_field(problem.space, u, reference);
        std::ostringstream csv;
        write_error_field_csv(field, csv);
        write_text_file(field_path, csv.str());
        j["field_csv"] = field_path;
        j["field_l2"] = field_l2(field);
    }
    write_text_file(out, j.dump(2) + "\n");

    std::printf("errors: included=%zu", report.included_elements.size());
    for (const NormTag& tag : tags)
        std::printf(" %s=%.6e", tag.key().c_str(), report.value(tag));
    std::printf(" -> %s\n", out.c_str());
}

// --------------------------------------------------------------- study conv

void cmd_study_conv(const std::string& config_path, const std::string& out) {
    const StudyConfig cfg = load_config_file(config_path);
    const StudyResult result = run_convergence(cfg);

    for (const ConvergenceTable& table : result.tables) {
        const std::string path =
            result.tables.size() == 1
                ? out
                : insert_suffix(out, "_k" + std::to_string(table.order));
        std::ostringstream csv;
        write_table_csv(table, csv);
        write_text_file(path, csv.str());
        std::printf("order %d -> %s\n", table.order, path.c_str());
        for (const NormTag& tag : table.norms) {
            if (table.fits.empty()) continue;
            const FitResult& fit = table.fit(tag);
            std::printf("  %s: fitted order %.4f (r2 %.6f, last-step %.4f)\n",
                        tag.key().c_str(), fit.slope, fit.r_squared, fit.incremental);
        }
    }
    const std::string json_path = replace_extension(out, ".json");
    std::ostringstream mirror;
    write_study_json(result, mirror);
    write_text_file(json_path, mirror.str());
    std::printf("study -> %s\n", json_path.c_str());
}

// ----------------------------------------------------------------- study 1d

void cmd_study_1d(double a, double b, double x0, std::vector<int> levels,
                  const std::string& out) {
    if (levels.empty()) levels = {16, 32, 64, 128, 256};
    if (!(x0 > a && x0 < b)) {
        // default: one third of the interval, never a dyadic grid node
        x0 = a + (b - a) / 3.0;
    }
    const OneDStudyResult result = run_1d_study(a, b, x0, levels);

    std::ostringstream csv;
    write_table_csv(result.table, csv);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# matched_nodal_error,%.12e\n",
                  result.matched_nodal_error);
    csv << buf;
    std::snprintf(buf, sizeof(buf), "# off_element_error,%.12e\n", result.off_element_error);
    csv << buf;
    write_text_file(out, csv.str());

    std::printf("1d study: x0=%.12g levels=%zu -> %s\n", x0, levels.size(), out.c_str());
    for (const auto& key : {"h1", "l2"}) {
        const FitResult& fit = result.table.fits.at(key);
        std::printf("  %s: fitted order %.4f (r2 %.6f)\n", key, fit.slope, fit.r_squared);
    }
    std::printf("  matched-node nodal error %.3e, off-element nodal error %.3e\n",
                result.matched_nodal_error, result.off_element_error);
}

// ------------------------------------------------------------------- verify

struct VerifyCheck {
    std::string label;
    double worst = 0.0;
    double bound = 0.0;
};

void report_verify(const std::string& name, const json& detail,
                   const std::vector<VerifyCheck>& checks, const std::string& out) {
    json j;
    j["format"] = "diracfem-verify-1";
    j["check"] = name;
    json jchecks = json::array();
    bool pass = true;
    for (const VerifyCheck& check : checks) {
        const bool ok = check.worst <= check.bound;
        pass = pass && ok;
        jchecks.push_back({{"label", check.label},
                           {"worst", check.worst},
                           {"bound", check.bound},
                           {"pass", ok}});
    }
    j["checks"] = std::move(jchecks);
    j["pass"] = pass;
    j["detail"] = detail;
    write_text_file(out.empty() ? "verify_" + name + ".json" : out, j.dump(2) + "\n");
    for (const VerifyCheck& check : checks) {
        if (check.worst <= check.bound) continue;
        char buf[192];
        std::snprintf(buf, sizeof(buf), "verify %s: %s residual %.6e exceeds bound %.1e",
                      name.c_str(), check.label.c_str(), check.worst, check.bound);
        throw Error(buf);
    }
    std::printf("verify %s: PASS", name.c_str());
    for (const VerifyCheck& check : checks)
        std::printf("  [%s %.3e <= %.1e]", check.label.c_str(), check.worst, check.bound);
    std::printf("\n");
}

void cmd_verify_rhs_equality(Point2 x0, const std::string& out) {
    StudyConfig cfg;
    cfg.domain = DomainKind::Square;
    cfg.x0 = x0;
    cfg.levels = {8, 16, 32, 64};
    cfg.rhs = RhsKind::Ball;
    const std::vector<RhsEqualityRow> rows = rhs_equality_experiment(cfg);

    json detail = json::array();
    double worst_rhs = 0.0, worst_solution = 0.0;
    std::printf("level   h_max        eps          max|F-D|     max|u_eps-u_delta|\n");
    for (const RhsEqualityRow& row : rows) {
        std::printf("%5d   %.4e   %.4e   %.4e   %.4e\n", row.level, row.h_max, row.eps,
                    row.rhs_diff, row.solution_diff);
        detail.push_back({{"level", row.level},
                          {"h_max", row.h_max},
                          {"eps", row.eps},
                          {"rhs_diff", row.rhs_diff},
                          {"solution_diff", row.solution_diff}});
        worst_rhs = std::max(worst_rhs, row.rhs_diff);
        worst_solution = std::max(worst_solution, row.solution_diff);
    }
    report_verify("rhs-equality", detail,
                  {{"rhs-entries", worst_rhs, 1e-12}, {"solutions", worst_solution, 1e-10}},
                  out);
}

void cmd_verify_mean_value(const std::string& out) {
    // harmonic polynomials Re/Im (x + i y)^m up to degree 6
    const Point2 centers[] = {{0.0, 0.0}, {0.3, -0.2}, {-1.1, 0.7}};
    const double radii[] = {0.05, 0.125};

    auto harmonic = [](int m, bool imag) {
        return [m, imag](Point2 p) {
            // real/imaginary part of (x + i y)^m by explicit recurrence
            double re = 1.0, im = 0.0;
            for (int i = 0; i < m; ++i) {
                const double nre = re * p.x - im * p.y;
                im = re * p.y + im * p.x;
                re = nre;
            }
            return imag ? im : re;
        };
    };

    double worst = 0.0;
    json detail = json::array();
    for (int m = 0; m <= 6; ++m) {
        for (const bool imag : {false, true}) {
            if (m == 0 && imag) continue;  // identically zero
            for (const Point2 center : centers) {
                for (const double eps : radii) {
                    const double residual = mean_value_check(center, eps, harmonic(m, imag));
                    worst = std::max(worst, residual);
                    detail.push_back({{"degree", m},
                                      {"part", imag ? "im" : "re"},
                                      {"center", {center.x, center.y}},
                                      {"eps", eps},
                                      {"residual", residual}});
                }
            }
        }
    }
    report_verify("mean-value", detail, {{"residual", worst, 1e-8}}, out);
}

void cmd_verify_inverse_ineq(unsigned seed, const std::string& out) {
    // scale-free ratio |u|_1 h_min / ||u||_0 must stay in a narrow band
    // across refinement levels (factor 4) for fixed random coefficients
    const int levels[] = {8, 16, 32, 64};
    double worst = 0.0;
    json detail = json::array();
    for (int k = 1; k <= 4; ++k) {
        double lo = 0.0, hi = 0.0;
        json ratios = json::array();
        for (const int n : levels) {
            const Mesh mesh = gen_square(n);
            const FeSpace space = build_space(mesh, k);
            std::mt19937 rng(seed + 1000u * static_cast<unsigned>(k));
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            std::vector<double> u(space.n_dofs);
            for (double& v : u) v = dist(rng);
            const double ratio = inverse_ratio(space, u);
            ratios.push_back({{"level", n}, {"ratio", ratio}});
            lo = lo == 0.0 ? ratio : std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        detail.push_back({{"order", k}, {"band", hi / lo}, {"ratios", ratios}});
        worst = std::max(worst, hi / lo);
    }
    report_verify("inverse-ineq", detail, {{"band", worst, 4.0}}, out);
}

void cmd_verify_w1p_formula(const std::string& out) {
    // polar-quadrature seminorm over the annulus vs the closed form
    const double a = 0.1;
    const int n_radial = 64, n_angular = 64;
    std::vector<double> gx, gw;
    gauss_legendre_01(n_radial, gx, gw);

    double worst = 0.0;
    json detail = json::array();
    for (const double p : {1.0, 1.5, 1.9}) {
        KahanSum sum;
        for (int i = 0; i < n_radial; ++i) {
            const double r = a + (1.0 - a) * gx[i];
            const double wr = (1.0 - a) * gw[i];
            for (int j = 0; j < n_angular; ++j) {
                const double wtheta = 2.0 * kPi / n_angular;
                // |grad G| = 1 / (2 pi r); area measure r dr dtheta
                sum.add(wr * wtheta * std::pow(1.0 / (2.0 * kPi * r), p) * r);
            }
        }
        const double quadrature = std::pow(sum.value(), 1.0 / p);
        const double closed = std::pow(w1p_green_annulus_pow(p, a), 1.0 / p);
        const double rel = std::abs(quadrature - closed) / closed;
        detail.push_back({{"p", p}, {"quadrature", quadrature}, {"closed_form", closed},
                          {"rel_diff", rel}});
        worst = std::max(worst, rel);
        std::printf("  p=%.1f: quadrature %.12e closed form %.12e rel %.3e\n", p, quadrature,
                    closed, rel);
    }

    // exact special value at p = 1 over the full disk
    const double unit = w1p_green_annulus_pow(1.0, 0.0);
    if (unit != 1.0) throw Error("verify w1p-formula: p=1, a=0 closed form is not exactly 1");
    std::printf("  p=1, a=0 closed form == 1 exactly\n");
    report_verify("w1p-formula", detail, {{"rel-diff", worst, 1e-3}}, out);
}

// ------------------------------------------------------------------- demo1d

void cmd_demo1d(double a, double b, double x0, double eps, int samples,
                const std::string& out) {
    if (samples < 2) throw Error("need at least two samples");
    std::ostringstream csv;
    csv << "x,u_delta,u_eps,diff\n";
    char buf[160];
    double worst_outside = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = a + (b - a) * i / samples;
        const OneDValues v = one_d_exact(a, b, x0, eps, x);
        const double diff = std::abs(v.u_eps - v.u_delta);
        if (std::abs(x - x0) >= eps) worst_outside = std::max(worst_outside, diff);
        std::snprintf(buf, sizeof(buf), "%.12e,%.12e,%.12e,%.12e\n", x, v.u_delta, v.u_eps,
                      diff);
        csv << buf;
    }
    write_text_file(out, csv.str());
    std::printf("demo1d: %d samples -> %s (max |u_eps - u_delta| outside the ball: %.3e)\n",
                samples + 1, out.c_str(), worst_outside);
    if (worst_outside > 1e-12)
        throw Error("demo1d: the regularized solution deviates outside the ball");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diracfem - finite elements for the 2D Poisson problem with a point source"};
    app.require_subcommand(1);

    // ---- mesh gen
    auto* mesh_cmd = app.add_subcommand("mesh", "mesh utilities");
    mesh_cmd->require_subcommand(1);
    auto* gen = mesh_cmd->add_subcommand("gen", "generate a structured mesh");
    std::string gen_domain = "square";
    int gen_res = 8;
    std::string gen_out = "mesh";
    gen->add_option("--domain", gen_domain, "square|disk")
        ->check(CLI::IsMember({"square", "disk"}));
    gen->add_option("--res", gen_res, "cells per side (square) or rings (disk)")
        ->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "output stem for .node/.ele");
    gen->callback([&] { cmd_mesh_gen(gen_domain, gen_res, gen_out); });

    // ---- solve
    auto* solve = app.add_subcommand("solve", "solve one point-source problem");
    std::string solve_mesh, solve_domain = "disk", solve_rhs = "dirac", solve_eps = "auto";
    std::string solve_bc = "exact", solve_x0 = "0,0", solve_out = "solution.json";
    int solve_res = 10, solve_k = 1;
    double solve_tol = 1e-12;
    solve->add_option("--mesh", solve_mesh, "mesh stem to read (.node/.ele)");
    solve->add_option("--domain", solve_domain, "square|disk (generated mesh)")
        ->check(CLI::IsMember({"square", "disk"}));
    solve->add_option("--res", solve_res, "resolution of the generated mesh")
        ->check(CLI::PositiveNumber);
    solve->add_option("--k", solve_k, "polynomial order 1..4")->check(CLI::Range(1, 4));
    solve->add_option("--rhs", solve_rhs, "dirac|ball")
        ->check(CLI::IsMember({"dirac", "ball"}));
    solve->add_option("--x0", solve_x0, "source location X,Y");
    solve->add_option("--eps", solve_eps, "ball radius, or 'auto'");
    solve->add_option("--bc", solve_bc, "exact|zero boundary values");
    solve->add_option("--tol", solve_tol, "solver relative tolerance");
    solve->add_option("--out", solve_out, "solution JSON path");
    solve->callback([&] {
        MeshRef ref;
        if (!solve_mesh.empty()) {
            ref = {"file", "", 0, solve_mesh};
        } else {
            ref = {"generated", solve_domain, solve_res, ""};
        }
        cmd_solve(ref, solve_k, solve_rhs, parse_point(solve_x0), solve_eps, solve_bc,
                  solve_tol, solve_out);
    });

    // ---- errors
    auto* errors = app.add_subcommand("errors", "error norms of a stored solution");
    std::string err_sol = "solution.json", err_norms = "l2,h1", err_field, err_out = "errors.json";
    double err_exclude = 0.2;
    errors->add_option("--sol", err_sol, "solution JSON from `solve`");
    errors->add_option("--exclude-r", err_exclude, "radius around x0 excluded from norms")
        ->check(CLI::PositiveNumber);
    errors->add_option("--norms", err_norms, "comma list: l2,h1,h1semi,w1p:P");
    errors->add_option("--field", err_field, "also write the per-element error CSV here");
    errors->add_option("--out", err_out, "errors JSON path");
    errors->callback(
        [&] { cmd_errors(err_sol, err_exclude, err_norms, err_field, err_out); });

    // ---- study conv / study 1d
    auto* study = app.add_subcommand("study", "refinement studies");
    study->require_subcommand(1);
    auto* conv = study->add_subcommand("conv", "convergence study from a JSON config");
    std::string conv_config, conv_out = "table.csv";
    conv->add_option("--config", conv_config, "StudyConfig JSON path")->required();
    conv->add_option("--out", conv_out, "CSV output path (per-order suffix when needed)");
    conv->callback([&] { cmd_study_conv(conv_config, conv_out); });

    auto* one_d = study->add_subcommand("1d", "interval point-source study");
    double d1_a = 0.0, d1_b = 1.0, d1_x0 = -1.0;
    std::vector<int> d1_levels;
    std::string d1_out = "table1d.csv";
    one_d->add_option("--a", d1_a, "left endpoint");
    one_d->add_option("--b", d1_b, "right endpoint");
    one_d->add_option("--x0", d1_x0, "source location (default: a + (b-a)/3)");
    one_d->add_option("--levels", d1_levels, "cell counts (default 16 32 64 128 256)")
        ->delimiter(',');
    one_d->add_option("--out", d1_out, "CSV output path");
    one_d->callback([&] { cmd_study_1d(d1_a, d1_b, d1_x0, d1_levels, d1_out); });

    // ---- verify
    auto* verify = app.add_subcommand("verify", "self-checking batteries");
    verify->require_subcommand(1);
    std::string verify_out;
    unsigned verify_seed = 12345;
    std::string verify_x0 = "0.50314,0.49717";
    verify->add_option("--out", verify_out, "result JSON path (default verify_<name>.json)");
    verify->add_option("--seed", verify_seed, "seed for randomized batteries");
    verify->add_option("--x0", verify_x0, "source location for rhs-equality");

    // fallthrough lets `verify <name> --out ...` reach the shared options above
    verify->add_subcommand("rhs-equality", "point source vs contained ball source")
        ->fallthrough()
        ->callback([&] { cmd_verify_rhs_equality(parse_point(verify_x0), verify_out); });
    verify->add_subcommand("mean-value", "harmonic mean value property")
        ->fallthrough()
        ->callback([&] { cmd_verify_mean_value(verify_out); });
    verify->add_subcommand("inverse-ineq", "discrete inverse inequality band")
        ->fallthrough()
        ->callback([&] { cmd_verify_inverse_ineq(verify_seed, verify_out); });
    verify->add_subcommand("w1p-formula", "gradient Lp seminorm closed form")
        ->fallthrough()
        ->callback([&] { cmd_verify_w1p_formula(verify_out); });

    // ---- demo1d
    auto* demo = app.add_subcommand("demo1d", "tabulate the 1D closed forms");
    double demo_a = 0.0, demo_b = 1.0, demo_x0 = 0.5, demo_eps = 0.1;
    int demo_samples = 200;
    std::string demo_out = "demo1d.csv";
    demo->add_option("--a", demo_a, "left endpoint");
    demo->add_option("--b", demo_b, "right endpoint");
    demo->add_option("--x0", demo_x0, "source location");
    demo->add_option("--eps", demo_eps, "ball radius")->check(CLI::PositiveNumber);
    demo->add_option("--samples", demo_samples, "sample count");
    demo->add_option("--out", demo_out, "CSV output path");
    demo->callback(
        [&] { cmd_demo1d(demo_a, demo_b, demo_x0, demo_eps, demo_samples, demo_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 1;
        }
        return app.exit(e);  // --help and friends
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
