#include "diracfem/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "diracfem/assembly.hpp"
#include "diracfem/exact.hpp"
#include "diracfem/solver.hpp"
#include "diracfem/source_term.hpp"

#include "json.hpp"

namespace diracfem {

using nlohmann::json;

std::string to_string(DomainKind k) {
    return k == DomainKind::Square ? "square" : "disk";
}

std::string to_string(RhsKind k) {
    switch (k) {
        case RhsKind::Dirac: return "dirac";
        case RhsKind::Ball: return "ball";
        case RhsKind::Manufactured: return "manufactured";
    }
    return "?";
}

std::string to_string(BcKind k) {
    return k == BcKind::ExactData ? "exact-data" : "zero";
}

namespace {

DomainKind domain_from_string(const std::string& s) {
    if (s == "square") return DomainKind::Square;
    if (s == "disk") return DomainKind::Disk;
    throw Error("StudyConfig: unknown domain '" + s + "'");
}

RhsKind rhs_from_string(const std::string& s) {
    if (s == "dirac") return RhsKind::Dirac;
    if (s == "ball") return RhsKind::Ball;
    if (s == "manufactured") return RhsKind::Manufactured;
    throw Error("StudyConfig: unknown rhs '" + s + "'");
}

BcKind bc_from_string(const std::string& s) {
    if (s == "exact-data") return BcKind::ExactData;
    if (s == "zero") return BcKind::Zero;
    throw Error("StudyConfig: unknown bc '" + s + "'");
}

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(std::string("StudyConfig: ") + what + " must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json subdomain_to_json(const SubdomainSpec& s) {
    json j;
    switch (s.kind) {
        case SubdomainKind::Annulus:
            j["kind"] = "annulus";
            j["center"] = point_to_json(s.center);
            j["r_inner"] = s.r_inner;
            j["r_outer"] = s.r_outer;
            break;
        case SubdomainKind::ExclusionBall:
            j["kind"] = "exclusion-ball";
            j["center"] = point_to_json(s.center);
            j["r"] = s.r_inner;
            break;
        case SubdomainKind::Rectangle:
            j["kind"] = "rectangle";
            j["lo"] = point_to_json(s.rect.lo);
            j["hi"] = point_to_json(s.rect.hi);
            break;
    }
    return j;
}

SubdomainSpec subdomain_from_json(const json& j, const char* what) {
    if (!j.is_object() || !j.contains("kind"))
        throw Error(std::string("StudyConfig: ") + what + " must be an object with a kind");
    const std::string kind = j.at("kind").get<std::string>();
    auto expect_keys = [&](std::initializer_list<const char*> keys) {
        for (const auto& item : j.items()) {
            bool known = item.key() == "kind";
            for (const char* k : keys) known = known || item.key() == k;
            if (!known)
                throw Error(std::string("StudyConfig: unknown key '") + item.key() + "' in " +
                            what);
        }
        for (const char* k : keys)
            if (!j.contains(k))
                throw Error(std::string("StudyConfig: ") + what + " missing key '" + k + "'");
    };
    if (kind == "annulus") {
        expect_keys({"center", "r_inner", "r_outer"});
        return SubdomainSpec::annulus(point_from_json(j.at("center"), what),
                                      j.at("r_inner").get<double>(),
                                      j.at("r_outer").get<double>());
    }
    if (kind == "exclusion-ball") {
        expect_keys({"center", "r"});
        return SubdomainSpec::exclusion_ball(point_from_json(j.at("center"), what),
                                             j.at("r").get<double>());
    }
    if (kind == "rectangle") {
        expect_keys({"lo", "hi"});
        return SubdomainSpec::rectangle(
            {point_from_json(j.at("lo"), what), point_from_json(j.at("hi"), what)});
    }
    throw Error(std::string("StudyConfig: unknown subdomain kind '") + kind + "' in " + what);
}

}  // namespace

void StudyConfig::validate() const {
    if (orders.empty()) throw Error("StudyConfig: no polynomial orders");
    for (int k : orders)
        if (k < 1 || k > 4) throw Error("StudyConfig: order must be in 1..4");
    if (levels.empty()) throw Error("StudyConfig: no levels");
    for (size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1) throw Error("StudyConfig: levels must be >= 1");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw Error("StudyConfig: levels must be strictly increasing");
    }
    if (norms.empty()) throw Error("StudyConfig: no norms requested");
    if (!(solver_tol > 0.0 && solver_tol <= 1e-2))
        throw Error("StudyConfig: solver tolerance out of range (0, 1e-2]");
    if (!is_finite(x0)) throw Error("StudyConfig: x0 must be finite");

    if (rhs == RhsKind::Manufactured) {
        if (domain != DomainKind::Square || bc != BcKind::Zero)
            throw Error(
                "StudyConfig: the manufactured smooth case is defined on the unit square "
                "with zero boundary values");
        return;
    }

    // Point-source and ball-source studies measure away from the source:
    // the source point must not lie in the enlarged region omega1, and the
    // measurement region omega0 must nest inside omega1 where the two specs
    // are directly comparable.
    if (omega1.contains(x0))
        throw Error("StudyConfig: x0 lies inside omega1; the study requires separation");
    const bool same_center = distance(omega0.center, omega1.center) <= 1e-12;
    const bool radial0 =
        omega0.kind == SubdomainKind::Annulus || omega0.kind == SubdomainKind::ExclusionBall;
    const bool radial1 =
        omega1.kind == SubdomainKind::Annulus || omega1.kind == SubdomainKind::ExclusionBall;
    if (radial0 && radial1 && same_center) {
        if (!(omega0.r_inner > omega1.r_inner))
            throw Error("StudyConfig: omega0 must keep a positive distance inside omega1");
        if (omega0.kind == SubdomainKind::Annulus && omega1.kind == SubdomainKind::Annulus &&
            !(omega0.r_outer <= omega1.r_outer + 1e-12))
            throw Error("StudyConfig: omega0 must not extend beyond omega1");
    }
}

namespace {

json config_to_json_obj(const StudyConfig& cfg) {
    json j;
    j["domain"] = to_string(cfg.domain);
    j["x0"] = point_to_json(cfg.x0);
    j["orders"] = cfg.orders;
    j["levels"] = cfg.levels;
    j["rhs"] = to_string(cfg.rhs);
    j["bc"] = to_string(cfg.bc);
    j["omega0"] = subdomain_to_json(cfg.omega0);
    j["omega1"] = subdomain_to_json(cfg.omega1);
    json norms = json::array();
    for (const NormTag& tag : cfg.norms) norms.push_back(tag.key());
    j["norms"] = norms;
    j["solver_tol"] = cfg.solver_tol;
    return j;
}

}  // namespace

std::string config_to_json(const StudyConfig& cfg) { return config_to_json_obj(cfg).dump(2); }

StudyConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("StudyConfig: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("StudyConfig: top-level JSON must be an object");

    static const char* known[] = {"domain", "x0",     "orders", "levels", "rhs",
                                  "bc",     "omega0", "omega1", "norms",  "solver_tol"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw Error("StudyConfig: unknown key '" + item.key() + "'");
    }

    StudyConfig cfg;
    try {
        if (j.contains("domain")) cfg.domain = domain_from_string(j.at("domain").get<std::string>());
        if (j.contains("x0")) cfg.x0 = point_from_json(j.at("x0"), "x0");
        if (j.contains("orders")) cfg.orders = j.at("orders").get<std::vector<int>>();
        if (j.contains("levels")) cfg.levels = j.at("levels").get<std::vector<int>>();
        if (j.contains("rhs")) cfg.rhs = rhs_from_string(j.at("rhs").get<std::string>());
        if (j.contains("bc")) cfg.bc = bc_from_string(j.at("bc").get<std::string>());
        if (j.contains("omega0")) cfg.omega0 = subdomain_from_json(j.at("omega0"), "omega0");
        if (j.contains("omega1")) cfg.omega1 = subdomain_from_json(j.at("omega1"), "omega1");
        if (j.contains("norms")) {
            cfg.norms.clear();
            for (const auto& entry : j.at("norms"))
                cfg.norms.push_back(NormTag::parse(entry.get<std::string>()));
        }
        if (j.contains("solver_tol")) cfg.solver_tol = j.at("solver_tol").get<double>();
    } catch (const json::exception& e) {
        throw Error(std::string("StudyConfig: malformed field: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

StudyConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("StudyConfig: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

FitResult fit_order(std::span<const double> h, std::span<const double> e) {
    if (h.size() != e.size()) throw Error("fit_order: size mismatch");
    const int n = static_cast<int>(h.size());
    if (n < 3) throw Error("fit_order: need at least three samples");
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        if (!(h[i] > 0.0)) throw Error("fit_order: mesh sizes must be positive");
        if (!(e[i] > 0.0)) throw Error("fit_order: errors must be positive");
        x[i] = std::log(h[i]);
        y[i] = std::log(e[i]);
    }
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw Error("fit_order: mesh sizes are all equal");

    FitResult fit;
    fit.slope = sxy / sxx;
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    fit.incremental = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
    return fit;
}

const FitResult& ConvergenceTable::fit(const NormTag& tag) const {
    const auto it = fits.find(tag.key());
    if (it == fits.end())
        throw Error("ConvergenceTable: no fit for norm '" + tag.key() +
                    "' (fewer than three levels?)");
    return it->second;
}

namespace {

ExactSolution manufactured_solution() {
    ExactSolution exact;
    exact.value = [](Point2 p) { return std::sin(kPi * p.x) * std::sin(kPi * p.y); };
    exact.gradient = [](Point2 p) {
        return Point2{kPi * std::cos(kPi * p.x) * std::sin(kPi * p.y),
                      kPi * std::sin(kPi * p.x) * std::cos(kPi * p.y)};
    };
    exact.validity = "unit square, zero boundary values";
    return exact;
}

double manufactured_rhs(Point2 p) {
    return 2.0 * kPi * kPi * std::sin(kPi * p.x) * std::sin(kPi * p.y);
}

ExactSolution reference_solution(const StudyConfig& cfg) {
    if (cfg.rhs == RhsKind::Manufactured) return manufactured_solution();
    if (cfg.bc == BcKind::Zero) {
        const bool centered_disk = cfg.domain == DomainKind::Disk && norm(cfg.x0) <= 1e-14;
        if (!centered_disk)
            throw Error(
                "run_convergence: zero boundary data only matches a closed form when the "
                "source sits at the center of the unit disk; use exact-data boundary values");
        return disk_solution();
    }
    return green_solution(cfg.x0);
}

void fill_fits(ConvergenceTable& table) {
    if (table.rows.size() < 3) return;
    std::vector<double> h(table.rows.size());
    for (size_t i = 0; i < table.rows.size(); ++i) h[i] = table.rows[i].h_max;
    for (const NormTag& tag : table.norms) {
        std::vector<double> e(table.rows.size());
        for (size_t i = 0; i < table.rows.size(); ++i) e[i] = table.rows[i].errors.at(tag.key());
        table.fits[tag.key()] = fit_order(h, e);
    }
}

}  // namespace

StudyResult run_convergence(const StudyConfig& cfg) {
    cfg.validate();
    const ExactSolution exact = reference_solution(cfg);

    StudyResult result;
    result.config = cfg;
    for (const int k : cfg.orders) {
        ConvergenceTable table;
        table.order = k;
        table.norms = cfg.norms;
        for (const int level : cfg.levels) {
            const std::string where = " (order " + std::to_string(k) + ", level " +
                                      std::to_string(level) + ")";
            const Mesh mesh =
                cfg.domain == DomainKind::Square ? gen_square(level) : gen_disk(level);
            if (cfg.rhs != RhsKind::Manufactured) {
                const SeparationReport separation =
                    check_separation(mesh, cfg.omega0, cfg.omega1);
                if (!separation.ok)
                    throw Error("run_convergence: separation check failed" + where + ": " +
                                std::to_string(separation.offending.size()) +
                                " elements touch omega0 without staying inside omega1");
            }
            const FeSpace space = build_space(mesh, k);

            std::vector<double> b;
            switch (cfg.rhs) {
                case RhsKind::Dirac: b = assemble_dirac_rhs(space, cfg.x0); break;
                case RhsKind::Ball:
                    b = assemble_ball_rhs(space, cfg.x0, choose_epsilon(mesh, cfg.x0));
                    break;
                case RhsKind::Manufactured: b = assemble_load(space, manufactured_rhs); break;
            }

            const auto boundary_values =
                cfg.bc == BcKind::Zero
                    ? std::function<double(Point2)>([](Point2) { return 0.0; })
                    : exact.value;
            const SparseSpd a = assemble_stiffness(space);
            const DirichletSystem system = apply_dirichlet(space, a, b, boundary_values);
            std::vector<double> interior;
            try {
                interior = solve_spd(system.matrix, system.rhs, cfg.solver_tol);
            } catch (const ConvergenceError& e) {
                throw Error(std::string("run_convergence: ") + e.what() + where);
            }
            const std::vector<double> u = expand_solution(system, interior);

            const ErrorReport report = error_norms(space, u, exact, cfg.omega0, cfg.norms);
            LevelRow row;
            row.level = level;
            row.h_max = mesh.h_max;
            row.dofs = space.n_dofs;
            for (const NormTag& tag : cfg.norms) row.errors[tag.key()] = report.value(tag);
            table.rows.push_back(std::move(row));
        }
        fill_fits(table);
        result.tables.push_back(std::move(table));
    }
    return result;
}

void write_table_csv(const ConvergenceTable& table, std::ostream& out) {
    out << "level,h_max,dofs,norm,value\n";
    char buf[160];
    for (const LevelRow& row : table.rows) {
        for (const NormTag& tag : table.norms) {
            std::snprintf(buf, sizeof(buf), "%d,%.12e,%d,%s,%.12e\n", row.level, row.h_max,
                          row.dofs, tag.key().c_str(), row.errors.at(tag.key()));
            out << buf;
        }
    }
    out << "# order," << table.order << "\n";
    if (table.fits.empty()) {
        out << "# fit unavailable: fewer than three levels\n";
        return;
    }
    out << "# fit,norm,slope,r_squared,incremental\n";
    for (const NormTag& tag : table.norms) {
        const FitResult& fit = table.fits.at(tag.key());
        std::snprintf(buf, sizeof(buf), "# fit,%s,%.12e,%.12e,%.12e\n", tag.key().c_str(),
                      fit.slope, fit.r_squared, fit.incremental);
        out << buf;
    }
}

void write_study_json(const StudyResult& result, std::ostream& out) {
    json j;
    j["config"] = config_to_json_obj(result.config);
    json tables = json::array();
    for (const ConvergenceTable& table : result.tables) {
        json jt;
        jt["order"] = table.order;
        json rows = json::array();
        for (const LevelRow& row : table.rows) {
            json jr;
            jr["level"] = row.level;
            jr["h_max"] = row.h_max;
            jr["dofs"] = row.dofs;
            jr["errors"] = row.errors;
            rows.push_back(std::move(jr));
        }
        jt["rows"] = std::move(rows);
        json fits;
        for (const auto& [key, fit] : table.fits) {
            fits[key] = {{"slope", fit.slope},
                         {"r_squared", fit.r_squared},
                         {"incremental", fit.incremental}};
        }
        jt["fits"] = std::move(fits);
        tables.push_back(std::move(jt));
    }
    j["tables"] = std::move(tables);
    out << j.dump(2) << "\n";
}

OneDSolve solve_1d_dirac(double a, double b, double x0, int cells) {
    if (!(a < b)) throw Error("solve_1d_dirac: requires a < b");
    if (!(a < x0 && x0 < b)) throw Error("solve_1d_dirac: x0 must lie strictly inside (a, b)");
    if (cells < 2) throw Error("solve_1d_dirac: need at least two cells");

    const int n = cells;
    const double h = (b - a) / n;
    OneDSolve sol;
    sol.nodes.resize(n + 1);
    for (int i = 0; i <= n; ++i) sol.nodes[i] = a + (b - a) * i / n;
    sol.u.assign(n + 1, 0.0);

    // hat-function load: the two entries of the element containing x0
    std::vector<double> f(n + 1, 0.0);
    int cell = static_cast<int>((x0 - a) / h);
    if (cell >= n) cell = n - 1;
    if (x0 < sol.nodes[cell]) --cell;  // guard against roundoff at cell boundaries
    const double theta = (x0 - sol.nodes[cell]) / h;
    f[cell] += 1.0 - theta;
    f[cell + 1] += theta;

    // interior tridiagonal system (2/h on the diagonal, -1/h off), Thomas solve
    const int m = n - 1;
    std::vector<double> diag(m, 2.0 / h), rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = f[i + 1];
    const double off = -1.0 / h;
    for (int i = 1; i < m; ++i) {
        const double w = off / diag[i - 1];
        diag[i] -= w * off;
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(m);
    x[m - 1] = rhs[m - 1] / diag[m - 1];
    for (int i = m - 2; i >= 0; --i) x[i] = (rhs[i] - off * x[i + 1]) / diag[i];
    for (int i = 0; i < m; ++i) sol.u[i + 1] = x[i];
    return sol;
}

namespace {

// zero-boundary solution of the 1D point-source problem
double one_d_delta(double a, double b, double x0, double x) {
    return x <= x0 ? (x - a) * (b - x0) / (b - a) : (x0 - a) * (b - x) / (b - a);
}

struct Piece {
    double lo, hi;
    double e_lo, e_hi;  // error at the piece ends (linear in between)
};

struct OneDErrors {
    double l2 = 0.0;
    double h1semi = 0.0;
};

// Exact error integrals: on every element the discrete solution is linear
// and the reference is linear except for the kink at x0, so splitting that
// element at x0 leaves piecewise-linear errors that integrate in closed form.
OneDErrors one_d_errors(const OneDSolve& sol, double a, double b, double x0) {
    const int n = static_cast<int>(sol.nodes.size()) - 1;
    KahanSum l2sq, h1sq;
    for (int i = 0; i < n; ++i) {
        const double xl = sol.nodes[i];
        const double xr = sol.nodes[i + 1];
        auto uh = [&](double x) {
            const double t = (x - xl) / (xr - xl);
            return (1.0 - t) * sol.u[i] + t * sol.u[i + 1];
        };
        auto err = [&](double x) { return one_d_delta(a, b, x0, x) - uh(x); };
        Piece pieces[2];
        int n_pieces = 1;
        if (x0 > xl && x0 < xr) {
            pieces[0] = {xl, x0, err(xl), err(x0)};
            pieces[1] = {x0, xr, err(x0), err(xr)};
            n_pieces = 2;
        } else {
            pieces[0] = {xl, xr, err(xl), err(xr)};
        }
        for (int p = 0; p < n_pieces; ++p) {
            const Piece& piece = pieces[p];
            const double len = piece.hi - piece.lo;
            if (len <= 0.0) continue;
            l2sq.add(len *
                     (piece.e_lo * piece.e_lo + piece.e_lo * piece.e_hi + piece.e_hi * piece.e_hi) /
                     3.0);
            const double de = piece.e_hi - piece.e_lo;
            h1sq.add(de * de / len);
        }
    }
    OneDErrors out;
    out.l2 = std::sqrt(std::max(0.0, l2sq.value()));
    out.h1semi = std::sqrt(std::max(0.0, h1sq.value()));
    return out;
}

}  // namespace

OneDStudyResult run_1d_study(double a, double b, double x0, std::span<const int> levels) {
    if (!(a < x0 && x0 < b)) throw Error("run_1d_study: x0 must lie strictly inside (a, b)");
    if (levels.size() < 3) throw Error("run_1d_study: need at least three levels");
    for (size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw Error("run_1d_study: levels must increase");

    OneDStudyResult result;
    result.table.order = 1;
    result.table.norms = {NormTag{NormKind::L2, 2.0}, NormTag{NormKind::H1Semi, 2.0},
                          NormTag{NormKind::H1, 2.0}};
    for (const int n : levels) {
        const OneDSolve sol = solve_1d_dirac(a, b, x0, n);
        const OneDErrors err = one_d_errors(sol, a, b, x0);
        LevelRow row;
        row.level = n;
        row.h_max = (b - a) / n;
        row.dofs = n + 1;
        row.errors["l2"] = err.l2;
        row.errors["h1semi"] = err.h1semi;
        row.errors["h1"] = std::sqrt(err.l2 * err.l2 + err.h1semi * err.h1semi);
        result.table.rows.push_back(std::move(row));
    }
    fill_fits(result.table);

    // diagnostics on the finest grid
    const int n = levels[levels.size() - 1];
    const double h = (b - a) / n;
    {
        // x0 moved onto the nearest interior node: the hat solution is in the
        // discrete space, so every nodal value matches the closed form
        int node = static_cast<int>(std::lround((x0 - a) / h));
        node = std::max(1, std::min(n - 1, node));
        const double x0n = a + (b - a) * node / n;
        const OneDSolve sol = solve_1d_dirac(a, b, x0n, n);
        double worst = 0.0;
        for (int i = 0; i <= n; ++i)
            worst = std::max(worst, std::abs(sol.u[i] - one_d_delta(a, b, x0n, sol.nodes[i])));
        result.matched_nodal_error = worst;
    }
    {
        // original x0: nodal errors vanish away from the element holding x0
        const OneDSolve sol = solve_1d_dirac(a, b, x0, n);
        int cell = static_cast<int>((x0 - a) / h);
        if (cell >= n) cell = n - 1;
        double worst = 0.0;
        for (int i = 0; i <= n; ++i) {
            if (i == cell || i == cell + 1) continue;
            worst = std::max(worst, std::abs(sol.u[i] - one_d_delta(a, b, x0, sol.nodes[i])));
        }
        result.off_element_error = worst;
    }
    return result;
}

std::vector<RhsEqualityRow> rhs_equality_experiment(const StudyConfig& cfg) {
    if (cfg.rhs == RhsKind::Manufactured)
        throw Error("rhs_equality_experiment: requires a point-source config");
    if (cfg.levels.empty()) throw Error("rhs_equality_experiment: no levels");
    for (size_t i = 0; i < cfg.levels.size(); ++i) {
        if (cfg.levels[i] < 1) throw Error("rhs_equality_experiment: levels must be >= 1");
        if (i > 0 && cfg.levels[i] <= cfg.levels[i - 1])
            throw Error("rhs_equality_experiment: levels must be strictly increasing");
    }
    if (!is_finite(cfg.x0)) throw Error("rhs_equality_experiment: x0 must be finite");

    std::vector<RhsEqualityRow> rows;
    for (const int level : cfg.levels) {
        const Mesh mesh = cfg.domain == DomainKind::Square ? gen_square(level) : gen_disk(level);
        const FeSpace space = build_space(mesh, 1);

        const std::vector<double> dirac = assemble_dirac_rhs(space, cfg.x0);
        const double eps = choose_epsilon(mesh, cfg.x0);
        const std::vector<double> ball = assemble_ball_rhs(space, cfg.x0, eps);

        RhsEqualityRow row;
        row.level = level;
        row.h_max = mesh.h_max;
        row.eps = eps;
        std::vector<double> rhs_delta(space.n_dofs);
        for (int i = 0; i < space.n_dofs; ++i) {
            rhs_delta[i] = ball[i] - dirac[i];
            row.rhs_diff = std::max(row.rhs_diff, std::abs(rhs_delta[i]));
        }

        // The two discrete solutions differ by the solution of the same
        // system with the (tiny) RHS difference as data; solving for that
        // difference directly keeps full relative accuracy on it.
        const SparseSpd a = assemble_stiffness(space);
        const auto zero_bc = [](Point2) { return 0.0; };
        const DirichletSystem system = apply_dirichlet(space, a, rhs_delta, zero_bc);
        const std::vector<double> diff = solve_spd(system.matrix, system.rhs, cfg.solver_tol);
        for (const double v : diff) row.solution_diff = std::max(row.solution_diff, std::abs(v));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace diracfem
