// banachlab: moduli, classification and inequality checks for
// finite-dimensional normed spaces.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "banachlab/classify.hpp"
#include "banachlab/moduli.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/numerics.hpp"
#include "banachlab/report_json.hpp"
#include "banachlab/specparse.hpp"
#include "banachlab/verify.hpp"

namespace bl = banachlab;

namespace {

// Exit codes: 0 ok, 1 usage, 2 a paper inequality came out violated (a bug
// signal), 3 inconclusive-only under --strict.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolated = 2;
constexpr int kExitInconclusive = 3;

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    if (s.empty()) return out;
    auto colon = std::count(s.begin(), s.end(), ':');
    if (colon == 2) {
        double a, step, b;
        char c1, c2;
        std::istringstream is(s);
        is >> a >> c1 >> step >> c2 >> b;
        for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
        return out;
    }
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

bl::Vec parse_vector(const std::string& s) {
    bl::Vec v;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

std::vector<bl::Vec> parse_basis(const std::string& s) {
    std::vector<bl::Vec> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ';')) out.push_back(parse_vector(tok));
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << text;
    }
}

struct GlobalOptions {
    bl::Resolution res;
    std::string format = "json";
    std::string out;
    double tol = 1e-4;
    int jobs = 1;
    long seed = 0;  // reserved; every algorithm is deterministic
    bool strict = false;
};

void load_env_config(GlobalOptions& g) {
    const char* path = std::getenv("BANACHLAB_CONFIG");
    if (!path) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("BANACHLAB_CONFIG: cannot open ") + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("angles")) g.res.angles = j["angles"].get<int>();
    if (j.contains("tuple_angles")) g.res.tuple_angles = j["tuple_angles"].get<int>();
    if (j.contains("radial")) g.res.radial = j["radial"].get<int>();
    if (j.contains("refine_iters")) g.res.refine_iters = j["refine_iters"].get<int>();
    if (j.contains("dual_points")) g.res.dual_points = j["dual_points"].get<int>();
    if (j.contains("format")) g.format = j["format"].get<std::string>();
    if (j.contains("tol")) g.tol = j["tol"].get<double>();
    if (j.contains("jobs")) g.jobs = j["jobs"].get<int>();
    if (j.contains("seed")) g.seed = j["seed"].get<long>();
}

bl::json config_json(const GlobalOptions& g) {
    return bl::json{{"angles", g.res.angles},
                    {"tuple_angles", g.res.tuple_angles},
                    {"radial", g.res.radial},
                    {"refine_iters", g.res.refine_iters},
                    {"dual_points", g.res.dual_points},
                    {"tol", g.tol},
                    {"jobs", g.jobs},
                    {"seed", g.seed},
                    {"format", g.format}};
}

int finish_status(const std::vector<bl::InequalityReport>& reports, bool strict) {
    bool violated = false, any_verified = false, any_point = false;
    for (const auto& r : reports) {
        violated = violated || r.any_violation();
        any_verified = any_verified || r.count(bl::CheckStatus::verified) > 0;
        any_point = any_point || !r.points.empty();
    }
    if (violated) return kExitViolated;
    if (strict && any_point && !any_verified) return kExitInconclusive;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"banachlab: geometry of finite-dimensional normed spaces"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    GlobalOptions g;
    try {
        load_env_config(g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    app.add_option("--angles", g.res.angles, "angle grid size for 2D scans (>= 64)")
        ->check(CLI::Range(64, 1 << 22));
    app.add_option("--tuple-angles", g.res.tuple_angles, "per-axis grid for triple searches");
    app.add_option("--radial", g.res.radial, "radial grid for ball variants");
    app.add_option("--refine-iters", g.res.refine_iters, "polish iterations");
    app.add_option("--dual-points", g.res.dual_points, "dual-space boundary tabulation size");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "output path (stdout when omitted)");
    app.add_option("--tol", g.tol, "classification tolerance");
    app.add_option("--jobs", g.jobs, "cap on internal parallelism (results are identical for any value)");
    app.add_option("--seed", g.seed, "reserved (all algorithms are deterministic)");
    app.add_flag("--strict", g.strict, "exit 3 when nothing could be verified");

    // ---- modulus ----
    auto* cmd_mod = app.add_subcommand("modulus", "single modulus enclosure");
    std::string mod_space, mod_kind = "delta_uacs", mod_dir;
    double mod_eps = 1.0, mod_tau = 0.5;
    cmd_mod->add_option("--space", mod_space, "space spec")->required();
    cmd_mod->add_option("--kind", mod_kind, "modulus kind");
    cmd_mod->add_option("--eps", mod_eps, "epsilon argument");
    cmd_mod->add_option("--tau", mod_tau, "tau argument");
    cmd_mod->add_option("--direction", mod_dir, "direction z for delta_uacsed, e.g. '0,1'");

    // ---- curve ----
    auto* cmd_curve = app.add_subcommand("curve", "modulus sweep over an argument grid");
    std::string cur_space, cur_kind = "delta_uacs", cur_grid = "0.25,0.5,1.0,1.5";
    cmd_curve->add_option("--space", cur_space)->required();
    cmd_curve->add_option("--kind", cur_kind);
    cmd_curve->add_option("--grid", cur_grid, "comma list or a:step:b range");

    // ---- classify ----
    auto* cmd_cls = app.add_subcommand("classify", "R / S / acs / lau verdicts with witnesses");
    std::string cls_space;
    cmd_cls->add_option("--space", cls_space)->required();

    // ---- dual ----
    auto* cmd_dual = app.add_subcommand("dual", "numerical dual space and involution check");
    std::string dual_space_spec;
    int dual_samples = 100;
    cmd_dual->add_option("--space", dual_space_spec)->required();
    cmd_dual->add_option("--samples", dual_samples, "involution sample count");

    // ---- quotient ----
    auto* cmd_quot = app.add_subcommand("quotient", "quotient space: build and classify");
    std::string quot_space, quot_basis;
    cmd_quot->add_option("--space", quot_space)->required();
    cmd_quot->add_option("--subspace", quot_basis, "basis, e.g. '1,0,0;0,1,1'")->required();

    // ---- sum ----
    auto* cmd_sum = app.add_subcommand("sum", "absolute sum: build, classify, check sum theorems");
    std::string sum_spec, sum_grid = "0.5,1.0";
    cmd_sum->add_option("--spec", sum_spec, "sum(E=...; ...)")->required();
    cmd_sum->add_option("--eps", sum_grid, "epsilon grid");

    // ---- verify ----
    auto* cmd_ver = app.add_subcommand("verify", "inequality harness");
    std::string ver_ineq = "all", ver_space, ver_eps = "0.25,0.5,1.0,1.5", ver_tau = "0.1,0.25,0.5";
    std::string ver_manifest;
    int ver_quotients = 8;
    cmd_ver->add_option("--inequality", ver_ineq,
                        "delta_rho|delta_tilde_rho|lipschitz|dual|superreflexivity|quotient_acs|"
                        "acs_chars|all");
    cmd_ver->add_option("--space", ver_space, "space spec (or use --manifest)");
    cmd_ver->add_option("--eps", ver_eps);
    cmd_ver->add_option("--tau", ver_tau);
    cmd_ver->add_option("--manifest", ver_manifest, "JSON manifest: spaces x inequalities x grids");
    cmd_ver->add_option("--quotient-samples", ver_quotients);

    // ---- replay ----
    auto* cmd_rep = app.add_subcommand("replay", "exact counterexample-sequence replays");
    int rep_example = 62, rep_n = 8;
    cmd_rep->add_option("--example", rep_example, "62, 63, 64 or 65")->required();
    cmd_rep->add_option("--n", rep_n, "largest sequence index");

    // ---- catalog ----
    app.add_subcommand("catalog", "list built-in space specs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_mod->parsed()) {
            bl::NormedSpace X = bl::parse_space_spec(mod_space, g.res);
            auto kind = bl::modulus_kind_from_string(mod_kind);
            if (!kind) throw CLI::ValidationError("--kind", "unknown modulus kind " + mod_kind);
            bl::ModulusEstimate est;
            if (*kind == bl::ModulusKind::delta_uacsed) {
                if (mod_dir.empty()) {
                    throw CLI::ValidationError("--direction", "delta_uacsed needs a direction");
                }
                est = bl::delta_uacsed(X, parse_vector(mod_dir), mod_eps, g.res);
            } else {
                bool rho = *kind == bl::ModulusKind::rho_X || *kind == bl::ModulusKind::rho_uacs ||
                           *kind == bl::ModulusKind::rho_uacs_ball;
                est = bl::estimate_modulus(X, *kind, rho ? mod_tau : mod_eps, g.res);
            }
            bl::json env = bl::report_envelope("modulus", config_json(g),
                                               bl::json{{"space", X.label()}, {"estimate", bl::to_json(est)}});
            emit(env.dump(2) + "\n", g.out);
            return kExitOk;
        }

        if (cmd_curve->parsed()) {
            bl::NormedSpace X = bl::parse_space_spec(cur_space, g.res);
            auto kind = bl::modulus_kind_from_string(cur_kind);
            if (!kind) throw CLI::ValidationError("--kind", "unknown modulus kind " + cur_kind);
            auto grid = parse_grid(cur_grid);
            if (grid.empty()) throw CLI::ValidationError("--grid", "empty grid");
            auto curve = bl::modulus_curve(X, *kind, grid, g.res);
            if (g.format == "csv") {
                emit(bl::curve_csv(curve), g.out);
                // Witness sidecar rides along with file output.
                if (!g.out.empty()) {
                    bl::json ws = bl::json::array();
                    for (const auto& p : curve.points) {
                        ws.push_back(p.witness ? bl::to_json(*p.witness) : bl::json(nullptr));
                    }
                    std::ofstream side(g.out + ".witnesses.json", std::ios::binary);
                    side << ws.dump(2) << "\n";
                }
            } else {
                bl::json env = bl::report_envelope("curve", config_json(g), bl::to_json(curve));
                emit(env.dump(2) + "\n", g.out);
            }
            return kExitOk;
        }

        if (cmd_cls->parsed()) {
            bl::NormedSpace X = bl::parse_space_spec(cls_space, g.res);
            bl::ClassificationOptions opt;
            opt.tol = g.tol;
            opt.res = g.res;
            auto rep = bl::classify_space(X, opt);
            bl::json env = bl::report_envelope("classify", config_json(g), bl::to_json(rep));
            emit(env.dump(2) + "\n", g.out);
            return kExitOk;
        }

        if (cmd_dual->parsed()) {
            bl::NormedSpace X = bl::parse_space_spec(dual_space_spec, g.res);
            bl::NormedSpace D = bl::dual_space(X, g.res);
            bl::NormedSpace DD = bl::dual_space(D, g.res);
            bl::Rng rng(0xd0a1'0000'0000'0007ULL);
            double max_rel = 0.0;
            for (int k = 0; k < dual_samples; ++k) {
                bl::Vec v(static_cast<std::size_t>(X.dim()));
                for (double& t : v) t = rng.symmetric();
                double nx = X.norm_unchecked(v);
                if (nx < 1e-9) continue;
                max_rel = std::max(max_rel, std::abs(DD.norm_unchecked(v) - nx) / nx);
            }
            bl::json result{{"space", X.label()},
                            {"dual", D.label()},
                            {"dual_equiv", {D.equiv_lo(), D.equiv_hi()}},
                            {"involution_samples", dual_samples},
                            {"involution_max_rel_error", max_rel}};
            bl::json env = bl::report_envelope("dual", config_json(g), result);
            emit(env.dump(2) + "\n", g.out);
            return kExitOk;
        }

        if (cmd_quot->parsed()) {
            bl::NormedSpace X = bl::parse_space_spec(quot_space, g.res);
            auto basis = parse_basis(quot_basis);
            bl::NormedSpace Q = bl::quotient_space(X, basis, g.res);
            bl::ClassificationOptions opt;
            opt.tol = g.tol;
            opt.res = g.res;
            opt.res.angles = std::min(g.res.angles, 2048);
            auto rep = bl::classify_space(Q, opt);
            bl::json env = bl::report_envelope(
                "quotient", config_json(g),
                bl::json{{"space", X.label()}, {"quotient_dim", Q.dim()}, {"classification", bl::to_json(rep)}});
            emit(env.dump(2) + "\n", g.out);
            return kExitOk;
        }

        if (cmd_sum->parsed()) {
            auto sum = bl::parse_sum_spec(sum_spec, g.res);
            if (!sum) throw CLI::ValidationError("--spec", "not a sum(...) spec");
            bl::ClassificationOptions opt;
            opt.tol = g.tol;
            opt.res = g.res;
            opt.res.angles = std::min(g.res.angles, 1024);
            auto grid = parse_grid(sum_grid);
            auto rep = bl::check_sum_theorems(*sum, grid, opt.res);
            bl::json moduli = bl::json::array();
            for (double e : grid) {
                moduli.push_back(bl::to_json(bl::delta_uacs(sum->space(), e, opt.res)));
            }
            bl::json env = bl::report_envelope(
                "sum", config_json(g),
                bl::json{{"space", sum->space().label()},
                         {"sum_theorems", bl::to_json(rep)},
                         {"delta_uacs", moduli}});
            emit(env.dump(2) + "\n", g.out);
            return finish_status({rep}, g.strict);
        }

        if (cmd_ver->parsed()) {
            struct Job {
                std::string space;
                std::string ineq;
            };
            std::vector<Job> jobs;
            std::vector<double> eps = parse_grid(ver_eps), tau = parse_grid(ver_tau);
            std::vector<std::string> ids;
            if (!ver_manifest.empty()) {
                std::ifstream in(ver_manifest);
                if (!in) throw std::runtime_error("cannot open manifest " + ver_manifest);
                nlohmann::json j;
                in >> j;
                for (const auto& s : j.at("spaces")) {
                    for (const auto& iq : j.at("inequalities")) {
                        jobs.push_back({s.get<std::string>(), iq.get<std::string>()});
                    }
                }
                if (j.contains("eps")) eps = j["eps"].get<std::vector<double>>();
                if (j.contains("tau")) tau = j["tau"].get<std::vector<double>>();
            } else {
                if (ver_space.empty()) {
                    throw CLI::ValidationError("--space", "need --space or --manifest");
                }
                if (ver_ineq == "all") {
                    ids = {"delta_rho", "delta_tilde_rho", "lipschitz", "dual", "superreflexivity",
                           "acs_chars"};
                } else {
                    ids = {ver_ineq};
                }
                for (const auto& id : ids) jobs.push_back({ver_space, id});
            }

            std::vector<bl::InequalityReport> reports;
            for (const auto& job : jobs) {
                bl::NormedSpace X = bl::parse_space_spec(job.space, g.res);
                if (job.ineq == "delta_rho") {
                    reports.push_back(bl::check_delta_rho(X, eps, tau, g.res));
                } else if (job.ineq == "delta_tilde_rho") {
                    reports.push_back(bl::check_delta_tilde_rho(X, eps, g.res));
                } else if (job.ineq == "lipschitz") {
                    reports.push_back(bl::check_lipschitz_delta_uacs(X, eps, g.res));
                } else if (job.ineq == "dual") {
                    for (auto& r : bl::check_dual_inequalities(X, eps, tau, g.res)) {
                        reports.push_back(std::move(r));
                    }
                } else if (job.ineq == "superreflexivity") {
                    reports.push_back(bl::check_superreflexivity_criterion(X, tau, g.res));
                } else if (job.ineq == "quotient_acs") {
                    reports.push_back(bl::check_quotient_acs(X, ver_quotients, g.res));
                } else if (job.ineq == "acs_chars") {
                    reports.push_back(bl::check_acs_characterizations(X, 6, g.res));
                } else {
                    throw CLI::ValidationError("--inequality", "unknown id " + job.ineq);
                }
            }

            if (!g.out.empty()) {
                std::filesystem::create_directories(g.out);
                for (const auto& r : reports) {
                    bl::json env = bl::report_envelope("verify", config_json(g), bl::to_json(r));
                    std::ofstream f(g.out + "/" + r.inequality_id + "_" + r.space_label + ".json",
                                    std::ios::binary);
                    f << env.dump(2) << "\n";
                }
                std::ofstream f(g.out + "/summary.csv", std::ios::binary);
                f << bl::summary_csv(reports);
            } else {
                if (g.format == "csv") {
                    std::cout << bl::summary_csv(reports);
                } else {
                    bl::json arr = bl::json::array();
                    for (const auto& r : reports) arr.push_back(bl::to_json(r));
                    bl::json env = bl::report_envelope("verify", config_json(g), arr);
                    std::cout << env.dump(2) << "\n";
                }
            }
            return finish_status(reports, g.strict);
        }

        if (cmd_rep->parsed()) {
            auto rep = bl::replay_example(rep_example, rep_n, g.res);
            if (g.format == "csv") {
                emit(bl::replay_csv(rep), g.out);
            } else {
                bl::json env = bl::report_envelope("replay", config_json(g), bl::to_json(rep));
                emit(env.dump(2) + "\n", g.out);
            }
            return kExitOk;
        }

        // catalog
        std::ostringstream os;
        for (const auto& line : bl::catalog_listing()) os << line << "\n";
        emit(os.str(), g.out);
        return kExitOk;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
