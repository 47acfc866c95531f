// Acceptance suite: one pass/fail line per criterion, exit nonzero when any
// criterion fails. Every run is executed twice and compared byte-for-byte
// (criterion 8), so all checks live behind deterministic report strings.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "banachlab/catalog.hpp"
#include "banachlab/classify.hpp"
#include "banachlab/moduli.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/numerics.hpp"
#include "banachlab/report_json.hpp"
#include "banachlab/sums.hpp"
#include "banachlab/verify.hpp"

using namespace banachlab;

namespace {

const double kInfP = std::numeric_limits<double>::infinity();

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> failures;
    std::string report;  // deterministic content for the double-run comparison
    double seconds = 0.0;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --------------------------------------------------------------------------
// Criterion 1: oracle agreement on the euclidean plane at 4096 angles.

void criterion1(Criterion& c) {
    auto E = build_euclid(2);
    struct Row {
        ModulusKind kind;
        double arg;
        double closed_form;
    };
    const std::vector<Row> rows = {
        {ModulusKind::delta_X, 1.0, 1.0 - std::sqrt(3.0) / 2.0},
        {ModulusKind::delta_uacs, 1.0, 1.0 - std::sqrt(0.5)},
        {ModulusKind::rho_X, 1.0, std::sqrt(2.0) - 1.0},
        {ModulusKind::nonsquareness, 0.0, std::sqrt(2.0) / 2.0},
    };
    std::ostringstream rep;
    for (const auto& row : rows) {
        auto t0 = std::chrono::steady_clock::now();
        auto est = grid_oracle_2d(E, row.kind, row.arg, 4096);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep << to_string(row.kind) << " lo=" << fmt(est.lo) << " hi=" << fmt(est.hi) << "\n";
        c.require(est.lo - 1e-12 <= row.closed_form && row.closed_form <= est.hi + 1e-12,
                  std::string(to_string(row.kind)) + " enclosure misses the closed form");
        c.require(est.width() < 5e-3,
                  std::string(to_string(row.kind)) + " width " + fmt(est.width()) + " >= 5e-3");
        c.require(dt < 10.0, std::string(to_string(row.kind)) + " runtime >= 10 s");
        c.require(est.certified, std::string(to_string(row.kind)) + " not certified");
    }
    c.report = rep.str();
}

// --------------------------------------------------------------------------
// Criterion 2: degenerate witnesses on l1 and linf.

void criterion2(Criterion& c) {
    std::ostringstream rep;
    Resolution res;
    res.angles = 2048;
    for (double p : {1.0, kInfP}) {
        auto X = build_lp(2, p);
        for (double eps : {0.5, 1.0, 1.5}) {
            auto est = delta_uacs(X, eps, res);
            rep << X.label() << " eps=" << fmt(eps) << " hi=" << fmt(est.hi) << "\n";
            c.require(est.hi < 1e-9, X.label() + " delta_uacs(" + fmt(eps) + ").hi >= 1e-9");
            c.require(est.witness.has_value(), X.label() + " missing witness");
            if (est.witness && est.witness->f) {
                const auto& w = *est.witness;
                double fx = (*w.f)(w.x);
                double fy = (*w.f)(w.y);
                double obj = 1.0 - X.norm(add(w.x, w.y)) / 2.0;
                rep << "  witness f(x)=" << fmt(fx) << " f(y)=" << fmt(fy) << " obj=" << fmt(obj)
                    << "\n";
                c.require(std::abs(fx - 1.0) <= 1e-9, "witness functional does not norm x");
                c.require(fy <= 1.0 - eps + 1e-9, "witness fails the D_X(eps) membership");
                c.require(std::abs(obj - w.value) <= 1e-9, "witness does not re-evaluate");
            }
        }
    }
    c.report = rep.str();
}

// --------------------------------------------------------------------------
// Criterion 3: exact replays at n <= 64 in < 5 s.

void criterion3(Criterion& c) {
    std::ostringstream rep;
    auto t0 = std::chrono::steady_clock::now();
    Resolution res;
    res.angles = 1024;
    for (int id : {62, 63, 64, 65}) {
        auto r = replay_example(id, 64, res);
        for (const auto& claim : r.claims) {
            rep << id << " | " << claim.name << " | pass=" << claim.pass
                << " gap=" << fmt(claim.gap) << " last_step=" << fmt(claim.last_step)
                << " monotone=" << claim.monotone << "\n";
            if (claim.kind == ReplayClaim::Kind::equality) {
                c.require(claim.pass, "example " + std::to_string(id) + ": equality '" +
                                          claim.name + "' off by " + fmt(claim.gap));
            } else if (claim.kind == ReplayClaim::Kind::bound) {
                c.require(claim.pass, "example " + std::to_string(id) + ": bound '" + claim.name +
                                          "' exceeded by " + fmt(claim.gap));
            } else {
                c.require(claim.monotone,
                          "example " + std::to_string(id) + ": limit '" + claim.name +
                              "' is not monotone");
                c.require(claim.gap < 2e-2, "example " + std::to_string(id) + ": limit '" +
                                                claim.name + "' terminal gap " + fmt(claim.gap) +
                                                " >= 2e-2 at n=64");
            }
        }
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(dt < 5.0, "replays took " + fmt(dt) + " s >= 5 s");
    c.report = rep.str();
}

// --------------------------------------------------------------------------
// Criterion 4: classifier matrix.

void criterion4(Criterion& c) {
    std::ostringstream rep;
    ClassificationOptions opt;
    opt.res.angles = 4096;
    opt.res.tuple_angles = 256;

    auto expect = [&](const NormedSpace& X, Verdict r, Verdict s, Verdict a,
                      std::optional<Verdict> lau = std::nullopt) {
        auto report = classify_space(X, opt);
        rep << X.label() << ": R=" << to_string(report.rotund) << " S=" << to_string(report.smooth)
            << " acs=" << to_string(report.acs) << " lau=" << to_string(report.lau) << "\n";
        c.require(report.rotund == r, X.label() + " rotund != " + to_string(r));
        c.require(report.smooth == s, X.label() + " smooth != " + to_string(s));
        c.require(report.acs == a, X.label() + " acs != " + to_string(a));
        if (lau) c.require(report.lau == *lau, X.label() + " lau != " + to_string(*lau));

        // Witness soundness re-checks for every failing verdict.
        if (report.rotund == Verdict::fails) {
            c.require(report.rotund_witness.has_value(), X.label() + " no rotund witness");
            if (report.rotund_witness) {
                const auto& w = *report.rotund_witness;
                c.require(X.norm(sub(w.x, w.y)) >= 10 * opt.tol - 1e-12 &&
                              X.norm(add(w.x, w.y)) >= 2.0 - opt.tol * opt.tol,
                          X.label() + " rotund witness unsound");
            }
        }
        if (report.smooth == Verdict::fails) {
            c.require(report.smooth_witness.has_value(), X.label() + " no smooth witness");
            if (report.smooth_witness) {
                const auto& w = *report.smooth_witness;
                c.require(w.pairing_gap > opt.tol && std::abs(w.f1(w.x) - 1.0) < 1e-6 &&
                              std::abs(w.f2(w.x) - 1.0) < 1e-6,
                          X.label() + " smooth witness unsound");
            }
        }
        if (report.acs == Verdict::fails) {
            c.require(report.acs_witness.has_value(), X.label() + " no acs witness");
            if (report.acs_witness) {
                const auto& w = *report.acs_witness;
                c.require(std::abs(w.f(w.x) - 1.0) < 1e-6 &&
                              w.f(w.y) <= 1.0 - 10 * opt.tol + 1e-9 &&
                              X.norm(add(w.x, w.y)) >= 2.0 - opt.tol * opt.tol,
                          X.label() + " acs witness unsound");
            }
        }
    };

    expect(build_euclid(2), Verdict::holds, Verdict::holds, Verdict::holds);
    expect(build_lp(2, 1.0), Verdict::fails, Verdict::fails, Verdict::fails);
    expect(build_lp(2, kInfP), Verdict::fails, Verdict::fails, Verdict::fails);
    expect(build_arc2d(arc2d_preset("ex61")), Verdict::fails, Verdict::fails, Verdict::holds);
    {
        auto fig5 = build_arc2d(arc2d_preset("fig5"));
        auto report = classify_space(fig5, opt);
        rep << fig5.label() << ": acs=" << to_string(report.acs)
            << " lau=" << to_string(report.lau) << "\n";
        c.require(report.acs == Verdict::fails, "fig5 acs != fails");
        c.require(report.lau == Verdict::holds, "fig5 lau != holds");
        c.require(report.acs_witness.has_value(), "fig5 no acs witness");
    }
    c.report = rep.str();
}

// --------------------------------------------------------------------------
// Criterion 5: inequality harness, zero violations, >= 80% strong.

void criterion5(Criterion& c) {
    std::ostringstream rep;
    auto t0 = std::chrono::steady_clock::now();
    Resolution res;
    res.angles = 2048;
    res.tuple_angles = 384;
    res.dual_points = 16384;

    std::vector<NormedSpace> spaces = {build_euclid(2), build_lp(2, 1.0), build_lp(2, kInfP),
                                       build_arc2d(arc2d_preset("ex61")),
                                       build_arc2d(arc2d_preset("fig5"))};
    std::vector<double> eps = {0.25, 0.5, 1.0, 1.5};
    std::vector<double> tau = {0.1, 0.25, 0.5};

    int verified = 0, inconclusive = 0, violated = 0, vacuous = 0;
    auto absorb = [&](const InequalityReport& r) {
        verified += r.count(CheckStatus::verified);
        inconclusive += r.count(CheckStatus::inconclusive);
        violated += r.count(CheckStatus::violated);
        vacuous += r.count(CheckStatus::vacuous);
        rep << r.inequality_id << " @ " << r.space_label << ": verified "
            << r.count(CheckStatus::verified) << ", inconclusive "
            << r.count(CheckStatus::inconclusive) << ", violated "
            << r.count(CheckStatus::violated) << ", vacuous " << r.count(CheckStatus::vacuous)
            << "\n";
    };

    for (const auto& X : spaces) {
        absorb(check_delta_rho(X, eps, tau, res));
        absorb(check_delta_tilde_rho(X, eps, res));
        absorb(check_lipschitz_delta_uacs(X, {0.25, 0.5, 0.75}, res));
        for (const auto& r : check_dual_inequalities(X, eps, tau, res)) absorb(r);
        absorb(check_superreflexivity_criterion(X, tau, res));
    }

    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int decisive = verified + inconclusive + violated;
    double strong_rate = decisive > 0 ? static_cast<double>(verified) / decisive : 0.0;
    rep << "totals: verified " << verified << ", inconclusive " << inconclusive << ", violated "
        << violated << ", vacuous " << vacuous << ", strong rate " << fmt(strong_rate) << "\n";
    c.require(violated == 0, "paper inequality violated (build-stopping defect)");
    c.require(strong_rate >= 0.80,
              "strong verification rate " + fmt(strong_rate) + " below 80%");
    c.require(dt < 300.0, "harness took " + fmt(dt) + " s >= 5 min");
    c.report = rep.str();
}

// --------------------------------------------------------------------------
// Criterion 6: sum theorems.

void criterion6(Criterion& c) {
    std::ostringstream rep;
    Resolution res;
    res.angles = 1024;

    // Euclid (+) Euclid over l2 reproduces the euclidean R^4 moduli.
    {
        auto sum = build_sum({build_euclid(2), build_euclid(2)}, build_absolute_lp(2, 2.0));
        auto e4 = build_euclid(4);
        for (double eps : {0.5, 1.0}) {
            auto a = delta_uacs(sum.space(), eps, res);
            auto b = delta_uacs(e4, eps, res);
            double width = std::max(b.hi - b.lo, 1e-12);
            rep << "sum vs euclid4 delta_uacs(" << fmt(eps) << "): " << fmt(a.hi) << " vs "
                << fmt(b.hi) << "\n";
            c.require(std::abs(a.hi - b.hi) <= 2.0 * width + 1e-9,
                      "sum modulus differs from euclid R^4 beyond 2x width at eps=" + fmt(eps));
        }
    }

    // Euclid (+) linf over l2: vanishing modulus with a lifted witness.
    {
        auto sum = build_sum({build_euclid(2), build_lp(2, kInfP)}, build_absolute_lp(2, 2.0));
        auto comp = delta_uacs(build_lp(2, kInfP), 1.0, res);
        c.require(comp.witness.has_value(), "no component witness");
        Witness lifted = lift_acs_witness(sum, 1, *comp.witness);
        auto ds = delta_uacs(sum.space(), 1.0, res);
        rep << "lifted witness value=" << fmt(lifted.value) << ", sum delta_uacs.hi=" << fmt(ds.hi)
            << "\n";
        c.require(ds.hi < 1e-9, "sum delta_uacs.hi not zero");
        c.require(lifted.value < 1e-9 && std::abs((*lifted.f)(lifted.x) - 1.0) < 1e-9 &&
                      (*lifted.f)(lifted.y) <= 1e-9,
                  "lifted witness unsound");
    }

    // u_plus_violation: l2 decays under 0.1, l1 stays >= 1.
    {
        auto E2 = build_absolute_lp(2, 2.0);
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        double last = 0.0;
        for (double delta : {0.1, 0.01, 0.001}) {
            auto v = u_plus_violation(E2, delta, 0.5, res);
            monotone = monotone && v.value <= prev + 1e-9;
            prev = v.value;
            last = v.value;
            rep << "u_plus l2 delta=" << fmt(delta) << " value=" << fmt(v.value) << "\n";
        }
        c.require(monotone, "l2 u_plus violation not monotone in delta");
        c.require(last < 0.1, "l2 u_plus violation at delta=1e-3 is " + fmt(last) + " >= 0.1");

        auto v1 = u_plus_violation(build_absolute_lp(2, 1.0), 0.01, 0.5, res);
        rep << "u_plus l1 delta=0.01 value=" << fmt(v1.value) << "\n";
        c.require(v1.value >= 1.0, "l1 u_plus violation " + fmt(v1.value) + " < 1");
    }
    c.report = rep.str();
}

// --------------------------------------------------------------------------
// Criterion 7: quotient/dual consistency.

void criterion7(Criterion& c) {
    std::ostringstream rep;
    Resolution res;
    res.angles = 1024;
    res.dual_points = 16384;
    ClassificationOptions opt;
    opt.res = res;

    // l1 R^3: dual not acs and some sampled 2D quotient not acs.
    {
        auto X = build_lp(3, 1.0);
        auto dual = dual_space(X, res);
        Verdict dual_acs = is_acs(dual, opt, nullptr, nullptr);
        rep << "l1(3) dual acs: " << to_string(dual_acs) << "\n";
        c.require(dual_acs == Verdict::fails, "dual of l1 R^3 not classified acs-fails");

        bool some_quotient_fails = false;
        auto dirs = direction_set(3, 16);
        int made = 0;
        for (const auto& d : dirs) {
            if (made >= 8) break;
            NormedSpace quot = quotient_space(X, {d}, res);
            ++made;
            Verdict v = is_acs(quot, opt, nullptr, nullptr);
            rep << "  quotient by " << to_string(d) << ": " << to_string(v) << "\n";
            if (v == Verdict::fails) {
                some_quotient_fails = true;
                break;
            }
        }
        c.require(some_quotient_fails, "no sampled quotient of l1 R^3 fails acs");
    }

    // Euclid R^3: dual acs and 20/20 quotients acs.
    {
        auto X = build_euclid(3);
        auto dual = dual_space(X, res);
        Verdict dual_acs = is_acs(dual, opt, nullptr, nullptr);
        rep << "euclid(3) dual acs: " << to_string(dual_acs) << "\n";
        c.require(dual_acs == Verdict::holds, "dual of euclid R^3 not classified acs-holds");
        auto dirs = direction_set(3, 64);
        int held = 0, made = 0;
        Rng rng(0xacc7);
        for (std::size_t k = 0; made < 20 && k < dirs.size(); ++k) {
            // random-ish mixture for variety, deterministic seed
            Vec d = dirs[k];
            if (k % 2 == 1) {
                d = add(d, {0.3 * rng.symmetric(), 0.3 * rng.symmetric(), 0.3 * rng.symmetric()});
                d = scale(d, 1.0 / l2_norm(d));
            }
            NormedSpace quot = quotient_space(X, {d}, res);
            ++made;
            if (is_acs(quot, opt, nullptr, nullptr) == Verdict::holds) ++held;
        }
        rep << "euclid(3) quotients acs: " << held << "/" << made << "\n";
        c.require(made == 20 && held == 20, "euclid R^3 quotients: " + std::to_string(held) +
                                                "/" + std::to_string(made) + " acs");
    }

    // Dual involution within 2e-3 on 100 samples for all 2D catalog spaces.
    {
        std::vector<NormedSpace> spaces = {build_euclid(2), build_lp(2, 1.0), build_lp(2, kInfP),
                                           build_arc2d(arc2d_preset("ex61")),
                                           build_arc2d(arc2d_preset("fig5"))};
        for (const auto& X : spaces) {
            auto DD = dual_space(dual_space(X, res), res);
            Rng rng(0x1007);
            double worst = 0.0;
            for (int k = 0; k < 100; ++k) {
                Vec v = {rng.symmetric(), rng.symmetric()};
                double nx = X.norm_unchecked(v);
                if (nx < 1e-6) continue;
                worst = std::max(worst, std::abs(DD.norm_unchecked(v) - nx) / nx);
            }
            rep << X.label() << " involution error " << fmt(worst) << "\n";
            c.require(worst < 2e-3, X.label() + " involution error " + fmt(worst) + " >= 2e-3");
        }
    }
    c.report = rep.str();
}

struct Outcome {
    std::vector<Criterion> criteria;
};

Outcome run_all() {
    Outcome out;
    struct Item {
        const char* name;
        std::function<void(Criterion&)> fn;
    };
    const std::vector<Item> items = {
        {"1. oracle agreement (euclid, 4096 angles, width < 5e-3, < 10 s)", criterion1},
        {"2. degenerate witnesses (l1/linf delta_uacs hi < 1e-9)", criterion2},
        {"3. exact replays (n <= 64, equalities 1e-12, limits gap < 2e-2, < 5 s)", criterion3},
        {"4. classifier matrix with sound witnesses", criterion4},
        {"5. inequality harness (zero violations, >= 80% strong, < 5 min)", criterion5},
        {"6. sum theorems (nested euclid, lifted witness, u_plus decay)", criterion6},
        {"7. quotient/dual consistency (l1/euclid R^3, involution < 2e-3)", criterion7},
    };
    for (const auto& item : items) {
        Criterion c;
        c.name = item.name;
        auto t0 = std::chrono::steady_clock::now();
        item.fn(c);
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.criteria.push_back(std::move(c));
    }
    return out;
}

}  // namespace

int main() {
    std::printf("banachlab acceptance suite\n");

    Outcome first = run_all();
    Outcome second = run_all();  // criterion 8: byte-identical reports

    bool all_pass = true;
    for (std::size_t i = 0; i < first.criteria.size(); ++i) {
        const auto& c = first.criteria[i];
        bool det = c.report == second.criteria[i].report;
        std::printf("[%s] %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.seconds);
        for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
        all_pass = all_pass && c.pass && det;
        if (!det) std::printf("       - NONDETERMINISTIC report across reruns\n");
    }
    bool det_all = true;
    for (std::size_t i = 0; i < first.criteria.size(); ++i) {
        det_all = det_all && first.criteria[i].report == second.criteria[i].report;
    }
    std::printf("[%s] 8. determinism: repeated runs produce byte-identical reports\n",
                det_all ? "PASS" : "FAIL");
    all_pass = all_pass && det_all;

    std::printf("%s\n", all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all_pass ? 0 : 1;
}
