#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "banachlab/catalog.hpp"
#include "banachlab/moduli.hpp"
#include "banachlab/verify.hpp"

using namespace banachlab;

namespace {
const double kInfP = std::numeric_limits<double>::infinity();

Resolution fast_res() {
    Resolution r;
    r.angles = 1024;
    r.tuple_angles = 192;
    r.dual_points = 8192;
    return r;
}

std::map<std::string, ReplayClaim> claims_by_name(const ReplayReport& r) {
    std::map<std::string, ReplayClaim> m;
    for (const auto& c : r.claims) m[c.name] = c;
    return m;
}

}  // namespace

TEST_CASE("replay 62: exact identities and monotone limits") {
    auto rep = replay_example(62, 16, fast_res());
    auto c = claims_by_name(rep);
    CHECK(c.at("norm(x_n + y_n) == 2").pass);
    CHECK(c.at("norm(x_n)^2 == (2n+2)/(2n+1)").pass);
    CHECK(c.at("f(x_n) == 2n/sqrt(4n^2+2n)").pass);
    CHECK(c.at("f(y_n) == 0").pass);
    CHECK(c.at("dual_norm(1,0,1,0,...) <= 1 + 1e-6").pass);
    const auto& lim = c.at("norm(x_n) -> 1");
    CHECK(lim.monotone);
    CHECK(lim.closed_form_gap <= 1e-12);
    CHECK(lim.gap == doctest::Approx(std::sqrt(34.0 / 33.0) - 1.0).epsilon(1e-9));
    CHECK(rep.rows.size() == 16);
}

TEST_CASE("replay 63: functional identities") {
    auto rep = replay_example(63, 16, fast_res());
    auto c = claims_by_name(rep);
    CHECK(c.at("norm(x) == 1").pass);
    CHECK(c.at("x_n*(x_n) == 1").pass);
    CHECK(c.at("x_n*(y_n) == 0").pass);
    CHECK(c.at("x_n + y_n == 2x").pass);
    CHECK(c.at("dual_norm(x_n*) <= 1 + 1e-6 (attained side)").pass);
    CHECK(c.at("norm(x_n) -> 1").monotone);
    CHECK(c.at("norm(x_n - y_n) -> sqrt(2)").monotone);
}

TEST_CASE("replay 64: x*(x_n) = 2 but x*(y_n) = 0") {
    auto rep = replay_example(64, 16, fast_res());
    auto c = claims_by_name(rep);
    CHECK(c.at("norm(e_1) == 2").pass);
    CHECK(c.at("x*(x_n) == 2").pass);
    CHECK(c.at("x*(y_n) == 0").pass);
    CHECK(c.at("dual_norm(1,1,...) <= 1 + 1e-6 (attained side)").pass);
    const auto& lim = c.at("norm(x_n) -> 2");
    CHECK(lim.monotone);
    CHECK(lim.closed_form_gap <= 1e-12);
}

TEST_CASE("replay 65: the slow sqrt(2) limit is honest about its gap") {
    auto rep = replay_example(65, 16, fast_res());
    auto c = claims_by_name(rep);
    CHECK(c.at("norm_M(e_1) == sqrt(2)").pass);
    CHECK(c.at("x*(x_n) == sqrt(2)").pass);
    CHECK(c.at("x*(x) == 0").pass);
    CHECK(c.at("dual_norm(0,sqrt2,...) <= 1 + 1e-6 (attained side)").pass);
    CHECK(c.at("sqrt2|v|_1 <= |v|_M <= sqrt6|v|_1 (sampled)").pass);
    const auto& lim = c.at("norm_M(x_n) -> sqrt(2)");
    CHECK(lim.monotone);
    CHECK(lim.closed_form_gap <= 1e-12);
    // the gap decays like 1/sqrt(2n): at n=16 it is ~0.17
    CHECK(lim.gap == doctest::Approx(std::sqrt(2.0 + 2.0 / 4.0 + 2.0 / 16.0) - std::sqrt(2.0))
                         .epsilon(1e-9));
    CHECK(c.at("norm_M(x_n + x) -> 2 sqrt(2)").monotone);
}

TEST_CASE("replay quantities are bit-identical across runs") {
    auto a = replay_example(62, 8, fast_res());
    auto b = replay_example(62, 8, fast_res());
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        for (std::size_t q = 0; q < a.rows[i].quantities.size(); ++q) {
            CHECK(a.rows[i].quantities[q].second == b.rows[i].quantities[q].second);
        }
    }
}

TEST_CASE("inequality harness: no violations on the 2d catalog") {
    std::vector<double> eps = {0.5, 1.0};
    std::vector<double> tau = {0.1, 0.25};
    Resolution res = fast_res();
    for (auto& X : {build_euclid(2), build_lp(2, 1.0), build_lp(2, kInfP)}) {
        CAPTURE(X.label());
        auto r1 = check_delta_rho(X, eps, tau, res);
        CHECK_FALSE(r1.any_violation());
        CHECK(r1.count(CheckStatus::verified) >= 2);
        auto r2 = check_delta_tilde_rho(X, eps, res);
        CHECK_FALSE(r2.any_violation());
        auto r3 = check_lipschitz_delta_uacs(X, {0.25, 0.5, 0.75}, res);
        CHECK_FALSE(r3.any_violation());
        auto r4 = check_superreflexivity_criterion(X, tau, res);
        CHECK_FALSE(r4.any_violation());
    }
}

TEST_CASE("dual inequalities on euclid and l1") {
    Resolution res = fast_res();
    std::vector<double> eps = {1.0};
    std::vector<double> tau = {0.25};
    for (auto& X : {build_euclid(2), build_lp(2, 1.0)}) {
        CAPTURE(X.label());
        auto reps = check_dual_inequalities(X, eps, tau, res);
        REQUIRE(reps.size() == 3);
        for (const auto& r : reps) {
            CAPTURE(r.inequality_id);
            CHECK_FALSE(r.any_violation());
        }
        // (i) verifies strongly on both spaces
        CHECK(reps[0].count(CheckStatus::verified) == 1);
        CHECK(reps[2].count(CheckStatus::verified) == 1);
    }
}

TEST_CASE("superreflexivity criterion: both directions") {
    Resolution res = fast_res();
    SUBCASE("euclid: premise holds, NS < 1") {
        auto r = check_superreflexivity_criterion(build_euclid(2), {0.5}, res);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].status == CheckStatus::verified);
    }
    SUBCASE("linf: contrapositive, rho_uacs(t) >= t/2") {
        auto r = check_superreflexivity_criterion(build_lp(2, kInfP), {0.1, 0.25, 0.5}, res);
        for (const auto& p : r.points) CHECK(p.status == CheckStatus::verified);
    }
}

TEST_CASE("sum theorems") {
    Resolution res = fast_res();
    SUBCASE("euclid + linf: lifted witness kills the sum modulus") {
        auto sum = build_sum({build_euclid(2), build_lp(2, kInfP)}, build_absolute_lp(2, 2.0));
        auto r = check_sum_theorems(sum, {1.0}, res);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].status == CheckStatus::verified);
    }
    SUBCASE("two euclidean planes over l2: positive modulus") {
        auto sum = build_sum({build_euclid(2), build_euclid(2)}, build_absolute_lp(2, 2.0));
        auto r = check_sum_theorems(sum, {1.0}, res);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].status == CheckStatus::verified);
    }
    SUBCASE("E = l1 gates the hypothesis") {
        auto sum = build_sum({build_euclid(2), build_euclid(2)}, build_absolute_lp(2, 1.0));
        auto r = check_sum_theorems(sum, {1.0}, res);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].status == CheckStatus::vacuous);
    }
}

TEST_CASE("acs characterizations") {
    Resolution res = fast_res();
    SUBCASE("ex61 flat pairs satisfy the derivative tests") {
        auto r = check_acs_characterizations(build_arc2d(arc2d_preset("ex61")), 6, res);
        CHECK_FALSE(r.any_violation());
        CHECK(r.count(CheckStatus::verified) >= 1);
    }
    SUBCASE("linf witness violates the two-sided test") {
        auto r = check_acs_characterizations(build_lp(2, kInfP), 6, res);
        CHECK(r.count(CheckStatus::verified) >= 1);
    }
    SUBCASE("euclid is vacuous") {
        auto r = check_acs_characterizations(build_euclid(2), 6, res);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].status == CheckStatus::vacuous);
    }
}

TEST_CASE("enclosures tighten as grids refine") {
    auto X = build_euclid(2);
    Resolution lo_res = fast_res();
    lo_res.angles = 512;
    Resolution hi_res = fast_res();
    hi_res.angles = 2048;
    auto a = delta_uacs(X, 1.0, lo_res);
    auto b = delta_uacs(X, 1.0, hi_res);
    CHECK(b.lo >= a.lo - 1e-12);
    CHECK(b.hi <= a.hi + 1e-12);
}
