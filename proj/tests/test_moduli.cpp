#include <doctest.h>

#include <cmath>
#include <limits>

#include "banachlab/catalog.hpp"
#include "banachlab/moduli.hpp"
#include "banachlab/numerics.hpp"

using namespace banachlab;

namespace {

const double kInfP = std::numeric_limits<double>::infinity();

// Closed forms for the Euclidean plane, frozen from the parallelogram law:
//   delta_X(e)    = 1 - sqrt(1 - e^2/4)
//   delta_uacs(e) = 1 - sqrt(1 - e/2)   (f = x forced, <x,y> <= 1-e)
//   rho_X(t)      = sqrt(1 + t^2) - 1
//   NS            = sqrt(2)/2
double hilbert_delta(double eps) { return 1.0 - std::sqrt(1.0 - eps * eps / 4.0); }
double hilbert_delta_uacs(double eps) { return 1.0 - std::sqrt(1.0 - eps / 2.0); }
double hilbert_rho(double tau) { return std::sqrt(1.0 + tau * tau) - 1.0; }

Resolution fast_res() {
    Resolution r;
    r.angles = 1024;
    r.tuple_angles = 256;
    return r;
}

bool encloses(const ModulusEstimate& e, double value, double tol = 1e-12) {
    return e.lo - tol <= value && value <= e.hi + tol;
}

bool intervals_consistent_geq(const ModulusEstimate& lhs, const ModulusEstimate& rhs) {
    // "lhs >= rhs enclosure-wise": the enclosures do not contradict it.
    return lhs.hi >= rhs.lo - 1e-12;
}

}  // namespace

TEST_CASE("euclidean moduli against closed forms (oracle agreement)") {
    auto E = build_euclid(2);
    SUBCASE("delta_X") {
        auto est = grid_oracle_2d(E, ModulusKind::delta_X, 1.0, 4096);
        CHECK(est.certified);
        CHECK(encloses(est, hilbert_delta(1.0)));
        CHECK(est.width() < 5e-3);
    }
    SUBCASE("delta_uacs") {
        auto est = grid_oracle_2d(E, ModulusKind::delta_uacs, 1.0, 4096);
        CHECK(est.certified);
        CHECK(encloses(est, hilbert_delta_uacs(1.0)));
        CHECK(est.width() < 5e-3);
    }
    SUBCASE("rho_X") {
        auto est = grid_oracle_2d(E, ModulusKind::rho_X, 1.0, 4096);
        CHECK(encloses(est, hilbert_rho(1.0)));
        CHECK(est.width() < 5e-3);
    }
    SUBCASE("nonsquareness") {
        auto est = grid_oracle_2d(E, ModulusKind::nonsquareness, 0.0, 4096);
        CHECK(encloses(est, std::sqrt(2.0) / 2.0));
        CHECK(est.width() < 5e-3);
    }
}

TEST_CASE("estimator and oracle enclosures intersect on the 2d catalog") {
    std::vector<NormedSpace> spaces = {build_euclid(2), build_lp(2, 1.0), build_lp(2, kInfP),
                                       build_arc2d(arc2d_preset("ex61")),
                                       build_arc2d(arc2d_preset("fig5"))};
    Resolution res = fast_res();
    for (const auto& X : spaces) {
        CAPTURE(X.label());
        for (ModulusKind kind : {ModulusKind::delta_X, ModulusKind::rho_X, ModulusKind::delta_uacs,
                                 ModulusKind::rho_uacs, ModulusKind::nonsquareness}) {
            CAPTURE(to_string(kind));
            double arg = (kind == ModulusKind::rho_X || kind == ModulusKind::rho_uacs) ? 0.25 : 1.0;
            auto est = estimate_modulus(X, kind, arg, res);
            auto orc = grid_oracle_2d(X, kind, arg, res.angles);
            CHECK(est.lo <= orc.hi + 1e-9);
            CHECK(orc.lo <= est.hi + 1e-9);
        }
    }
}

TEST_CASE("degenerate witnesses on the square and the diamond") {
    for (double p : {1.0, kInfP}) {
        auto X = build_lp(2, p);
        CAPTURE(p);
        for (double eps : {0.5, 1.0, 1.5}) {
            auto est = delta_uacs(X, eps, fast_res());
            CAPTURE(eps);
            CHECK(est.hi < 1e-9);
            REQUIRE(est.witness.has_value());
            const auto& w = *est.witness;
            // Witness re-evaluation: f norms x, f(y) <= 1-eps, midpoint defect = value.
            REQUIRE(w.f.has_value());
            CHECK((*w.f)(w.x) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK((*w.f)(w.y) <= 1.0 - eps + 1e-9);
            double obj = 1.0 - X.norm(add(w.x, w.y)) / 2.0;
            CHECK(obj == doctest::Approx(w.value).epsilon(1e-9));
            CHECK(obj <= est.hi + 1e-12);
        }
    }
}

TEST_CASE("delta_uacs closed form on the euclidean plane at several eps") {
    auto E = build_euclid(2);
    for (double eps : {0.25, 0.5, 1.0, 1.5}) {
        auto est = delta_uacs(E, eps, fast_res());
        CAPTURE(eps);
        CHECK(encloses(est, hilbert_delta_uacs(eps), 1e-9));
    }
}

TEST_CASE("rho values: explicit witnesses") {
    SUBCASE("l1 rho_X(0.5) = 0.5") {
        auto est = rho_smoothness(build_lp(2, 1.0), 0.5, fast_res());
        CHECK(encloses(est, 0.5, 1e-9));
    }
    SUBCASE("linf rho_uacs(0.5) = 0.5") {
        auto est = rho_uacs(build_lp(2, kInfP), 0.5, fast_res());
        CHECK(est.lo == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(est.hi >= 0.5);
        REQUIRE(est.witness.has_value());
        CHECK(build_lp(2, kInfP).norm(add(est.witness->x, est.witness->y)) >= 2.0 * (1.0 - 0.5) - 1e-9);
    }
    SUBCASE("rho_uacs <= rho_X on the euclidean plane") {
        auto E = build_euclid(2);
        for (double tau : {0.1, 0.25, 0.5}) {
            auto a = rho_uacs(E, tau, fast_res());
            auto b = rho_smoothness(E, tau, fast_res());
            CHECK(a.lo <= b.hi + 1e-12);
            CHECK(b.hi >= hilbert_rho(tau) - 1e-9);
        }
    }
    SUBCASE("ball variant dominates the sphere variant") {
        for (double tau : {0.1, 0.25, 0.5}) {
            for (auto& X : {build_euclid(2), build_lp(2, 1.0)}) {
                auto ball = rho_uacs_ball(X, tau, fast_res());
                auto sph = rho_uacs(X, tau, fast_res());
                CHECK(ball.hi >= sph.lo - 1e-9);
            }
        }
    }
}

TEST_CASE("nonsquareness of l1/linf is 1; interior sampling stays below the sphere value") {
    for (double p : {1.0, kInfP}) {
        auto est = nonsquareness(build_lp(2, p), fast_res());
        CAPTURE(p);
        CHECK(est.lo == doctest::Approx(1.0).epsilon(1e-9));
    }
    // Interior pairs never beat the sphere supremum (James-constant check).
    auto E = build_euclid(2);
    auto est = nonsquareness(E, fast_res());
    Rng rng(17);
    for (int k = 0; k < 2000; ++k) {
        Vec x = {rng.symmetric(), rng.symmetric()}, y = {rng.symmetric(), rng.symmetric()};
        if (E.norm(x) > 1.0 || E.norm(y) > 1.0) continue;
        double v = std::min(E.norm(add(x, y)), E.norm(sub(x, y))) / 2.0;
        CHECK(v <= est.hi + 1e-9);
    }
}

TEST_CASE("monotonicity of delta-type moduli in eps") {
    for (auto& X : {build_euclid(2), build_arc2d(arc2d_preset("ex61"))}) {
        CAPTURE(X.label());
        double prev_hi = -1.0;
        for (double eps : {0.25, 0.5, 1.0, 1.5}) {
            auto est = delta_uacs(X, eps, fast_res());
            CHECK(est.hi >= prev_hi - 1e-9);
            prev_hi = est.hi;
        }
    }
}

TEST_CASE("delta_X <= delta_uacs enclosure-wise") {
    for (auto& X : {build_euclid(2), build_lp(2, 1.0), build_lp(2, kInfP),
                    build_arc2d(arc2d_preset("ex61")), build_arc2d(arc2d_preset("fig5"))}) {
        CAPTURE(X.label());
        for (double eps : {0.5, 1.0}) {
            auto dx = delta_convexity(X, eps, fast_res());
            auto du = delta_uacs(X, eps, fast_res());
            CHECK(intervals_consistent_geq(du, dx));
        }
    }
}

TEST_CASE("delta_uacs_tilde") {
    SUBCASE("vanishes on the square") {
        auto est = delta_uacs_tilde(build_lp(2, kInfP), 1.0, fast_res());
        CHECK(est.lo == 0.0);
        CHECK(est.hi < 1e-6);
    }
    SUBCASE("dominates delta_uacs(delta_uacs(.)) on the euclidean plane") {
        auto E = build_euclid(2);
        Resolution res = fast_res();
        res.tuple_angles = 384;
        for (double eps : {0.5, 1.0}) {
            auto lhs = delta_uacs_tilde(E, eps, res);
            double inner = hilbert_delta_uacs(eps);
            double rhs = hilbert_delta_uacs(inner);
            CHECK(lhs.hi >= rhs - 1e-9);
        }
    }
    SUBCASE("monotone in eps") {
        auto E = build_euclid(2);
        auto a = delta_uacs_tilde(E, 0.5, fast_res());
        auto b = delta_uacs_tilde(E, 1.5, fast_res());
        CHECK(b.hi >= a.hi - 1e-9);
    }
}

TEST_CASE("delta_uacsed") {
    SUBCASE("square, z = e2, eps = 1 vanishes with the corner witness") {
        auto est = delta_uacsed(build_lp(2, kInfP), {0.0, 1.0}, 1.0, fast_res());
        CHECK(est.hi < 1e-9);
        REQUIRE(est.witness.has_value());
        CHECK(std::abs(est.witness->x[0] - est.witness->y[0]) < 1e-9);  // x - y || e2
    }
    SUBCASE("euclidean plane: restricted infimum dominates delta_uacs") {
        auto E = build_euclid(2);
        auto restr = delta_uacsed(E, {0.0, 1.0}, 1.0, fast_res());
        auto base = delta_uacs(E, 1.0, fast_res());
        CHECK(restr.hi >= base.lo - 1e-9);
        CHECK(restr.lo > 0.0);
    }
    SUBCASE("span invariance: z and 2z give identical estimates") {
        auto E = build_euclid(2);
        auto a = delta_uacsed(E, {0.3, 0.7}, 0.8, fast_res());
        auto b = delta_uacsed(E, {0.6, 1.4}, 0.8, fast_res());
        CHECK(a.lo == b.lo);
        CHECK(a.hi == b.hi);
    }
}

TEST_CASE("witnesses re-evaluate to their claimed value") {
    Resolution res = fast_res();
    for (auto& X : {build_euclid(2), build_lp(2, 1.0), build_arc2d(arc2d_preset("fig5"))}) {
        CAPTURE(X.label());
        for (ModulusKind kind : {ModulusKind::delta_X, ModulusKind::rho_X, ModulusKind::rho_uacs,
                                 ModulusKind::nonsquareness}) {
            CAPTURE(to_string(kind));
            double arg = (kind == ModulusKind::rho_X || kind == ModulusKind::rho_uacs) ? 0.25 : 0.75;
            auto est = estimate_modulus(X, kind, arg, res);
            REQUIRE(est.witness.has_value());
            const auto& w = *est.witness;
            double value;
            switch (kind) {
                case ModulusKind::delta_X:
                    value = 1.0 - X.norm(add(w.x, w.y)) / 2.0;
                    break;
                case ModulusKind::nonsquareness:
                    value = std::min(X.norm(add(w.x, w.y)), X.norm(sub(w.x, w.y))) / 2.0;
                    break;
                default:
                    value = (X.norm(axpy(w.x, arg, w.y)) + X.norm(axpy(w.x, -arg, w.y))) / 2.0 - 1.0;
            }
            CHECK(value == doctest::Approx(w.value).epsilon(1e-9));
            CHECK(value >= est.lo - 1e-9);
            CHECK(value <= est.hi + 1e-9);
        }
    }
}

TEST_CASE("scale and isometry invariance") {
    SUBCASE("multiplying the evaluator by one is bit-identical") {
        auto X = build_lp(2, 3.0);
        SpaceDef def;
        def.dim = 2;
        def.evaluator = [X](const Vec& v) { return 1.0 * X.norm_unchecked(v); };
        def.equiv_lo = X.equiv_lo();
        def.equiv_hi = X.equiv_hi();
        def.label = X.label();
        NormedSpace Y(std::move(def));
        auto a = estimate_modulus(X, ModulusKind::rho_uacs, 0.25, fast_res());
        auto b = estimate_modulus(Y, ModulusKind::rho_uacs, 0.25, fast_res());
        CHECK(a.lo == b.lo);
        CHECK(a.hi == b.hi);
    }
    SUBCASE("coordinate permutation and sign flips on lp leave moduli unchanged") {
        auto X = build_lp(2, 1.0);
        SpaceDef def;
        def.dim = 2;
        def.evaluator = [X](const Vec& v) { return X.norm_unchecked({-v[1], v[0]}); };
        def.equiv_lo = X.equiv_lo();
        def.equiv_hi = X.equiv_hi();
        def.label = "lp-permuted";
        NormedSpace Y(std::move(def));
        for (ModulusKind kind : {ModulusKind::delta_X, ModulusKind::nonsquareness}) {
            auto a = estimate_modulus(X, kind, 1.0, fast_res());
            auto b = estimate_modulus(Y, kind, 1.0, fast_res());
            CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-9));
            CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-9));
        }
    }
}

TEST_CASE("modulus cache returns identical results") {
    auto X = build_euclid(2);
    auto a = estimate_modulus_cached(X, ModulusKind::delta_uacs, 1.0, fast_res());
    auto b = estimate_modulus_cached(X, ModulusKind::delta_uacs, 1.0, fast_res());
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
}
