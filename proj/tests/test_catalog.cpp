#include <doctest.h>

#include <cmath>

#include "banachlab/catalog.hpp"
#include "banachlab/moduli.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/numerics.hpp"

using namespace banachlab;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("lp norm evaluation") {
    auto l1 = build_lp(2, 1.0);
    auto l2 = build_lp(3, 2.0);
    auto linf = build_lp(2, std::numeric_limits<double>::infinity());

    CHECK(l1.norm({3.0, -4.0}) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(l2.norm({1.0, 2.0, 2.0}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(linf.norm({1.0, -1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(build_lp(2, 1.0).norm({1.0, -1.0}) == doctest::Approx(2.0));
    CHECK_THROWS(build_lp(2, 0.5));
    CHECK_THROWS(l1.norm({1.0}));
    CHECK_THROWS(l1.norm({1.0, std::nan("")}));
}

TEST_CASE("example norms reproduce closed-form values") {
    SUBCASE("ex62") {
        auto X = build_example_62(4);
        CHECK(X.norm({1, 0, 0, 0}) == doctest::Approx(kSqrt2).epsilon(1e-14));
        // n=2: beta_2 at odd slots of the first 2n=4 coords, dim 4n=8.
        auto X8 = build_example_62(8);
        int n = 2;
        double beta = 2.0 / std::sqrt(4.0 * n * n + 2.0 * n);
        Vec xn(8, 0.0), yn(8, 0.0);
        for (int k = 0; k < n; ++k) {
            xn[static_cast<std::size_t>(2 * k)] = beta;
            yn[static_cast<std::size_t>(2 * k + 1)] = beta;
        }
        CHECK(X8.norm(xn) == doctest::Approx(std::sqrt(6.0 / 5.0)).epsilon(1e-13));
        CHECK(X8.norm(add(xn, yn)) == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("ex63") {
        auto X = build_example_63(3);
        CHECK(X.norm({1, 0, 0}) == doctest::Approx(kSqrt2).epsilon(1e-14));
        CHECK(X.norm({0, 0, 1}) == doctest::Approx(std::sqrt(1.0 + 1.0 / 9.0)).epsilon(1e-14));
        CHECK(X.norm({1.0 / kSqrt2, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_THROWS(build_example_63(3, {1.0, 0.5, 0.7}));
        CHECK_THROWS(build_example_63(3, {1.0, 0.5, -0.1}));
    }
    SUBCASE("ex64") {
        auto X = build_example_64(3);
        CHECK(X.norm({1, 0, 0}) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(X.norm({0, 1, 0}) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(X.norm({1, 0.5, 0.5}) == doctest::Approx(1.0 + std::sqrt(1.5)).epsilon(1e-14));
    }
    SUBCASE("ex65") {
        auto X = build_example_65(4);
        CHECK(X.norm({1, 0, 0, 0}) == doctest::Approx(kSqrt2).epsilon(1e-14));
        CHECK(X.norm({0, 1, 0, 0}) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
        Rng rng(7);
        for (int k = 0; k < 200; ++k) {
            Vec v(4);
            for (double& t : v) t = rng.symmetric();
            double m = X.norm(v), one = l1_norm(v);
            CHECK(m >= kSqrt2 * one - 1e-12);
            CHECK(m <= std::sqrt(6.0) * one + 1e-12);
        }
    }
}

TEST_CASE("normed space axioms hold on samples for every catalog space") {
    std::vector<NormedSpace> spaces = {
        build_lp(2, 1.0),  build_lp(2, 2.0),  build_lp(2, std::numeric_limits<double>::infinity()),
        build_lp(3, 1.5),  build_example_62(5), build_example_63(4),
        build_example_64(4), build_example_65(4), build_arc2d(arc2d_preset("ex61")),
        build_arc2d(arc2d_preset("fig5"))};
    Rng rng(42);
    for (const auto& X : spaces) {
        CAPTURE(X.label());
        for (int k = 0; k < 1000; ++k) {
            Vec u(static_cast<std::size_t>(X.dim())), v(static_cast<std::size_t>(X.dim()));
            for (double& t : u) t = rng.symmetric();
            for (double& t : v) t = rng.symmetric();
            double nu = X.norm(u), nv = X.norm(v), ns = X.norm(add(u, v));
            // triangle inequality
            REQUIRE(ns <= nu + nv + 1e-12 * (nu + nv));
            // absolute homogeneity
            double t = 2.0 * rng.symmetric();
            REQUIRE(X.norm(scale(u, t)) == doctest::Approx(std::abs(t) * nu).epsilon(1e-12));
            // equivalence certificate
            double e = l2_norm(u);
            REQUIRE(nu >= X.equiv_lo() * e - 1e-9);
            REQUIRE(nu <= X.equiv_hi() * e + 1e-9);
        }
        REQUIRE(X.norm(Vec(static_cast<std::size_t>(X.dim()), 0.0)) == 0.0);
    }
}

TEST_CASE("analytic subgradients are norming with unit dual norm") {
    std::vector<NormedSpace> spaces = {build_lp(3, 1.5), build_lp(2, 2.0), build_example_62(4),
                                       build_example_63(4), build_example_64(4),
                                       build_example_65(4)};
    Rng rng(11);
    for (const auto& X : spaces) {
        CAPTURE(X.label());
        REQUIRE(X.has_subgrad());
        for (int k = 0; k < 50; ++k) {
            Vec x(static_cast<std::size_t>(X.dim()));
            for (double& t : x) t = rng.symmetric();
            if (l2_norm(x) < 0.1) continue;
            Functional f = X.subgrad(x);
            CHECK(f(x) == doctest::Approx(X.norm(x)).epsilon(1e-9));
            auto dn = dual_norm(X, f);
            CHECK(dn.lo <= 1.0 + 1e-6);
        }
    }
}

TEST_CASE("arc2d presets") {
    auto ex61 = build_arc2d(arc2d_preset("ex61"));
    auto fig5 = build_arc2d(arc2d_preset("fig5"));

    SUBCASE("boundary points have norm one") {
        CHECK(ex61.norm({3.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ex61.norm({-3.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ex61.norm({0.0, 1.5}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ex61.norm({1.5, 1.5}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ex61.norm({1.0, 1.5}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fig5.norm({2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
        double c = 2.0 - 0.4 * kSqrt2;
        CHECK(fig5.norm({0.0, c + 0.4}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fig5.norm({1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("flat-top midpoint stays on the sphere") {
        Vec p = {1.2, 1.5}, q = {-1.2, 1.5};
        CHECK(ex61.norm(p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ex61.norm(scale(add(p, q), 0.5)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("fig5 sharp vertex has two supporting functionals") {
        auto sd = subdifferential(fig5, {2.0, 0.0});
        REQUIRE(sd.members.size() == 2);
        CHECK(sd.exact);
    }
    SUBCASE("spec validation rejects bad curves") {
        Arc2DSpec bad;
        bad.pieces.push_back(ArcPiece::segment(-1.0, 0.0, 0.0, -0.5));
        bad.pieces.push_back(ArcPiece::segment(0.0, -0.5, 1.0, 0.0));
        CHECK_THROWS(build_arc2d(bad));  // leaves the upper half-plane
        Arc2DSpec nonconvex;
        nonconvex.pieces.push_back(ArcPiece::segment(-1.0, 0.0, 0.0, 1.0));
        nonconvex.pieces.push_back(ArcPiece::segment(0.0, 1.0, 0.3, 0.2));
        nonconvex.pieces.push_back(ArcPiece::segment(0.3, 0.2, 1.0, 0.0));
        CHECK_THROWS(build_arc2d(nonconvex));
    }
}

TEST_CASE("absolute norm certification") {
    auto E2 = build_absolute_lp(2, 2.0);
    CHECK(E2.certified_absolute());
    CHECK(E2.certified_normalized());
    auto E1 = build_absolute_lp(3, 1.0);
    CHECK(E1.certified_absolute());
    CHECK(E1.certified_normalized());
    auto W = build_absolute_weighted_lp(2, 1.0, {1.0, 2.0});
    CHECK(W.certified_absolute());
    CHECK_FALSE(W.certified_normalized());
    CHECK(W.certification().failure.find("normalization") != std::string::npos);
}

TEST_CASE("ex62 finite-support exactness") {
    // x*(x_n) = 2n/sqrt(4n^2+2n) and x*(y_n) = 0 for x* = (1,0,1,0,...).
    for (int n : {1, 2, 5, 8}) {
        int m = 4 * n;
        auto X = build_example_62(m);
        double beta = 2.0 / std::sqrt(4.0 * n * n + 2.0 * n);
        Vec xn(static_cast<std::size_t>(m), 0.0), yn(static_cast<std::size_t>(m), 0.0);
        for (int k = 0; k < n; ++k) {
            xn[static_cast<std::size_t>(2 * k)] = beta;
            yn[static_cast<std::size_t>(2 * k + 1)] = beta;
        }
        Vec fs(static_cast<std::size_t>(m), 0.0);
        for (int k = 0; 2 * k < m; ++k) fs[static_cast<std::size_t>(2 * k)] = 1.0;
        Functional f(fs);
        CHECK(f(xn) == doctest::Approx(2.0 * n / std::sqrt(4.0 * n * n + 2.0 * n)).epsilon(1e-15));
        CHECK(f(yn) == 0.0);
        CHECK(X.norm(xn) * X.norm(xn) ==
              doctest::Approx((2.0 * n + 2.0) / (2.0 * n + 1.0)).epsilon(1e-13));
    }
}
