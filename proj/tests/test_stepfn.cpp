#include <cmath>

#include "doctest.h"
#include "extrap/error.hpp"
#include "extrap/stepfn.hpp"
#include "extrap/testfns.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

TEST_CASE("construction rejects malformed pieces") {
    CHECK_THROWS_AS(StepFn(1.0, {{0.5, 1.0}}), ValidationError);
    CHECK_THROWS_AS(StepFn(1.0, {{0.5, 1.0}, {0.5, -1.0}}), ValidationError);
    CHECK_THROWS_AS(StepFn(1.0, {{0.0, 1.0}, {1.0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(StepFn(1.0, {{1.0, NAN}}), ValidationError);
    CHECK_NOTHROW(StepFn(1.0, {{0.5 + 1e-14, 1.0}, {0.5, 2.0}}));
    const StepFn f(1.0, {{0.25, 1.0}, {0.75, 2.0}});
    CHECK(f.ends().back() == 1.0);
}

TEST_CASE("decreasing rearrangement examples") {
    const StepFn f(1.0, {{0.5, 1.0}, {0.5, 3.0}});
    const auto r = decreasing_rearrangement(f);
    REQUIRE(r.size() == 2);
    CHECK(r.pieces()[0] == Piece{0.5, 3.0});
    CHECK(r.pieces()[1] == Piece{0.5, 1.0});
    CHECK(r.is_decreasing());
    const auto one = StepFn::constant(1.0, 1.0);
    CHECK(decreasing_rearrangement(one) == one);
}

TEST_CASE("rearrangement preserves the distribution function") {
    const auto f = gen::random(42, 200);
    const auto r = decreasing_rearrangement(f);
    for (const auto& p : f.pieces()) {
        CHECK(oracle::distribution(r, p.value) == Approx(oracle::distribution(f, p.value)).epsilon(1e-12));
        CHECK(oracle::distribution(r, 0.5 * p.value) == Approx(oracle::distribution(f, 0.5 * p.value)).epsilon(1e-12));
    }
    CHECK(r.integral() == Approx(f.integral()).epsilon(1e-14));
    CHECK(decreasing_rearrangement(r) == r);
    for (double t = 0.013; t < 1.0; t += 0.05) CHECK(r.value_at(t) == oracle::rearranged(f, t));
}

TEST_CASE("equal-value pieces merge") {
    const StepFn f(1.0, {{0.25, 2.0}, {0.25, 1.0}, {0.5, 2.0}});
    const auto r = decreasing_rearrangement(f);
    REQUIRE(r.size() == 2);
    CHECK(r.pieces()[0].length == Approx(0.75));
}

TEST_CASE("double star examples") {
    CHECK(double_star(StepFn::constant(1.0, 1.0), 0.5) == 1.0);
    const StepFn f(2.0, {{1.0, 2.0}, {1.0, 1.0}});
    CHECK(double_star(f, 2.0) == Approx(1.5));
    CHECK_THROWS_AS(double_star(f, 0.0), DomainError);
    CHECK_THROWS_AS(double_star(f, 2.5), DomainError);
}

TEST_CASE("double star matches a Riemann sum of the brute-force rearrangement") {
    const auto f = gen::random(7, 20);
    for (double t : {0.05, 0.3, 0.77, 1.0}) {
        const double riemann = oracle::midpoint([&](double s) { return oracle::rearranged(f, s); }, 0.0, t, 20000) / t;
        CHECK(double_star(f, t) == Approx(riemann).epsilon(1e-3));
        CHECK(double_star(f, t) == Approx(oracle::k_by_layers(f, t) / t).epsilon(1e-9));
    }
}

TEST_CASE("K functional examples") {
    const auto chi = StepFn::indicator(1.0);
    for (double t : {0.0, 0.3, 1.0, 4.0}) CHECK(k_functional(t, chi) == Approx(std::min(t, 1.0)));
    const StepFn f(2.0, {{1.0, 2.0}, {1.0, 1.0}});
    CHECK(k_functional(1.0, f) == Approx(2.0));
    CHECK(k_functional(2.0, f) == Approx(3.0));
    CHECK(k_functional(10.0, f) == Approx(3.0));
    CHECK_THROWS_AS(k_functional(-1.0, f), DomainError);
}

TEST_CASE("K curve is concave, nondecreasing, exact at the ends") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto f = gen::random(seed, 64);
        const auto k = k_curve(f);
        CHECK(k(0.0) == 0.0);
        CHECK(k(f.domain_length()) == Approx(f.integral()).epsilon(1e-12));
        const auto s = k.slopes();
        for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1]);
        for (double x : s) CHECK(x >= 0.0);
        for (double t = 0.01; t <= 1.0; t += 0.0731) CHECK(k(t) == Approx(oracle::k_by_layers(f, t)).epsilon(1e-12));
    }
}

TEST_CASE("J functional examples") {
    const auto chi = StepFn::indicator(1.0);
    CHECK(j_functional(2.0, chi) == 2.0);
    CHECK(j_functional(0.5, chi) == 1.0);
}

TEST_CASE("K is dominated by min(1,t/s) J(s) pointwise") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const auto f = gen::random(seed, 32);
        for (double s = 1e-4; s < 1e3; s *= 3.1)
            for (double t = 1e-4; t < 1e3; t *= 2.7)
                CHECK(k_functional(t, f) <= std::min(1.0, t / s) * j_functional(s, f) * (1 + 1e-12));
    }
}

TEST_CASE("truncation slices") {
    SUBCASE("single piece gives one slice equal to f") {
        const auto f = StepFn::constant(1.0, 3.0);
        const auto sl = truncation_slices(f, 2.0);
        REQUIRE(sl.size() == 1);
        CHECK(sl[0].part.value_at(0.5) == 3.0);
    }
    SUBCASE("two-valued f gives two slices that sum back") {
        const StepFn f(1.0, {{0.25, 3.0}, {0.75, 1.0}});
        const auto sl = truncation_slices(f, 2.0);
        REQUIRE(sl.size() == 2);
        for (double t : {0.1, 0.3, 0.9}) CHECK(sl[0].part.value_at(t) + sl[1].part.value_at(t) == f.value_at(t));
    }
    SUBCASE("zero function has no slices") { CHECK(truncation_slices(StepFn::constant(1.0, 0.0), 2.0).empty()); }
    SUBCASE("bad base") { CHECK_THROWS_AS(truncation_slices(StepFn::indicator(1.0), 1.0), ParameterError); }
    SUBCASE("random: exact reconstruction and the two-sided bound") {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const auto f = gen::random(seed, 64);
            const auto sl = truncation_slices(f, 2.0);
            double lo = 0.0;
            for (const auto& p : f.pieces()) {
                const double mid = lo + 0.5 * p.length;
                lo += p.length;
                double sum = 0.0;
                for (const auto& s : sl) sum += s.part.value_at(mid);
                CHECK(sum == p.value);
            }
            for (double t = 1e-6; t < 1e3; t *= 1.9) {
                const double k = k_functional(t, f);
                const double s = slice_j_sum(sl, t);
                CHECK(k <= s * (1 + 1e-12));
                CHECK(s <= 8.0 * k);
            }
        }
    }
}

TEST_CASE("scaling and value_at conventions") {
    const StepFn f(1.0, {{0.5, 1.0}, {0.5, 3.0}});
    CHECK(f.value_at(0.5) == 3.0);  // right-continuous
    CHECK(f.value_at(1.0) == 3.0);
    CHECK(f.value_at(1.5) == 0.0);
    CHECK(f.scaled(2.0).integral() == Approx(4.0));
    for (double t : {0.1, 0.5, 0.99}) CHECK(f.value_at(t) == oracle::value(f, t));
}
