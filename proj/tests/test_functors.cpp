#include <cmath>
#include <numbers>

#include "doctest.h"
#include "extrap/error.hpp"
#include "extrap/functors.hpp"
#include "extrap/numerics.hpp"
#include "extrap/testfns.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

TEST_CASE("Δ functor") {
    const auto chi = StepFn::indicator(1.0);
    CHECK(delta_functor_norm(chi, ScaleSpec::make(ScaleSpec::Kind::Lp, WeightSpec::constant())).value ==
          Approx(1.0));
    // (p−1)^α with p restricted to (1, p₀].
    const double p0 = 3.0;
    const auto spec = ScaleSpec::make(ScaleSpec::Kind::Lp, WeightSpec::p_form(0.0, 0.0, 2.0), p0);
    CHECK(delta_functor_norm(chi, spec).value == Approx(std::pow(p0 - 1.0, 2.0)).epsilon(1e-12));
    for (double alpha : {1.0, 2.0}) {
        const auto f = gen::log_power(alpha, 1000, 1e-12);
        const auto d = delta_functor_norm(f, ScaleSpec::make(ScaleSpec::Kind::Lp, WeightSpec::p_form(-alpha, 0.0)));
        const double ratio = d.value / exp_l_alpha_norm(f, alpha);
        CHECK(ratio > 1e-2);
        CHECK(ratio < 1e2);
    }
}

TEST_CASE("Δ functor is monotone in the weight and in f") {
    const auto f = gen::random(4);
    const auto g = f.scaled(1.5);
    const auto small = ScaleSpec::make(ScaleSpec::Kind::LorentzP1, WeightSpec::p_form(-1.0, 0.0));
    const auto large = ScaleSpec::make(ScaleSpec::Kind::LorentzP1, WeightSpec::p_form(-1.0, 0.0, 0.0, 2.0));
    CHECK(delta_functor_norm(f, small).value <= delta_functor_norm(f, large).value);
    CHECK(delta_functor_norm(f, small).value <= delta_functor_norm(g, small).value);
}

TEST_CASE("Σ functor in closed form") {
    CHECK(sigma_llogl_norm(StepFn::constant(1.0, 0.0), 1.0) == 0.0);
    CHECK(sigma_llogl_norm(StepFn::indicator(1.0), 1.0) == Approx(1.0));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = gen::random(seed);
        if (f.is_zero()) continue;
        const double ratio = sigma_llogl_norm(f, 1.5) / llogl_alpha_norm(f, 1.5);
        CHECK(ratio > 0.1);
        CHECK(ratio < 10.0);
        // Σ equals the limiting norm with w(s) = log^{α−1}(1/s)/s, q = 1.
        CHECK(sigma_llogl_norm(f, 1.5) == Approx(limiting_norm(f, ScalarWeight{1.0, 0.0, 0.5, 0.0}, 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("F functor") {
    const auto zero = StepFn::constant(1.0, 0.0);
    LatticeParamSpec sup;
    CHECK(f_functor_norm(zero, sup) == 0.0);
    CHECK(f_functor_norm(StepFn::indicator(0.3), sup) == Approx(1.0));
    LatticeParamSpec l1;
    l1.kind = LatticeParamSpec::Kind::Lq;
    l1.weight = WeightSpec::p_form(-2.0, 0.0);
    CHECK(f_functor_norm(StepFn::indicator(1.0), l1) == Approx(1.0).epsilon(1e-9));
    // A sup lattice without the extra endpoints reduces to the Δ functor on the same grid.
    const auto f = gen::random(8);
    LatticeParamSpec s;
    s.weight = WeightSpec::p_form(-1.0, 0.0);
    s.include_infinity = false;
    const auto d = delta_functor_norm(f, ScaleSpec::make(ScaleSpec::Kind::Lp, s.weight, s.p_max, s.per_decade));
    CHECK(f_functor_norm(f, s) >= d.value);
    CHECK(f_functor_norm(f, s) == Approx(std::max(d.value, s.weight.at_p(1.0) * lp_norm(f, 1.0))).epsilon(1e-12));
}

TEST_CASE("limiting norm") {
    const auto f = gen::random(13);
    const auto k = k_curve(f);
    const double theta = 0.4;
    const double expected =
        oracle::dense_max([&](double s) { return std::pow(s, -theta) * k(s); }, 1e-9, 1.0, 400000, true);
    const double got = limiting_norm(f, ScalarWeight{1.0, -theta, 0.0, 1.0}, INFINITY);
    CHECK(got >= expected * (1 - 1e-12));
    CHECK(got == Approx(expected).epsilon(1e-5));
    CHECK(limiting_norm(StepFn::constant(1.0, 0.0), ScalarWeight{1.0, -theta, 0.0, 1.0}, 2.0) == 0.0);
}

TEST_CASE("K tail and head integrals") {
    const auto f = gen::random(17, 12);
    const auto k = k_curve(f);
    for (double x : {0.01, 0.5, 2.0}) {
        const double tail = oracle::simpson([&](double u) { return k(u) / (u * u); }, x, 1.0, 1e-13) +
                            (x < 1.0 ? f.integral() : f.integral() / x);
        if (x < 1.0) CHECK(k_tail_integral(k, x) == Approx(tail).epsilon(1e-9));
        CHECK(k_head_integral(k, x) ==
              Approx(oracle::simpson([&](double s) { return k(s) / s; }, 1e-14, x, 1e-13)).epsilon(1e-9));
    }
}

TEST_CASE("scale K functional") {
    const auto f = gen::random(3, 20);
    const auto k = k_curve(f);
    const ScaleKFunctional one(WeightSpec::constant());
    const ScaleKFunctional yano(WeightSpec::parse("yano"));
    const ScaleKFunctional lag(WeightSpec::theta_form(1.0, 1.0));
    double prev = 0.0;
    double prev_slope = INFINITY;
    double prev_t = 0.0;
    for (double t = 1e-3; t < 1e3; t *= 1.5) {
        CHECK(one(t, f) == Approx(k(t)).epsilon(1e-9));
        const double y = yano(t, f);
        CHECK(y == Approx(std::numbers::e * t * k_tail_integral(k, std::numbers::e * t)).epsilon(1e-4));
        const double l = lag(t, f) / becomes_form(k, t);
        CHECK(l >= 1.0);
        CHECK(l <= std::numbers::e);
        // Concave and nondecreasing in t.
        CHECK(y >= prev);
        const double slope = (y - prev) / (t - prev_t);
        CHECK(slope <= prev_slope * (1 + 1e-6));
        prev_slope = slope;
        prev = y;
        prev_t = t;
    }
}

TEST_CASE("Marcinkiewicz extrapolation criterion") {
    const auto sqrt_phi = marcinkiewicz_extrap_check(QuasiConcaveFn::power(0.5));
    CHECK(std::isfinite(sqrt_phi.measured));
    const auto log_phi = marcinkiewicz_extrap_check(QuasiConcaveFn::log_power(0.0, -1.0));
    CHECK(std::isfinite(log_phi.measured));
    const auto l1 = marcinkiewicz_extrap_check(QuasiConcaveFn::power(1.0));
    CHECK_FALSE(l1.pass);
    CHECK(l1.has_flag("tilde_not_vanishing"));
    // φ = t^{1/2}: φ̃′(s) = s^{-1/2}/2, so ‖φ̃′‖_p is finite exactly for p < 2.
    CHECK(std::isfinite(log_tilde_derivative_norm(QuasiConcaveFn::power(0.5), 1.5)));
    CHECK(std::isinf(log_tilde_derivative_norm(QuasiConcaveFn::power(0.5), 2.5)));
    CHECK(log_tilde_derivative_norm(QuasiConcaveFn::power(0.5), 1.5) ==
          Approx(std::log(0.5 * std::pow(1.0 / (1.0 - 0.75), 1.0 / 1.5))).epsilon(1e-8));
}

TEST_CASE("strong extrapolation and tempered weights") {
    const auto log_phi = strong_extrap_check(QuasiConcaveFn::log_power(0.0, -1.0));
    CHECK(log_phi.pass);
    CHECK(log_phi.measured >= 1.0);
    CHECK(log_phi.measured <= 2.0);
    CHECK_FALSE(strong_extrap_check(QuasiConcaveFn::power(0.5)).pass);
    CHECK(tempered_check(WeightSpec::theta_form(2.0, 0.0)).pass);
    CHECK(tempered_check(WeightSpec::theta_form(1.0, 1.0)).pass);
    CHECK_FALSE(tempered_check(WeightSpec::custom([](double th) { return 1.0 / th; }, "exp(1/θ)")).pass);
}
