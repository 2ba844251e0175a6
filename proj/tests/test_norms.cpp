#include <cmath>
#include <numbers>

#include "doctest.h"
#include "extrap/error.hpp"
#include "extrap/norms.hpp"
#include "extrap/testfns.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

TEST_CASE("Lp norm") {
    for (double a : {0.1, 0.5, 1.0})
        for (double p : {1.0, 2.0, 7.5}) CHECK(lp_norm(StepFn::indicator(a), p) == Approx(std::pow(a, 1.0 / p)));
    CHECK(lp_norm(StepFn(1.0, {{0.5, 1.0}, {0.5, 3.0}}), INFINITY) == 3.0);
    const auto f = gen::random(5, 40);
    const double riemann =
        std::sqrt(oracle::midpoint([&](double t) { return std::pow(oracle::value(f, t), 2); }, 0.0, 1.0, 1 << 20));
    CHECK(lp_norm(f, 2.0) == Approx(riemann).epsilon(1e-10));
    CHECK_THROWS_AS(lp_norm(f, 0.5), ParameterError);
}

TEST_CASE("Lorentz norms of the indicator") {
    const auto chi = StepFn::indicator(1.0);
    for (double p : {1.5, 2.0, 4.0}) {
        CHECK(lorentz_pinf_norm(chi, p) == Approx(1.0));
        CHECK(lorentz_p1_norm(chi, p) == Approx(1.0 - 1.0 / p));  // 1/p′
    }
}

TEST_CASE("Lorentz nesting L(p,∞) ≤ p′·L(p,1)") {
    // With the 1/(pp′) normalization the constant is p′, attained by indicators.
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto f = gen::random(seed);
        for (double p : {1.2, 2.0, 5.0}) {
            const double conj = p / (p - 1.0);
            CHECK(lorentz_pinf_norm(f, p) <= conj * lorentz_p1_norm(f, p) * (1 + 1e-12));
        }
    }
    const auto chi = StepFn::indicator(1.0);
    CHECK(lorentz_pinf_norm(chi, 3.0) == Approx(1.5 * lorentz_p1_norm(chi, 3.0)));
}

TEST_CASE("L(LogL)^α examples") {
    CHECK(llogl_alpha_norm(StepFn::indicator(1.0), 1.0) == Approx(2.0));
    CHECK(llogl_alpha_norm(StepFn::indicator(1.0), 2.0) == Approx(5.0));
    for (double a : {0.01, 0.3, 0.9})
        CHECK(llogl_alpha_norm(StepFn::indicator(a), 1.0) == Approx(a * (2.0 + std::log(1.0 / a))));
    CHECK_THROWS_AS(llogl_alpha_norm(StepFn::indicator(1.0, 2.0), 1.0), DomainError);
}

TEST_CASE("exp L^(1/α) examples") {
    const auto chi = StepFn::indicator(1.0);
    CHECK(exp_l_alpha_norm(chi, 1.0) == Approx(1.0));
    for (double alpha : {1.0, 2.0}) {
        const double n = exp_l_alpha_norm(gen::log_power(alpha, 1000), alpha);
        CHECK(n >= 0.99);
        CHECK(n <= 1.0 + 1e-12);
    }
    const auto f = gen::random(3);
    CHECK(exp_l_alpha_norm(f.scaled(3.5), 1.5) == Approx(3.5 * exp_l_alpha_norm(f, 1.5)).epsilon(1e-14));
}

TEST_CASE("Marcinkiewicz, Lorentz Λ and L(∞,∞)") {
    const auto f = gen::random(9);
    CHECK(marcinkiewicz_norm(f, QuasiConcaveFn::power(1.0)) == Approx(f.integral()).epsilon(1e-12));
    CHECK(lambda_p_norm(f, QuasiConcaveFn::power(0.0), 1.0) == 0.0);
    CHECK(linf_inf_norm(StepFn::indicator(1.0)) == 0.0);
    CHECK(linf_inf_norm(StepFn::indicator(0.5)) == Approx(1.0));  // f** − f* → 1 at t = L
    // Λ_1(φ) with φ(t) = t is the L¹ norm.
    CHECK(lambda_p_norm(f, QuasiConcaveFn::power(1.0), 1.0) == Approx(f.integral()).epsilon(1e-12));
}

TEST_CASE("grand Lebesgue norms of the indicator") {
    const auto chi = StepFn::indicator(1.0);
    CHECK(grand_lebesgue_norm(chi, 2.0, 1.0) == Approx(1.0).epsilon(1e-6));
    const double fk_oracle = oracle::dense_max(
        [](double t) { return std::pow(std::log(std::numbers::e / t), -0.5) * std::sqrt(1.0 - t); }, 1e-12, 1.0,
        200000, true);
    CHECK(grand_lebesgue_fk_norm(chi, 2.0, 1.0) == Approx(fk_oracle).epsilon(1e-6));
    const auto zero = StepFn::constant(1.0, 0.0);
    CHECK(grand_lebesgue_norm(zero, 2.0, 1.0) == 0.0);
    CHECK(grand_lebesgue_fk_norm(zero, 2.0, 1.0) == 0.0);
    CHECK(grand_lebesgue_psi_norm(zero, 2.0, ScalarWeight{1.0, 0.5, 0.0, 1.0}) == 0.0);
    // ψ(ε) = ε^{α/(p−ε)} is not a ScalarWeight; ψ(ε) = ε recovers the α-form only at p = 2, α = 1 near ε → 1.
    CHECK(grand_lebesgue_psi_norm(chi, 2.0, ScalarWeight{1.0, 1.0, 0.0, 1.0}) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Λ(ψ_α) norm") {
    CHECK(lambda_psi_alpha_norm(StepFn::constant(1.0, 0.0), 1.0, 16.0) == 0.0);
    CHECK(lambda_psi_alpha_norm(StepFn::indicator(1.0), 1.0, 16.0) == Approx(psi_alpha(1.0, 1.0, 16.0)).epsilon(1e-12));
    // Stieltjes sum against quadrature of f*(t) ψ′(t).
    const auto f = gen::random(12, 16);
    // ψ = t·L·m with L = log(b/t), m = log log L, so ψ′ = L·m − m − 1/log L.
    const double b = 1e6;
    auto dpsi = [&](double t) {
        const double L = std::log(b / t);
        const double m = std::log(std::log(L));
        return L * m - m - 1.0 / std::log(L);
    };
    double quad = 0.0;
    double lo = 0.0;
    const auto r = decreasing_rearrangement(f);
    for (const auto& p : r.pieces()) {
        quad += p.value * oracle::simpson(dpsi, std::max(lo, 1e-12), lo + p.length, 1e-12);
        lo += p.length;
    }
    CHECK(lambda_psi_alpha_norm(f, 1.0, 1e6) == Approx(quad).epsilon(1e-6));
}

TEST_CASE("homogeneity, rearrangement invariance and lattice monotonicity") {
    const QuasiConcaveFn phi = QuasiConcaveFn::power(0.5);
    auto norms = [&](const StepFn& f) {
        return std::vector<double>{lp_norm(f, 1.7),
                                   lorentz_p1_norm(f, 2.5),
                                   lorentz_pinf_norm(f, 2.5),
                                   llogl_alpha_norm(f, 1.3),
                                   exp_l_alpha_norm(f, 0.7),
                                   marcinkiewicz_norm(f, phi),
                                   lambda_p_norm(f, phi, 2.0),
                                   grand_lebesgue_norm(f, 3.0, 1.0),
                                   grand_lebesgue_fk_norm(f, 3.0, 1.0),
                                   lambda_psi_alpha_norm(f, 1.0, 1e6)};
    };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto f = gen::random(seed, 24);
        const auto base = norms(f);
        const auto scaled = norms(f.scaled(0.375));
        const auto sorted = norms(decreasing_rearrangement(f));
        // g ≥ f pointwise: raise every value.
        std::vector<Piece> up(f.pieces().begin(), f.pieces().end());
        for (auto& p : up) p.value = p.value * 1.25 + 0.5;
        const auto bigger = norms(StepFn(1.0, up));
        for (std::size_t i = 0; i < base.size(); ++i) {
            CAPTURE(i);
            CHECK(scaled[i] == Approx(0.375 * base[i]).epsilon(1e-12));
            CHECK(sorted[i] == Approx(base[i]).epsilon(1e-12));
            CHECK(base[i] <= bigger[i]);
        }
    }
}

TEST_CASE("Fubini identity for L(LogL)") {
    // ∫_0^1 f** equals the α = 1 norm minus ‖f‖₁.
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto f = gen::random(seed);
        const double f_ss = oracle::simpson([&](double t) { return oracle::k_by_layers(f, t) / t; }, 1e-12, 1.0, 1e-12);
        CHECK(llogl_alpha_norm(f, 1.0) - f.integral() == Approx(f_ss).epsilon(1e-7));
    }
}

TEST_CASE("ψ_α requires b > e^e") { CHECK_THROWS(psi_alpha(0.5, 1.0, 2.0)); }
