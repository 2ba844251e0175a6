#include <cmath>
#include <numbers>

#include "doctest.h"
#include "extrap/envelope.hpp"
#include "extrap/error.hpp"
#include "extrap/numerics.hpp"
#include "extrap/testfns.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

namespace {

double max_rel(const Envelope& env, double (*exact)(double)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < env.t().size(); ++i)
        worst = std::max(worst, std::abs(env.values()[i] / exact(env.t()[i]) - 1.0));
    return worst;
}

// Independent brute-force infimum over a dense θ grid.
double brute_tau(const WeightSpec& w, double t) {
    double best = INFINITY;
    for (int i = 0; i <= 20000; ++i) {
        const double th = i / 20000.0;
        const double lm = w.log_theta(th);
        if (std::isfinite(lm)) best = std::min(best, std::exp(lm + th * std::log(t)));
    }
    return best;
}

}  // namespace

TEST_CASE("closed-form envelopes") {
    const auto grid = num::log_grid(1e-4, 1e4, 512);
    CHECK(max_rel(concave_envelope(WeightSpec::constant(), grid), closed_form::unit) <= 1e-9);
    CHECK(max_rel(concave_envelope(WeightSpec::parse("yano"), grid), closed_form::yano) <= 1e-6);
}

TEST_CASE("θ^-1(1-θ)^-1 envelope against a brute-force infimum") {
    // The infimum is computed faithfully; it is not the adequate closed form (ratio within [2, e]).
    const auto w = WeightSpec::theta_form(1.0, 1.0);
    const auto grid = num::log_grid(1e-4, 1e4, 65);
    const auto env = concave_envelope(w, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(env.values()[i] == Approx(brute_tau(w, grid[i])).epsilon(1e-6));
        const double ratio = env.values()[i] / closed_form::adequate(grid[i]);
        CHECK(ratio >= 2.0 - 1e-9);
        CHECK(ratio <= std::numbers::e);
    }
    CHECK(env(1.0) == Approx(4.0).epsilon(1e-6));
}

TEST_CASE("envelopes are concave, quasi-concave and monotone in the weight") {
    const auto grid = num::log_grid(1e-3, 1e3, 257);
    for (const char* spec : {"one", "yano", "theta:1,1", "theta:0.5,2", "p:2,1"}) {
        CAPTURE(spec);
        const auto env = concave_envelope(WeightSpec::parse(spec), grid);
        CHECK(check_concavity(env).ok);
        const auto bigger = concave_envelope(WeightSpec::parse(spec), grid);
        const auto doubled = concave_envelope(
            WeightSpec::custom([w = WeightSpec::parse(spec)](double th) { return w.log_theta(th) + std::log(2.0); },
                               "double"),
            grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(env.values()[i] <= doubled.values()[i]);
            CHECK(doubled.values()[i] == Approx(2.0 * bigger.values()[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("representing measures") {
    const auto grid = num::log_grid(1e-4, 1e4, 2049);
    SUBCASE("min(1,t) is a unit atom at 1") {
        const auto mu = representing_measure(concave_envelope(WeightSpec::constant(), grid));
        REQUIRE(mu.atoms.size() == 1);
        CHECK(mu.atoms[0].location == Approx(1.0).epsilon(1e-9));
        CHECK(mu.atoms[0].mass == Approx(1.0).epsilon(1e-9));
        CHECK(mu.density_mass() == Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("Yano envelope has density e on (0, 1/e)") {
        const auto mu = representing_measure(concave_envelope(WeightSpec::parse("yano"), grid));
        for (double r : {1e-3, 0.01, 0.1, 0.3}) CHECK(mu.density_at(r) == Approx(std::numbers::e).epsilon(1e-4));
        for (double r : {0.45, 1.0, 10.0}) CHECK(mu.density_at(r) == Approx(0.0).epsilon(1e-4));
    }
    SUBCASE("reconstruction residuals") {
        for (const char* spec : {"one", "yano", "theta:1,1"}) {
            const auto env = concave_envelope(WeightSpec::parse(spec), grid);
            CHECK(reconstruction_residual(env, representing_measure(env)).max_rel <= 1e-4);
        }
    }
    SUBCASE("non-concave input is rejected") {
        std::vector<double> t = num::log_grid(0.1, 10.0, 9);
        std::vector<double> v;
        for (double x : t) v.push_back(x * x);
        const Envelope convex(t, v);
        CHECK_FALSE(check_concavity(convex).ok);
        CHECK_THROWS_AS(representing_measure(convex), ValidationError);
    }
}

TEST_CASE("Calderón transform") {
    const auto f = gen::random(31, 24);
    SUBCASE("δ₁ gives K exactly") {
        for (double t : {1e-3, 0.2, 1.0, 7.0}) CHECK(calderon_transform(f, Measure::dirac(), t) == k_functional(t, f));
    }
    SUBCASE("Yano density gives e t ∫_{et}^∞ K(u) du/u²") {
        const auto mu = Measure::yano(std::numbers::e);
        for (double t : {1e-3, 0.05, 0.2, 1.0}) {
            const double et = std::numbers::e * t;
            // K is constant beyond L = 1, so the tail past max(et, 1) is K(1)/max(et, 1).
            const double hi = std::max(et, 1.0);
            const double head = et < 1.0 ? oracle::simpson([&](double u) { return k_functional(u, f) / (u * u); }, et,
                                                           1.0, 1e-13)
                                         : 0.0;
            const double expected = et * (head + f.integral() / hi);
            CHECK(calderon_transform(f, mu, t) == Approx(expected).epsilon(1e-6));
        }
    }
    SUBCASE("χ(0,1] with the Yano measure is O(t log(1/t))") {
        const auto chi = StepFn::indicator(1.0);
        const auto mu = Measure::yano(std::numbers::e);
        for (double t = 1e-8; t < 1e-2; t *= 10) {
            const double v = calderon_transform(chi, mu, t);
            CHECK(v <= 2.0 * std::numbers::e * t * std::log(1.0 / t));
            CHECK(v >= 0.5 * std::numbers::e * t * std::log(1.0 / t));
        }
    }
}

TEST_CASE("adequate decomposition") {
    const auto grid = num::log_grid(1e-4, 1e4, 257);
    const auto adequate = Envelope::from_function(closed_form::adequate, grid, "adequate");
    CHECK(adequate_decompose_check(adequate, Measure::dirac()).max_rel < 1e-6);
    const auto unit = Envelope::from_function(closed_form::unit, grid, "unit");
    const auto fit = best_single_atom(unit, num::log_grid(1e-3, 1e3, 121));
    CHECK(fit.max_rel > 0.1);
    const auto zero = adequate_decompose_check(unit, Measure::zero());
    CHECK(zero.max_abs == Approx(1.0));
    for (double x : {1e-3, 0.5, 1.0, 20.0}) {
        const double brute = oracle::simpson(
            [&](double ln) {
                const double n = std::exp(ln);
                return std::min(1.0, x / n) * std::min(1.0, n);
            },
            -40.0, 40.0, 1e-12);
        CHECK(adequate_kernel(x) == Approx(brute).epsilon(1e-8));
    }
}
