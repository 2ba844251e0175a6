#include <cmath>

#include "doctest.h"
#include "extrap/bilinear.hpp"
#include "extrap/error.hpp"
#include "extrap/numerics.hpp"
#include "extrap/testfns.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

namespace {

double conv_oracle(const PiecewiseLinear& F, const PiecewiseLinear& G, double t) {
    return oracle::simpson([&](double x) { return F(t * std::exp(-x)) * G(std::exp(x)); }, -60.0, 60.0, 1e-12);
}

}  // namespace

TEST_CASE("multiplicative convolution") {
    const auto unit = PiecewiseLinear::from(k_curve(StepFn::indicator(1.0)));
    CHECK(mult_convolution(unit, unit, 1.0) == Approx(2.0).epsilon(1e-12));
    const PiecewiseLinear zero({0.0, 1.0}, {0.0, 0.0});
    CHECK(mult_convolution(unit, zero, 0.7) == 0.0);

    // A narrow bump at u₀ = 1 with area 0.01 picks out F(t/u₀).
    const PiecewiseLinear bump({0.0, 0.99, 1.0, 1.01}, {0.0, 0.0, 1.0, 0.0});
    const PiecewiseLinear f_decay({0.0, 1.0, 2.0, 4.0, 8.0}, {0.0, 1.0, 1.5, 1.75, 1.75});
    CHECK(mult_convolution(f_decay, bump, 2.0) == Approx(0.01 * f_decay(2.0)).epsilon(1e-3));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto F = PiecewiseLinear::from(k_curve(gen::random(seed, 12)));
        const auto G = PiecewiseLinear::from(k_curve(gen::random(seed + 100, 12)));
        for (double t : {0.01, 0.3, 2.0}) {
            const double fg = mult_convolution(F, G, t);
            if (!std::isfinite(fg)) continue;
            CHECK(fg == Approx(mult_convolution(G, F, t)).epsilon(1e-8));
            CHECK(fg == Approx(conv_oracle(F, G, t)).epsilon(1e-6));
        }
    }
}

TEST_CASE("bilinear Calderón transform") {
    const auto chi = StepFn::indicator(1.0);
    CHECK(bilinear_calderon(chi, chi, 1.0) == Approx(2.0));
    for (double t : {1e-3, 0.1, 3.0}) CHECK(bilinear_calderon(chi, chi, t) == Approx(adequate_kernel(t)).epsilon(1e-12));
    CHECK(bilinear_calderon(chi, StepFn::constant(1.0, 0.0), 0.5) == 0.0);
    // t log(1/t) scaling near 0: fitted exponent of v/log(1/t) is 1.
    const double t1 = 1e-6;
    const double t2 = 1e-8;
    const double slope = std::log((bilinear_calderon(chi, chi, t1) / std::log(1 / t1)) /
                                  (bilinear_calderon(chi, chi, t2) / std::log(1 / t2))) /
                         std::log(t1 / t2);
    CHECK(slope == Approx(1.0).epsilon(0.02));
    const auto f = gen::random(3, 16);
    const auto g = gen::random(4, 16);
    CHECK(bilinear_calderon(f.scaled(3.0), g, 0.2) == Approx(3.0 * bilinear_calderon(f, g, 0.2)).epsilon(1e-12));
    CHECK(bilinear_calderon(f, g, 0.2) <= bilinear_calderon(f, g.scaled(1.5), 0.2));
}

TEST_CASE("bilinear K/J check") {
    const auto chi = StepFn::indicator(1.0);
    const auto unit = Envelope::from_function(closed_form::unit, num::log_grid(1e-3, 1e3, 7), "unit");
    const auto c = bilinear_kj_check(chi, chi, unit);
    CHECK(c.measured <= 1.0 + 1e-12);
    CHECK(bilinear_kj_check(chi, chi, unit.scaled(2.0)).measured == Approx(0.5 * c.measured));
    CHECK(bilinear_kj_check(StepFn::constant(1.0, 0.0), chi, unit).measured == 0.0);
}

TEST_CASE("endpoint bounds") {
    const auto chi = StepFn::indicator(1.0);
    const auto r = lagbi_bounds(chi, chi);
    CHECK(r.pass);
    CHECK(r.get("c_ii") <= 3.0);
    CHECK(lagbi_bounds(StepFn::constant(1.0, 0.0), chi).measured == 0.0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = gen::random(seed, 24);
        const auto g = gen::random(seed + 500, 24);
        if (f.is_zero() || g.is_zero()) continue;
        const auto q = lagbi_bounds(f.scaled(1.0 / f.sup()), g.scaled(1.0 / g.sup()));
        CHECK(q.pass);
        CHECK(q.measured <= 8.0);
    }
    const auto k = k_curve(chi);
    CHECK(exp_pair_norm(k) == Approx(1.0));
}
