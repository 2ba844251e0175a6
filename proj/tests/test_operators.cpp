#include <cmath>

#include "doctest.h"
#include "extrap/error.hpp"
#include "extrap/norms.hpp"
#include "extrap/numerics.hpp"
#include "extrap/operators.hpp"
#include "extrap/testfns.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

namespace {

double hardy_oracle(const StepFn& f, double t) {
    return oracle::midpoint([&](double s) { return oracle::value(f, s); }, 0.0, t, 200000) / t;
}

double dual_oracle(const StepFn& f, double t) {
    if (t >= f.domain_length()) return 0.0;
    // ∫_t^L f(s) ds/s in log variables.
    return oracle::midpoint([&](double x) { return oracle::value(f, std::exp(x)); }, std::log(t),
                            std::log(f.domain_length()), 200000);
}

}  // namespace

TEST_CASE("analytic images against quadrature") {
    const auto f = gen::random(21, 10);
    const auto g = LogPolyFn::from_step(f);
    const auto p = hardy(g);
    const auto q = dual_hardy(g);
    for (double t : {0.013, 0.2, 0.5, 0.99, 1.7}) {
        CHECK(p(t) == Approx(hardy_oracle(f, std::min(t, 1.0)) * std::min(t, 1.0) / t).epsilon(1e-6));
        CHECK(q(t) == Approx(dual_oracle(f, t)).epsilon(1e-6));
    }
}

TEST_CASE("apply") {
    const auto chi = StepFn::indicator(1.0);
    const auto pc = apply(OperatorSpec::hardy(), chi);
    for (double t : {1e-6, 0.3, 1.0}) CHECK(pc.value_at(t) == Approx(1.0));
    const auto f = decreasing_rearrangement(gen::random(5, 10));
    const auto up = apply(OperatorSpec::hardy(64), f);
    const auto down = apply_lower(OperatorSpec::hardy(64), f);
    CHECK(up.is_decreasing());
    for (double t = 0.01; t <= 1.0; t += 0.01) {
        CHECK(down.value_at(t) <= double_star(f, t) * (1 + 1e-12));
        CHECK(double_star(f, t) <= up.value_at(t) * (1 + 1e-12));
    }
    CHECK_THROWS_AS(apply(OperatorSpec::dual_hardy(), StepFn::indicator(1.0)), RefinementError);
    CHECK_THROWS_AS(apply(OperatorSpec::hardy(1), f), RefinementError);
}

TEST_CASE("Calderón algebra S = P + Q = PQ = QP") {
    for (const auto& f : gen::random_suite(11, 200, 64)) {
        const auto g = LogPolyFn::from_step(f);
        const auto pq = hardy(dual_hardy(g));
        const double len = f.domain_length();
        CHECK(sup_abs_difference(hardy(g) + dual_hardy(g), pq, 1e-12 * len, len) <= 1e-6);
        CHECK(sup_abs_difference(pq, dual_hardy(hardy(g)), 1e-12 * len, len) <= 1e-6);
    }
}

TEST_CASE("operator norm lower bounds") {
    CHECK(operator_norm_lower(OperatorSpec::identity(), 2.0).value == Approx(1.0).epsilon(1e-9));
    const auto p2 = operator_norm_lower(OperatorSpec::hardy(), 2.0);
    CHECK(p2.value >= 0.95 * 2.0);
    CHECK(p2.value <= 2.0 * (1 + 1e-9));
    CHECK(operator_norm_lower(OperatorSpec::hardy(), 1.1).value >= 0.9 * 11.0);
}

TEST_CASE("Yano endpoint forms") {
    const auto chi = StepFn::indicator(1.0);
    CHECK(yano_endpoint_check(OperatorSpec::hardy(), chi, YanoForm::Ex5).measured <= 2.0);
    CHECK(yano_endpoint_check(OperatorSpec::identity(), chi, YanoForm::Becomes1).measured <= 1.0 + 1e-12);
    const auto zero = yano_endpoint_check(OperatorSpec::hardy(), StepFn::constant(1.0, 0.0), YanoForm::Ex5);
    CHECK(zero.measured == 0.0);
    CHECK(zero.pass);
    double worst = 0.0;
    for (const auto& f : gen::random_suite(11, 100, 64))
        if (!f.is_zero()) worst = std::max(worst, yano_endpoint_check(OperatorSpec::hardy(), f, YanoForm::Ex5).measured);
    CHECK(worst <= 4.0);
}

TEST_CASE("majorization and log gain quantities") {
    const auto f = gen::random(77, 30);
    CHECK(rearrangement_majorization(f, f));
    CHECK(rearrangement_majorization(f, decreasing_rearrangement(f)));
    CHECK_FALSE(rearrangement_majorization(f, f.scaled(1.01)));
    const auto g = gen::random(78, 30);
    const bool brute = [&] {
        for (double t = 1e-3; t <= 1.0; t += 1e-3)
            if (oracle::k_by_layers(g, t) > oracle::k_by_layers(f, t) * (1 + 1e-12)) return false;
        return true;
    }();
    CHECK(rearrangement_majorization(f, g) == brute);

    const std::vector<double> ts{0.1, 0.5, 1.0};
    const auto rows = log_gain_quantities(f, g, ts);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        const double t = r.t;
        auto fs = [&](double s) { return oracle::rearranged(f, s); };
        auto gs = [&](double s) { return oracle::rearranged(g, s); };
        CHECK(r.a0 == Approx(oracle::k_by_layers(g, t)).epsilon(1e-12));
        CHECK(r.a1 == Approx(oracle::midpoint([&](double s) { return fs(s) * std::log(t / s); }, 0, t, 400000)).epsilon(1e-4));
        CHECK(r.a2 == Approx(oracle::midpoint([&](double s) { return gs(s) * std::log(t / s); }, 0, t, 400000)).epsilon(1e-4));
        CHECK(r.a3 == Approx(oracle::midpoint([&](double s) { return fs(s) * std::pow(std::log(t / s), 2); }, 0, t, 400000)).epsilon(1e-3));
    }
}
