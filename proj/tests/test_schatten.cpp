#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "extrap/error.hpp"
#include "extrap/schatten.hpp"
#include "oracles.hpp"

using namespace extrap;
using doctest::Approx;

namespace {

Eigen::MatrixXcd gaussian(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {N(rng), N(rng)};
    return a;
}

}  // namespace

TEST_CASE("s-numbers") {
    const auto id = s_numbers(Eigen::MatrixXcd::Identity(3, 3));
    CHECK(std::vector<double>(id.values().begin(), id.values().end()) == std::vector<double>{1.0, 1.0, 1.0});
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const auto s = s_numbers(d);
    CHECK(s.values()[0] == Approx(3.0));
    CHECK(s.values()[1] == Approx(2.0));
    CHECK(s.values()[2] == Approx(1.0));
    const auto a = gaussian(16, 9);
    const auto ref = oracle::singular_values(a);
    const auto got = s_numbers(a);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got.values()[i] == Approx(ref[i]).epsilon(1e-9));
    CHECK_THROWS_AS(s_numbers(Eigen::MatrixXcd(0, 0)), ValidationError);
    Eigen::MatrixXcd bad = d;
    bad(0, 1) = NAN;
    CHECK_THROWS_AS(s_numbers(bad), ValidationError);
}

TEST_CASE("Schatten and Matsaev norms") {
    const SingularSpectrum e1({1.0, 0.0, 0.0});
    for (double alpha : {0.5, 1.0, 3.0}) CHECK(matsaev_norm(e1, alpha) == Approx(1.0));
    const SingularSpectrum ones({1.0, 1.0, 1.0, 1.0});
    CHECK(matsaev_dual_norm(ones, 1.0) == Approx(4.0 / std::log(4.0 * std::exp(1.0))));
    const auto a = gaussian(8, 3);
    const auto s = s_numbers(a);
    CHECK(schatten_norm(s, 2.0) == Approx(a.norm()).epsilon(1e-12));
    double prev = INFINITY;
    for (double p : {1.0, 1.5, 2.0, 4.0, 16.0, std::numeric_limits<double>::infinity()}) {
        const double v = schatten_norm(s, p);
        CHECK(v <= prev * (1 + 1e-12));
        CHECK(v >= s.values()[0] * (1 - 1e-12));
        prev = v;
    }
    double harmonic = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) harmonic += s.values()[j] / double(j + 1);
    CHECK(matsaev_norm(s, 1.0) == Approx(harmonic).epsilon(1e-14));
    CHECK(matsaev_dual_norm(s, 1.0) <= schatten_norm(s, 1.0));
    CHECK_THROWS_AS(SingularSpectrum({1.0, 2.0}), ValidationError);
}

TEST_CASE("Schatten K functional") {
    const auto s = s_numbers(gaussian(10, 4));
    CHECK(schatten_k(0.0, s) == 0.0);
    CHECK(schatten_k(10.0, s) == Approx(schatten_norm(s, 1.0)).epsilon(1e-12));
    double prev_slope = INFINITY;
    for (double t = 0.25; t <= 10.0; t += 0.25) {
        const double slope = (schatten_k(t, s) - schatten_k(t - 0.25, s)) / 0.25;
        CHECK(slope >= 0.0);
        CHECK(slope <= prev_slope * (1 + 1e-12));
        prev_slope = slope;
    }
}

TEST_CASE("Matsaev Δ check") {
    const SingularSpectrum e1({1.0, 0.0, 0.0});
    const double p0 = 2.0;
    const auto r = matsaev_delta_check(e1, 1.0, p0);
    // sup_{p<p0} (p−1)^α against the dual norm 1.
    CHECK(r.get("dual_norm") == Approx(1.0));
    CHECK(r.measured <= 1.0);
    CHECK(r.measured >= 0.99);
    const auto z = matsaev_delta_check(SingularSpectrum({0.0, 0.0}), 1.0, p0);
    CHECK(z.has_flag("degenerate"));
    std::vector<double> harmonic;
    for (int j = 1; j <= 64; ++j) harmonic.push_back(1.0 / j);
    const SingularSpectrum h(harmonic);
    CHECK(matsaev_delta_check(h.scaled(7.0), 1.0, p0).measured ==
          Approx(matsaev_delta_check(h, 1.0, p0).measured).epsilon(1e-12));
}

TEST_CASE("noncommutative Calderón check") {
    const auto a = gaussian(64, 5);
    const auto sa = s_numbers(a);
    CHECK(noncomm_calderon_check(sa, sa).measured <= 1.0 + 1e-12);
    const auto w = noncomm_calderon_check(sa, s_numbers(hardy_witness(a)));
    CHECK(w.pass);
    CHECK(w.measured <= 4.0);
    const SingularSpectrum zero({0.0, 0.0});
    CHECK(noncomm_calderon_check(zero, zero).measured == 0.0);
    const auto h = hardy_matrix(4);
    CHECK(h(3, 0) == Approx(0.25));
    CHECK(h(0, 1) == 0.0);
}
