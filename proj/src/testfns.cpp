#include "extrap/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "extrap/error.hpp"
#include "extrap/numerics.hpp"

namespace extrap::gen {

namespace {

constexpr double kDyadicTime = 1048576.0;  // 2^20
constexpr double kDyadicValue = 1024.0;    // 2^10

template <class Profile>
StepFn sampled(const Profile& profile, int n, double t_min) {
    if (n < 1) throw ParameterError("need at least one piece");
    if (!(t_min > 0.0 && t_min < 1.0)) throw ParameterError("t_min must lie in (0, 1)");
    const auto nodes = n == 1 ? std::vector<double>{t_min, 1.0} : num::log_grid(t_min, 1.0, n);
    std::vector<Piece> pieces;
    pieces.push_back({nodes[0], profile(nodes[0])});
    for (std::size_t i = 1; i < nodes.size(); ++i) pieces.push_back({nodes[i] - nodes[i - 1], profile(nodes[i])});
    return StepFn(1.0, std::move(pieces));
}

}  // namespace

StepFn indicator(double a, double domain_length) { return StepFn::indicator(a, domain_length); }

StepFn power(double a, int n, double t_min) {
    if (!(a >= 0.0)) throw ParameterError("power family needs a >= 0");
    return sampled([a](double t) { return std::pow(t, -a); }, n, t_min);
}

StepFn log_power(double beta, int n, double t_min) {
    if (!(beta >= 0.0)) throw ParameterError("log-power family needs beta >= 0");
    return sampled([beta](double t) { return std::pow(1.0 - std::log(t), beta); }, n, t_min);
}

double log_power_modulus(double beta, int n, double t_min) {
    const auto nodes = num::log_grid(t_min, 1.0, std::max(n, 2));
    double worst = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        worst = std::max(worst, std::pow(1.0 - std::log(nodes[i - 1]), beta) - std::pow(1.0 - std::log(nodes[i]), beta));
    return worst;
}

StepFn indicator_mixture(const std::vector<double>& heights, const std::vector<double>& ends) {
    if (heights.size() != ends.size() || heights.empty()) throw ParameterError("mixture needs matching heights and ends");
    std::vector<double> cut = ends;
    std::sort(cut.begin(), cut.end());
    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
    if (!(cut.front() > 0.0) || cut.back() > 1.0) throw ParameterError("mixture ends must lie in (0, 1]");
    if (cut.back() < 1.0) cut.push_back(1.0);
    std::vector<Piece> pieces;
    double prev = 0.0;
    for (double b : cut) {
        double v = 0.0;
        for (std::size_t i = 0; i < ends.size(); ++i)
            if (b <= ends[i]) v += heights[i];
        pieces.push_back({b - prev, v});
        prev = b;
    }
    return StepFn(1.0, std::move(pieces));
}

StepFn random(std::uint64_t seed, int max_pieces) {
    if (max_pieces < 1) throw ParameterError("max_pieces must be positive");
    std::mt19937_64 rng(seed);
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_pieces));
    std::vector<std::uint64_t> ticks;
    while (static_cast<int>(ticks.size()) < n - 1) {
        const std::uint64_t k = 1 + rng() % (static_cast<std::uint64_t>(kDyadicTime) - 1);
        if (std::find(ticks.begin(), ticks.end(), k) == ticks.end()) ticks.push_back(k);
    }
    std::sort(ticks.begin(), ticks.end());
    ticks.push_back(static_cast<std::uint64_t>(kDyadicTime));
    std::vector<Piece> pieces;
    std::uint64_t prev = 0;
    for (std::uint64_t k : ticks) {
        const std::uint64_t bits = rng();
        const double v = (bits & 7u) == 0 ? 0.0 : static_cast<double>(bits >> 50) / kDyadicValue;
        pieces.push_back({static_cast<double>(k - prev) / kDyadicTime, v});
        prev = k;
    }
    return StepFn(1.0, std::move(pieces));
}

std::vector<StepFn> random_suite(std::uint64_t seed, int count, int max_pieces) {
    std::vector<StepFn> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(random(seed + static_cast<std::uint64_t>(i), max_pieces));
    return out;
}

StepFn family(const std::string& name, double param, int n_pieces, std::uint64_t seed) {
    if (name == "indicator") return indicator(param);
    if (name == "power") return power(param, n_pieces);
    if (name == "logpow") return log_power(param, n_pieces);
    if (name == "random") return random(seed, n_pieces);
    throw UsageError("unknown family '" + name + "' (indicator, power, logpow, random)");
}

}  // namespace extrap::gen
