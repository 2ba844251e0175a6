#include "extrap/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "extrap/error.hpp"
#include "extrap/numerics.hpp"

namespace extrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit_interval(const StepFn& f, const char* what) {
    if (std::abs(f.domain_length() - 1.0) > 1e-12)
        throw DomainError(std::string(what) + " is defined for functions on (0, 1] only");
}

void require_at_most_unit(const StepFn& f, const char* what) {
    if (f.domain_length() > 1.0 + 1e-12)
        throw DomainError(std::string(what) + " needs L <= 1 (φ lives on (0, 1])");
}

void require_p_above_one(double p) {
    if (!(p > 1.0) || std::isinf(p)) throw ParameterError("exponent must satisfy 1 < p < ∞");
}

// Intercept of the K-curve segment i: K(x) = c + s x on [t_i, t_{i+1}].
double intercept(const KCurve& k, std::size_t i) { return k.values()[i] - k.slopes()[i] * k.breakpoints()[i]; }

int samples_for(double a, double b, int per_decade) {
    return std::max(8, static_cast<int>(std::ceil(per_decade * std::log10(b / a))));
}

// Tail integrals ∫_{b_i}^1 (f*/m)^p for each piece end of a decreasing f on (0, 1].
std::vector<double> scaled_tails(const StepFn& fs, double p, double m) {
    const auto pieces = fs.pieces();
    std::vector<double> tail(pieces.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = pieces.size(); i-- > 0;) {
        tail[i] = acc;
        acc += pieces[i].length * std::pow(pieces[i].value / m, p);
    }
    return tail;
}

// sup_{0<t<1} weight(t) (∫_t^1 (f*)^p)^{1/p} with weight given as a log.
double tail_sup(const StepFn& f, double p, const std::function<double(double)>& log_weight, int per_decade) {
    const StepFn fs = decreasing_rearrangement(f);
    const double m = fs.sup();
    if (m == 0.0) return 0.0;
    const auto pieces = fs.pieces();
    const auto ends = fs.ends();
    const auto tail = scaled_tails(fs, p, m);
    double best = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double v = std::pow(pieces[i].value / m, p);
        if (v == 0.0) continue;  // tail is constant on the piece and already covered from the left
        const double b = ends[i];
        const double a = i == 0 ? b * 1e-30 : ends[i - 1];
        auto h = [&](double t) {
            const double mass = tail[i] + v * (b - t);
            if (mass <= 0.0) return -kInf;
            return log_weight(t) + std::log(mass) / p;
        };
        const auto r = num::scan_max(h, a, b, samples_for(a, b, per_decade), true);
        best = std::max(best, std::exp(r.value));
    }
    return m * best;
}

// Two-sided geometric grid on (0, E]: dense near 0 and near E.
std::vector<double> eps_grid(double E, int per_decade) {
    std::vector<double> g;
    const int n = 12 * per_decade;
    for (int k = 0; k <= n; ++k) {
        g.push_back(E * std::pow(10.0, -static_cast<double>(k) / per_decade));
        if (k > 0) g.push_back(E * (1.0 - std::pow(10.0, -static_cast<double>(k) / per_decade)));
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// sup_{0<ε<p−1} exp(log_weight(ε)) ‖f‖_{p−ε}; the endpoint ε → p−1 is the limit value.
double eps_sup(const StepFn& f, double p, const std::function<double(double)>& log_weight, int per_decade) {
    if (f.is_zero()) return 0.0;
    const double E = p - 1.0;
    auto g = [&](double eps) {
        const double w = log_weight(eps);
        if (std::isinf(w) && w < 0) return -kInf;
        return w + std::log(lp_norm(f, eps >= E ? 1.0 : p - eps));
    };
    const auto grid = eps_grid(E, per_decade);
    std::size_t best = 0;
    double best_val = -kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = g(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    const auto r = num::golden_max(g, a, b, 1e-14 * E);
    return std::exp(std::max(best_val, r.value));
}

}  // namespace

double lp_norm(const StepFn& f, double p) {
    if (std::isnan(p) || p < 1.0) throw ParameterError("L^p norm needs p >= 1");
    const double m = f.sup();
    if (std::isinf(p) || m == 0.0) return m;
    double s = 0.0;
    for (const auto& pc : f.pieces())
        if (pc.value > 0.0) s += pc.length * std::pow(pc.value / m, p);
    return m * std::pow(s, 1.0 / p);
}

double lorentz_p1_norm(const StepFn& f, double p) {
    require_p_above_one(p);
    const auto k = k_curve(f);
    const auto t = k.breakpoints();
    const double e = 1.0 / p;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double c = intercept(k, i);
        const double s = k.slopes()[i];
        // ∫ (c + s x) x^{1/p − 2} dx
        const double lo = t[i];
        const double hi = t[i + 1];
        double part = s * p * (std::pow(hi, e) - std::pow(lo, e));
        if (c != 0.0) part += c * (std::pow(hi, e - 1.0) - std::pow(lo, e - 1.0)) / (e - 1.0);
        total += part;
    }
    return total * (p - 1.0) / (p * p);
}

double lorentz_pinf_norm(const StepFn& f, double p) {
    require_p_above_one(p);
    const auto k = k_curve(f);
    const auto t = k.breakpoints();
    const double e = 1.0 / p;
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double c = intercept(k, i);
        const double s = k.slopes()[i];
        auto g = [&](double x) { return (c + s * x) * std::pow(x, e - 1.0); };
        best = std::max(best, g(t[i + 1]));
        if (s > 0.0 && c > 0.0) {
            const double x = c * (p - 1.0) / s;
            if (x > t[i] && x < t[i + 1]) best = std::max(best, g(x));
        }
    }
    return best;
}

double llogl_alpha_norm(const StepFn& f, double alpha) {
    require_unit_interval(f, "L(LogL)^alpha");
    if (!(alpha > 0.0)) throw ParameterError("L(LogL)^alpha needs alpha > 0");
    const StepFn fs = decreasing_rearrangement(f);
    // Antiderivatives of log^α(e/t) vanishing at 0, for α ∈ {1, 2}.
    auto closed = [alpha](double x) {
        if (x == 0.0) return 0.0;
        const double u = 1.0 - std::log(x);
        return alpha == 1.0 ? x * (u + 1.0) : x * (u * u + 2.0 * u + 2.0);
    };
    const bool use_closed = alpha == 1.0 || alpha == 2.0;
    double total = 0.0;
    double a = 0.0;
    const auto ends = fs.ends();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double b = ends[i];
        const double v = fs.pieces()[i].value;
        if (v > 0.0) {
            double part = 0.0;
            if (use_closed) {
                part = closed(b) - closed(a);
            } else {
                // t = e^{1−u}: ∫_a^b log^α(e/t) dt = e (Γ(α+1, u_b) − Γ(α+1, u_a))
                const double ub = 1.0 - std::log(b);
                const double upper_b = boost::math::tgamma(alpha + 1.0, ub);
                const double upper_a = a == 0.0 ? 0.0 : boost::math::tgamma(alpha + 1.0, 1.0 - std::log(a));
                part = std::numbers::e * (upper_b - upper_a);
            }
            total += v * part;
        }
        a = b;
    }
    return total;
}

double exp_l_alpha_norm(const StepFn& f, double alpha) {
    require_unit_interval(f, "exp L^(1/alpha)");
    if (!(alpha > 0.0)) throw ParameterError("exp L needs alpha > 0");
    const StepFn fs = decreasing_rearrangement(f);
    double best = 0.0;
    const auto ends = fs.ends();
    for (std::size_t i = 0; i < fs.size(); ++i)
        best = std::max(best, fs.pieces()[i].value / std::pow(1.0 - std::log(ends[i]), alpha));
    return best;
}

double marcinkiewicz_norm(const StepFn& f, const QuasiConcaveFn& phi, int per_decade) {
    require_at_most_unit(f, "Marcinkiewicz norm");
    const auto k = k_curve(f);
    const auto t = k.breakpoints();
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double c = intercept(k, i);
        const double s = k.slopes()[i];
        const double hi = std::min(t[i + 1], 1.0);
        if (i == 0 || c == 0.0) {
            best = std::max(best, phi(hi) * s);  // φ non-decreasing, f** constant
            continue;
        }
        auto g = [&](double x) { return phi(x) * (c / x + s); };
        best = std::max(best, num::scan_max(g, t[i], hi, samples_for(t[i], hi, per_decade), true).value);
    }
    return best;
}

double lambda_p_norm(const StepFn& f, const QuasiConcaveFn& phi, double p) {
    require_at_most_unit(f, "Lambda_p(phi) norm");
    if (!(p > 0.0) || std::isinf(p)) throw ParameterError("Lambda_p needs 0 < p < ∞");
    const StepFn fs = decreasing_rearrangement(f);
    const double m = fs.sup();
    if (m == 0.0) return 0.0;
    double prev = phi.at_zero();
    double s = 0.0;
    const auto ends = fs.ends();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double cur = phi(std::min(ends[i], 1.0));
        s += std::pow(fs.pieces()[i].value / m, p) * (cur - prev);
        prev = cur;
    }
    return m * std::pow(s, 1.0 / p);
}

double linf_inf_norm(const StepFn& f) {
    const auto k = k_curve(f);
    const auto t = k.breakpoints();
    const auto slopes = k.slopes();
    double best = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double fstar = i < slopes.size() ? slopes[i] : slopes.back();
        best = std::max(best, k.values()[i] / t[i] - fstar);
    }
    return best;
}

double grand_lebesgue_norm(const StepFn& f, double p, double alpha, int per_decade) {
    require_unit_interval(f, "grand Lebesgue norm");
    require_p_above_one(p);
    if (!(alpha > 0.0)) throw ParameterError("grand Lebesgue norm needs alpha > 0");
    return eps_sup(
        f, p, [=](double eps) { return alpha / (p - eps) * std::log(eps); }, per_decade);
}

double grand_lebesgue_fk_norm(const StepFn& f, double p, double alpha, int per_decade) {
    require_unit_interval(f, "grand Lebesgue FK form");
    require_p_above_one(p);
    if (!(alpha > 0.0)) throw ParameterError("grand Lebesgue norm needs alpha > 0");
    return tail_sup(
        f, p, [=](double t) { return -alpha / p * std::log(1.0 - std::log(t)); }, per_decade);
}

double grand_lebesgue_psi_norm(const StepFn& f, double p, const ScalarWeight& psi, int per_decade) {
    require_unit_interval(f, "grand Lebesgue psi form");
    require_p_above_one(p);
    return eps_sup(
        f, p, [&](double eps) { return psi.log_value(eps); }, per_decade);
}

double grand_lebesgue_psi_fk_norm(const StepFn& f, double p, const ScalarWeight& psi, int per_decade) {
    require_unit_interval(f, "grand Lebesgue psi form");
    require_p_above_one(p);
    return tail_sup(
        f, p, [&](double t) { return psi.log_value((p - 1.0) / (1.0 - std::log(t))); }, per_decade);
}

double psi_alpha(double t, double alpha, double b) {
    if (!(b > std::exp(std::exp(1.0)))) throw ParameterError("psi_alpha needs b > e^e");
    if (t == 0.0) return 0.0;
    if (!(t > 0.0)) throw DomainError("psi_alpha needs t >= 0");
    const double ell = std::log(b / t);
    return t * std::pow(ell, alpha) * std::log(std::log(ell));
}

double lambda_psi_alpha_norm(const StepFn& f, double alpha, double b) {
    require_at_most_unit(f, "Lambda(psi_alpha) norm");
    if (!(b > std::exp(std::exp(1.0)))) throw ParameterError("psi_alpha needs b > e^e");
    const StepFn fs = decreasing_rearrangement(f);
    double prev = 0.0;
    double s = 0.0;
    const auto ends = fs.ends();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double cur = psi_alpha(ends[i], alpha, b);
        s += fs.pieces()[i].value * (cur - prev);
        prev = cur;
    }
    return s;
}

}  // namespace extrap
