#include "extrap/functors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "extrap/error.hpp"
#include "extrap/numerics.hpp"

namespace extrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double intercept(const KCurve& k, std::size_t i) { return k.values()[i] - k.slopes()[i] * k.breakpoints()[i]; }

// log-uniform grid closed at 1 from below, used by the dilation checks.
std::vector<double> unit_grid(double lo, int per_decade) {
    auto g = num::decade_grid(lo, 1.0, per_decade);
    g.pop_back();
    return g;
}

// Largest value and relative drift between the innermost point and its square root.
struct RatioSweep {
    double worst = 0.0;
    double drift = 0.0;
};

RatioSweep sweep(const std::function<double(double)>& ratio, double lo, int per_decade) {
    RatioSweep r;
    for (double x : unit_grid(lo, per_decade)) {
        const double v = ratio(x);
        r.worst = std::max(r.worst, std::max(v, 1.0 / v));
    }
    auto sym = [&](double x) {
        const double v = ratio(x);
        return std::max(v, 1.0 / v);
    };
    r.drift = sym(lo) / sym(std::sqrt(lo)) - 1.0;
    return r;
}

}  // namespace

ScaleSpec ScaleSpec::make(Kind kind, WeightSpec weight, double p_max, int per_decade, bool include_infinity) {
    ScaleSpec s;
    s.kind = kind;
    s.weight = std::move(weight);
    s.grid = num::p_grid(p_max, per_decade);
    if (include_infinity) {
        if (kind != Kind::Lp) throw ParameterError("only the L^p scale admits p = ∞");
        s.grid.push_back(kInf);
    }
    return s;
}

double ScaleSpec::space_norm(const StepFn& f, double p) const {
    switch (kind) {
        case Kind::Lp: return lp_norm(f, p);
        case Kind::LorentzP1: return lorentz_p1_norm(f, p);
        case Kind::LorentzPInf: return lorentz_pinf_norm(f, p);
    }
    return 0.0;
}

DeltaResult delta_functor_norm(const StepFn& f, const ScaleSpec& spec) {
    if (spec.grid.empty()) throw ParameterError("scale grid is empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1])) throw ParameterError("scale grid must be strictly increasing");
    DeltaResult best{0.0, spec.grid.front()};
    if (f.is_zero()) return best;
    for (double p : spec.grid) {
        const double w = spec.weight.at_p(p);
        if (std::isnan(w)) throw ParameterError("weight is not finite at p = " + std::to_string(p));
        const double v = w * spec.space_norm(f, p);
        if (v > best.value) best = {v, p};
    }
    return best;
}

double sigma_llogl_norm(const StepFn& f, double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("sigma norm needs α > 0");
    if (f.domain_length() != 1.0) throw DomainError("sigma norm is defined on (0, 1]");
    const auto k = k_curve(f);
    const auto t = k.breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double a = t[i];
        const double b = t[i + 1];
        const double c = intercept(k, i);
        const double m = k.slopes()[i];
        const double ub = std::log(1.0 / b);
        // s = e^{-u}: ∫ (c/s + m) u^{α-1} ds = c ∫ u^{α-1} du + m ∫ u^{α-1} e^{-u} du
        if (a > 0.0) {
            const double ua = std::log(1.0 / a);
            total += c * (std::pow(ua, alpha) - std::pow(ub, alpha)) / alpha;
            if (m != 0.0) total += m * (boost::math::tgamma(alpha, ub) - boost::math::tgamma(alpha, ua));
        } else if (m != 0.0) {
            total += m * boost::math::tgamma(alpha, ub);
        }
    }
    return total;
}

double f_functor_norm(const StepFn& f, const LatticeParamSpec& spec) {
    if (f.is_zero()) return 0.0;
    if (spec.kind == LatticeParamSpec::Kind::Sup) {
        auto scale = ScaleSpec::make(ScaleSpec::Kind::Lp, spec.weight, spec.p_max, spec.per_decade, false);
        scale.grid.insert(scale.grid.begin(), 1.0);
        if (spec.include_infinity) {
            const double w = spec.weight.at_p(kInf);
            if (std::isfinite(w)) scale.grid.push_back(kInf);
        }
        return delta_functor_norm(f, scale).value;
    }
    if (!(spec.q >= 1.0)) throw ParameterError("lattice exponent q must be >= 1");
    const bool per_p = spec.measure == LatticeParamSpec::Measure::DpOverP;
    if (std::isinf(spec.q)) throw ParameterError("use the sup lattice for q = ∞");
    const double scale = f.sup();
    auto integrand = [&](double p) {
        const double w = spec.weight.at_p(p);
        if (w == 0.0) return 0.0;
        const double v = std::pow(w * lp_norm(f, p) / scale, spec.q);
        return per_p ? v / p : v;
    };
    return scale * std::pow(num::integrate(integrand, 1.0, kInf, 1e-12, 1e-10), 1.0 / spec.q);
}

double limiting_norm(const StepFn& f, const ScalarWeight& w, double q) {
    if (!(q >= 1.0)) throw ParameterError("limiting norm needs q >= 1");
    if (f.is_zero()) return 0.0;
    const auto k = k_curve(f);
    std::vector<double> cuts{0.0};
    for (double b : k.breakpoints())
        if (b > 0.0 && b < 1.0) cuts.push_back(b);
    cuts.push_back(1.0);
    if (std::isinf(q)) {
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double lo = cuts[i] > 0.0 ? cuts[i] : cuts[i + 1] * 1e-15;
            auto g = [&](double s) { return w(s) * k(s); };
            best = std::max(best, num::scan_max(g, lo, cuts[i + 1], 64, true).value);
        }
        return best;
    }
    const double scale = k.total();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto g = [&](double s) {
            const double v = w(s) * k(s) / scale;
            return v == 0.0 ? 0.0 : std::pow(v, q) / s;
        };
        total += num::integrate_singular(g, cuts[i], cuts[i + 1], 1e-11);
    }
    return scale * std::pow(total, 1.0 / q);
}

double k_tail_integral(const KCurve& k, double x) {
    if (!(x > 0.0)) throw DomainError("tail integral needs x > 0");
    const auto t = k.breakpoints();
    const double L = k.domain_length();
    double total = k.total() / std::max(x, L);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double lo = std::max(t[i], x);
        const double hi = t[i + 1];
        if (!(hi > lo)) continue;
        total += intercept(k, i) * (1.0 / lo - 1.0 / hi) + k.slopes()[i] * std::log(hi / lo);
    }
    return total;
}

double k_head_integral(const KCurve& k, double x) {
    if (!(x >= 0.0)) throw DomainError("head integral needs x >= 0");
    const auto t = k.breakpoints();
    const double L = k.domain_length();
    double total = x > L ? k.total() * std::log(x / L) : 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double lo = t[i];
        const double hi = std::min(t[i + 1], x);
        if (!(hi > lo)) break;
        const double c = intercept(k, i);
        total += k.slopes()[i] * (hi - lo);
        if (lo > 0.0) total += c * std::log(hi / lo);
    }
    return total;
}

double becomes_form(const KCurve& k, double t) { return k_head_integral(k, t) + t * k_tail_integral(k, t); }

ScaleKFunctional::ScaleKFunctional(const WeightSpec& weight, const ScaleKOptions& opts)
    : envelope_(concave_envelope(weight, num::log_grid(opts.t_lo, opts.t_hi, opts.points))),
      measure_(representing_measure(envelope_, opts.measure)) {}

double ScaleKFunctional::operator()(double t, const StepFn& f) const { return calderon_transform(f, measure_, t); }

double ScaleKFunctional::operator()(double t, const KCurve& k) const { return calderon_transform(k, measure_, t); }

double scale_k_functional(double t, const StepFn& f, const WeightSpec& weight) {
    return ScaleKFunctional(weight)(t, f);
}

double log_tilde_derivative_norm(const QuasiConcaveFn& phi, double p) {
    if (!(p >= 1.0)) throw ParameterError("‖φ̃′‖_p needs p >= 1");
    auto log_deriv = [&](double u) {
        const double d = phi.tilde_derivative(std::exp(-u));
        return d > 0.0 ? std::log(d) : -kInf;
    };
    constexpr double u_max = 600.0;
    if (std::isinf(p)) {
        const double far = log_deriv(u_max) - log_deriv(u_max - 20.0);
        if (far > 1e-3) return kInf;
        return num::scan_max(log_deriv, 0.0, u_max, 600, false).value;
    }
    // s = e^{-u}: ∫_0^1 φ̃′(s)^p ds = ∫_0^∞ exp(p log φ̃′(e^{-u}) − u) du
    auto h = [&](double u) { return p * log_deriv(u) - u; };
    const double slope = (h(u_max) - h(u_max - 20.0)) / 20.0;
    if (std::isnan(slope) || slope > -1e-3) return std::isnan(slope) ? -kInf : kInf;
    const auto peak = num::scan_max(h, 0.0, u_max, 600, false);
    if (!std::isfinite(peak.value)) return peak.value;
    auto g = [&](double u) { return std::exp(h(u) - peak.value); };
    // Beyond u_max the exponent decays at least linearly with the measured slope.
    const double tail = g(u_max) / -slope;
    const double mass =
        num::integrate(g, 0.0, peak.x, 1e-13, 1e-10) + num::integrate(g, peak.x, u_max, 1e-13, 1e-10) + tail;
    return (peak.value + std::log(mass)) / p;
}

Report marcinkiewicz_extrap_check(const QuasiConcaveFn& phi, const MarcinkiewiczOptions& opts) {
    Report r;
    r.check = "marcinkiewicz_extrap";
    r.bound = opts.bound;

    const double far = phi.tilde(1e-300);
    if (far > 1e-12 * phi.tilde(1.0) && far / phi.tilde(1e-150) > 0.99) r.flags.emplace_back("tilde_not_vanishing");

    std::vector<double> ps{1.0};
    for (double p : num::p_grid(opts.p_max, opts.p_per_decade)) ps.push_back(p);
    ps.push_back(kInf);
    std::vector<double> lognorm;
    std::size_t finite = 0;
    for (double p : ps) {
        lognorm.push_back(log_tilde_derivative_norm(phi, p));
        if (std::isfinite(lognorm.back())) ++finite;
    }
    r.set("finite_p_count", static_cast<double>(finite));
    if (finite == 0) r.flags.emplace_back("no_finite_p");

    double worst = 0.0;
    double worst_t = 0.0;
    if (finite > 0) {
        for (double t : num::decade_grid(opts.t_lo, 1.0, opts.per_decade)) {
            double best = -kInf;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                if (!std::isfinite(lognorm[i])) continue;
                const double e = std::isinf(ps[i]) ? 0.0 : std::log(t) / ps[i];
                best = std::max(best, e - lognorm[i]);
            }
            const double c = std::exp(std::log(phi(t)) - best);
            if (c > worst) {
                worst = c;
                worst_t = t;
            }
        }
    } else {
        worst = kInf;
    }
    r.measured = worst;
    r.set("worst_t", worst_t);
    r.pass = r.flags.empty() && worst <= opts.bound;
    return r;
}

Report strong_extrap_check(const QuasiConcaveFn& phi, const DilationOptions& opts) {
    Report r;
    r.check = "strong_extrap";
    r.bound = opts.bound;
    const auto s = sweep([&](double t) { return phi(t) / phi(t * t); }, opts.t_lo, opts.per_decade);
    r.measured = s.worst;
    r.set("drift", s.drift);
    if (s.drift > opts.growth_tol) r.flags.emplace_back("ratio_growing");
    r.pass = r.flags.empty() && s.worst <= opts.bound;
    return r;
}

Report tempered_check(const WeightSpec& weight, const DilationOptions& opts) {
    Report r;
    r.check = "tempered";
    r.bound = opts.bound;
    const double lo = std::max(opts.t_lo, 1e-300);
    auto near0 = [&](double x) { return weight.theta(std::min(2.0 * x * 0.25, 0.5)) / weight.theta(x * 0.25); };
    auto near1 = [&](double x) {
        return weight.theta(1.0 - std::min(2.0 * x * 0.25, 0.5)) / weight.theta(1.0 - x * 0.25);
    };
    const auto a = sweep(near0, lo, opts.per_decade);
    // 1 − η loses digits below ~1e-8.
    const auto b = sweep(near1, std::max(lo, 1e-8), opts.per_decade);
    r.measured = std::max(a.worst, b.worst);
    r.set("ratio_near_0", a.worst);
    r.set("ratio_near_1", b.worst);
    r.set("drift_near_0", a.drift);
    r.set("drift_near_1", b.drift);
    if (a.drift > opts.growth_tol) r.flags.emplace_back("drift_near_0");
    if (b.drift > opts.growth_tol) r.flags.emplace_back("drift_near_1");
    r.pass = r.flags.empty() && std::isfinite(r.measured) && r.measured <= opts.bound;
    return r;
}

}  // namespace extrap
