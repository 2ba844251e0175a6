#include "extrap/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "extrap/error.hpp"
#include "extrap/numerics.hpp"

namespace extrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ∫_{ra}^{rb} (c + s t/r)(A + B r) dr.
double kernel_segment(double c, double s, double t, double A, double B, double ra, double rb) {
    double v = c * A * (rb - ra) + c * B * (rb * rb - ra * ra) / 2.0;
    if (s != 0.0) v += s * t * A * std::log(rb / ra) + s * t * B * (rb - ra);
    return v;
}

// ∫ K(t/r) w(r) dr for a piecewise-linear density, split at the kernel kinks r = t/u_k.
double density_term(const KCurve& k, const std::vector<DensityNode>& nodes, double t) {
    if (nodes.size() < 2) return 0.0;
    const auto bps = k.breakpoints();
    const double L = k.domain_length();
    std::vector<double> cuts;
    cuts.reserve(bps.size());
    for (std::size_t i = bps.size(); i-- > 1;) cuts.push_back(t / bps[i]);

    double total = 0.0;
    std::vector<double> pts;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double r0 = nodes[j].r;
        const double r1 = nodes[j + 1].r;
        if (!(r1 > r0)) continue;
        const double B = (nodes[j + 1].w - nodes[j].w) / (r1 - r0);
        const double A = nodes[j].w - B * r0;
        if (A == 0.0 && B == 0.0) continue;
        pts.clear();
        pts.push_back(r0);
        for (auto it = std::upper_bound(cuts.begin(), cuts.end(), r0); it != cuts.end() && *it < r1; ++it)
            pts.push_back(*it);
        pts.push_back(r1);
        for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
            const double ra = pts[q];
            const double rb = pts[q + 1];
            const double u = t / (0.5 * (ra + rb));
            double c = k.total();
            double s = 0.0;
            if (u < L) {
                const auto it = std::upper_bound(bps.begin(), bps.end(), u);
                const auto i = static_cast<std::size_t>(it - bps.begin()) - 1;
                s = k.slopes()[i];
                c = k.values()[i] - s * bps[i];
            }
            total += kernel_segment(c, s, t, A, B, ra, rb);
        }
    }
    return total;
}

const KCurve& unit_curve() {
    static const KCurve k({0.0, 1.0}, {0.0, 1.0}, {1.0});
    return k;
}

}  // namespace

Measure Measure::dirac(double location, double mass) {
    if (!(location > 0.0)) throw ParameterError("atom location must be positive");
    Measure m;
    m.atoms.push_back({location, mass});
    return m;
}

Measure Measure::yano(double height) {
    Measure m;
    m.density = {{0.0, height}, {std::exp(-1.0), height}};
    return m;
}

double Measure::atom_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
}

double Measure::density_mass() const {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < density.size(); ++j)
        s += 0.5 * (density[j].w + density[j + 1].w) * (density[j + 1].r - density[j].r);
    return s;
}

double Measure::density_at(double r) const {
    if (density.empty() || r < density.front().r || r > density.back().r) return 0.0;
    const auto it = std::upper_bound(density.begin(), density.end(), r,
                                     [](double x, const DensityNode& d) { return x < d.r; });
    if (it == density.end()) return density.back().w;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (hi.r == lo.r) return hi.w;
    return lo.w + (hi.w - lo.w) * (r - lo.r) / (hi.r - lo.r);
}

Envelope::Envelope(std::vector<double> t, std::vector<double> tau, std::string tag,
                   std::function<double(double)> exact)
    : t_(std::move(t)), tau_(std::move(tau)), tag_(std::move(tag)), exact_(std::move(exact)) {
    if (t_.size() < 2 || t_.size() != tau_.size()) throw ValidationError("envelope needs matching grid and values");
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!(t_[i] > 0.0) || (i > 0 && !(t_[i] > t_[i - 1])))
            throw ValidationError("envelope grid must be positive and increasing");
        if (!std::isfinite(tau_[i]) || tau_[i] < 0.0) throw ValidationError("envelope values must be finite and >= 0");
    }
}

Envelope Envelope::from_function(const std::function<double(double)>& tau, std::span<const double> grid,
                                 std::string tag) {
    std::vector<double> t(grid.begin(), grid.end());
    std::vector<double> v;
    v.reserve(t.size());
    for (double x : t) v.push_back(tau(x));
    return Envelope(std::move(t), std::move(v), std::move(tag), tau);
}

double Envelope::operator()(double x) const {
    if (exact_) return exact_(x);
    const std::size_t n = t_.size();
    if (x <= t_.front()) {
        const double s = (tau_[1] - tau_[0]) / (t_[1] - t_[0]);
        return std::max(0.0, tau_[0] + s * (x - t_[0]));
    }
    if (x >= t_.back()) {
        const double s = (tau_[n - 1] - tau_[n - 2]) / (t_[n - 1] - t_[n - 2]);
        return tau_[n - 1] + s * (x - t_[n - 1]);
    }
    const auto it = std::upper_bound(t_.begin(), t_.end(), x);
    const auto i = static_cast<std::size_t>(it - t_.begin()) - 1;
    return tau_[i] + (tau_[i + 1] - tau_[i]) * (x - t_[i]) / (t_[i + 1] - t_[i]);
}

Envelope Envelope::scaled(double c) const {
    auto v = tau_;
    for (auto& x : v) x *= c;
    std::function<double(double)> ex;
    if (exact_) ex = [c, f = exact_](double x) { return c * f(x); };
    Envelope e(t_, std::move(v), tag_, std::move(ex));
    e.argmin_theta = argmin_theta;
    return e;
}

namespace closed_form {

double unit(double t) { return std::min(1.0, t); }

double yano(double t) { return t < std::exp(-1.0) ? std::numbers::e * t * std::log(1.0 / t) : 1.0; }

double adequate(double t) { return t <= 1.0 ? 2.0 * t + t * std::log(1.0 / t) : 2.0 + std::log(t); }

}  // namespace closed_form

Envelope concave_envelope(const WeightSpec& weight, std::span<const double> t_grid) {
    std::vector<double> t(t_grid.begin(), t_grid.end());
    std::vector<double> tau;
    std::vector<double> arg;
    tau.reserve(t.size());
    arg.reserve(t.size());
    const auto nodes = weight.table_nodes();
    for (double x : t) {
        if (!(x > 0.0)) throw DomainError("envelope grid must be positive");
        const double lt = std::log(x);
        auto h = [&](double th) {
            const double lm = weight.log_theta(th);
            if (std::isnan(lm)) throw ParameterError("weight is not finite at θ = " + std::to_string(th));
            return lm + th * lt;
        };
        num::Extremum best{0.0, kInf};
        if (weight.tabulated()) {
            // log-linear interpolation makes h piecewise linear: the minimum sits on a node.
            for (double th : nodes) {
                const double v = h(th);
                if (v < best.value) best = {th, v};
            }
        } else if (weight.log_convex()) {
            best = num::golden_min(h, 0.0, 1.0, 1e-12);
        } else {
            const int n = 257;
            std::size_t bi = 0;
            for (int i = 0; i < n; ++i) {
                const double th = static_cast<double>(i) / (n - 1);
                const double v = h(th);
                if (v < best.value) {
                    best = {th, v};
                    bi = static_cast<std::size_t>(i);
                }
            }
            const double a = std::max(0.0, (static_cast<double>(bi) - 1.0) / (n - 1));
            const double b = std::min(1.0, (static_cast<double>(bi) + 1.0) / (n - 1));
            const auto g = num::golden_min(h, a, b, 1e-12);
            if (g.value < best.value) best = g;
        }
        for (double th : {0.0, 1.0}) {
            if (weight.tabulated()) break;
            const double v = h(th);
            if (v < best.value) best = {th, v};
        }
        if (std::isinf(best.value) && best.value > 0) throw ParameterError("weight is infinite for every θ");
        tau.push_back(std::exp(best.value));
        arg.push_back(best.x);
    }
    Envelope env(std::move(t), std::move(tau), weight.name());
    env.argmin_theta = std::move(arg);
    const auto chk = check_concavity(env);
    if (!chk.ok) throw ValidationError("envelope of " + weight.name() + " failed the quasi-concavity check");
    return env;
}

ConcavityCheck check_concavity(const Envelope& env, double tol) {
    ConcavityCheck c;
    const auto t = env.t();
    const auto v = env.values();
    const std::size_t n = t.size();
    double prev_slope = kInf;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
        if (std::isfinite(prev_slope)) {
            const double scale = std::max({std::abs(prev_slope), std::abs(s), 1e-300});
            c.worst_second_difference = std::max(c.worst_second_difference, (s - prev_slope) / scale);
        }
        prev_slope = s;
        if (v[i] > 0.0) {
            c.worst_decrease = std::max(c.worst_decrease, (v[i] - v[i + 1]) / v[i]);
            const double r0 = v[i] / t[i];
            const double r1 = v[i + 1] / t[i + 1];
            c.worst_ratio_increase = std::max(c.worst_ratio_increase, (r1 - r0) / r0);
        }
    }
    c.ok = c.worst_second_difference <= tol && c.worst_ratio_increase <= tol && c.worst_decrease <= tol;
    return c;
}

Measure representing_measure(const Envelope& env, const MeasureOptions& opts) {
    const auto t = env.t();
    const auto g = env.values();
    const std::size_t n = t.size();
    if (n < 7) throw ValidationError("representing measure needs at least 7 grid nodes");
    const double h = std::log(t[1] / t[0]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs(std::log(t[i + 1] / t[i]) - h) > 1e-9 * std::max(1.0, h))
            throw ValidationError("representing measure needs a log-uniform grid");

    std::vector<double> s(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (g[i + 1] - g[i]) / (t[i + 1] - t[i]);

    std::vector<double> jump(n, 0.0);
    std::vector<double> cell(n, 0.0);
    std::vector<double> disc(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double scale = std::max(std::abs(s[i - 1]), std::abs(s[i]));
        const double j = s[i - 1] - s[i];
        if (j < -1e-9 * scale - 1e-300) throw ValidationError("envelope is not concave near t = " + std::to_string(t[i]));
        jump[i] = std::max(j, 0.0);
        cell[i] = 0.5 * (t[i + 1] - t[i - 1]);
        disc[i] = t[i] * jump[i] / cell[i];
    }

    // Atoms: slope jumps well above the smooth prediction from nodes two steps away.
    std::vector<char> atomic(n, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double ref = 0.0;
        if (i >= 3) ref = std::max(ref, disc[i - 2]);
        if (i + 3 < n) ref = std::max(ref, disc[i + 2]);
        const double excess = jump[i] - cell[i] * ref / t[i];
        const double scale = std::max(std::abs(s[i - 1]), std::abs(s[i]));
        atomic[i] = excess > opts.jump_tol * scale && excess > 0.5 * jump[i];
    }

    std::vector<int> dist(n, 1 << 20);
    for (std::size_t i = 0; i < n; ++i)
        if (atomic[i])
            for (std::size_t k = (i >= 2 ? i - 2 : 0); k <= std::min(n - 1, i + 2); ++k)
                dist[k] = std::min(dist[k], static_cast<int>(k > i ? k - i : i - k));

    std::vector<double> w(n, 0.0);
    std::vector<char> known(n, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (dist[i] == 0) continue;
        double est = disc[i];
        if (dist[i] > 2 && i >= 2 && i + 2 < n) {
            const double d1h = (g[i + 1] - g[i - 1]) / (2 * h);
            const double d12 = (g[i + 2] - g[i - 2]) / (4 * h);
            const double d2h = (g[i + 1] - 2 * g[i] + g[i - 1]) / (h * h);
            const double d22 = (g[i + 2] - 2 * g[i] + g[i - 2]) / (4 * h * h);
            const double plain = (d1h - d2h) / t[i];
            const double rich = ((4 * d1h - d12) - (4 * d2h - d22)) / 3.0 / t[i];
            if (std::abs(rich - plain) <= opts.richardson_guard * std::abs(plain)) est = rich;
        }
        w[i] = std::max(est, 0.0);
        known[i] = 1;
    }
    // Cluster nodes take the density interpolated from their clean neighbours.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (known[i]) continue;
        std::size_t lo = i;
        while (lo > 1 && !known[lo]) --lo;
        std::size_t hi = i;
        while (hi + 2 < n && !known[hi]) ++hi;
        const bool has_lo = known[lo] != 0;
        const bool has_hi = known[hi] != 0;
        if (has_lo && has_hi)
            w[i] = w[lo] + (w[hi] - w[lo]) * (t[i] - t[lo]) / (t[hi] - t[lo]);
        else if (has_lo)
            w[i] = w[lo];
        else if (has_hi)
            w[i] = w[hi];
    }

    Measure mu;
    for (std::size_t i = 1; i + 1 < n;) {
        if (!atomic[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 2 < n && atomic[j + 1]) ++j;
        const double sl = s[i - 1];
        const double sr = s[j];
        double r = (g[j] - sr * t[j] - g[i] + sl * t[i]) / (sl - sr);
        r = std::clamp(r, t[i - 1], t[j + 1]);
        double smooth = 0.0;
        for (std::size_t k = i; k <= j; ++k) smooth += cell[k] * w[k];
        mu.atoms.push_back({r, std::max(0.0, r * (sl - sr) - smooth)});
        i = j + 1;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) mu.density.push_back({t[i], w[i]});

    // α, β make the reconstruction exact at both ends of the grid. Both are
    // limits of a concave nonnegative τ (τ(0+) and τ(t)/t at ∞), so a negative
    // fit is discretization noise and is clipped; a negative β would make the
    // reconstruction eventually decrease.
    const double r0 = reconstruct(mu, t[0]);
    const double r1 = reconstruct(mu, t[n - 1]);
    const double e0 = g[0] - r0;
    const double e1 = g[n - 1] - r1;
    mu.beta = std::max(0.0, (e1 - e0) / (t[n - 1] - t[0]));
    mu.alpha = std::max(0.0, e0 - mu.beta * t[0]);
    return mu;
}

double reconstruct(const Measure& mu, double t) { return calderon_transform(unit_curve(), mu, t); }

Residual reconstruction_residual(const Envelope& env, const Measure& mu) {
    Residual r;
    const auto t = env.t();
    const auto v = env.values();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double d = std::abs(reconstruct(mu, t[i]) - v[i]);
        if (d > r.max_abs) r.max_abs = d;
        if (v[i] > 0.0 && d / v[i] > r.max_rel) {
            r.max_rel = d / v[i];
            r.worst_t = t[i];
        }
    }
    return r;
}

double calderon_transform(const KCurve& k, const Measure& mu, double t) {
    if (!(t > 0.0)) throw DomainError("Calderón transform needs t > 0");
    double v = mu.alpha * k.total() + mu.beta * t * k.initial_slope();
    for (const auto& a : mu.atoms) v += a.mass * k(t / a.location);
    return v + density_term(k, mu.density, t);
}

double calderon_transform(const StepFn& f, const Measure& mu, double t) {
    return calderon_transform(k_curve(f), mu, t);
}

double adequate_kernel(double x) {
    if (!(x > 0.0)) return 0.0;
    return x <= 1.0 ? 2.0 * x + x * std::log(1.0 / x) : 2.0 + std::log(x);
}

Residual adequate_decompose_check(const Envelope& tau, const Measure& nu) {
    Residual res;
    const auto t = tau.t();
    const auto v = tau.values();
    for (std::size_t i = 0; i < t.size(); ++i) {
        double T = 0.0;
        for (const auto& a : nu.atoms) T += a.mass * adequate_kernel(t[i] / a.location);
        for (std::size_t j = 0; j + 1 < nu.density.size(); ++j) {
            const auto& lo = nu.density[j];
            const auto& hi = nu.density[j + 1];
            if (!(hi.r > lo.r)) continue;
            auto integrand = [&](double r) {
                const double w = lo.w + (hi.w - lo.w) * (r - lo.r) / (hi.r - lo.r);
                return w * adequate_kernel(t[i] / r);
            };
            if (t[i] > lo.r && t[i] < hi.r)
                T += num::gauss_legendre(integrand, lo.r, t[i]) + num::gauss_legendre(integrand, t[i], hi.r);
            else
                T += num::gauss_legendre(integrand, lo.r, hi.r);
        }
        const double d = std::abs(T - v[i]);
        res.max_abs = std::max(res.max_abs, d);
        if (v[i] > 0.0 && d / v[i] > res.max_rel) {
            res.max_rel = d / v[i];
            res.worst_t = t[i];
        }
    }
    return res;
}

SingleAtomFit best_single_atom(const Envelope& tau, std::span<const double> r_grid) {
    SingleAtomFit best{0.0, 0.0, kInf};
    const auto t = tau.t();
    const auto v = tau.values();
    for (double r : r_grid) {
        double lo = kInf;
        double hi = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (v[i] <= 0.0) continue;
            const double a = adequate_kernel(t[i] / r) / v[i];
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        const double res = (hi - lo) / (hi + lo);
        if (res < best.max_rel) best = {r, 2.0 / (hi + lo), res};
    }
    return best;
}

}  // namespace extrap
