#include "extrap/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "extrap/error.hpp"
#include "extrap/functors.hpp"
#include "extrap/norms.hpp"
#include "extrap/numerics.hpp"

namespace extrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Line {
    double c;  // value at 0
    double s;  // slope
};

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.empty() || x_.size() != y_.size() || x_.front() != 0.0)
        throw ValidationError("piecewise-linear data needs matching nodes starting at 0");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw ValidationError("piecewise-linear nodes must increase");
    for (double v : y_)
        if (!std::isfinite(v)) throw ValidationError("piecewise-linear values must be finite");
}

PiecewiseLinear PiecewiseLinear::from(const KCurve& k) {
    return PiecewiseLinear({k.breakpoints().begin(), k.breakpoints().end()}, {k.values().begin(), k.values().end()});
}

double PiecewiseLinear::operator()(double x) const {
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return y_[i] + (y_[i + 1] - y_[i]) * (x - x_[i]) / (x_[i + 1] - x_[i]);
}

namespace {

Line segment_at(const PiecewiseLinear& F, double x) {
    const auto xs = F.x();
    const auto ys = F.y();
    if (x >= xs.back()) return {ys.back(), 0.0};
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const auto i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    return {ys[i] - s * xs[i], s};
}

}  // namespace

double mult_convolution(const PiecewiseLinear& F, const PiecewiseLinear& G, double t, double u_lo, double u_hi) {
    if (!(t > 0.0)) throw DomainError("convolution needs t > 0");
    if (!(u_hi >= u_lo) || u_lo < 0.0) throw DomainError("convolution range must satisfy 0 <= u_lo <= u_hi");
    if (u_hi == u_lo) return 0.0;
    std::vector<double> cuts{u_lo};
    for (double x : G.x())
        if (x > u_lo && x < u_hi) cuts.push_back(x);
    for (double x : F.x()) {
        if (x <= 0.0) continue;
        const double u = t / x;
        if (u > u_lo && u < u_hi) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(u_hi);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        double mid;
        if (a == 0.0)
            mid = std::isinf(b) ? 1.0 : 0.5 * b;
        else
            mid = std::isinf(b) ? 2.0 * a : a * std::sqrt(b / a);
        const Line f = segment_at(F, t / mid);
        const Line g = segment_at(G, mid);
        // (f.c + f.s t/u)(g.c + g.s u)/u
        const double k_log = f.c * g.c + f.s * g.s * t;
        const double k_lin = f.c * g.s;
        const double k_inv = f.s * g.c * t;
        if (k_log != 0.0) {
            if (a == 0.0 || std::isinf(b)) return kInf;
            total += k_log * std::log(b / a);
        }
        if (k_lin != 0.0) {
            if (std::isinf(b)) return kInf;
            total += k_lin * (b - a);
        }
        if (k_inv != 0.0) {
            if (a == 0.0) return kInf;
            total += k_inv * (1.0 / a - (std::isinf(b) ? 0.0 : 1.0 / b));
        }
    }
    return total;
}

double bilinear_calderon(const StepFn& f, const StepFn& g, double t, const Measure& nu) {
    if (!(t > 0.0)) throw DomainError("bilinear transform needs t > 0");
    const auto F = PiecewiseLinear::from(k_curve(f));
    const auto G = PiecewiseLinear::from(k_curve(g));
    auto conv = [&](double x) { return mult_convolution(F, G, x); };
    double total = 0.0;
    for (const auto& a : nu.atoms) total += a.mass * conv(t / a.location);
    for (std::size_t j = 0; j + 1 < nu.density.size(); ++j) {
        const auto& lo = nu.density[j];
        const auto& hi = nu.density[j + 1];
        if (!(hi.r > lo.r)) continue;
        auto integrand = [&](double r) {
            const double w = lo.w + (hi.w - lo.w) * (r - lo.r) / (hi.r - lo.r);
            return w == 0.0 ? 0.0 : w * conv(t / r);
        };
        if (t > lo.r && t < hi.r)
            total += num::gauss_legendre(integrand, lo.r, t) + num::gauss_legendre(integrand, t, hi.r);
        else
            total += num::gauss_legendre(integrand, lo.r, hi.r);
    }
    return total;
}

StepFn product_model(const StepFn& f, const StepFn& g) {
    const auto fs = decreasing_rearrangement(f);
    const auto gs = decreasing_rearrangement(g);
    std::vector<double> cuts(fs.ends().begin(), fs.ends().end());
    cuts.insert(cuts.end(), gs.ends().begin(), gs.ends().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Piece> pieces;
    double lo = 0.0;
    for (double hi : cuts) {
        const double mid = 0.5 * (lo + hi);
        pieces.push_back({hi - lo, fs.value_at(mid) * gs.value_at(mid)});
        lo = hi;
    }
    return StepFn(cuts.back(), std::move(pieces));
}

Report bilinear_kj_check(const StepFn& f, const StepFn& g, const Envelope& tau, const KjGrid& grid) {
    Report r;
    r.check = "bilinear_kj";
    const auto kt = k_curve(product_model(f, g));
    const auto axis = num::log_grid(grid.lo, grid.hi, grid.points);
    double worst = 0.0;
    for (double t : axis)
        for (double s : axis)
            for (double h : axis) {
                const double lhs = kt(t);
                if (lhs == 0.0) continue;
                const double rhs = tau(t / (s * h)) * j_functional(s, f) * j_functional(h, g);
                worst = std::max(worst, rhs > 0.0 ? lhs / rhs : kInf);
            }
    r.measured = worst;
    r.pass = std::isfinite(worst);
    return r;
}

double exp_pair_norm(const KCurve& k) {
    const auto t = k.breakpoints();
    auto g = [&](double x) { return k(x) / (x * (1.0 - std::log(x))); };
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < t.size() && t[i] < 1.0; ++i) {
        const double lo = t[i] > 0.0 ? t[i] : std::min(t[i + 1], 1.0) * 1e-15;
        const double hi = std::min(t[i + 1], 1.0);
        best = std::max(best, num::scan_max(g, lo, hi, 16, true).value);
    }
    if (k.domain_length() < 1.0) best = std::max(best, num::scan_max(g, k.domain_length(), 1.0, 32, true).value);
    return best;
}

double exp_pair_norm(const std::function<double(double)>& k) {
    auto g = [&](double x) { return k(x) / (x * (1.0 - std::log(x))); };
    return num::scan_max(g, 1e-12, 1.0, 193, true).value;
}

Report lagbi_bounds(const StepFn& f, const StepFn& g, const LagbiOptions& opts) {
    Report r;
    r.check = "lagbi";
    r.bound = opts.bound;
    if (f.is_zero() || g.is_zero()) {
        for (const char* key : {"c_i", "c_ii", "ratio_I", "ratio_II", "ratio_III"}) r.set(key, 0.0);
        return r;
    }
    const auto kf = k_curve(f);
    const auto kg = k_curve(g);
    const auto F = PiecewiseLinear::from(kf);
    const auto G = PiecewiseLinear::from(kg);
    const double f1 = f.integral();
    const double g1 = g.integral();
    const double fi = f.sup();
    const double gi = g.sup();

    const double c_i = mult_convolution(F, G, 1.0) / (k_head_integral(kf, 1.0) * k_head_integral(kg, 1.0));
    const double c_ii = exp_pair_norm([&](double t) { return mult_convolution(F, G, t); }) / (fi * gi);

    double ratio[3] = {0.0, 0.0, 0.0};
    for (double t : num::decade_grid(opts.t_lo, 1.0, opts.per_decade)) {
        const double part[3] = {mult_convolution(F, G, t, 0.0, t), t < 1.0 ? mult_convolution(F, G, t, t, 1.0) : 0.0,
                                mult_convolution(F, G, t, 1.0, kInf)};
        const double bound[3] = {t * f1 * gi, t * std::log(1.0 / t) * fi * gi, t * fi * g1};
        for (int i = 0; i < 3; ++i) {
            if (part[i] == 0.0) continue;
            ratio[i] = std::max(ratio[i], bound[i] > 0.0 ? part[i] / bound[i] : kInf);
        }
    }
    r.set("c_i", c_i);
    r.set("c_ii", c_ii);
    r.set("ratio_I", ratio[0]);
    r.set("ratio_II", ratio[1]);
    r.set("ratio_III", ratio[2]);
    r.measured = c_ii;
    constexpr double slack = 1.0 + 1e-12;
    r.pass = c_ii <= opts.bound && ratio[0] <= slack && ratio[1] <= slack && ratio[2] <= slack;
    if (!r.pass && c_ii <= opts.bound) r.flags.emplace_back("addend_over_bound");
    return r;
}

}  // namespace extrap
