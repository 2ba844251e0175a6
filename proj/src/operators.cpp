#include "extrap/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "extrap/error.hpp"
#include "extrap/functors.hpp"
#include "extrap/norms.hpp"
#include "extrap/numerics.hpp"

namespace extrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Poly = std::vector<double>;

double eval(const Poly& p, double x) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

bool is_zero(const Poly& p) {
    return std::all_of(p.begin(), p.end(), [](double c) { return c == 0.0; });
}

std::size_t degree(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0.0) return i;
    return 0;
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
    return d;
}

Poly antiderivative(const Poly& p) {
    Poly d{0.0};
    for (std::size_t i = 0; i < p.size(); ++i) d.push_back(p[i] / static_cast<double>(i + 1));
    return d;
}

Poly add(Poly a, const Poly& b, double sb = 1.0) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += sb * b[i];
    return a;
}

// Σ_k sign^k p^{(k)}.
Poly derivative_series(const Poly& p, double sign) {
    Poly out = p;
    Poly d = derivative(p);
    double s = sign;
    while (!d.empty()) {
        out = add(std::move(out), d, s);
        d = derivative(d);
        s *= sign;
    }
    return out;
}

double piece_at(const LogPolyFn::Piece& pc, double t) { return pc(t); }

// Monotone pieces need only their endpoints: constants plus c/t, or A linear in log t with B = 0.
bool monotone(const LogPolyFn::Piece& pc) {
    if (is_zero(pc.b)) return degree(pc.a) <= 1;
    return degree(pc.a) == 0 && degree(pc.b) == 0;
}

struct Extent {
    double lo;
    double hi;
};

Extent extent(const LogPolyFn::Piece& pc, double x0, double x1) {
    if (x0 <= 0.0) {
        const double v = pc.a.empty() ? 0.0 : pc.a[0];
        return {v, v};
    }
    const double v0 = piece_at(pc, x0);
    const double v1 = piece_at(pc, x1);
    Extent e{std::min(v0, v1), std::max(v0, v1)};
    if (!monotone(pc)) {
        auto g = [&](double l) { return piece_at(pc, std::exp(l)); };
        const double l0 = std::log(x0);
        const double l1 = std::log(x1);
        e.lo = std::min(e.lo, num::golden_min(g, l0, l1, 1e-10 * (l1 - l0)).value);
        e.hi = std::max(e.hi, num::golden_max(g, l0, l1, 1e-10 * (l1 - l0)).value);
    }
    return e;
}

// Subdivision of the input pieces used for re-discretization.
std::vector<double> subdivision(const StepFn& f, int resolution) {
    if (resolution < 2) throw RefinementError("operator resolution must be at least 2 per piece");
    std::vector<double> cuts{0.0};
    double lo = 0.0;
    for (double hi : f.ends()) {
        for (int j = 1; j < resolution; ++j) {
            const double x = lo > 0.0 ? lo * std::pow(hi / lo, static_cast<double>(j) / resolution)
                                      : hi * static_cast<double>(j) / resolution;
            cuts.push_back(x);
        }
        cuts.push_back(hi);
        lo = hi;
    }
    return cuts;
}

StepFn discretize(const OperatorSpec& op, const StepFn& f, bool upper) {
    const auto g = image(op, f);
    if (!g.bounded_at_zero()) throw RefinementError("operator image is unbounded near 0");
    const auto cuts = subdivision(f, op.resolution);
    const auto pcs = g.pieces();
    std::vector<Piece> out;
    out.reserve(cuts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = cuts[i] > 0.0 ? cuts[i] * std::sqrt(cuts[i + 1] / cuts[i]) : 0.5 * cuts[i + 1];
        while (pcs[k].hi < mid) ++k;
        const auto e = extent(pcs[k], cuts[i], cuts[i + 1]);
        out.push_back({cuts[i + 1] - cuts[i], std::max(0.0, upper ? e.hi : e.lo)});
    }
    return StepFn(f.domain_length(), std::move(out));
}

// Step approximation of t^{-γ} on (0, 1] by exact piece averages.
StepFn power_test_function(double gamma, double eps, double ratio) {
    const int n = static_cast<int>(std::ceil(std::log(1.0 / eps) / std::log(ratio))) + 1;
    const auto nodes = num::log_grid(eps, 1.0, n);
    const double e = 1.0 - gamma;
    std::vector<Piece> pieces;
    pieces.push_back({nodes[0], std::pow(nodes[0], -gamma) / e});
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double x0 = nodes[i - 1];
        const double x1 = nodes[i];
        // (x1^e − x0^e) / (e (x1 − x0)) without cancellation
        const double avg = std::pow(x0, e) * std::expm1(e * std::log(x1 / x0)) / (e * (x1 - x0));
        pieces.push_back({x1 - x0, avg});
    }
    return StepFn(1.0, std::move(pieces));
}

}  // namespace

double LogPolyFn::Piece::operator()(double t) const {
    const double l = std::log(t);
    double v = eval(a, l);
    if (!b.empty()) v += eval(b, l) / t;
    return v;
}

LogPolyFn::LogPolyFn(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty() || pieces_.front().lo != 0.0 || pieces_.back().hi != kInf)
        throw ValidationError("piecewise function must cover (0, ∞)");
    for (std::size_t i = 1; i < pieces_.size(); ++i)
        if (pieces_[i].lo != pieces_[i - 1].hi || !(pieces_[i].hi > pieces_[i].lo))
            throw ValidationError("pieces must be contiguous and nonempty");
}

LogPolyFn LogPolyFn::from_step(const StepFn& f) {
    std::vector<Piece> pcs;
    double lo = 0.0;
    const auto ends = f.ends();
    for (std::size_t i = 0; i < f.size(); ++i) {
        pcs.push_back({lo, ends[i], {f.pieces()[i].value}, {}});
        lo = ends[i];
    }
    pcs.push_back({lo, kInf, {0.0}, {}});
    return LogPolyFn(std::move(pcs));
}

double LogPolyFn::operator()(double t) const {
    if (!(t > 0.0)) throw DomainError("evaluation needs t > 0");
    const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                                     [](const Piece& p, double x) { return p.hi < x; });
    return (*it)(t);
}

std::vector<double> LogPolyFn::breakpoints() const {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].hi);
    return out;
}

bool LogPolyFn::bounded_at_zero() const {
    const auto& p = pieces_.front();
    return is_zero(p.b) && degree(p.a) == 0;
}

namespace {

LogPolyFn combine(const LogPolyFn& f, const LogPolyFn& g, double sign) {
    auto cuts = f.breakpoints();
    const auto gc = g.breakpoints();
    cuts.insert(cuts.end(), gc.begin(), gc.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto locate = [](const LogPolyFn& h, double x) -> const LogPolyFn::Piece& {
        const auto pcs = h.pieces();
        return *std::lower_bound(pcs.begin(), pcs.end(), x,
                                 [](const LogPolyFn::Piece& p, double y) { return p.hi < y; });
    };
    std::vector<LogPolyFn::Piece> out;
    double lo = 0.0;
    cuts.push_back(kInf);
    for (double hi : cuts) {
        const double mid = std::isinf(hi) ? 2.0 * lo + 1.0 : (lo > 0.0 ? lo * std::sqrt(hi / lo) : 0.5 * hi);
        const auto& pf = locate(f, mid);
        const auto& pg = locate(g, mid);
        out.push_back({lo, hi, add(pf.a, pg.a, sign), add(pf.b, pg.b, sign)});
        lo = hi;
    }
    return LogPolyFn(std::move(out));
}

}  // namespace

LogPolyFn operator+(const LogPolyFn& f, const LogPolyFn& g) { return combine(f, g, 1.0); }
LogPolyFn operator-(const LogPolyFn& f, const LogPolyFn& g) { return combine(f, g, -1.0); }

LogPolyFn hardy(const LogPolyFn& g) {
    // ∫ A(log s) ds = s Ã(log s) with Ã = Σ (−1)^k A^{(k)};  ∫ B(log s) ds/s = ∫ B dℓ.
    std::vector<LogPolyFn::Piece> out;
    double integral = 0.0;
    for (const auto& pc : g.pieces()) {
        const Poly at = derivative_series(pc.a, -1.0);
        const Poly bh = antiderivative(pc.b);
        auto phi = [&](double s) { return s * eval(at, std::log(s)) + eval(bh, std::log(s)); };
        double c = 0.0;
        if (pc.lo == 0.0) {
            if (!is_zero(pc.b)) throw RefinementError("Hardy integral diverges at 0");
        } else {
            c = integral - phi(pc.lo);
        }
        out.push_back({pc.lo, pc.hi, at, add(bh, Poly{c})});
        if (!std::isinf(pc.hi)) integral = phi(pc.hi) + c;
    }
    return LogPolyFn(std::move(out));
}

LogPolyFn dual_hardy(const LogPolyFn& g) {
    // ∫ A(log s) ds/s = Â(log s);  ∫ B(log s) ds/s² = −B̌(log s)/s with B̌ = Σ B^{(k)}.
    const auto pcs = g.pieces();
    std::vector<LogPolyFn::Piece> out(pcs.size());
    double above = 0.0;  // Qg at the right end of the current piece
    for (std::size_t i = pcs.size(); i-- > 0;) {
        const auto& pc = pcs[i];
        const Poly ah = antiderivative(pc.a);
        const Poly bc = derivative_series(pc.b, 1.0);
        auto psi = [&](double s) { return eval(ah, std::log(s)) - eval(bc, std::log(s)) / s; };
        double psi_hi = 0.0;
        if (std::isinf(pc.hi)) {
            if (!is_zero(pc.a)) throw RefinementError("dual Hardy integral diverges at ∞");
        } else {
            psi_hi = psi(pc.hi);
        }
        const double c = above + psi_hi;
        Poly a = add(Poly{c}, ah, -1.0);
        out[i] = {pc.lo, pc.hi, std::move(a), bc};
        if (pc.lo > 0.0) above = c - psi(pc.lo);
    }
    return LogPolyFn(std::move(out));
}

LogPolyFn image(const OperatorSpec& op, const StepFn& f) {
    switch (op.kind) {
        case OperatorSpec::Kind::Identity: return LogPolyFn::from_step(f);
        case OperatorSpec::Kind::Hardy: return hardy(LogPolyFn::from_step(f));
        case OperatorSpec::Kind::DualHardy: return dual_hardy(LogPolyFn::from_step(f));
        case OperatorSpec::Kind::Calderon: {
            const auto g = LogPolyFn::from_step(f);
            return hardy(g) + dual_hardy(g);
        }
        case OperatorSpec::Kind::Diagonal: {
            if (op.multipliers.empty()) throw ParameterError("diagonal operator needs multipliers");
            std::vector<Piece> pcs(f.pieces().begin(), f.pieces().end());
            for (std::size_t i = 0; i < pcs.size(); ++i) {
                const double m = op.multipliers[std::min(i, op.multipliers.size() - 1)];
                if (!(m >= 0.0) || !std::isfinite(m)) throw ParameterError("multipliers must be finite and >= 0");
                pcs[i].value *= m;
            }
            return LogPolyFn::from_step(StepFn(f.domain_length(), std::move(pcs)));
        }
    }
    throw ParameterError("unknown operator");
}

StepFn apply(const OperatorSpec& op, const StepFn& f) { return discretize(op, f, true); }

StepFn apply_lower(const OperatorSpec& op, const StepFn& f) { return discretize(op, f, false); }

double sup_abs_difference(const LogPolyFn& g, const LogPolyFn& h, double t_lo, double t_hi, int per_piece) {
    if (!(t_lo > 0.0 && t_hi > t_lo)) throw DomainError("difference window must satisfy 0 < t_lo < t_hi");
    const auto d = g - h;
    double worst = 0.0;
    for (const auto& pc : d.pieces()) {
        const double lo = std::max(pc.lo, t_lo);
        const double hi = std::min(pc.hi, t_hi);
        if (!(hi > lo)) continue;
        for (int j = 0; j <= per_piece; ++j) {
            const double x = lo * std::pow(hi / lo, static_cast<double>(j) / per_piece);
            if (x > pc.lo) worst = std::max(worst, std::abs(pc(x)));
        }
    }
    return worst;
}

NormLowerBound operator_norm_lower(const OperatorSpec& op, double p, const NormSweepOptions& opts) {
    if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("norm sweep needs 1 <= p < ∞");
    NormLowerBound best;
    for (double delta : opts.deltas) {
        const double gamma = 1.0 / p - delta;
        if (!(gamma >= 0.0 && gamma < 1.0)) continue;
        const auto f = power_test_function(gamma, opts.eps, opts.piece_ratio);
        const auto lower = apply_lower(op, f);
        const double ratio = lp_norm(lower, p) / lp_norm(f, p);
        if (ratio > best.value) best = {ratio, delta};
    }
    return best;
}

Report yano_endpoint_check(const OperatorSpec& op, const StepFn& f, YanoForm form, const YanoCheckOptions& opts) {
    Report r;
    r.check = form == YanoForm::Ex5 ? "yano_ex5" : form == YanoForm::Anunzia ? "yano_anunzia" : "yano_becomes1";
    r.bound = opts.bound;
    if (f.is_zero()) return r;
    const double L = f.domain_length();
    const auto kt = k_curve(apply(op, f));
    const auto kf = k_curve(f);
    auto grid = num::decade_grid(L * opts.t_lo_factor, L, opts.per_decade);
    grid.insert(grid.end(), f.ends().begin(), f.ends().end());
    double worst = 0.0;
    double worst_t = 0.0;
    for (double t : grid) {
        double lhs = kt(t) / t;
        double rhs = 0.0;
        switch (form) {
            case YanoForm::Ex5: rhs = k_head_integral(kf, t) / t; break;
            case YanoForm::Anunzia: {
                const double et = std::numbers::e * t;
                rhs = std::log(2.0 / t) * kf(et) / et;
                break;
            }
            case YanoForm::Becomes1:
                lhs = kt(t);
                rhs = becomes_form(kf, t);
                break;
        }
        if (!(rhs > 0.0)) {
            if (lhs > 0.0 && form != YanoForm::Anunzia) worst = kInf;
            continue;
        }
        if (lhs / rhs > worst) {
            worst = lhs / rhs;
            worst_t = t;
        }
    }
    r.measured = worst;
    r.set("worst_t", worst_t);
    r.pass = worst <= opts.bound;
    return r;
}

bool rearrangement_majorization(const StepFn& f, const StepFn& g, double rel_tol) {
    const auto kf = k_curve(f);
    const auto kg = k_curve(g);
    std::vector<double> pts(kf.breakpoints().begin(), kf.breakpoints().end());
    pts.insert(pts.end(), kg.breakpoints().begin(), kg.breakpoints().end());
    for (double t : pts)
        if (kg(t) > kf(t) * (1.0 + rel_tol)) return false;
    return true;
}

std::vector<LogGainRow> log_gain_quantities(const StepFn& f, const StepFn& g, std::span<const double> t_grid) {
    const auto fs = decreasing_rearrangement(f);
    const auto gs = decreasing_rearrangement(g);
    // ∫_0^t h log^k(t/s) ds for k = 1, 2 using s(ℓ + 1) and s(ℓ² + 2ℓ + 2) with ℓ = log(t/s).
    auto weighted = [](const StepFn& h, double t, int k) {
        auto anti = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double l = std::log(t / s);
            return k == 1 ? s * (l + 1.0) : s * (l * l + 2.0 * l + 2.0);
        };
        double total = 0.0;
        double lo = 0.0;
        const auto ends = h.ends();
        for (std::size_t i = 0; i < h.size() && lo < t; ++i) {
            const double hi = std::min(ends[i], t);
            total += h.pieces()[i].value * (anti(hi) - anti(lo));
            lo = ends[i];
        }
        return total;
    };
    std::vector<LogGainRow> rows;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw DomainError("log-gain grid must be positive");
        rows.push_back({t, k_functional(t, gs), weighted(fs, t, 1), weighted(gs, t, 1), weighted(fs, t, 2)});
    }
    return rows;
}

}  // namespace extrap
