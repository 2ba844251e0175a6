#include "extrap/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "extrap/error.hpp"

namespace extrap {

namespace {

void validate_pieces(std::span<const Piece> pieces) {
    if (pieces.empty()) throw ValidationError("step function needs at least one piece");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& [len, val] = pieces[i];
        if (!std::isfinite(len) || len <= 0.0)
            throw ValidationError("piece " + std::to_string(i) + ": length must be positive and finite");
        if (!std::isfinite(val) || val < 0.0)
            throw ValidationError("piece " + std::to_string(i) + ": value must be finite and nonnegative");
    }
}

double sum_lengths(std::span<const Piece> pieces) {
    validate_pieces(pieces);
    double s = 0.0;
    for (const auto& p : pieces) s += p.length;
    return s;
}

}  // namespace

StepFn::StepFn(double domain_length, std::vector<Piece> pieces)
    : length_(domain_length), pieces_(std::move(pieces)) {
    if (!std::isfinite(length_) || length_ <= 0.0)
        throw ValidationError("domain length must be positive and finite");
    validate_pieces(pieces_);
    ends_.reserve(pieces_.size());
    double acc = 0.0;
    for (const auto& p : pieces_) {
        acc += p.length;
        ends_.push_back(acc);
    }
    if (std::abs(acc - length_) > 1e-12 * length_)
        throw ValidationError("piece lengths sum to " + std::to_string(acc) + ", expected " +
                              std::to_string(length_));
    ends_.back() = length_;
    decreasing_ = std::is_sorted(pieces_.begin(), pieces_.end(),
                                 [](const Piece& a, const Piece& b) { return a.value > b.value; });
}

StepFn::StepFn(std::vector<Piece> pieces) : StepFn(sum_lengths(pieces), pieces) {}

StepFn StepFn::constant(double domain_length, double value) {
    return StepFn(domain_length, {{domain_length, value}});
}

StepFn StepFn::indicator(double a, double domain_length) {
    if (!(a > 0.0) || a > domain_length) throw DomainError("indicator support must lie in (0, L]");
    if (a == domain_length) return constant(domain_length, 1.0);
    return StepFn(domain_length, {{a, 1.0}, {domain_length - a, 0.0}});
}

bool StepFn::is_zero() const noexcept {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.value == 0.0; });
}

double StepFn::value_at(double t) const {
    if (t <= 0.0) throw DomainError("value_at requires t > 0");
    if (t > length_) return 0.0;
    if (t == length_) return pieces_.back().value;
    // First end strictly greater than t: right-continuous at breakpoints.
    const auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
    return pieces_[static_cast<std::size_t>(it - ends_.begin())].value;
}

double StepFn::integral() const noexcept {
    double s = 0.0;
    for (const auto& p : pieces_) s += p.length * p.value;
    return s;
}

double StepFn::sup() const noexcept {
    double m = 0.0;
    for (const auto& p : pieces_) m = std::max(m, p.value);
    return m;
}

StepFn StepFn::scaled(double factor) const {
    if (!std::isfinite(factor) || factor < 0.0) throw ParameterError("scale factor must be finite and nonnegative");
    auto out = pieces_;
    for (auto& p : out) p.value *= factor;
    return StepFn(length_, std::move(out));
}

KCurve::KCurve(std::vector<double> t, std::vector<double> k, std::vector<double> slopes)
    : t_(std::move(t)), k_(std::move(k)), slopes_(std::move(slopes)) {
    if (t_.empty() || t_.size() != k_.size() || slopes_.size() + 1 != t_.size())
        throw ValidationError("K-curve needs n+1 breakpoints and n slopes");
    if (t_.front() != 0.0 || k_.front() != 0.0) throw ValidationError("K-curve must start at (0, 0)");
}

double KCurve::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= t_.back()) return k_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const auto i = static_cast<std::size_t>(it - t_.begin()) - 1;
    return k_[i] + slopes_[i] * (t - t_[i]);
}

StepFn decreasing_rearrangement(const StepFn& f) {
    std::vector<Piece> sorted(f.pieces().begin(), f.pieces().end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const Piece& a, const Piece& b) { return a.value > b.value; });
    std::vector<Piece> merged;
    merged.reserve(sorted.size());
    for (const auto& p : sorted) {
        if (!merged.empty() && merged.back().value == p.value)
            merged.back().length += p.length;
        else
            merged.push_back(p);
    }
    return StepFn(f.domain_length(), std::move(merged));
}

KCurve k_curve(const StepFn& f) {
    const StepFn fs = f.is_decreasing() ? f : decreasing_rearrangement(f);
    std::vector<double> t{0.0};
    std::vector<double> k{0.0};
    std::vector<double> slopes;
    const auto ends = fs.ends();
    const auto pieces = fs.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        t.push_back(ends[i]);
        k.push_back(k.back() + pieces[i].length * pieces[i].value);
        slopes.push_back(pieces[i].value);
    }
    return KCurve(std::move(t), std::move(k), std::move(slopes));
}

double k_functional(double t, const StepFn& f) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("K-functional requires t >= 0");
    return k_curve(f)(t);
}

double double_star(const StepFn& f, double t) {
    if (!(t > 0.0) || t > f.domain_length()) throw DomainError("f** requires 0 < t <= L");
    return k_curve(f)(t) / t;
}

double j_functional(double s, const StepFn& f) {
    if (!(s > 0.0)) throw DomainError("J-functional requires s > 0");
    return std::max(f.integral(), s * f.sup());
}

std::vector<Slice> truncation_slices(const StepFn& f, double base) {
    if (!(base > 1.0) || !std::isfinite(base)) throw ParameterError("truncation base must exceed 1");
    std::vector<Slice> out;
    if (f.is_zero()) return out;

    const StepFn fs = decreasing_rearrangement(f);
    const double L = f.domain_length();
    double min_len = L;
    for (const auto& p : f.pieces()) min_len = std::min(min_len, p.length);

    const double lb = std::log(base);
    int n_top = static_cast<int>(std::floor(std::log(min_len) / lb));
    while (std::pow(base, n_top) >= min_len) --n_top;
    int n_last = static_cast<int>(std::ceil(std::log(L) / lb));
    while (std::pow(base, n_last) < L) ++n_last;
    while (std::pow(base, n_last - 1) >= L) --n_last;

    auto level = [&](int n) {
        const double x = std::pow(base, n);
        return x >= L ? 0.0 : fs.value_at(x);
    };

    double upper = level(n_top);  // equals sup f since base^{n_top} < min piece length
    for (int n = n_top + 1; n <= n_last; ++n) {
        const double lower = level(n);
        if (lower == upper) continue;
        std::vector<Piece> layer;
        layer.reserve(f.size());
        for (const auto& p : f.pieces())
            layer.push_back({p.length, std::min(p.value, upper) - std::min(p.value, lower)});
        out.push_back({n, std::pow(base, n), StepFn(L, std::move(layer))});
        upper = lower;
    }
    return out;
}

double slice_j_sum(std::span<const Slice> slices, double t) {
    double s = 0.0;
    for (const auto& sl : slices) s += std::min(1.0, t / sl.scale) * j_functional(sl.scale, sl.part);
    return s;
}

}  // namespace extrap
