#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace extrap {

struct Piece {
    double length;
    double value;

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Nonnegative piecewise-constant function on (0, L]. Piece i occupies
/// (b_{i-1}, b_i] with b_0 = 0. Immutable after construction.
class StepFn {
public:
    /// Throws ValidationError unless lengths are positive, values finite and
    /// nonnegative, and the lengths sum to L within 1e-12·L.
    StepFn(double domain_length, std::vector<Piece> pieces);
    /// Domain length is the sum of the piece lengths.
    explicit StepFn(std::vector<Piece> pieces);

    static StepFn constant(double domain_length, double value);
    /// χ on (0, a] inside (0, L].
    static StepFn indicator(double a, double domain_length = 1.0);

    double domain_length() const noexcept { return length_; }
    std::span<const Piece> pieces() const noexcept { return pieces_; }
    std::size_t size() const noexcept { return pieces_.size(); }
    /// Right endpoints b_1, ..., b_n; the last one equals L exactly.
    std::span<const double> ends() const noexcept { return ends_; }

    bool is_decreasing() const noexcept { return decreasing_; }
    bool is_zero() const noexcept;

    /// Right-continuous at interior breakpoints, last value at t = L, 0 beyond L.
    double value_at(double t) const;
    double integral() const noexcept;
    double sup() const noexcept;

    StepFn scaled(double factor) const;

    friend bool operator==(const StepFn& a, const StepFn& b) {
        return a.length_ == b.length_ && a.pieces_ == b.pieces_;
    }

private:
    double length_;
    std::vector<Piece> pieces_;
    std::vector<double> ends_;
    bool decreasing_ = false;
};

/// Piecewise-linear concave K(t) = ∫_0^t f* on [0, L], saturating beyond L.
class KCurve {
public:
    /// Breakpoints t_0 = 0 < t_1 < ... with K(0) = 0 and segment slopes.
    KCurve(std::vector<double> t, std::vector<double> k, std::vector<double> slopes);

    double operator()(double t) const;
    double total() const noexcept { return k_.back(); }
    double domain_length() const noexcept { return t_.back(); }
    /// Slope at 0+, i.e. f*(0+) = ‖f‖_∞.
    double initial_slope() const noexcept { return slopes_.empty() ? 0.0 : slopes_.front(); }

    std::span<const double> breakpoints() const noexcept { return t_; }
    std::span<const double> values() const noexcept { return k_; }
    /// slopes()[i] is the slope on [t_i, t_{i+1}].
    std::span<const double> slopes() const noexcept { return slopes_; }

private:
    std::vector<double> t_;
    std::vector<double> k_;
    std::vector<double> slopes_;
};

StepFn decreasing_rearrangement(const StepFn& f);

KCurve k_curve(const StepFn& f);

/// K(t, f; L¹, L^∞) = ∫_0^{min(t,L)} f*. Throws DomainError for t < 0.
double k_functional(double t, const StepFn& f);

/// f**(t) for 0 < t ≤ L.
double double_star(const StepFn& f, double t);

/// max(‖f‖₁, s‖f‖_∞) for s > 0.
double j_functional(double s, const StepFn& f);

struct Slice {
    int exponent;   ///< n, the slice is charged at scale base^n
    double scale;   ///< base^n
    StepFn part;    ///< u_n = T_{λ_{n-1}} f − T_{λ_n} f with λ_n = f*(base^n)
};

/// Horizontal layers of f cut at the levels λ_n = f*(base^n). The layers sum to
/// f and each one satisfies J(base^n, u_n) ≤ base^n (λ_{n-1} − λ_n). Layers
/// that vanish identically are dropped; f = 0 yields no slices.
std::vector<Slice> truncation_slices(const StepFn& f, double base);

/// Σ_n min(1, t/base^n) J(base^n, u_n) for a slice sequence.
double slice_j_sum(std::span<const Slice> slices, double t);

}  // namespace extrap
