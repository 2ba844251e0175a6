#pragma once

#include <span>
#include <vector>

#include "extrap/report.hpp"
#include "extrap/stepfn.hpp"

namespace extrap {

/// Piecewise A(log t) + B(log t)/t on (0, ∞) with polynomial A, B. This class is
/// closed under the Hardy operator and its dual, so images of step functions
/// and their compositions are exact.
class LogPolyFn {
public:
    struct Piece {
        double lo;  ///< open left end
        double hi;  ///< closed right end, may be +∞
        std::vector<double> a;  ///< coefficients of A in powers of log t
        std::vector<double> b;  ///< coefficients of B in powers of log t

        double operator()(double t) const;
    };

    explicit LogPolyFn(std::vector<Piece> pieces);
    /// f on (0, L] and 0 beyond.
    static LogPolyFn from_step(const StepFn& f);

    double operator()(double t) const;
    std::span<const Piece> pieces() const noexcept { return pieces_; }
    /// Right ends of all pieces except the last.
    std::vector<double> breakpoints() const;
    /// True when the first piece stays bounded as t → 0+.
    bool bounded_at_zero() const;

    friend LogPolyFn operator+(const LogPolyFn& f, const LogPolyFn& g);
    friend LogPolyFn operator-(const LogPolyFn& f, const LogPolyFn& g);

private:
    std::vector<Piece> pieces_;
};

/// Pg(t) = (1/t) ∫_0^t g. Throws RefinementError when the integral diverges at 0.
LogPolyFn hardy(const LogPolyFn& g);
/// Qg(t) = ∫_t^∞ g(s) ds/s. Throws RefinementError when the integral diverges at ∞.
LogPolyFn dual_hardy(const LogPolyFn& g);

struct OperatorSpec {
    enum class Kind { Identity, Hardy, DualHardy, Calderon, Diagonal };

    Kind kind = Kind::Hardy;
    /// Diagonal multiplier applied piecewise; the last entry repeats.
    std::vector<double> multipliers;
    /// Subintervals per input piece when re-discretizing.
    int resolution = 8;

    static OperatorSpec hardy(int resolution = 8) { return {Kind::Hardy, {}, resolution}; }
    static OperatorSpec dual_hardy(int resolution = 8) { return {Kind::DualHardy, {}, resolution}; }
    static OperatorSpec calderon(int resolution = 8) { return {Kind::Calderon, {}, resolution}; }
    static OperatorSpec identity() { return {Kind::Identity, {}, 2}; }
    static OperatorSpec diagonal(std::vector<double> m) { return {Kind::Diagonal, std::move(m), 2}; }
};

/// Exact analytic image of f under the operator.
LogPolyFn image(const OperatorSpec& op, const StepFn& f);

/// Upper step approximation of op(f) on (0, L]: the max over each of
/// `resolution` subintervals per input piece. Throws RefinementError when the
/// image is unbounded on (0, L] or the resolution is below 2.
StepFn apply(const OperatorSpec& op, const StepFn& f);
/// Same grid with the per-interval min, a lower step approximation.
StepFn apply_lower(const OperatorSpec& op, const StepFn& f);

/// Max of |g − h| over breakpoints of both and `per_piece` log-spaced samples in
/// each piece of (t_lo, t_hi].
double sup_abs_difference(const LogPolyFn& g, const LogPolyFn& h, double t_lo, double t_hi, int per_piece = 16);

struct NormSweepOptions {
    double eps = 1e-300;              ///< innermost breakpoint of the test functions
    double piece_ratio = 1.05;        ///< geometric ratio between test-function breakpoints
    std::vector<double> deltas{0.001, 0.002, 0.004, 0.008, 0.016, 0.032, 0.064, 0.128};
};

struct NormLowerBound {
    double value = 0.0;
    double delta = 0.0;  ///< best exponent offset in t^{-1/p+δ}
};

/// Certified lower bound on the L^p(0, 1) norm of op from the family
/// t^{-1/p+δ} stepped by exact piece averages.
NormLowerBound operator_norm_lower(const OperatorSpec& op, double p, const NormSweepOptions& opts = {});

enum class YanoForm { Ex5, Anunzia, Becomes1 };

struct YanoCheckOptions {
    double t_lo_factor = 1e-9;  ///< grid starts at t_lo_factor·L
    int per_decade = 16;
    double bound = 4.0;
};

/// Minimal C in the chosen endpoint inequality for op(f) on a t-grid:
///   Ex5:      (Tf)**(t) ≤ (C/t) ∫_0^t f**
///   Anunzia:  (Tf)**(t) ≤ C log(2/t) f**(e t)
///   Becomes1: t (Tf)**(t) ≤ C (∫_0^t f** + t ∫_t^∞ f**(s) ds/s)
Report yano_endpoint_check(const OperatorSpec& op, const StepFn& f, YanoForm form,
                           const YanoCheckOptions& opts = {});

/// ∫_0^t g* ≤ ∫_0^t f* for all t (checked on the breakpoints of both).
bool rearrangement_majorization(const StepFn& f, const StepFn& g, double rel_tol = 1e-12);

struct LogGainRow {
    double t;
    double a0;  ///< ∫_0^t g*
    double a1;  ///< ∫_0^t f* log(t/s) ds
    double a2;  ///< ∫_0^t g* log(t/s) ds
    double a3;  ///< ∫_0^t f* log²(t/s) ds
};

std::vector<LogGainRow> log_gain_quantities(const StepFn& f, const StepFn& g, std::span<const double> t_grid);

}  // namespace extrap
