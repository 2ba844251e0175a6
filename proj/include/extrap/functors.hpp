#pragma once

#include <optional>
#include <vector>

#include "extrap/envelope.hpp"
#include "extrap/norms.hpp"
#include "extrap/report.hpp"
#include "extrap/stepfn.hpp"
#include "extrap/weights.hpp"

namespace extrap {

/// A weighted scale {w(p) X_p} sampled on a p-grid.
struct ScaleSpec {
    enum class Kind { Lp, LorentzP1, LorentzPInf };

    Kind kind = Kind::Lp;
    WeightSpec weight = WeightSpec::constant();
    /// Strictly increasing; may end with +∞ for the Lp kind.
    std::vector<double> grid;

    /// Grid geometric in p − 1 near 1 and in p up to p_max.
    static ScaleSpec make(Kind kind, WeightSpec weight, double p_max = 1024.0, int per_decade = kDefaultPerDecade,
                          bool include_infinity = false);

    double space_norm(const StepFn& f, double p) const;
};

struct DeltaResult {
    double value = 0.0;
    double argmax_p = 0.0;
};

/// sup over the grid of w(p) ‖f‖_{X_p}.
DeltaResult delta_functor_norm(const StepFn& f, const ScaleSpec& spec);

/// ∫_0^1 f**(s) log^{α−1}(1/s) ds, closed form per K segment. Requires L = 1.
double sigma_llogl_norm(const StepFn& f, double alpha);

/// Lattice norm F applied to ξ_f(p) = ‖f‖_p.
struct LatticeParamSpec {
    enum class Kind { Sup, Lq };
    enum class Measure { Dp, DpOverP };

    Kind kind = Kind::Sup;
    WeightSpec weight = WeightSpec::constant();
    double q = 1.0;
    Measure measure = Measure::Dp;
    double p_max = 1024.0;
    int per_decade = kDefaultPerDecade;
    bool include_infinity = true;
};

double f_functor_norm(const StepFn& f, const LatticeParamSpec& spec);

/// (∫_0^1 (w(s) K(s, f))^q ds/s)^{1/q}; q = ∞ gives the sup over (0, 1).
double limiting_norm(const StepFn& f, const ScalarWeight& w, double q);

/// ∫_x^∞ K(u) du/u², exact.
double k_tail_integral(const KCurve& k, double x);
/// ∫_0^x K(s) ds/s, exact.
double k_head_integral(const KCurve& k, double x);
/// ∫_0^t K ds/s + t ∫_t^∞ K ds/s².
double becomes_form(const KCurve& k, double t);

struct ScaleKOptions {
    double t_lo = 1e-4;
    double t_hi = 1e4;
    int points = 2049;
    MeasureOptions measure;
};

/// K-functional of a weighted scale realized through τ(t) = inf_θ M(θ) t^θ and
/// its representing measure. Build once, evaluate at many (t, f).
class ScaleKFunctional {
public:
    explicit ScaleKFunctional(const WeightSpec& weight, const ScaleKOptions& opts = {});

    double operator()(double t, const StepFn& f) const;
    double operator()(double t, const KCurve& k) const;

    const Envelope& envelope() const noexcept { return envelope_; }
    const Measure& measure() const noexcept { return measure_; }

private:
    Envelope envelope_;
    Measure measure_;
};

double scale_k_functional(double t, const StepFn& f, const WeightSpec& weight);

struct MarcinkiewiczOptions {
    double t_lo = 1e-12;
    int per_decade = 16;
    double p_max = 1024.0;
    int p_per_decade = 32;
    double bound = 1e3;
};

/// log ‖φ̃′‖_{L^p(0,1)}; +∞ when the integral diverges.
double log_tilde_derivative_norm(const QuasiConcaveFn& phi, double p);

/// Minimal C in φ(t) ≤ C sup_{p≥1} t^{1/p} / ‖φ̃′‖_p on a t-grid. Flags
/// "tilde_not_vanishing" when φ̃(0+) ≠ 0 and "no_finite_p" when no ‖φ̃′‖_p is finite.
Report marcinkiewicz_extrap_check(const QuasiConcaveFn& phi, const MarcinkiewiczOptions& opts = {});

struct DilationOptions {
    double t_lo = 1e-12;
    int per_decade = 16;
    double bound = 16.0;
    double growth_tol = 0.05;  ///< relative growth of the ratio over the last decades that counts as divergence
};

/// φ(t)/φ(t²) on (0, 1): bounded and not growing toward 0.
Report strong_extrap_check(const QuasiConcaveFn& phi, const DilationOptions& opts = {});

/// M(2θ)/M(θ) near 0 and M(1−2η)/M(1−η) near 1 stay within [1/bound, bound] without drifting.
Report tempered_check(const WeightSpec& weight, const DilationOptions& opts = {});

}  // namespace extrap
