#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "extrap/envelope.hpp"
#include "extrap/report.hpp"
#include "extrap/stepfn.hpp"

namespace extrap {

/// Continuous piecewise-linear function on [0, ∞) through (x_i, y_i) with x_0 = 0,
/// constant beyond the last node.
class PiecewiseLinear {
public:
    PiecewiseLinear(std::vector<double> x, std::vector<double> y);
    static PiecewiseLinear from(const KCurve& k);

    double operator()(double x) const;
    std::span<const double> x() const noexcept { return x_; }
    std::span<const double> y() const noexcept { return y_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

/// ∫_{u_lo}^{u_hi} F(t/u) G(u) du/u, exact on the common refinement. Returns +∞
/// when the integral diverges (F(0) > 0 or G(0) > 0 on an unbounded range).
double mult_convolution(const PiecewiseLinear& F, const PiecewiseLinear& G, double t, double u_lo = 0.0,
                        double u_hi = std::numeric_limits<double>::infinity());

/// ∫∫ K(t/u, f) K(u/r, g) du/u dν(r) = ∫ (K_f ◆ K_g)(t/r) dν(r). Atoms exact,
/// density by Gauss–Legendre per segment; α and β of ν do not enter.
double bilinear_calderon(const StepFn& f, const StepFn& g, double t, const Measure& nu = Measure::dirac());

/// The model bilinear map: pointwise product of the decreasing rearrangements.
StepFn product_model(const StepFn& f, const StepFn& g);

struct KjGrid {
    double lo = 1e-3;
    double hi = 1e3;
    int points = 13;
};

/// Minimal c with K(t, f*g*) ≤ c τ(t/(sh)) J(s, f) J(h, g) over a (t, s, h) grid.
Report bilinear_kj_check(const StepFn& f, const StepFn& g, const Envelope& tau, const KjGrid& grid = {});

/// sup_{0<t<1} K(t) / (t (1 + log(1/t))).
double exp_pair_norm(const KCurve& k);
double exp_pair_norm(const std::function<double(double)>& k);

struct LagbiOptions {
    double t_lo = 1e-8;
    int per_decade = 8;
    double bound = 8.0;
};

/// Endpoint bounds of the bilinear Calderón transform with ν = δ₁:
///   (i)  value at t = 1 against ∫_0^1 K(s,f) ds/s · ∫_0^1 K(s,g) ds/s
///   (ii) exp_pair_norm against ‖f‖_∞ ‖g‖_∞ (measured = c of (ii))
/// plus the split over u ∈ (0,t), (t,1), (1,∞) against
///   t ‖f‖₁ ‖g‖_∞,  t log(1/t) ‖f‖_∞ ‖g‖_∞,  t ‖f‖_∞ ‖g‖₁.
Report lagbi_bounds(const StepFn& f, const StepFn& g, const LagbiOptions& opts = {});

}  // namespace extrap
