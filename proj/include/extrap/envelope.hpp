#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "extrap/stepfn.hpp"
#include "extrap/weights.hpp"

namespace extrap {

struct Atom {
    double location;
    double mass;
};

struct DensityNode {
    double r;
    double w;
};

/// μ in τ(t) = α + βt + ∫ min(1, t/r) dμ(r). The density is piecewise linear
/// between consecutive nodes (a repeated r encodes a jump) and vanishes outside
/// [first node, last node].
struct Measure {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<Atom> atoms;
    std::vector<DensityNode> density;

    static Measure dirac(double location = 1.0, double mass = 1.0);
    /// Constant density `height` on (0, 1/e).
    static Measure yano(double height);
    static Measure zero() { return {}; }

    double atom_mass() const;
    double density_mass() const;
    /// Piecewise-linear density value at r.
    double density_at(double r) const;
};

struct ConcavityCheck {
    double worst_second_difference = 0.0;  ///< max positive jump of secant slopes (relative)
    double worst_ratio_increase = 0.0;     ///< max relative increase of τ(t)/t
    double worst_decrease = 0.0;           ///< max relative decrease of τ
    bool ok = true;
};

/// Concave τ on (0, ∞), tabulated on a log grid with an optional closed form.
class Envelope {
public:
    Envelope(std::vector<double> t, std::vector<double> tau, std::string tag = {},
             std::function<double(double)> exact = {});

    static Envelope from_function(const std::function<double(double)>& tau, std::span<const double> grid,
                                  std::string tag);

    std::span<const double> t() const noexcept { return t_; }
    std::span<const double> values() const noexcept { return tau_; }
    const std::string& tag() const noexcept { return tag_; }
    bool has_closed_form() const noexcept { return static_cast<bool>(exact_); }

    /// Closed form when available; otherwise linear interpolation on the grid
    /// and extension by the end secants.
    double operator()(double x) const;
    Envelope scaled(double c) const;

    /// Minimizing θ per grid node when produced by concave_envelope.
    std::vector<double> argmin_theta;

private:
    std::vector<double> t_;
    std::vector<double> tau_;
    std::string tag_;
    std::function<double(double)> exact_;
};

namespace closed_form {
double unit(double t);      ///< min(1, t)
double yano(double t);      ///< e t log(1/t) on (0, 1/e), 1 beyond
double adequate(double t);  ///< 2t + t log(1/t) for t ≤ 1, 2 + log t beyond
}  // namespace closed_form

/// τ(t) = inf_{θ∈(0,1)} M(θ) t^θ on each grid node.
Envelope concave_envelope(const WeightSpec& weight, std::span<const double> t_grid);

ConcavityCheck check_concavity(const Envelope& env, double tol = 1e-9);

struct MeasureOptions {
    double jump_tol = 1e-6;         ///< slope jump that marks an atom
    double richardson_guard = 0.05; ///< max relative change accepted from extrapolation
};

/// μ with density −rτ″(r); atoms at slope discontinuities. Requires a
/// log-uniform grid. Throws ValidationError on non-concave input.
Measure representing_measure(const Envelope& env, const MeasureOptions& opts = {});

/// α + βt + ∫ min(1, t/r) dμ(r).
double reconstruct(const Measure& mu, double t);

struct Residual {
    double max_abs = 0.0;
    double max_rel = 0.0;
    double worst_t = 0.0;
};

/// Reconstruction residual of μ against τ on τ's grid.
Residual reconstruction_residual(const Envelope& env, const Measure& mu);

/// α‖f‖₁ + βt‖f‖_∞ + Σ m K(t/r, f) + ∫ K(t/r, f) w(r) dr, exact for piecewise-linear densities.
double calderon_transform(const KCurve& k, const Measure& mu, double t);
double calderon_transform(const StepFn& f, const Measure& mu, double t);

/// ∫_0^∞ min(1, x/n) min(1, n) dn/n = 2x + x log(1/x) (x ≤ 1), 2 + log x (x > 1).
double adequate_kernel(double x);

/// Max residual of ∫ H(t/r) dν(r) against τ on τ's grid (atoms and density of ν).
Residual adequate_decompose_check(const Envelope& tau, const Measure& nu);

struct SingleAtomFit {
    double location = 0.0;
    double mass = 0.0;
    double max_rel = 0.0;
};

/// Best ν = c δ_r over a grid of r, minimizing the max relative residual.
SingleAtomFit best_single_atom(const Envelope& tau, std::span<const double> r_grid);

}  // namespace extrap
