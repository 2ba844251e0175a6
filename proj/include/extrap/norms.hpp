#pragma once

#include "extrap/stepfn.hpp"
#include "extrap/weights.hpp"

namespace extrap {

/// Density of the geometric sup grids (points per decade).
inline constexpr int kDefaultPerDecade = 64;

/// (Σ len·val^p)^{1/p}; p = ∞ gives the max value.
double lp_norm(const StepFn& f, double p);

/// (1/(pp′)) ∫_0^L f**(s) s^{1/p} ds/s, exact.
double lorentz_p1_norm(const StepFn& f, double p);
/// sup_{0<s≤L} f**(s) s^{1/p}, exact.
double lorentz_pinf_norm(const StepFn& f, double p);

/// ∫_0^1 f*(t) log^α(e/t) dt. Requires L = 1.
double llogl_alpha_norm(const StepFn& f, double alpha);
/// sup_{0<t≤1} f*(t) / log^α(e/t). Requires L = 1.
double exp_l_alpha_norm(const StepFn& f, double alpha);

/// sup_{0<s≤L} φ(s) f**(s). Requires L ≤ 1.
double marcinkiewicz_norm(const StepFn& f, const QuasiConcaveFn& phi, int per_decade = kDefaultPerDecade);
/// (∫ (f*)^p dφ)^{1/p} as an exact Stieltjes sum. Requires L ≤ 1.
double lambda_p_norm(const StepFn& f, const QuasiConcaveFn& phi, double p);
/// sup_{0<t≤L} (f**(t) − f*(t)).
double linf_inf_norm(const StepFn& f);

/// sup_{0<ε<p−1} ε^{α/(p−ε)} ‖f‖_{p−ε}. Requires L = 1.
double grand_lebesgue_norm(const StepFn& f, double p, double alpha, int per_decade = kDefaultPerDecade);
/// sup_{0<t<1} log^{−α/p}(e/t) (∫_t^1 (f*)^p)^{1/p}. Requires L = 1.
double grand_lebesgue_fk_norm(const StepFn& f, double p, double alpha, int per_decade = kDefaultPerDecade);
/// sup_{0<ε<p−1} ψ(ε) ‖f‖_{p−ε}. Requires L = 1.
double grand_lebesgue_psi_norm(const StepFn& f, double p, const ScalarWeight& psi,
                               int per_decade = kDefaultPerDecade);
/// sup_{0<t<1} ψ((p−1)/(1−log t)) (∫_t^1 (f*)^p)^{1/p}. Requires L = 1.
double grand_lebesgue_psi_fk_norm(const StepFn& f, double p, const ScalarWeight& psi,
                                  int per_decade = kDefaultPerDecade);

/// ψ_α(t) = t log^α(b/t) logloglog(b/t), b > e^e.
double psi_alpha(double t, double alpha, double b);
/// ∫ f* dψ_α as an exact Stieltjes sum. Requires L ≤ 1.
double lambda_psi_alpha_norm(const StepFn& f, double alpha, double b);

}  // namespace extrap
