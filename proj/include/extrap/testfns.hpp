#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extrap/stepfn.hpp"

namespace extrap::gen {

/// χ on (0, a] inside (0, L].
StepFn indicator(double a, double domain_length = 1.0);

/// Step version of t^{-a} on (0, 1]: n pieces on a log grid from t_min to 1 plus
/// the head piece (0, t_min]; each piece carries the value at its right end.
StepFn power(double a, int n, double t_min = 1e-12);

/// Step version of log^β(e/t) on (0, 1], same layout as power().
StepFn log_power(double beta, int n, double t_min = 1e-100);

/// Largest jump of the sampled profile between neighbouring nodes; bounds the
/// sup distance to the analytic profile on [t_min, 1].
double log_power_modulus(double beta, int n, double t_min = 1e-100);

/// Σ_i c_i χ(0, a_i].
StepFn indicator_mixture(const std::vector<double>& heights, const std::vector<double>& ends);

/// Random step function on (0, 1] with dyadic breakpoints k/2^20 and dyadic
/// values j/2^10 (j < 2^14); about one value in eight is zero. Deterministic in seed.
StepFn random(std::uint64_t seed, int max_pieces = 64);

/// count functions drawn from consecutive seeds.
std::vector<StepFn> random_suite(std::uint64_t seed, int count, int max_pieces = 64);

/// Builds a StepFn from a family name and parameters; throws UsageError on unknown names.
/// Families: indicator (a), power (a), logpow (beta), random (seed).
StepFn family(const std::string& name, double param, int n_pieces, std::uint64_t seed = 0);

}  // namespace extrap::gen
