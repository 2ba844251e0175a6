#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace extrap::num {

using ScalarFn = std::function<double(double)>;

/// n points, geometric from lo to hi inclusive (n ≥ 2).
std::vector<double> log_grid(double lo, double hi, int n);

/// Geometric grid from lo to hi inclusive with the given density per decade.
std::vector<double> decade_grid(double lo, double hi, int per_decade);

/// Parameter grid on (1, p_hi]: geometric in p − 1 from gap_min up to 1 and
/// geometric in p from 2 up to p_hi. Strictly increasing.
std::vector<double> p_grid(double p_hi, int per_decade, double gap_min = 1e-6);

struct Extremum {
    double x;
    double value;
};

/// Golden-section search for the minimum of a unimodal fn on [a, b]; stops when
/// the bracket is below tol. Infinite values at the endpoints are allowed.
Extremum golden_min(const ScalarFn& fn, double a, double b, double tol = 1e-12);
Extremum golden_max(const ScalarFn& fn, double a, double b, double tol = 1e-12);

/// Max over [lo, hi]: samples n points (geometric when log_scale and lo > 0),
/// then refines around the best sample by golden-section search.
Extremum scan_max(const ScalarFn& fn, double lo, double hi, int n, bool log_scale);

/// Adaptive Gauss–Kronrod on [a, b]; b may be +∞. Throws RefinementError when
/// the error estimate exceeds max(abs_tol, rel_tol·|I|).
double integrate(const ScalarFn& fn, double a, double b, double abs_tol = 1e-10, double rel_tol = 1e-12);

/// Tanh-sinh quadrature on [a, b] for integrable endpoint singularities.
double integrate_singular(const ScalarFn& fn, double a, double b, double rel_tol = 1e-12);

/// Fixed n-point Gauss–Legendre on [a, b] (n ∈ {7, 15, 20, 30}).
double gauss_legendre(const ScalarFn& fn, double a, double b, int n = 20);

}  // namespace extrap::num
