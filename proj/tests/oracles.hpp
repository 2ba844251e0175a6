#pragma once

// Slow, independent reference computations. Nothing here calls the library's
// own evaluation paths beyond reading raw piece data.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "extrap/stepfn.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

/// f(t) by walking the raw pieces (right-continuous, last value at L).
inline double value(const extrap::StepFn& f, double t) {
    double end = 0.0;
    const auto pieces = f.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        end += pieces[i].length;
        if (t < end || i + 1 == pieces.size()) return t <= f.domain_length() ? pieces[i].value : 0.0;
    }
    return 0.0;
}

/// meas{f > λ}.
inline double distribution(const extrap::StepFn& f, double lambda) {
    double m = 0.0;
    for (const auto& p : f.pieces())
        if (p.value > lambda) m += p.length;
    return m;
}

/// f*(t) = inf{λ : meas{f > λ} ≤ t} over the finitely many candidate levels.
inline double rearranged(const extrap::StepFn& f, double t) {
    std::vector<double> levels{0.0};
    for (const auto& p : f.pieces()) levels.push_back(p.value);
    std::sort(levels.begin(), levels.end());
    for (double lambda : levels)
        if (distribution(f, lambda) <= t) return lambda;
    return levels.back();
}

inline double midpoint(const Fn& fn, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += fn(a + (i + 0.5) * h);
    return s * h;
}

inline double simpson(const Fn& fn, double a, double b, double tol, int depth = 40) {
    const auto rule = [&](double x, double y) { return (y - x) / 6.0 * (fn(x) + 4.0 * fn(0.5 * (x + y)) + fn(y)); };
    std::function<double(double, double, double, double, int)> rec = [&](double x, double y, double whole, double eps,
                                                                          int d) {
        const double m = 0.5 * (x + y);
        const double l = rule(x, m);
        const double r = rule(m, y);
        if (d <= 0 || std::abs(l + r - whole) <= 15.0 * eps) return l + r + (l + r - whole) / 15.0;
        return rec(x, m, l, eps / 2, d - 1) + rec(m, y, r, eps / 2, d - 1);
    };
    return rec(a, b, rule(a, b), tol, depth);
}

/// Exact ∫_0^t f* by summing layer measures: ∫_0^t f* = ∫_0^∞ min(t, meas{f>λ}) dλ.
inline double k_by_layers(const extrap::StepFn& f, double t) {
    std::vector<double> levels{0.0};
    for (const auto& p : f.pieces()) levels.push_back(p.value);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double k = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        k += (levels[i + 1] - levels[i]) * std::min(t, distribution(f, levels[i]));
    return k;
}

inline double dense_max(const Fn& fn, double lo, double hi, int n, bool log_scale) {
    double best = -INFINITY;
    for (int i = 0; i <= n; ++i) {
        const double x = log_scale ? lo * std::pow(hi / lo, double(i) / n) : lo + (hi - lo) * i / n;
        best = std::max(best, fn(x));
    }
    return best;
}

/// s-numbers as square roots of the eigenvalues of A*A, descending.
inline std::vector<double> singular_values(const Eigen::MatrixXcd& a) {
    const Eigen::MatrixXcd gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    std::vector<double> s;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

}  // namespace oracle
