#include "extrap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "extrap/error.hpp"

namespace extrap::num {

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ParameterError("log grid needs 0 < lo < hi and n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + step * i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> decade_grid(double lo, double hi, int per_decade) {
    if (per_decade < 1) throw ParameterError("grid density must be positive");
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    return log_grid(lo, hi, n);
}

std::vector<double> p_grid(double p_hi, int per_decade, double gap_min) {
    if (!(p_hi > 1.0)) throw ParameterError("p grid needs p_max > 1");
    std::vector<double> out;
    const double gap_hi = std::min(1.0, p_hi - 1.0);
    if (gap_hi > gap_min)
        for (double g : decade_grid(gap_min, gap_hi, per_decade)) out.push_back(1.0 + g);
    else
        out.push_back(p_hi);
    if (p_hi > 2.0) {
        const auto tail = decade_grid(2.0, p_hi, per_decade);
        out.insert(out.end(), tail.begin() + 1, tail.end());
    }
    return out;
}

Extremum golden_min(const ScalarFn& fn, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = fn(d);
        }
        if (c >= d) break;  // bracket exhausted at double resolution
    }
    Extremum best = fc < fd ? Extremum{c, fc} : Extremum{d, fd};
    for (double x : {a, b}) {
        const double fx = fn(x);
        if (fx < best.value) best = {x, fx};
    }
    return best;
}

Extremum golden_max(const ScalarFn& fn, double a, double b, double tol) {
    auto r = golden_min([&](double x) { return -fn(x); }, a, b, tol);
    return {r.x, -r.value};
}

Extremum scan_max(const ScalarFn& fn, double lo, double hi, int n, bool log_scale) {
    if (!(hi >= lo)) throw ParameterError("scan interval is empty");
    if (hi == lo) return {lo, fn(lo)};
    n = std::max(n, 3);
    std::vector<double> xs;
    if (log_scale && lo > 0.0) {
        xs = log_grid(lo, hi, n);
    } else {
        xs.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = fn(xs[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = xs[best == 0 ? 0 : best - 1];
    const double b = xs[std::min(best + 1, xs.size() - 1)];
    const auto refined = golden_max(fn, a, b, 1e-12 * std::max(1.0, std::abs(b)));
    return refined.value > best_val ? refined : Extremum{xs[best], best_val};
}

double integrate(const ScalarFn& fn, double a, double b, double abs_tol, double rel_tol) {
    if (a == b) return 0.0;
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, 20, rel_tol, &err);
    if (!(err <= std::max(abs_tol, 1e3 * rel_tol * std::abs(v))))
        throw RefinementError("adaptive quadrature did not converge (error estimate " + std::to_string(err) + ")");
    return v;
}

double integrate_singular(const ScalarFn& fn, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(fn, a, b, rel_tol);
}

double gauss_legendre(const ScalarFn& fn, double a, double b, int n) {
    using boost::math::quadrature::gauss;
    switch (n) {
        case 7: return gauss<double, 7>::integrate(fn, a, b);
        case 15: return gauss<double, 15>::integrate(fn, a, b);
        case 20: return gauss<double, 20>::integrate(fn, a, b);
        case 30: return gauss<double, 30>::integrate(fn, a, b);
        default: throw ParameterError("unsupported Gauss–Legendre order");
    }
}

}  // namespace extrap::num
