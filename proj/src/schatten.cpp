#include "extrap/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "extrap/error.hpp"
#include "extrap/numerics.hpp"
#include "extrap/operators.hpp"

namespace extrap {

SingularSpectrum::SingularSpectrum(std::vector<double> values) : s_(std::move(values)) {
    for (std::size_t i = 0; i < s_.size(); ++i) {
        if (!std::isfinite(s_[i]) || s_[i] < 0.0) throw ValidationError("s-numbers must be finite and >= 0");
        if (i > 0 && s_[i] > s_[i - 1]) throw ValidationError("s-numbers must be non-increasing");
    }
}

SingularSpectrum SingularSpectrum::from_unsorted(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    return SingularSpectrum(std::move(values));
}

SingularSpectrum SingularSpectrum::scaled(double c) const {
    if (!(c >= 0.0)) throw ParameterError("scale factor must be >= 0");
    auto v = s_;
    for (auto& x : v) x *= c;
    return SingularSpectrum(std::move(v));
}

StepFn SingularSpectrum::as_step() const {
    if (s_.empty()) throw ValidationError("empty spectrum");
    std::vector<Piece> pieces;
    for (double v : s_) pieces.push_back({1.0, v});
    return StepFn(static_cast<double>(s_.size()), std::move(pieces));
}

SingularSpectrum s_numbers(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0 || a.cols() == 0) throw ValidationError("matrix is empty");
    if (a.rows() > kMaxMatrixOrder || a.cols() > kMaxMatrixOrder)
        throw ValidationError("matrix order exceeds " + std::to_string(kMaxMatrixOrder));
    if (!a.allFinite()) throw ValidationError("matrix has non-finite entries");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    const double norm = a.norm();
    const Eigen::MatrixXcd rebuilt = svd.matrixU() * s.cast<std::complex<double>>().asDiagonal() * svd.matrixV().adjoint();
    if ((rebuilt - a).norm() > 1e-10 * std::max(norm, std::numeric_limits<double>::min()))
        throw RefinementError("SVD reconstruction residual above 1e-10·‖A‖");
    return SingularSpectrum::from_unsorted({s.data(), s.data() + s.size()});
}

double schatten_norm(const SingularSpectrum& s, double p) {
    if (std::isnan(p) || p < 1.0) throw ParameterError("Schatten norm needs p >= 1");
    if (s.is_zero()) return 0.0;
    const auto v = s.values();
    const double top = v.front();
    if (std::isinf(p)) return top;
    double sum = 0.0;
    for (double x : v) sum += std::pow(x / top, p);
    return top * std::pow(sum, 1.0 / p);
}

double matsaev_norm(const SingularSpectrum& s, double alpha) {
    double sum = 0.0;
    const auto v = s.values();
    for (std::size_t j = 1; j <= v.size(); ++j) {
        const double jd = static_cast<double>(j);
        sum += std::pow(1.0 + std::log(jd), alpha - 1.0) * v[j - 1] / jd;
    }
    return sum;
}

double matsaev_dual_norm(const SingularSpectrum& s, double alpha) {
    double best = 0.0;
    double partial = 0.0;
    const auto v = s.values();
    for (std::size_t n = 1; n <= v.size(); ++n) {
        partial += v[n - 1];
        best = std::max(best, partial / std::pow(1.0 + std::log(static_cast<double>(n)), alpha));
    }
    return best;
}

double schatten_k(double t, const SingularSpectrum& s) {
    if (!(t >= 0.0)) throw DomainError("Schatten K needs t >= 0");
    const auto v = s.values();
    double sum = 0.0;
    std::size_t j = 0;
    while (j < v.size() && static_cast<double>(j + 1) <= t) sum += v[j++];
    if (j < v.size()) sum += (t - static_cast<double>(j)) * v[j];
    return sum;
}

Report matsaev_delta_check(const SingularSpectrum& s, double alpha, double p0, int per_decade) {
    Report r;
    r.check = "matsaev_delta";
    if (s.is_zero()) {
        r.measured = std::numeric_limits<double>::quiet_NaN();
        r.flags.emplace_back("degenerate");
        return r;
    }
    double best = 0.0;
    double best_p = 0.0;
    // The sup over (1, p0) equals the max over (1, p0] by continuity in p.
    auto grid = num::p_grid(p0, per_decade);
    std::erase_if(grid, [&](double p) { return p >= p0; });
    grid.push_back(p0);
    for (double p : grid) {
        const double v = std::pow(p - 1.0, alpha) * schatten_norm(s, p);
        if (v > best) {
            best = v;
            best_p = p;
        }
    }
    const double dual = matsaev_dual_norm(s, alpha);
    r.measured = best / dual;
    r.set("delta_sup", best);
    r.set("argmax_p", best_p);
    r.set("dual_norm", dual);
    return r;
}

Eigen::MatrixXd hardy_matrix(Eigen::Index n) {
    if (n < 1 || n > kMaxMatrixOrder) throw ParameterError("Hardy matrix order out of range");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) h.row(i).head(i + 1).setConstant(1.0 / static_cast<double>(i + 1));
    return h;
}

Report noncomm_calderon_check(const SingularSpectrum& a, const SingularSpectrum& ta, double bound) {
    Report r;
    r.check = "noncomm_calderon";
    r.bound = bound;
    if (ta.is_zero()) return r;
    if (a.is_zero()) {
        r.measured = std::numeric_limits<double>::infinity();
        r.pass = false;
        return r;
    }
    const auto mu = LogPolyFn::from_step(a.as_step());
    const auto averaged_s = hardy(hardy(mu) + dual_hardy(mu));
    const auto out = ta.as_step();
    const double n = std::max(out.domain_length(), static_cast<double>(a.size()));
    auto grid = num::decade_grid(1e-2, n, 16);
    for (std::size_t j = 1; j <= static_cast<std::size_t>(n); ++j) grid.push_back(static_cast<double>(j));
    double worst = 0.0;
    double worst_t = 0.0;
    for (double t : grid) {
        const double c = k_functional(t, out) / t / averaged_s(t);
        if (c > worst) {
            worst = c;
            worst_t = t;
        }
    }
    r.measured = worst;
    r.set("worst_t", worst_t);
    r.pass = worst <= bound;
    return r;
}

Eigen::MatrixXcd hardy_witness(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw ValidationError("Hardy witness needs a square matrix");
    const Eigen::MatrixXd h = hardy_matrix(a.rows());
    const Eigen::VectorXcd d = a.diagonal();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows(), a.cols());
    out.diagonal() = h.cast<std::complex<double>>() * d;
    return out;
}

}  // namespace extrap
