#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "extrap/report.hpp"
#include "extrap/stepfn.hpp"

namespace extrap {

/// Dense matrices are capped at this order.
inline constexpr Eigen::Index kMaxMatrixOrder = 1024;

/// Non-increasing, nonnegative s-numbers s_1 ≥ s_2 ≥ … ≥ s_n.
class SingularSpectrum {
public:
    /// Throws ValidationError unless the values are finite, nonnegative and non-increasing.
    explicit SingularSpectrum(std::vector<double> values);
    /// Sorts arbitrary nonnegative values.
    static SingularSpectrum from_unsorted(std::vector<double> values);

    std::span<const double> values() const noexcept { return s_; }
    std::size_t size() const noexcept { return s_.size(); }
    bool is_zero() const noexcept { return s_.empty() || s_.front() == 0.0; }
    SingularSpectrum scaled(double c) const;
    /// μ(t) as a step function with unit pieces on (0, n].
    StepFn as_step() const;

private:
    std::vector<double> s_;
};

/// Singular values by divide-and-conquer SVD. Throws ValidationError on
/// non-finite entries or order above kMaxMatrixOrder, RefinementError when the
/// reconstruction residual exceeds 1e-10‖A‖.
SingularSpectrum s_numbers(const Eigen::MatrixXcd& a);

/// (Σ s_j^p)^{1/p}; p = ∞ gives s_1.
double schatten_norm(const SingularSpectrum& s, double p);
/// Σ_j log^{α−1}(e j) s_j / j.
double matsaev_norm(const SingularSpectrum& s, double alpha);
/// sup_n Σ_{j≤n} s_j / log^α(e n).
double matsaev_dual_norm(const SingularSpectrum& s, double alpha);
/// Σ_{j≤⌊t⌋} s_j + frac(t) s_{⌈t⌉}; saturates at the trace norm.
double schatten_k(double t, const SingularSpectrum& s);

/// sup_{1<p<p0} (p−1)^α ‖σ‖_p over a p-grid, divided by matsaev_dual_norm(σ, α).
/// Measured = the ratio; flag "degenerate" for σ = 0.
Report matsaev_delta_check(const SingularSpectrum& s, double alpha, double p0, int per_decade = 64);

/// Lower-triangular averaging matrix, H_{ij} = 1/i for j ≤ i (1-based).
Eigen::MatrixXd hardy_matrix(Eigen::Index n);

/// Minimal C in (1/t)∫_0^t μ(s, TA) ds ≤ C (1/t)∫_0^t (P + Q)μ(·, A)(s) ds over a t-grid.
Report noncomm_calderon_check(const SingularSpectrum& a, const SingularSpectrum& ta, double bound = 4.0);

/// The Hardy-matrix witness: T(A) = diag(H diag(A)) acting on the diagonal of A.
Eigen::MatrixXcd hardy_witness(const Eigen::MatrixXcd& a);

}  // namespace extrap
