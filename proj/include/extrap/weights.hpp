#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace extrap {

/// c · x^power · (shift + log(1/x))^log_power for x > 0.
struct ScalarWeight {
    double coef = 1.0;
    double power = 0.0;
    double log_power = 0.0;
    double log_shift = 1.0;

    double operator()(double x) const;
    double log_value(double x) const;
    std::string describe() const;
};

/// Quasi-concave φ on (0, 1]: non-decreasing with φ(t)/t non-increasing.
class QuasiConcaveFn {
public:
    enum class Kind { Power, LogPower, Tabulated };

    /// t^a with 0 ≤ a ≤ 1.
    static QuasiConcaveFn power(double a);
    /// t^a (1 + log(1/t))^b.
    static QuasiConcaveFn log_power(double a, double b);
    /// Log-log linear interpolation of (t_i, φ_i), extended as a power law at the ends.
    static QuasiConcaveFn tabulated(std::vector<double> t, std::vector<double> phi);

    Kind kind() const noexcept { return kind_; }
    double operator()(double t) const;
    /// φ(0+).
    double at_zero() const;
    /// φ̃(t) = t / φ(t).
    double tilde(double t) const { return t / (*this)(t); }
    /// φ̃′(t): closed form for power and log-power, centered differences otherwise.
    double tilde_derivative(double t) const;
    std::string describe() const;

private:
    QuasiConcaveFn(Kind kind, double a, double b, std::vector<double> t, std::vector<double> phi);
    void validate() const;

    Kind kind_;
    double a_ = 0.0;
    double b_ = 0.0;
    std::vector<double> log_t_;
    std::vector<double> log_phi_;
};

/// Positive weight M over θ ∈ (0, 1), equivalently ω over p ∈ (1, ∞) with
/// θ = 1/p′ = 1 − 1/p.
class WeightSpec {
public:
    /// c · θ^{-a} (1 − θ)^{-b}.
    static WeightSpec theta_form(double a, double b, double c = 1.0);
    /// c · p^a (p/(p−1))^b (p−1)^d.
    static WeightSpec p_form(double a, double b, double d = 0.0, double c = 1.0);
    static WeightSpec constant(double c = 1.0);
    /// ψ(e^{-p}).
    static WeightSpec exp_composition(ScalarWeight psi);
    /// ψ(p/(p−1)).
    static WeightSpec conjugate_composition(ScalarWeight psi);
    /// Log-linear interpolation of (θ_i, M_i); +∞ outside the tabulated range.
    static WeightSpec tabulated(std::vector<double> theta, std::vector<double> values);
    /// Arbitrary log M(θ); must return +∞ where M is infinite.
    static WeightSpec custom(std::function<double(double)> log_m, std::string name);

    /// Parses "one", "yano", "theta:a,b[,c]", "p:a,b[,d[,c]]", "exp:coef,power,log_power",
    /// "conj:coef,power,log_power".
    static WeightSpec parse(const std::string& text);

    /// log M(θ) on [0, 1]; endpoint values are one-sided limits (may be ±∞).
    double log_theta(double theta) const;
    double theta(double theta) const;
    double at_p(double p) const;
    bool tabulated() const noexcept { return !table_theta_.empty(); }
    /// True when log M is known to be convex in θ, so golden-section search is exact.
    bool log_convex() const noexcept { return kind_ == Kind::Power && exp_theta_ <= 0.0 && exp_one_minus_ <= 0.0; }
    std::vector<double> table_nodes() const { return table_theta_; }
    const std::string& name() const noexcept { return name_; }

private:
    enum class Kind { Power, ExpComp, ConjComp, Table, Custom };
    WeightSpec() = default;

    Kind kind_ = Kind::Power;
    std::string name_;
    double log_coef_ = 0.0;
    double exp_theta_ = 0.0;      // exponent on θ
    double exp_one_minus_ = 0.0;  // exponent on 1 − θ
    ScalarWeight psi_;
    std::vector<double> table_theta_;
    std::vector<double> table_log_;
    std::shared_ptr<const std::function<double(double)>> custom_;
};

}  // namespace extrap
