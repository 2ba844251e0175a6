#include "extrap/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "extrap/error.hpp"
#include "extrap/numerics.hpp"

namespace extrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e · log(x) with the convention 0 · log(0) = 0.
double power_term(double e, double x) {
    if (e == 0.0) return 0.0;
    if (x == 0.0) return e > 0.0 ? -kInf : kInf;
    return e * std::log(x);
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParameterError("cannot parse number '" + item + "'");
        }
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

double ScalarWeight::log_value(double x) const {
    if (!(x > 0.0)) throw DomainError("scalar weight needs x > 0");
    double v = std::log(coef) + power_term(power, x);
    if (log_power != 0.0) {
        const double base = log_shift + std::log(1.0 / x);
        if (!(base > 0.0)) throw DomainError("scalar weight log factor is nonpositive at x = " + fmt(x));
        v += log_power * std::log(base);
    }
    return v;
}

double ScalarWeight::operator()(double x) const { return std::exp(log_value(x)); }

std::string ScalarWeight::describe() const {
    return fmt(coef) + "*x^" + fmt(power) + "*(" + fmt(log_shift) + "+log(1/x))^" + fmt(log_power);
}

QuasiConcaveFn::QuasiConcaveFn(Kind kind, double a, double b, std::vector<double> t, std::vector<double> phi)
    : kind_(kind), a_(a), b_(b) {
    if (kind == Kind::Tabulated) {
        if (t.size() < 2 || t.size() != phi.size()) throw ValidationError("tabulated φ needs matching t and φ arrays");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(t[i] > 0.0) || t[i] > 1.0 || (i > 0 && !(t[i] > t[i - 1])))
                throw ValidationError("tabulated φ needs increasing nodes in (0, 1]");
            if (!(phi[i] > 0.0) || !std::isfinite(phi[i])) throw ValidationError("tabulated φ must be positive");
            log_t_.push_back(std::log(t[i]));
            log_phi_.push_back(std::log(phi[i]));
        }
    }
    validate();
}

QuasiConcaveFn QuasiConcaveFn::power(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw ParameterError("power φ needs 0 <= a <= 1");
    return QuasiConcaveFn(Kind::Power, a, 0.0, {}, {});
}

QuasiConcaveFn QuasiConcaveFn::log_power(double a, double b) {
    return QuasiConcaveFn(Kind::LogPower, a, b, {}, {});
}

QuasiConcaveFn QuasiConcaveFn::tabulated(std::vector<double> t, std::vector<double> phi) {
    return QuasiConcaveFn(Kind::Tabulated, 0.0, 0.0, std::move(t), std::move(phi));
}

double QuasiConcaveFn::operator()(double t) const {
    if (!(t > 0.0)) throw DomainError("φ is defined on (0, 1]");
    switch (kind_) {
        case Kind::Power: return std::pow(t, a_);
        case Kind::LogPower: return std::pow(t, a_) * std::pow(1.0 + std::log(1.0 / t), b_);
        case Kind::Tabulated: {
            const double x = std::log(t);
            const std::size_t n = log_t_.size();
            std::size_t i = 0;
            if (x >= log_t_[n - 1])
                i = n - 2;
            else if (x > log_t_[0])
                i = static_cast<std::size_t>(std::upper_bound(log_t_.begin(), log_t_.end(), x) - log_t_.begin()) - 1;
            const double slope = (log_phi_[i + 1] - log_phi_[i]) / (log_t_[i + 1] - log_t_[i]);
            return std::exp(log_phi_[i] + slope * (x - log_t_[i]));
        }
    }
    return 0.0;
}

double QuasiConcaveFn::at_zero() const {
    switch (kind_) {
        case Kind::Power: return a_ > 0.0 ? 0.0 : 1.0;
        case Kind::LogPower:
            if (a_ > 0.0 || b_ < 0.0) return 0.0;
            return b_ == 0.0 ? 1.0 : kInf;
        case Kind::Tabulated: {
            const double slope = (log_phi_[1] - log_phi_[0]) / (log_t_[1] - log_t_[0]);
            return slope > 0.0 ? 0.0 : std::exp(log_phi_[0]);
        }
    }
    return 0.0;
}

double QuasiConcaveFn::tilde_derivative(double t) const {
    switch (kind_) {
        case Kind::Power: return (1.0 - a_) * std::pow(t, -a_);
        case Kind::LogPower: {
            const double ell = 1.0 + std::log(1.0 / t);
            return std::pow(t, -a_) * std::pow(ell, -b_ - 1.0) * ((1.0 - a_) * ell + b_);
        }
        case Kind::Tabulated: {
            // φ̃′ = (φ̃/t)(1 − d log φ / d log t), exact on each log-log segment.
            const double h = 1e-6;
            const double dlog = (std::log((*this)(t * std::exp(h))) - std::log((*this)(t * std::exp(-h)))) / (2 * h);
            return tilde(t) / t * (1.0 - dlog);
        }
    }
    return 0.0;
}

void QuasiConcaveFn::validate() const {
    const auto grid = num::decade_grid(1e-12, 1.0, 16);
    double prev_phi = (*this)(grid[0]);
    double prev_ratio = prev_phi / grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double phi = (*this)(grid[i]);
        const double ratio = phi / grid[i];
        if (!(phi >= prev_phi * (1.0 - 1e-12)) || !(ratio <= prev_ratio * (1.0 + 1e-12)))
            throw ValidationError(describe() + " is not quasi-concave near t = " + fmt(grid[i]));
        prev_phi = phi;
        prev_ratio = ratio;
    }
}

std::string QuasiConcaveFn::describe() const {
    switch (kind_) {
        case Kind::Power: return "t^" + fmt(a_);
        case Kind::LogPower: return "t^" + fmt(a_) + "*(1+log(1/t))^" + fmt(b_);
        case Kind::Tabulated: return "tabulated(" + std::to_string(log_t_.size()) + ")";
    }
    return {};
}

WeightSpec WeightSpec::theta_form(double a, double b, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("weight coefficient must be positive");
    WeightSpec w;
    w.kind_ = Kind::Power;
    w.log_coef_ = std::log(c);
    w.exp_theta_ = -a;
    w.exp_one_minus_ = -b;
    w.name_ = fmt(c) + "*theta^-" + fmt(a) + "*(1-theta)^-" + fmt(b);
    return w;
}

WeightSpec WeightSpec::p_form(double a, double b, double d, double c) {
    // p = 1/(1−θ), p′ = 1/θ, p − 1 = θ/(1−θ).
    auto w = theta_form(b - d, a + d, c);
    w.name_ = fmt(c) + "*p^" + fmt(a) + "*(p')^" + fmt(b) + "*(p-1)^" + fmt(d);
    return w;
}

WeightSpec WeightSpec::constant(double c) {
    auto w = theta_form(0.0, 0.0, c);
    w.name_ = "const(" + fmt(c) + ")";
    return w;
}

WeightSpec WeightSpec::exp_composition(ScalarWeight psi) {
    WeightSpec w;
    w.kind_ = Kind::ExpComp;
    w.psi_ = psi;
    w.name_ = "psi(exp(-p)), psi=" + psi.describe();
    return w;
}

WeightSpec WeightSpec::conjugate_composition(ScalarWeight psi) {
    WeightSpec w;
    w.kind_ = Kind::ConjComp;
    w.psi_ = psi;
    w.name_ = "psi(p/(p-1)), psi=" + psi.describe();
    return w;
}

WeightSpec WeightSpec::tabulated(std::vector<double> theta, std::vector<double> values) {
    if (theta.size() < 2 || theta.size() != values.size())
        throw ParameterError("tabulated weight needs matching θ and M arrays");
    WeightSpec w;
    w.kind_ = Kind::Table;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!(theta[i] >= 0.0 && theta[i] <= 1.0) || (i > 0 && !(theta[i] > theta[i - 1])))
            throw ParameterError("tabulated weight needs increasing θ in [0, 1]");
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw ParameterError("tabulated weight is not finite and positive at θ = " + fmt(theta[i]));
        w.table_log_.push_back(std::log(values[i]));
    }
    w.table_theta_ = std::move(theta);
    w.name_ = "tabulated(" + std::to_string(w.table_theta_.size()) + ")";
    return w;
}

WeightSpec WeightSpec::custom(std::function<double(double)> log_m, std::string name) {
    WeightSpec w;
    w.kind_ = Kind::Custom;
    w.custom_ = std::make_shared<const std::function<double(double)>>(std::move(log_m));
    w.name_ = std::move(name);
    return w;
}

WeightSpec WeightSpec::parse(const std::string& text) {
    if (text == "one") return constant(1.0);
    if (text == "yano") {
        auto w = p_form(1.0, 0.0);
        return w;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParameterError("unknown weight '" + text + "'");
    const std::string head = text.substr(0, colon);
    const auto v = parse_numbers(text.substr(colon + 1));
    auto arg = [&](std::size_t i, double dflt) { return i < v.size() ? v[i] : dflt; };
    if (head == "theta" && v.size() >= 2) return theta_form(v[0], v[1], arg(2, 1.0));
    if (head == "p" && v.size() >= 2) return p_form(v[0], v[1], arg(2, 0.0), arg(3, 1.0));
    if ((head == "exp" || head == "conj") && v.size() >= 3) {
        ScalarWeight psi{v[0], v[1], v[2], arg(3, 1.0)};
        return head == "exp" ? exp_composition(psi) : conjugate_composition(psi);
    }
    throw ParameterError("cannot parse weight '" + text + "'");
}

double WeightSpec::log_theta(double theta) const {
    if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("θ must lie in [0, 1]");
    switch (kind_) {
        case Kind::Power: return log_coef_ + power_term(exp_theta_, theta) + power_term(exp_one_minus_, 1.0 - theta);
        case Kind::ExpComp: {
            if (theta == 1.0) return psi_.power > 0.0 ? -kInf : (psi_.power < 0.0 ? kInf : psi_.log_value(1e-300));
            const double p = 1.0 / (1.0 - theta);
            // log ψ(e^{-p}) = log c − a p + b log(shift + p)
            double v = std::log(psi_.coef) - psi_.power * p;
            if (psi_.log_power != 0.0) v += psi_.log_power * std::log(psi_.log_shift + p);
            return v;
        }
        case Kind::ConjComp: {
            if (theta == 0.0) return psi_.power > 0.0 ? kInf : (psi_.power < 0.0 ? -kInf : psi_.log_value(1e300));
            return psi_.log_value(1.0 / theta);
        }
        case Kind::Table: {
            if (theta < table_theta_.front() || theta > table_theta_.back()) return kInf;
            const auto it = std::upper_bound(table_theta_.begin(), table_theta_.end(), theta);
            std::size_t i = static_cast<std::size_t>(it - table_theta_.begin());
            if (i == table_theta_.size()) return table_log_.back();
            i -= 1;
            const double s = (theta - table_theta_[i]) / (table_theta_[i + 1] - table_theta_[i]);
            return table_log_[i] + s * (table_log_[i + 1] - table_log_[i]);
        }
        case Kind::Custom: return (*custom_)(theta);
    }
    return kInf;
}

double WeightSpec::theta(double theta) const { return std::exp(log_theta(theta)); }

double WeightSpec::at_p(double p) const {
    if (std::isinf(p)) return theta(1.0);
    if (!(p >= 1.0)) throw DomainError("weight parameter p must be >= 1");
    return theta(1.0 - 1.0 / p);
}

}  // namespace extrap
