#include "extrap/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "extrap/bilinear.hpp"
#include "extrap/envelope.hpp"
#include "extrap/error.hpp"
#include "extrap/functors.hpp"
#include "extrap/norms.hpp"
#include "extrap/numerics.hpp"
#include "extrap/operators.hpp"
#include "extrap/schatten.hpp"
#include "extrap/testfns.hpp"

namespace extrap::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string canonical(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Reads "<suite>.<key>" with a pinned default and records every value used, so
// the digest changes exactly when an input does.
class Params {
public:
    Params(const Config& cfg, std::string suite) : cfg_(cfg), suite_(std::move(suite)) {}

    double num(const std::string& key, double fallback) {
        const double v = cfg_.get_double(suite_ + "." + key, fallback);
        text_ += key + "=" + canonical(v) + ";";
        return v;
    }
    int count(const std::string& key, int fallback) {
        const int v = cfg_.get_int(suite_ + "." + key, fallback);
        if (v < 1) throw UsageError("config key '" + suite_ + "." + key + "' must be positive");
        text_ += key + "=" + std::to_string(v) + ";";
        return v;
    }
    std::string digest(const std::string& id) const { return fnv1a_hex(suite_ + "|" + id + "|" + text_); }

private:
    const Config& cfg_;
    std::string suite_;
    std::string text_;
};

class Builder {
public:
    Builder(std::string suite, int criterion, Params& params) : params_(params) {
        result_.name = std::move(suite);
        result_.criterion = criterion;
    }

    CheckResult& add(const std::string& letter, std::string description, double measured, std::string relation,
                     double bound, bool pass) {
        CheckResult c;
        c.id = std::to_string(result_.criterion) + "." + letter;
        c.suite = result_.name;
        c.description = std::move(description);
        c.measured = measured;
        c.bound = bound;
        c.relation = std::move(relation);
        c.pass = pass;
        c.inputs_digest = params_.digest(c.id);
        return result_.checks.emplace_back(std::move(c));
    }
    CheckResult& at_most(const std::string& letter, std::string description, double measured, double bound) {
        return add(letter, std::move(description), measured, "<=", bound, measured <= bound);
    }
    CheckResult& at_least(const std::string& letter, std::string description, double measured, double bound) {
        return add(letter, std::move(description), measured, ">=", bound, measured >= bound);
    }
    Table& table(std::string name, std::vector<std::string> header) {
        return result_.tables.emplace_back(Table{std::move(name), std::move(header), {}});
    }
    SuiteResult take() {
        std::stable_sort(result_.checks.begin(), result_.checks.end(),
                         [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
        return std::move(result_);
    }

private:
    Params& params_;
    SuiteResult result_;
};

std::vector<StepFn> random_suite(Params& p, std::uint64_t default_seed) {
    const auto seed = static_cast<std::uint64_t>(p.count("seed", static_cast<int>(default_seed)));
    return gen::random_suite(seed, p.count("functions", 1000), p.count("max_pieces", 64));
}

// ---------------------------------------------------------------------------

struct EnvelopeCase {
    const char* letter;
    const char* label;
    WeightSpec weight;
    double (*exact)(double);
};

std::vector<EnvelopeCase> envelope_cases() {
    return {{"a", "unit", WeightSpec::constant(), closed_form::unit},
            {"b", "yano", WeightSpec::parse("yano"), closed_form::yano},
            {"c", "adequate", WeightSpec::theta_form(1.0, 1.0), closed_form::adequate}};
}

SuiteResult envelope_suite(Params& p) {
    const double lo = p.num("t_lo", 1e-4);
    const double hi = p.num("t_hi", 1e4);
    const int points = p.count("points", 512);
    const double tol = p.num("tol", 1e-6);
    Builder b("envelope", 1, p);
    const auto grid = num::log_grid(lo, hi, points);
    auto& tab = b.table("envelope", {"t", "unit", "unit_exact", "yano", "yano_exact", "adequate", "adequate_exact"});
    tab.rows.assign(grid.size(), {});
    for (std::size_t i = 0; i < grid.size(); ++i) tab.rows[i].push_back(grid[i]);
    const char* names[] = {"inf_θ t^θ = min(1,t) for M ≡ 1",
                           "Yano weight gives e·t·log(1/t) on (0,1/e), 1 beyond",
                           "θ^-1(1-θ)^-1 gives 2t + t·log(1/t), 2 + log t beyond"};
    int k = 0;
    for (const auto& c : envelope_cases()) {
        const auto env = concave_envelope(c.weight, grid);
        double worst = 0.0;
        double worst_t = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double exact = c.exact(grid[i]);
            const double err = std::abs(env.values()[i] / exact - 1.0);
            if (err > worst) {
                worst = err;
                worst_t = grid[i];
            }
            tab.rows[i].push_back(env.values()[i]);
            tab.rows[i].push_back(exact);
        }
        auto& chk = b.at_most(c.letter, names[k++], worst, tol);
        chk.details = {{"worst_t", worst_t}, {"points", static_cast<double>(points)}};
    }
    return b.take();
}

SuiteResult representation_suite(Params& p) {
    const double lo = p.num("t_lo", 1e-4);
    const double hi = p.num("t_hi", 1e4);
    const int points = p.count("points", 2049);
    const double tol = p.num("residual_tol", 1e-4);
    const double density_tol = p.num("density_tol", 1e-3);
    const double kink_window = p.num("kink_window", 0.05);
    Builder b("representation", 2, p);
    const auto grid = num::log_grid(lo, hi, points);
    for (const auto& c : envelope_cases()) {
        const auto env = concave_envelope(c.weight, grid);
        const auto mu = representing_measure(env);
        const auto res = reconstruction_residual(env, mu);
        auto& chk = b.at_most(c.letter, std::string("reconstruction of the ") + c.label + " envelope from its measure",
                              res.max_rel, tol);
        chk.details = {{"worst_t", res.worst_t},   {"alpha", mu.alpha},
                       {"beta", mu.beta},          {"atoms", static_cast<double>(mu.atoms.size())},
                       {"atom_mass", mu.atom_mass()}, {"density_mass", mu.density_mass()}};
        if (std::string(c.label) != "yano") continue;
        const double kink = std::exp(-1.0);
        auto& tab = b.table("yano_density", {"r", "w", "expected"});
        double worst = 0.0;
        double worst_r = 0.0;
        for (const auto& node : mu.density) {
            const double expected = node.r < kink ? std::numbers::e : 0.0;
            tab.rows.push_back({node.r, node.w, expected});
            if (std::abs(node.r / kink - 1.0) <= kink_window) continue;
            const double err = std::abs(node.w - expected);
            if (err > worst) {
                worst = err;
                worst_r = node.r;
            }
        }
        auto& d = b.at_most("d", "Yano density equals e on (0,1/e) and 0 beyond, away from the kink", worst,
                            density_tol);
        d.details = {{"worst_r", worst_r}, {"kink_window", kink_window}};
    }
    return b.take();
}

SuiteResult kj_suite(Params& p) {
    const auto fs = random_suite(p, 1);
    const int n = p.count("grid_points", 32);
    const double lo = p.num("grid_lo", 1e-6);
    const double hi = p.num("grid_hi", 1e3);
    const double slack = p.num("slack", 1e-12);
    Builder b("kj", 3, p);
    const auto grid = num::log_grid(lo, hi, n);
    double worst = -kInf;
    double pairs = 0;
    for (const auto& f : fs) {
        if (f.is_zero()) continue;
        for (double s : grid) {
            const double j = j_functional(s, f);
            for (double t : grid) {
                const double rhs = std::min(1.0, t / s) * j;
                worst = std::max(worst, k_functional(t, f) / rhs - 1.0);
                ++pairs;
            }
        }
    }
    auto& c = b.at_most("a", "K(t,f) <= min(1,t/s)·J(s,f), relative excess", worst, slack);
    c.details = {{"functions", static_cast<double>(fs.size())}, {"pairs", pairs}};
    return b.take();
}

SuiteResult decomposition_suite(Params& p) {
    const auto fs = random_suite(p, 1);
    const double base = p.num("base", 2.0);
    const int n = p.count("grid_points", 32);
    const double gamma_bound = p.num("gamma_bound", 8.0);
    const double exact_tol = p.num("exact_tol", 1e-12);
    Builder b("decomposition", 4, p);
    const auto grid = num::log_grid(p.num("grid_lo", 1e-6), p.num("grid_hi", 1e3), n);
    double lower = -kInf;
    double gamma = 0.0;
    double recon = 0.0;
    for (const auto& f : fs) {
        const auto slices = truncation_slices(f, base);
        for (double t : grid) {
            const double k = k_functional(t, f);
            const double s = slice_j_sum(slices, t);
            if (k == 0.0) {
                lower = std::max(lower, s == 0.0 ? 0.0 : kInf);
                continue;
            }
            lower = std::max(lower, (k - s) / k);
            gamma = std::max(gamma, s / k);
        }
        double lo_end = 0.0;
        for (const auto& piece : f.pieces()) {
            const double mid = lo_end + 0.5 * piece.length;
            lo_end += piece.length;
            double sum = 0.0;
            for (const auto& sl : slices) sum += sl.part.value_at(mid);
            recon = std::max(recon, std::abs(sum - piece.value) / std::max(1.0, f.sup()));
        }
    }
    b.at_most("a", "K(t,f) <= Σ min(1,t/2^n)·J(2^n,u_n), relative excess", lower, exact_tol);
    b.at_most("b", "Σ min(1,t/2^n)·J(2^n,u_n) <= γ·K(t,f), suite-max γ", gamma, gamma_bound);
    b.at_most("c", "slices sum back to f", recon, exact_tol);
    return b.take();
}

SuiteResult fubini_suite(Params& p) {
    const auto fs = random_suite(p, 1);
    const double tol = p.num("tol", 1e-9);
    Builder b("fubini", 5, p);
    double worst = 0.0;
    const double one[] = {1.0};
    for (const auto& f : fs) {
        const double lhs = k_head_integral(k_curve(f), 1.0);
        const double rhs = log_gain_quantities(f, f, one).front().a1;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    b.at_most("a", "∫_0^1 f** = ∫_0^1 f*(s)·log(1/s) ds, absolute", worst, tol);
    return b.take();
}

struct DeltaExplPoint {
    double delta;
    double argmax_p;
    double expl;
};

DeltaExplPoint delta_expl(double alpha, double beta, int pieces, double t_min, int per_decade, double p_max) {
    const auto f = gen::log_power(beta, pieces, t_min);
    const auto scale = ScaleSpec::make(ScaleSpec::Kind::Lp, WeightSpec::p_form(-alpha, 0.0), p_max, per_decade);
    const auto d = delta_functor_norm(f, scale);
    return {d.value, d.argmax_p, exp_l_alpha_norm(f, alpha)};
}

SuiteResult delta_expl_suite(Params& p) {
    const int pieces = p.count("pieces", 1000);
    const double t_min = p.num("t_min", 1e-12);
    const int per_decade = p.count("per_decade", 64);
    const double p_max = p.num("p_max", 1024.0);
    const double window_lo = p.num("window_lo", 1e-2);
    const double window_hi = p.num("window_hi", 1e2);
    const double stability = p.num("stability_tol", 0.05);
    const double bounded_growth = p.num("bounded_growth", 1.1);
    const double unbounded_growth = p.num("unbounded_growth", 1.5);
    Builder b("delta-expl", 6, p);
    auto& tab = b.table("delta_expl", {"alpha", "beta", "depth", "pieces", "delta", "argmax_p", "expl"});

    double ratio_lo = kInf;
    double ratio_hi = 0.0;
    double drift = 0.0;
    bool finite_iff = true;
    std::vector<std::pair<std::string, double>> finite_details;
    for (double alpha : {1.0, 2.0}) {
        const auto coarse = delta_expl(alpha, alpha, pieces, t_min, per_decade, p_max);
        const auto fine = delta_expl(alpha, alpha, 2 * pieces, t_min, per_decade, p_max);
        const double r0 = coarse.delta / coarse.expl;
        const double r1 = fine.delta / fine.expl;
        ratio_lo = std::min({ratio_lo, r0, r1});
        ratio_hi = std::max({ratio_hi, r0, r1});
        drift = std::max(drift, std::abs(r1 / r0 - 1.0));
        tab.rows.push_back({alpha, alpha, t_min, double(pieces), coarse.delta, coarse.argmax_p, coarse.expl});
        tab.rows.push_back({alpha, alpha, t_min, double(2 * pieces), fine.delta, fine.argmax_p, fine.expl});

        // Finiteness is judged by growth as the discretization reaches deeper toward 0.
        for (double beta : {alpha, alpha + 1.0}) {
            std::vector<DeltaExplPoint> pts;
            double depth = t_min;
            int n = pieces;
            for (int level = 0; level < 3; ++level, depth *= depth, n *= 2) {
                pts.push_back(delta_expl(alpha, beta, n, depth, per_decade, p_max));
                tab.rows.push_back({alpha, beta, depth, double(n), pts.back().delta, pts.back().argmax_p,
                                    pts.back().expl});
            }
            const double g_delta = pts.back().delta / pts.front().delta;
            const double g_expl = pts.back().expl / pts.front().expl;
            auto verdict = [&](double g) { return g <= bounded_growth ? 1 : (g >= unbounded_growth ? 0 : -1); };
            const int expect = beta <= alpha ? 1 : 0;
            finite_iff = finite_iff && verdict(g_delta) == expect && verdict(g_expl) == expect;
            const std::string tag = "a" + short_num(alpha) + "_b" + short_num(beta);
            finite_details.emplace_back("growth_delta_" + tag, g_delta);
            finite_details.emplace_back("growth_expl_" + tag, g_expl);
        }
    }
    auto& a = b.add("a", "sup_p p^-α‖f‖_p / ‖f‖_expL^(1/α) for β = α lies in the window", ratio_hi, "in", window_hi,
                    ratio_lo >= window_lo && ratio_hi <= window_hi);
    a.details = {{"ratio_lo", ratio_lo}, {"ratio_hi", ratio_hi}, {"window_lo", window_lo}};
    b.at_most("b", "window ratio stable when the piece count doubles", drift, stability);
    auto& c = b.add("c", "Δ norm bounded under deepening iff the exp-L norm is, iff β <= α", finite_iff ? 1.0 : 0.0,
                    "pass", 1.0, finite_iff);
    c.details = std::move(finite_details);
    return b.take();
}

// Indicator mixtures, powers t^-a with a in [0.05, 0.2], and log powers.
std::vector<StepFn> grand_lebesgue_family(int pieces, std::uint64_t seed) {
    std::vector<StepFn> family;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> height(0.1, 2.0);
    std::uniform_real_distribution<double> end(0.01, 1.0);
    family.push_back(StepFn::indicator(1.0));
    for (int k = 0; k < 6; ++k) {
        std::vector<double> h;
        std::vector<double> e;
        for (int j = 0; j <= k % 3 + 1; ++j) {
            h.push_back(height(rng));
            e.push_back(j == 0 ? 1.0 : end(rng));
        }
        family.push_back(gen::indicator_mixture(h, e));
    }
    for (int k = 0; k < 7; ++k) family.push_back(gen::power(0.05 + 0.025 * k, pieces));
    for (int k = 0; k < 6; ++k) family.push_back(gen::log_power(0.5 * (k + 1), pieces, 1e-12));
    return family;
}

SuiteResult grand_lebesgue_suite(Params& p) {
    const int pieces = p.count("pieces", 400);
    const auto seed = static_cast<std::uint64_t>(p.count("seed", 7));
    const int per_decade = p.count("per_decade", 64);
    const double bound = p.num("bound", 10.0);
    const double stability = p.num("stability_tol", 0.10);
    Builder b("grand-lebesgue", 7, p);
    const auto family = grand_lebesgue_family(pieces, seed);
    auto& tab = b.table("gl_fk_window", {"p", "alpha", "ratio_lo", "ratio_hi", "spread"});

    auto constant = [&](int density, bool record) {
        double lo = kInf;
        double hi = 0.0;
        for (double pp : {1.5, 2.0, 3.0, 4.0})
            for (double alpha : {1.0, 2.0}) {
                double plo = kInf;
                double phi = 0.0;
                for (const auto& f : family) {
                    const double r = grand_lebesgue_norm(f, pp, alpha, density) /
                                     grand_lebesgue_fk_norm(f, pp, alpha, density);
                    plo = std::min(plo, r);
                    phi = std::max(phi, r);
                }
                if (record) tab.rows.push_back({pp, alpha, plo, phi, phi / plo});
                lo = std::min(lo, plo);
                hi = std::max(hi, phi);
            }
        return std::pair{std::max(hi, 1.0 / lo), std::pair{lo, hi}};
    };
    const auto [c, window] = constant(per_decade, true);
    const auto [c_fine, window_fine] = constant(2 * per_decade, false);
    auto& a = b.at_most("a", "GL / FK ratio within [1/C, C], suite C", c, bound);
    a.details = {{"ratio_lo", window.first}, {"ratio_hi", window.second}, {"functions", double(family.size())}};
    auto& s = b.at_most("b", "C stable under ε-grid refinement", std::abs(c_fine / c - 1.0), stability);
    s.details = {{"c_fine", c_fine}, {"ratio_lo_fine", window_fine.first}, {"ratio_hi_fine", window_fine.second}};
    return b.take();
}

SuiteResult hardy_suite(Params& p) {
    const double norm_bound = p.num("norm_ratio_min", 0.9);
    const double yano_bound = p.num("yano_bound", 4.0);
    const auto fs = random_suite(p, 11);
    Builder b("hardy", 8, p);
    auto& tab = b.table("hardy_lower", {"p", "lower", "delta", "lower_times_inverse_norm"});
    const char* letters[] = {"a", "b", "c", "d"};
    int k = 0;
    for (double pp : {1.1, 1.5, 2.0, 4.0}) {
        const auto lower = operator_norm_lower(OperatorSpec::hardy(), pp);
        const double ratio = lower.value * (pp - 1.0) / pp;
        tab.rows.push_back({pp, lower.value, lower.delta, ratio});
        auto& c = b.at_least(letters[k++], "Hardy operator lower bound ·(p-1)/p at p = " + short_num(pp), ratio,
                             norm_bound);
        c.details = {{"p", pp}, {"lower", lower.value}, {"delta", lower.delta}};
    }
    double worst = 0.0;
    for (const auto& f : fs) {
        if (f.is_zero()) continue;
        worst = std::max(worst, yano_endpoint_check(OperatorSpec::hardy(), f, YanoForm::Ex5).measured);
    }
    b.at_most("e", "(Pf)**(t) <= (C/t)∫_0^t f**, suite-max C", worst, yano_bound);
    return b.take();
}

SuiteResult calderon_suite(Params& p) {
    const auto fs = random_suite(p, 11);
    const double tol = p.num("tol", 1e-6);
    const double depth = p.num("depth", 1e-12);
    Builder b("calderon", 9, p);
    double s_vs_pq = 0.0;
    double pq_vs_qp = 0.0;
    for (const auto& f : fs) {
        const auto g = LogPolyFn::from_step(f);
        const auto pg = hardy(g);
        const auto qg = dual_hardy(g);
        const auto pq = hardy(qg);
        const double len = f.domain_length();
        s_vs_pq = std::max(s_vs_pq, sup_abs_difference(pg + qg, pq, depth * len, len));
        pq_vs_qp = std::max(pq_vs_qp, sup_abs_difference(pq, dual_hardy(pg), depth * len, len));
    }
    b.at_most("a", "‖(P+Q)f − PQf‖_∞", s_vs_pq, tol);
    b.at_most("b", "‖PQf − QPf‖_∞", pq_vs_qp, tol);
    return b.take();
}

SuiteResult bilinear_suite(Params& p) {
    const double conv_tol = p.num("conv_tol", 1e-8);
    const double bound = p.num("bound", 8.0);
    const double slack = p.num("addend_slack", 1e-12);
    const int pairs = p.count("pairs", 100);
    const auto seed = static_cast<std::uint64_t>(p.count("seed", 21));
    const int max_pieces = p.count("max_pieces", 32);
    Builder b("bilinear", 10, p);
    const auto unit = PiecewiseLinear::from(k_curve(StepFn::indicator(1.0)));
    const double conv = mult_convolution(unit, unit, 1.0);
    auto& a = b.at_most("a", "min(1,·) ◆ min(1,·) at t = 1 equals 2", std::abs(conv - 2.0), conv_tol);
    a.details = {{"value", conv}};

    LagbiOptions opts;
    opts.bound = bound;
    double c_max = 0.0;
    double addend[3] = {0.0, 0.0, 0.0};
    int used = 0;
    for (int i = 0; i < pairs; ++i) {
        const auto f = gen::random(seed + 2 * static_cast<std::uint64_t>(i), max_pieces);
        const auto g = gen::random(seed + 2 * static_cast<std::uint64_t>(i) + 1, max_pieces);
        if (f.is_zero() || g.is_zero()) continue;
        const auto r = lagbi_bounds(f.scaled(1.0 / f.sup()), g.scaled(1.0 / g.sup()), opts);
        c_max = std::max(c_max, r.measured);
        addend[0] = std::max(addend[0], r.get("ratio_I"));
        addend[1] = std::max(addend[1], r.get("ratio_II"));
        addend[2] = std::max(addend[2], r.get("ratio_III"));
        ++used;
    }
    auto& c = b.at_most("b", "K(t)/(t(1+log(1/t))) <= c‖f‖_∞‖g‖_∞, suite-max c", c_max, bound);
    c.details = {{"pairs", double(used)}};
    const double worst_addend = std::max({addend[0], addend[1], addend[2]});
    auto& d = b.at_most("c", "each addend of the split within its bound, max ratio", worst_addend, 1.0 + slack);
    d.details = {{"ratio_I", addend[0]}, {"ratio_II", addend[1]}, {"ratio_III", addend[2]}};
    return b.take();
}

SuiteResult schatten_suite(Params& p) {
    const double alpha = p.num("alpha", 1.0);
    const double p0 = p.num("p0", 2.0);
    const double stability = p.num("stability_tol", 0.20);
    const double bound = p.num("bound", 4.0);
    const int order = p.count("order", 64);
    const auto seed = static_cast<std::uint64_t>(p.count("seed", 5));
    Builder b("schatten", 11, p);
    auto& tab = b.table("matsaev", {"n", "ratio", "argmax_p", "dual_norm"});
    double lo = kInf;
    double hi = 0.0;
    for (int n : {16, 64, 256}) {
        std::vector<double> s;
        for (int j = 1; j <= n; ++j) s.push_back(1.0 / j);
        const auto r = matsaev_delta_check(SingularSpectrum(s), alpha, p0);
        tab.rows.push_back({double(n), r.measured, r.get("argmax_p"), r.get("dual_norm")});
        lo = std::min(lo, r.measured);
        hi = std::max(hi, r.measured);
    }
    auto& a = b.at_most("a", "Matsaev Δ ratio for s_j = 1/j, spread over n = 16, 64, 256", hi / lo - 1.0, stability);
    a.details = {{"ratio_lo", lo}, {"ratio_hi", hi}};

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(order, order);
    for (int i = 0; i < order; ++i) diag(i, i) = std::abs(normal(rng));
    Eigen::MatrixXcd gauss(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) gauss(i, j) = {normal(rng), normal(rng)};
    const std::pair<const char*, const Eigen::MatrixXcd*> cases[] = {{"b", &diag}, {"c", &gauss}};
    for (const auto& [letter, m] : cases) {
        const auto r = noncomm_calderon_check(s_numbers(*m), s_numbers(hardy_witness(*m)), bound);
        auto& c = b.at_most(letter,
                            std::string("s-numbers of the Hardy-matrix witness, ") +
                                (m == &diag ? "random diagonal A" : "Gaussian A"),
                            r.measured, bound);
        c.details = {{"worst_t", r.get("worst_t")}, {"n", double(order)}};
    }
    return b.take();
}

SuiteResult strong_extrap_suite(Params& p) {
    DilationOptions opts;
    opts.t_lo = p.num("t_lo", opts.t_lo);
    opts.per_decade = p.count("per_decade", opts.per_decade);
    opts.bound = p.num("bound", opts.bound);
    opts.growth_tol = p.num("growth_tol", opts.growth_tol);
    Builder b("strong-extrap", 12, p);
    const auto log_phi = strong_extrap_check(QuasiConcaveFn::log_power(0.0, -1.0), opts);
    const auto sqrt_phi = strong_extrap_check(QuasiConcaveFn::power(0.5), opts);
    auto& a = b.add("a", "φ = (1+log(1/t))^-1 satisfies φ(t) ≈ φ(t²)", log_phi.measured, "pass", opts.bound,
                    log_phi.pass);
    a.details = {{"drift", log_phi.get("drift")}};
    auto& c = b.add("b", "φ = t^(1/2) violates φ(t) ≈ φ(t²)", sqrt_phi.measured, "fail", opts.bound, !sqrt_phi.pass);
    c.details = {{"drift", sqrt_phi.get("drift")}};
    return b.take();
}

using SuiteFn = SuiteResult (*)(Params&);

struct Entry {
    SuiteInfo info;
    SuiteFn run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries{
        {{"envelope", 1, "closed-form concave envelopes"}, envelope_suite},
        {{"representation", 2, "representing measure reconstruction"}, representation_suite},
        {{"kj", 3, "pointwise K/J inequality"}, kj_suite},
        {{"decomposition", 4, "fundamental decomposition by truncation slices"}, decomposition_suite},
        {{"fubini", 5, "f** integral against the log-weighted f* integral"}, fubini_suite},
        {{"delta-expl", 6, "Δ functor of p^-α L^p against exp L^(1/α)"}, delta_expl_suite},
        {{"grand-lebesgue", 7, "grand Lebesgue norm against its rearrangement form"}, grand_lebesgue_suite},
        {{"hardy", 8, "Hardy operator norm and endpoint estimate"}, hardy_suite},
        {{"calderon", 9, "Calderón operator algebra"}, calderon_suite},
        {{"bilinear", 10, "bilinear convolution and endpoint bounds"}, bilinear_suite},
        {{"schatten", 11, "Matsaev ideals and the noncommutative Calderón bound"}, schatten_suite},
        {{"strong-extrap", 12, "dilation criterion for strong extrapolation"}, strong_extrap_suite},
    };
    return entries;
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> infos = [] {
        std::vector<SuiteInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

std::string suite_for_criterion(int criterion) {
    for (const auto& e : registry())
        if (e.info.criterion == criterion) return e.info.name;
    throw UsageError("no criterion " + std::to_string(criterion));
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
    for (const auto& e : registry()) {
        if (e.info.name != name) continue;
        Params params(cfg, name);
        const auto start = std::chrono::steady_clock::now();
        auto result = e.run(params);
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }
    throw UsageError("unknown suite '" + name + "' (try --list)");
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Config& cfg, int threads) {
    for (const auto& n : names) {
        const auto& all = registry();
        if (std::none_of(all.begin(), all.end(), [&](const Entry& e) { return e.info.name == n; }))
            throw UsageError("unknown suite '" + n + "' (try --list)");
    }
    std::vector<SuiteResult> results(names.size());
    std::vector<std::exception_ptr> errors(names.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < names.size(); i = next++) {
            try {
                results[i] = run_suite(names[i], cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto n = static_cast<std::size_t>(std::max(1, threads));
        for (std::size_t k = 0; k < std::min(n, names.size()); ++k) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace extrap::verify
