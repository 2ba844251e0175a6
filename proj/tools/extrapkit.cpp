// extrapkit: command-line front end to the extrapolation library.
//
// Exit codes: 0 success or all checks pass, 1 usage or input error,
// 2 a check ran and failed.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "extrap/bilinear.hpp"
#include "extrap/config.hpp"
#include "extrap/envelope.hpp"
#include "extrap/error.hpp"
#include "extrap/functors.hpp"
#include "extrap/io.hpp"
#include "extrap/norms.hpp"
#include "extrap/numerics.hpp"
#include "extrap/operators.hpp"
#include "extrap/schatten.hpp"
#include "extrap/testfns.hpp"
#include "extrap/verify.hpp"

namespace fs = std::filesystem;
using namespace extrap;

namespace {

constexpr int kExitFail = 2;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(std::ostream& out) : out_(out) {}
    Csv& header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << "\n";
        return *this;
    }
    template <typename... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << "\n";
    }

private:
    static std::string cell(double v) { return num(v); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    std::ostream& out_;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty number list");
    return out;
}

// "power:a" → t^a, "logpow:a,b" → t^a (1 + log(1/t))^b.
QuasiConcaveFn parse_phi(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("φ must look like power:a or logpow:a,b");
    const std::string head = text.substr(0, colon);
    const auto v = parse_list(text.substr(colon + 1));
    if (head == "power" && v.size() == 1) return QuasiConcaveFn::power(v[0]);
    if (head == "logpow" && v.size() == 2) return QuasiConcaveFn::log_power(v[0], v[1]);
    throw UsageError("unknown φ '" + text + "'");
}

OperatorSpec parse_operator(const std::string& name, int resolution, const std::string& multipliers) {
    if (name == "hardy") return OperatorSpec::hardy(resolution);
    if (name == "dual-hardy") return OperatorSpec::dual_hardy(resolution);
    if (name == "calderon") return OperatorSpec::calderon(resolution);
    if (name == "identity") return OperatorSpec::identity();
    if (name == "diagonal") return OperatorSpec::diagonal(parse_list(multipliers));
    throw UsageError("unknown operator '" + name + "'");
}

void print_report(const Report& r) { std::cout << io::dump(io::to_json(r)); }

int report_exit(const Report& r) { return r.pass ? 0 : kExitFail; }

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------

struct NormArgs {
    std::string in;
    std::string kind = "lp";
    double p = 2.0;
    double alpha = 1.0;
    double b = 1e6;
    std::string phi = "power:0.5";
    bool all = false;
};

double one_norm(const StepFn& f, const NormArgs& a) {
    const auto& k = a.kind;
    if (k == "lp") return lp_norm(f, a.p);
    if (k == "lorentz-p1") return lorentz_p1_norm(f, a.p);
    if (k == "lorentz-pinf") return lorentz_pinf_norm(f, a.p);
    if (k == "llogl") return llogl_alpha_norm(f, a.alpha);
    if (k == "expl") return exp_l_alpha_norm(f, a.alpha);
    if (k == "marcinkiewicz") return marcinkiewicz_norm(f, parse_phi(a.phi));
    if (k == "lambda") return lambda_p_norm(f, parse_phi(a.phi), a.p);
    if (k == "linf-inf") return linf_inf_norm(f);
    if (k == "grand-lebesgue") return grand_lebesgue_norm(f, a.p, a.alpha);
    if (k == "grand-lebesgue-fk") return grand_lebesgue_fk_norm(f, a.p, a.alpha);
    if (k == "lambda-psi") return lambda_psi_alpha_norm(f, a.alpha, a.b);
    throw UsageError("unknown norm '" + k + "'");
}

void add_norm(CLI::App& app, std::function<int()>& action) {
    auto args = std::make_shared<NormArgs>();
    auto* cmd = app.add_subcommand("norm", "Norm of a step function; CSV columns: norm,value");
    cmd->add_option("--in", args->in, "step-function JSON file")->required();
    cmd->add_option("--kind", args->kind,
                    "lp, lorentz-p1, lorentz-pinf, llogl, expl, marcinkiewicz, lambda, linf-inf, grand-lebesgue, "
                    "grand-lebesgue-fk, lambda-psi");
    cmd->add_option("-p,--p", args->p, "exponent (inf allowed for lp)");
    cmd->add_option("--alpha", args->alpha, "Zygmund / grand Lebesgue / ψ_α exponent");
    cmd->add_option("--b", args->b, "ψ_α base, > e^e");
    cmd->add_option("--phi", args->phi, "quasi-concave φ: power:a or logpow:a,b");
    cmd->add_flag("--all", args->all, "every norm that applies to f with the given parameters");
    cmd->callback([args, &action] {
        action = [args] {
            const auto f = io::read_step(args->in);
            Csv csv(std::cout);
            csv.header({"norm", "value"});
            if (!args->all) {
                csv.row(args->kind, one_norm(f, *args));
                return 0;
            }
            for (const char* kind : {"lp", "lorentz-p1", "lorentz-pinf", "llogl", "expl", "marcinkiewicz", "lambda",
                                     "linf-inf", "grand-lebesgue", "grand-lebesgue-fk", "lambda-psi"}) {
                NormArgs a = *args;
                a.kind = kind;
                try {
                    csv.row(kind, one_norm(f, a));
                } catch (const DomainError&) {
                    // Norms tied to L = 1 or L ≤ 1 are skipped for other domains.
                } catch (const ParameterError&) {
                }
            }
            return 0;
        };
    });
}

void add_kfun(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string in;
        std::string t;
        double t_lo = 1e-6;
        double t_hi = 1.0;
        int per_decade = 8;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("kfun", "K and J functionals; CSV columns: t,K,J,f_double_star");
    cmd->add_option("--in", args->in, "step-function JSON file")->required();
    cmd->add_option("--t", args->t, "comma-separated t values (default: decade grid)");
    cmd->add_option("--t-lo", args->t_lo);
    cmd->add_option("--t-hi", args->t_hi);
    cmd->add_option("--per-decade", args->per_decade);
    cmd->callback([args, &action] {
        action = [args] {
            const auto f = io::read_step(args->in);
            const auto ts = args->t.empty() ? num::decade_grid(args->t_lo, args->t_hi, args->per_decade)
                                            : parse_list(args->t);
            Csv csv(std::cout);
            csv.header({"t", "K", "J", "f_double_star"});
            for (double t : ts) {
                const double fss = t <= f.domain_length() ? double_star(f, t) : k_functional(t, f) / t;
                csv.row(t, k_functional(t, f), j_functional(t, f), fss);
            }
            return 0;
        };
    });
}

void add_envelope(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string weight = "one";
        double t_lo = 1e-4;
        double t_hi = 1e4;
        int points = 513;
        bool measure = false;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand(
        "envelope", "τ(t) = inf_θ M(θ)t^θ; CSV columns: t,tau,theta,w (w = representing density at t)");
    cmd->add_option("--weight", args->weight, "one, yano, theta:a,b[,c], p:a,b[,d[,c]], exp:..., conj:...");
    cmd->add_option("--t-lo", args->t_lo);
    cmd->add_option("--t-hi", args->t_hi);
    cmd->add_option("--points", args->points, "log-uniform grid size");
    cmd->add_flag("--measure", args->measure, "print the representing measure as JSON instead");
    cmd->callback([args, &action] {
        action = [args] {
            const auto grid = num::log_grid(args->t_lo, args->t_hi, args->points);
            const auto env = concave_envelope(WeightSpec::parse(args->weight), grid);
            const auto mu = representing_measure(env);
            if (args->measure) {
                io::Json j;
                j["alpha"] = mu.alpha;
                j["beta"] = mu.beta;
                j["atoms"] = io::Json::array();
                for (const auto& a : mu.atoms) j["atoms"].push_back({{"location", a.location}, {"mass", a.mass}});
                j["density"] = io::Json::array();
                for (const auto& d : mu.density) j["density"].push_back(io::Json::array({d.r, d.w}));
                const auto res = reconstruction_residual(env, mu);
                j["residual_max_rel"] = res.max_rel;
                std::cout << io::dump(j);
                return 0;
            }
            Csv csv(std::cout);
            csv.header({"t", "tau", "theta", "w"});
            for (std::size_t i = 0; i < grid.size(); ++i)
                csv.row(grid[i], env.values()[i], env.argmin_theta.empty() ? 0.0 : env.argmin_theta[i],
                        mu.density_at(grid[i]));
            return 0;
        };
    });
}

void add_functor(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string what;
        std::string in;
        std::string weight = "p:-1,0";
        std::string scale = "lp";
        double alpha = 1.0;
        double q = 1.0;
        std::string lattice = "sup";
        bool dp_over_p = false;
        std::string t;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("functor", "Extrapolation functors applied to a step function");
    cmd->add_option("what", args->what, "delta, sigma, ffunctor or scalek")
        ->required()
        ->check(CLI::IsMember({"delta", "sigma", "ffunctor", "scalek"}));
    cmd->add_option("--in", args->in, "step-function JSON file")->required();
    cmd->add_option("--weight", args->weight, "weight w(p) (delta, ffunctor) or M(θ) (scalek)");
    cmd->add_option("--scale", args->scale, "delta scale: lp, lorentz-p1, lorentz-pinf");
    cmd->add_option("--alpha", args->alpha, "sigma: L(LogL)^α exponent");
    cmd->add_option("--q", args->q, "ffunctor: lattice exponent for --lattice lq");
    cmd->add_option("--lattice", args->lattice, "ffunctor: sup or lq");
    cmd->add_flag("--dp-over-p", args->dp_over_p, "ffunctor: integrate against dp/p");
    cmd->add_option("--t", args->t, "scalek: comma-separated t values; CSV columns t,K_scale,K");
    cmd->callback([args, &action] {
        action = [args] {
            const auto f = io::read_step(args->in);
            Csv csv(std::cout);
            if (args->what == "delta") {
                const auto kind = args->scale == "lp"           ? ScaleSpec::Kind::Lp
                                  : args->scale == "lorentz-p1" ? ScaleSpec::Kind::LorentzP1
                                  : args->scale == "lorentz-pinf"
                                      ? ScaleSpec::Kind::LorentzPInf
                                      : throw UsageError("unknown scale '" + args->scale + "'");
                const auto d = delta_functor_norm(f, ScaleSpec::make(kind, WeightSpec::parse(args->weight)));
                csv.header({"value", "argmax_p"});
                csv.row(d.value, d.argmax_p);
            } else if (args->what == "sigma") {
                csv.header({"value"});
                csv.row(sigma_llogl_norm(f, args->alpha));
            } else if (args->what == "ffunctor") {
                LatticeParamSpec spec;
                spec.kind = args->lattice == "lq" ? LatticeParamSpec::Kind::Lq : LatticeParamSpec::Kind::Sup;
                spec.weight = WeightSpec::parse(args->weight);
                spec.q = args->q;
                spec.measure = args->dp_over_p ? LatticeParamSpec::Measure::DpOverP : LatticeParamSpec::Measure::Dp;
                csv.header({"value"});
                csv.row(f_functor_norm(f, spec));
            } else {
                const ScaleKFunctional kfun(WeightSpec::parse(args->weight));
                const auto k = k_curve(f);
                csv.header({"t", "K_scale", "K"});
                for (double t : args->t.empty() ? num::decade_grid(1e-3, 1e3, 4) : parse_list(args->t))
                    csv.row(t, kfun(t, k), k(t));
            }
            return 0;
        };
    });
}

void add_check(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string what;
        std::string phi = "logpow:0,-1";
        std::string weight = "theta:1,1";
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("check", "Criteria on φ or M; prints a JSON report, exit 2 on failure");
    cmd->add_option("what", args->what, "marcinkiewicz, strong-extrap or tempered")
        ->required()
        ->check(CLI::IsMember({"marcinkiewicz", "strong-extrap", "tempered"}));
    cmd->add_option("--phi", args->phi, "power:a or logpow:a,b");
    cmd->add_option("--weight", args->weight, "tempered: weight M(θ)");
    cmd->callback([args, &action] {
        action = [args] {
            Report r;
            if (args->what == "marcinkiewicz")
                r = marcinkiewicz_extrap_check(parse_phi(args->phi));
            else if (args->what == "strong-extrap")
                r = strong_extrap_check(parse_phi(args->phi));
            else
                r = tempered_check(WeightSpec::parse(args->weight));
            print_report(r);
            return report_exit(r);
        };
    });
}

void add_op(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string what;
        std::string in;
        std::string op = "hardy";
        std::string multipliers = "1";
        int resolution = 8;
        std::string p = "1.1,1.5,2,4";
        std::string form = "ex5";
        bool lower = false;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("op", "Model operators on step functions");
    cmd->add_option("what", args->what, "apply, norm-sweep or yano-check")
        ->required()
        ->check(CLI::IsMember({"apply", "norm-sweep", "yano-check"}));
    cmd->add_option("--in", args->in, "step-function JSON file (apply, yano-check)");
    cmd->add_option("--op", args->op, "hardy, dual-hardy, calderon, identity, diagonal");
    cmd->add_option("--multipliers", args->multipliers, "diagonal multipliers, comma-separated");
    cmd->add_option("--resolution", args->resolution, "subintervals per input piece");
    cmd->add_option("--p", args->p, "norm-sweep exponents; CSV columns p,lower,delta,lower_times_inverse_norm");
    cmd->add_option("--form", args->form, "yano-check form: ex5, anunzia or becomes1");
    cmd->add_flag("--lower", args->lower, "apply: write the lower step approximation");
    cmd->callback([args, &action] {
        action = [args] {
            const auto op = parse_operator(args->op, args->resolution, args->multipliers);
            if (args->what == "norm-sweep") {
                Csv csv(std::cout);
                csv.header({"p", "lower", "delta", "lower_times_inverse_norm"});
                for (double p : parse_list(args->p)) {
                    const auto r = operator_norm_lower(op, p);
                    csv.row(p, r.value, r.delta, r.value * (p - 1.0) / p);
                }
                return 0;
            }
            if (args->in.empty()) throw UsageError("--in is required for " + args->what);
            const auto f = io::read_step(args->in);
            if (args->what == "apply") {
                std::cout << io::dump(io::to_json(args->lower ? apply_lower(op, f) : apply(op, f)));
                return 0;
            }
            const YanoForm form = args->form == "ex5"       ? YanoForm::Ex5
                                  : args->form == "anunzia" ? YanoForm::Anunzia
                                  : args->form == "becomes1"
                                      ? YanoForm::Becomes1
                                      : throw UsageError("unknown form '" + args->form + "'");
            const auto r = yano_endpoint_check(op, f, form);
            print_report(r);
            return report_exit(r);
        };
    });
}

void add_bilinear(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string what;
        std::string f;
        std::string g;
        std::string t = "1";
        std::string weight = "one";
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("bilinear", "Bilinear K-curve convolution and endpoint checks");
    cmd->add_option("what", args->what, "conv, calderon, kj-check or lagbi")
        ->required()
        ->check(CLI::IsMember({"conv", "calderon", "kj-check", "lagbi"}));
    cmd->add_option("--f", args->f, "first step-function JSON file")->required();
    cmd->add_option("--g", args->g, "second step-function JSON file")->required();
    cmd->add_option("--t", args->t, "conv/calderon: comma-separated t; CSV columns t,value");
    cmd->add_option("--weight", args->weight, "kj-check: weight M(θ) defining τ");
    cmd->callback([args, &action] {
        action = [args] {
            const auto f = io::read_step(args->f);
            const auto g = io::read_step(args->g);
            if (args->what == "conv" || args->what == "calderon") {
                const auto F = PiecewiseLinear::from(k_curve(f));
                const auto G = PiecewiseLinear::from(k_curve(g));
                Csv csv(std::cout);
                csv.header({"t", "value"});
                for (double t : parse_list(args->t))
                    csv.row(t, args->what == "conv" ? mult_convolution(F, G, t) : bilinear_calderon(f, g, t));
                return 0;
            }
            Report r;
            if (args->what == "kj-check") {
                const auto env = concave_envelope(WeightSpec::parse(args->weight), num::log_grid(1e-4, 1e4, 513));
                r = bilinear_kj_check(f, g, env);
            } else {
                r = lagbi_bounds(f, g);
            }
            print_report(r);
            return report_exit(r);
        };
    });
}

void add_schatten(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string what;
        std::string in;
        std::string image;
        double p = 2.0;
        double alpha = 1.0;
        double p0 = 2.0;
        std::string t = "1,2,4,8";
        bool witness = false;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("schatten", "Singular values and Schatten/Matsaev quantities of a matrix");
    cmd->add_option("what", args->what, "snumbers, norm, kfun, delta-check or calderon-check")
        ->required()
        ->check(CLI::IsMember({"snumbers", "norm", "kfun", "delta-check", "calderon-check"}));
    cmd->add_option("--in", args->in, "matrix: JSON [[[re,im],...],...] or CSV re,im pairs")->required();
    cmd->add_option("--image", args->image, "calderon-check: matrix T(A)");
    cmd->add_flag("--hardy-witness", args->witness, "calderon-check: use diag(H·diag(A)) as T(A)");
    cmd->add_option("--p", args->p, "norm: Schatten exponent (inf allowed)");
    cmd->add_option("--alpha", args->alpha, "Matsaev exponent");
    cmd->add_option("--p0", args->p0, "delta-check: upper end of the p-range");
    cmd->add_option("--t", args->t, "kfun: comma-separated t; CSV columns t,K");
    cmd->callback([args, &action] {
        action = [args] {
            const auto a = io::read_matrix(args->in);
            const auto s = s_numbers(a);
            Csv csv(std::cout);
            if (args->what == "snumbers") {
                csv.header({"j", "s"});
                for (std::size_t j = 0; j < s.size(); ++j) csv.row(double(j + 1), s.values()[j]);
            } else if (args->what == "norm") {
                csv.header({"schatten_p", "matsaev", "matsaev_dual"});
                csv.row(schatten_norm(s, args->p), matsaev_norm(s, args->alpha), matsaev_dual_norm(s, args->alpha));
            } else if (args->what == "kfun") {
                csv.header({"t", "K"});
                for (double t : parse_list(args->t)) csv.row(t, schatten_k(t, s));
            } else if (args->what == "delta-check") {
                print_report(matsaev_delta_check(s, args->alpha, args->p0));
            } else {
                if (args->image.empty() == !args->witness)
                    throw UsageError("calderon-check needs exactly one of --image and --hardy-witness");
                const auto ta = args->witness ? hardy_witness(a) : io::read_matrix(args->image);
                const auto r = noncomm_calderon_check(s, s_numbers(ta));
                print_report(r);
                return report_exit(r);
            }
            return 0;
        };
    });
}

void add_gen(CLI::App& app, std::function<int()>& action) {
    struct Args {
        std::string family;
        double param = 0.5;
        int pieces = 1000;
        std::uint64_t seed = 0;
        std::string out;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("gen", "Generate a step-function JSON file");
    cmd->add_option("--family", args->family, "indicator (a), power (a), logpow (beta), random (seed)")->required();
    cmd->add_option("--param", args->param, "family parameter");
    cmd->add_option("--pieces", args->pieces, "pieces for power/logpow, max pieces for random");
    cmd->add_option("--seed", args->seed, "random seed");
    cmd->add_option("--out", args->out, "output file (default stdout)");
    cmd->callback([args, &action] {
        action = [args] {
            const auto f = gen::family(args->family, args->param, args->pieces, args->seed);
            auto j = io::to_json(f);
            // Recorded so a file can be regenerated.
            j["generator"] = {{"family", args->family},
                              {"param", args->param},
                              {"pieces", args->pieces},
                              {"seed", args->seed}};
            if (args->out.empty())
                std::cout << io::dump(j);
            else
                io::write_text(args->out, io::dump(j));
            return 0;
        };
    });
}

// ---------------------------------------------------------------------------

io::Json check_json(const verify::CheckResult& c) {
    io::Json j;
    j["id"] = c.id;
    j["description"] = c.description;
    j["inputs_digest"] = c.inputs_digest;
    j["measured"] = io::number(c.measured);
    j["relation"] = c.relation;
    j["bound"] = io::number(c.bound);
    j["pass"] = c.pass;
    io::Json details = io::Json::object();
    for (const auto& [k, v] : c.details) details[k] = io::number(v);
    j["details"] = std::move(details);
    return j;
}

void write_reports(const fs::path& dir, const std::vector<verify::SuiteResult>& results, const Config& cfg) {
    io::Json report;
    report["generated_at"] = utc_now();
    std::string cfg_text;
    for (const auto& [k, v] : cfg.entries()) cfg_text += k + "=" + v + "\n";
    report["config_digest"] = verify::fnv1a_hex(cfg_text);
    bool all = true;
    io::Json suites = io::Json::array();
    std::ostringstream checks_csv;
    Csv checks(checks_csv);
    checks.header({"id", "suite", "measured", "relation", "bound", "pass", "inputs_digest"});
    for (const auto& s : results) {
        io::Json js;
        js["name"] = s.name;
        js["criterion"] = s.criterion;
        js["pass"] = s.pass();
        js["checks"] = io::Json::array();
        for (const auto& c : s.checks) {
            js["checks"].push_back(check_json(c));
            checks.row(c.id, s.name, c.measured, c.relation, c.bound, c.pass ? "true" : "false", c.inputs_digest);
        }
        for (const auto& t : s.tables) {
            std::ostringstream out;
            for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
            out << "\n";
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
                out << "\n";
            }
            io::write_text(dir / (s.name + "_" + t.name + ".csv"), out.str());
        }
        all = all && s.pass();
        suites.push_back(std::move(js));
    }
    report["pass"] = all;
    report["suites"] = std::move(suites);
    io::write_text(dir / "report.json", io::dump(report));
    io::write_text(dir / "checks.csv", checks_csv.str());
}

void add_verify(CLI::App& app, std::function<int()>& action, std::string& config_path) {
    struct Args {
        std::string suite = "all";
        bool list = false;
        std::string out;
        int threads = 0;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("verify", "Run acceptance suites; exit 0 iff every check passes");
    cmd->add_option("suite", args->suite, "suite name or all (default: verify.suites from config, else all)");
    cmd->add_flag("--list", args->list, "list suites and exit");
    cmd->add_option("--out", args->out, "directory for report.json and CSV tables");
    cmd->add_option("--threads", args->threads, "suites in flight (default: hardware threads)");
    cmd->callback([args, &action, &config_path] {
        action = [args, &config_path] {
            if (args->list) {
                for (const auto& s : verify::suites())
                    std::cout << s.criterion << "\t" << s.name << "\t" << s.summary << "\n";
                return 0;
            }
            const auto cfg = Config::resolve(config_path);
            std::vector<std::string> names;
            std::string selection = args->suite;
            if (selection == "all" && cfg.has("verify.suites")) selection = cfg.get_string("verify.suites", "all");
            if (selection == "all") {
                for (const auto& s : verify::suites()) names.push_back(s.name);
            } else {
                std::stringstream ss(selection);
                for (std::string n; std::getline(ss, n, ',');) names.push_back(n);
            }
            int threads = args->threads > 0 ? args->threads
                                            : cfg.get_int("verify.threads",
                                                          static_cast<int>(std::thread::hardware_concurrency()));
            const auto results = verify::run_suites(names, cfg, threads);
            bool all = true;
            for (const auto& s : results) {
                for (const auto& c : s.checks) {
                    std::printf("%s %-5s %-15s measured=%-12.6g %s %-10.6g %s\n", c.pass ? "PASS" : "FAIL",
                                c.id.c_str(), s.name.c_str(), c.measured, c.relation.c_str(), c.bound,
                                c.description.c_str());
                    if (!c.pass)
                        for (const auto& [k, v] : c.details) std::printf("      %s = %.9g\n", k.c_str(), v);
                }
                std::fprintf(stderr, "suite %s: %.2fs\n", s.name.c_str(), s.seconds);
                all = all && s.pass();
            }
            if (!args->out.empty()) write_reports(args->out, results, cfg);
            return all ? 0 : kExitFail;
        };
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extrapolation of rearrangement-invariant spaces: norms, functionals, operators, verification"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "configuration file (EXTRAPKIT_CONFIG takes precedence)");
    std::function<int()> action;
    add_norm(app, action);
    add_kfun(app, action);
    add_envelope(app, action);
    add_functor(app, action);
    add_check(app, action);
    add_op(app, action);
    add_bilinear(app, action);
    add_schatten(app, action);
    add_gen(app, action);
    add_verify(app, action, config_path);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        return action ? action() : 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
