// ofq: numerical toolkit for free orthogonal quantum groups O_F^+.
//
// Subcommands: canonicalize, params, dims, norms, haagerup-bounds,
// toeplitz-bound, heat, multiplier-check, interp-witness, repro.
// Output is deterministic for a fixed configuration: JSON keys sorted,
// numbers at 17 significant digits, CSV with '.' decimal separator.
// Exit codes: 0 success, 2 validation error, 3 convergence failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "ofq/acceptance.hpp"
#include "ofq/fmatrix.hpp"
#include "ofq/haagerup.hpp"
#include "ofq/heat.hpp"
#include "ofq/interp.hpp"
#include "ofq/json_io.hpp"
#include "ofq/polynomial.hpp"
#include "ofq/repdata.hpp"
#include "ofq/spectral.hpp"

namespace {

using ofq::jsonio::Value;

// JSON config files use the same keys as the long flags: {"t": 8.3, ...}.
// Applied as a pre-parse step that appends missing flags, so explicit
// command-line flags always win.
void apply_config_defaults(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return;

    std::ifstream in(path);
    if (!in) throw CLI::FileError("cannot open config file " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw CLI::FileError("config file is not a JSON object: " + path);

    for (const auto& [key, val] : j.items()) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present || key == "config") continue;
        std::string text;
        if (val.is_array()) {
            for (const auto& v : val) {
                if (!text.empty()) text += ',';
                text += v.is_string() ? v.get<std::string>() : v.dump();
            }
        } else {
            text = val.is_string() ? val.get<std::string>() : val.dump();
        }
        args.push_back(flag);
        args.push_back(text);
    }
}

int thread_budget() {
    if (const char* env = std::getenv("OFQ_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel sweep: results land in a pre-sized vector by index.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(thread_budget(), std::max(1, n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) ofq::fail(ofq::errc::invalid_argument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) ofq::fail(ofq::errc::invalid_argument, "cannot write " + out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

struct ContextInput {
    std::vector<double> lambda;
    int sign = 1;
    std::string matrix_path;

    void add_flags(CLI::App* cmd) {
        auto* l = cmd->add_option("--lambda", lambda,
                                  "canonical lambda vector (comma separated)")
                      ->delimiter(',');
        cmd->add_option("--sign", sign, "epsilon of the canonical form (+1 or -1)")
            ->check(CLI::IsMember({1, -1}));
        auto* m = cmd->add_option("--matrix", matrix_path, "JSON file with the F matrix");
        m->excludes(l);
        l->excludes(m);
    }

    ofq::CanonicalF canonical() const {
        if (!matrix_path.empty()) {
            ofq::jsonio::FInput in = ofq::jsonio::parse_f_input(slurp(matrix_path));
            if (in.is_shorthand) return ofq::canonical_from_lambda(in.lambda, in.sign);
            return ofq::canonicalize(in.matrix).canon;
        }
        if (lambda.empty())
            ofq::fail(ofq::errc::invalid_argument, "provide --lambda or --matrix");
        return ofq::canonical_from_lambda(lambda, sign);
    }
};

Value group_params_json(const ofq::GroupParams& g) {
    Value::Object o;
    o["N"] = Value(g.N);
    o["N_q"] = Value(g.N_q);
    o["q"] = Value(g.q);
    o["r_q"] = Value(g.r_q);
    o["C_q"] = Value(g.C_q);
    o["C_q_tail"] = Value(g.C_q_tail);
    o["F_norm"] = Value(g.F_norm);
    o["kac"] = Value(g.kac);
    return Value(std::move(o));
}

std::string csv_double(double v) { return ofq::jsonio::format_double(v); }

struct Options {
    ContextInput ctx;
    std::string out;
    std::string format = "json";
    bool pretty = false;
    double series_tol = 1e-14;
    int kmax = 10;
    int M = 400;
    int K = 200;
    std::vector<int> gen;
    std::vector<double> coeffs;
    int s = 1, t = 1;
    double time_t = 0.0;
    double rho = 1.0, alpha = 0.0, amp = 1.0;
    double p = 1.5;
    int n = 64;
    std::string pattern = "ones";
    std::vector<double> xs;
    std::string sweep;
    std::string poly_path;
    std::string echo_poly;
    bool have_p = false;
};

int cmd_canonicalize(const Options& opt) {
    ofq::jsonio::FInput in = ofq::jsonio::parse_f_input(slurp(opt.ctx.matrix_path));
    Value::Object o;
    if (in.is_shorthand) {
        ofq::CanonicalF c = ofq::canonical_from_lambda(in.lambda, in.sign);
        o["N"] = Value(c.N);
        o["lambda"] = Value::array(c.lambda);
        o["n"] = Value(c.n_small);
        o["sign"] = Value(c.sign);
        o["residual"] = Value(0.0);
    } else {
        ofq::CanonicalizeResult res = ofq::canonicalize(in.matrix);
        o["N"] = Value(res.canon.N);
        o["lambda"] = Value::array(res.canon.lambda);
        o["n"] = Value(res.canon.n_small);
        o["sign"] = Value(res.canon.sign);
        o["residual"] = Value(res.residual);
        Value::Array wre, wim;
        for (int i = 0; i < res.canon.N; ++i) {
            Value::Array rre, rim;
            for (int j = 0; j < res.canon.N; ++j) {
                rre.emplace_back(res.w(i, j).real());
                rim.emplace_back(res.w(i, j).imag());
            }
            wre.emplace_back(Value(std::move(rre)));
            wim.emplace_back(Value(std::move(rim)));
        }
        o["w_re"] = Value(std::move(wre));
        o["w_im"] = Value(std::move(wim));
    }
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_params(const Options& opt) {
    ofq::GroupParams g = ofq::params(opt.ctx.canonical(), opt.series_tol);
    Value v = group_params_json(g);
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_dims(const Options& opt) {
    ofq::CanonicalF c = opt.ctx.canonical();
    ofq::GroupParams g = ofq::params(c, opt.series_tol);
    ofq::DimTable t = ofq::make_dim_table(g, opt.kmax);
    if (opt.format == "csv") {
        std::ostringstream os;
        os << "k,d_k,n_k,log_d_k\n";
        for (int k = 0; k <= opt.kmax; ++k)
            os << k << ',' << csv_double(t.d[static_cast<std::size_t>(k)]) << ','
               << csv_double(t.n_cl[static_cast<std::size_t>(k)]) << ','
               << csv_double(t.log_d[static_cast<std::size_t>(k)]) << '\n';
        emit(os.str(), opt.out);
        return 0;
    }
    Value::Object o;
    o["N_q"] = Value(g.N_q);
    o["d"] = Value::array(t.d);
    o["n_cl"] = Value::array(t.n_cl);
    o["log_d"] = Value::array(t.log_d);
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_norms(const Options& opt) {
    ofq::AnalyticPoly f = ofq::jsonio::parse_polynomial(slurp(opt.poly_path));
    if (!opt.echo_poly.empty())
        emit(ofq::jsonio::polynomial_to_json(f), opt.echo_poly);
    Value::Object o;
    o["l2"] = Value(ofq::l2_norm(f));
    Value::Array degrees;
    for (const auto& dn : ofq::degree_norms(f)) {
        Value::Object d;
        d["k"] = Value(dn.k);
        d["l2"] = Value(dn.l2);
        d["fourier_hs"] = Value(dn.fourier_hs);
        degrees.emplace_back(Value(std::move(d)));
    }
    o["degrees"] = Value(std::move(degrees));
    if (opt.have_p) o["lp_equiv"] = Value(ofq::lp_equiv_norm(f, opt.p));
    o["terms"] = Value(static_cast<long long>(f.term_count()));
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_haagerup_bounds(const Options& opt) {
    ofq::CanonicalF c = opt.ctx.canonical();
    ofq::GroupParams g = ofq::params(c, opt.series_tol);
    const int s = opt.gen.size() == 2 ? opt.gen[0] : 1;
    const int t = opt.gen.size() == 2 ? opt.gen[1] : 1;

    // The Toeplitz lower bound needs the single-generator weight condition;
    // otherwise the L2 floor is the only unconditional lower bound.
    const bool toeplitz_ok = s != c.N + 1 - s && t != c.N + 1 - t && c.q1(s) * c.q1(t) > 1.0;

    struct Row {
        double lower = 0, upper = 0, R = 0, ratio = 0;
        bool converged = false;
    };
    std::vector<Row> rows(static_cast<std::size_t>(opt.kmax) + 1);
    std::atomic<bool> all_converged{true};
    parallel_for(opt.kmax + 1, [&](int k) {
        ofq::AnalyticPoly f(c);
        f.add_term(ofq::IndexTuple(static_cast<std::size_t>(k), s),
                   ofq::IndexTuple(static_cast<std::size_t>(k), t), 1.0);
        ofq::BoundReport rep = ofq::bound_report(f, g);
        double lower = rep.lower;
        bool converged = true;
        if (toeplitz_ok) {
            std::vector<std::complex<double>> x(static_cast<std::size_t>(k) + 1, 0.0);
            x.back() = 1.0;
            ofq::SingleGenPoly p = ofq::SingleGenPoly::make(c, s, t, x);
            ofq::LowerBoundInfo lb = ofq::toeplitz_lower_detail(p, opt.M);
            converged = lb.converged;
            if (!lb.converged) all_converged = false;
            lower = std::max(lower, lb.value);
        }
        rows[static_cast<std::size_t>(k)] =
            Row{lower, rep.upper, rep.R, rep.upper / lower, converged};
    });

    std::ostringstream os;
    os << "k,lower,upper,R,ratio\n";
    for (int k = 0; k <= opt.kmax; ++k) {
        const Row& r = rows[static_cast<std::size_t>(k)];
        os << k << ',' << csv_double(r.lower) << ',' << csv_double(r.upper) << ','
           << csv_double(r.R) << ',' << csv_double(r.ratio) << '\n';
    }
    emit(os.str(), opt.out);
    return all_converged ? 0 : 3;
}

int cmd_toeplitz_bound(const Options& opt) {
    ofq::CanonicalF c = opt.ctx.canonical();
    std::vector<std::complex<double>> x(opt.coeffs.begin(), opt.coeffs.end());
    ofq::SingleGenPoly p = ofq::SingleGenPoly::make(c, opt.s, opt.t, x);
    ofq::LowerBoundInfo lb = ofq::toeplitz_lower_detail(p, opt.M);
    Value::Object o;
    o["lower"] = Value(lb.value);
    o["upper"] = Value(ofq::cstar_upper_bound(p));
    bool nonneg = true;
    for (double v : opt.coeffs) nonneg = nonneg && v >= 0.0;
    if (nonneg) o["sharp_reference"] = Value(ofq::sharp_reference(p));
    o["M"] = Value(opt.M);
    o["converged"] = Value(lb.converged);
    o["iterations"] = Value(static_cast<long long>(lb.iterations));
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return lb.converged ? 0 : 3;
}

int cmd_heat(const Options& opt) {
    ofq::CanonicalF c = opt.ctx.canonical();
    ofq::GroupParams g = ofq::params(c, opt.series_tol);
    const double tF = ofq::optimal_time(g);
    Value::Object o;
    o["t_F"] = Value(tF);
    o["kac"] = Value(g.kac);
    o["t"] = Value(opt.time_t);
    const bool bounded = ofq::classify_multiplier(ofq::heat_family(opt.time_t, g), g) ==
                         ofq::MultiplierVerdict::bounded;
    o["verdict"] = Value(bounded ? "Bounded" : "Unbounded");
    ofq::HeatSpec spec(g);
    std::vector<double> cs;
    for (int k = 0; k <= opt.K; ++k) cs.push_back(spec.c(k));
    o["c"] = Value::array(cs);
    ofq::ProbeReport probe = ofq::series_probe(
        [&](int k) { return -opt.time_t * cs[static_cast<std::size_t>(k)]; }, g, opt.K);
    o["partial_sum"] = Value(probe.partial_sum);
    o["tail_bound"] = Value(probe.tail_bound);
    o["probe_ratio"] = Value(probe.ratio);
    o["probe_verdict"] = Value(ofq::probe_verdict_name(probe.verdict));
    o["K"] = Value(opt.K);
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_multiplier_check(const Options& opt) {
    ofq::CanonicalF c = opt.ctx.canonical();
    ofq::GroupParams g = ofq::params(c, opt.series_tol);
    ofq::MultiplierFamily fam{opt.amp, opt.rho, opt.alpha};
    const bool bounded =
        ofq::classify_multiplier(fam, g) == ofq::MultiplierVerdict::bounded;
    // certified tail ratio of the geometric-polynomial family when below 1
    const double base = fam.rho * fam.rho * std::pow(g.F_norm, 4.0);
    const double ratio_bound =
        base * std::max(1.0, std::pow((opt.K + 2.0) / (opt.K + 1.0), 2.0 * fam.alpha));
    ofq::ProbeReport probe = ofq::series_probe(
        [&](int k) {
            return std::log(fam.A) + k * std::log(fam.rho) + fam.alpha * std::log(k + 1.0);
        },
        g, opt.K, ratio_bound < 1.0 ? ratio_bound : -1.0);
    Value::Object o;
    o["bounded"] = Value(bounded);
    o["verdict"] = Value(bounded ? "Bounded" : "Unbounded");
    o["rho"] = Value(fam.rho);
    o["alpha"] = Value(fam.alpha);
    o["A"] = Value(fam.A);
    o["boundary_product"] = Value(base);
    o["partial_sum"] = Value(probe.partial_sum);
    o["tail_bound"] = Value(probe.tail_bound);
    o["probe_verdict"] = Value(ofq::probe_verdict_name(probe.verdict));
    o["K"] = Value(opt.K);
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_interp_witness(const Options& opt) {
    ofq::CanonicalF c = opt.ctx.canonical();
    ofq::GroupParams g = ofq::params(c, opt.series_tol);

    auto pattern_x = [&](int n) {
        std::vector<double> x(static_cast<std::size_t>(n) + 1, 0.0);
        if (opt.pattern == "ones") {
            std::fill(x.begin(), x.end(), 1.0);
        } else if (opt.pattern == "e0") {
            x[0] = 1.0;
        } else if (opt.pattern == "geometric") {
            double v = 1.0;
            for (auto& xi : x) {
                xi = v;
                v *= 0.9;
            }
        } else {
            ofq::fail(ofq::errc::invalid_argument, "unknown pattern " + opt.pattern);
        }
        return x;
    };

    if (!opt.sweep.empty()) {
        int lo = 16, hi = 1024;
        if (std::sscanf(opt.sweep.c_str(), "%d..%d", &lo, &hi) != 2 || lo < 1 || hi < lo)
            ofq::fail(ofq::errc::invalid_argument, "sweep wants the form LO..HI");
        std::vector<int> ns;
        for (int n = lo; n <= hi; n *= 2) ns.push_back(n);
        std::vector<double> ratios(ns.size());
        parallel_for(static_cast<int>(ns.size()), [&](int i) {
            ofq::WitnessReport rep = ofq::separation_witness(
                opt.p, pattern_x(ns[static_cast<std::size_t>(i)]), g, c);
            ratios[static_cast<std::size_t>(i)] = rep.ratio;
        });
        std::ostringstream os;
        os << "n,ratio\n";
        for (std::size_t i = 0; i < ns.size(); ++i)
            os << ns[i] << ',' << csv_double(ratios[i]) << '\n';
        emit(os.str(), opt.out);
        return 0;
    }

    std::vector<double> x = opt.xs.empty() ? pattern_x(opt.n) : opt.xs;
    ofq::WitnessReport rep = ofq::separation_witness(opt.p, x, g, c);
    Value::Object o;
    o["p"] = Value(rep.p);
    o["n"] = Value(rep.n);
    o["lhs"] = Value(rep.lhs);
    o["rhs_bound"] = Value(rep.rhs_bound);
    o["ratio"] = Value(rep.ratio);
    o["x"] = Value::array(rep.x);
    Value v(std::move(o));
    emit(opt.pretty ? v.dump_pretty() : v.dump(), opt.out);
    return 0;
}

int cmd_repro(const Options& opt) {
    std::vector<ofq::accept::CriterionResult> results = ofq::accept::run_all();
    emit(ofq::accept::format_report(results), opt.out);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for free orthogonal quantum groups O_F+"};
    app.require_subcommand(1);

    Options opt;
    std::function<int()> action;

    std::string config_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out, "output path (default: stdout)");
        cmd->add_flag("--pretty", opt.pretty, "indent JSON output");
        cmd->add_option("--config", config_path,
                        "JSON config file with flag defaults (flags win)");
    };

    auto* canon =
        app.add_subcommand("canonicalize", "reduce F to canonical anti-diagonal form");
    canon->add_option("--matrix", opt.ctx.matrix_path, "JSON file with the F matrix")
        ->required();
    add_common(canon);
    canon->callback([&] { action = [&] { return cmd_canonicalize(opt); }; });

    auto* par = app.add_subcommand("params", "derived scalar parameters of O_F+");
    opt.ctx.add_flags(par);
    par->add_option("--series-tol", opt.series_tol, "C_q product truncation tolerance");
    add_common(par);
    par->callback([&] { action = [&] { return cmd_params(opt); }; });

    auto* dims = app.add_subcommand("dims", "quantum/classical dimension table");
    opt.ctx.add_flags(dims);
    dims->add_option("--kmax", opt.kmax, "largest degree");
    dims->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    add_common(dims);
    dims->callback([&] { action = [&] { return cmd_dims(opt); }; });

    auto* norms =
        app.add_subcommand("norms", "L2/degree/Lp-equivalent norms of a polynomial");
    norms->add_option("--poly", opt.poly_path, "polynomial JSON file")->required();
    auto* popt = norms->add_option("--p", opt.p, "also evaluate the Lp-equivalent norm");
    norms->add_option("--echo-poly", opt.echo_poly,
                      "write the polynomial back out in canonical term order");
    add_common(norms);
    norms->callback([&] {
        opt.have_p = popt->count() > 0;
        action = [&] { return cmd_norms(opt); };
    });

    auto* haag = app.add_subcommand("haagerup-bounds",
                                    "two-sided bounds for (u_st)^k, k = 0..kmax (CSV)");
    opt.ctx.add_flags(haag);
    haag->add_option("--gen", opt.gen, "generator indices s,t")->delimiter(',')->expected(2);
    haag->add_option("--kmax", opt.kmax, "largest degree");
    haag->add_option("--M", opt.M, "Toeplitz truncation size");
    add_common(haag);
    haag->callback([&] { action = [&] { return cmd_haagerup_bounds(opt); }; });

    auto* toep = app.add_subcommand(
        "toeplitz-bound", "certified C*-norm bracket for a single-generator polynomial");
    opt.ctx.add_flags(toep);
    toep->add_option("--s", opt.s, "row generator index");
    toep->add_option("--t", opt.t, "column generator index");
    toep->add_option("--coeffs", opt.coeffs, "coefficients x_0,x_1,...")
        ->delimiter(',')
        ->required();
    toep->add_option("--M", opt.M, "truncation size (columns - 1)");
    add_common(toep);
    toep->callback([&] { action = [&] { return cmd_toeplitz_bound(opt); }; });

    auto* heat =
        app.add_subcommand("heat", "heat semigroup: t_F, eigenvalues, series probe");
    opt.ctx.add_flags(heat);
    heat->add_option("--t", opt.time_t, "time parameter (default 0)");
    heat->add_option("--K", opt.K, "series truncation degree");
    add_common(heat);
    heat->callback([&] { action = [&] { return cmd_heat(opt); }; });

    auto* mult = app.add_subcommand("multiplier-check",
                                    "L2->Linf verdict for phi(k) = A rho^k (k+1)^alpha");
    opt.ctx.add_flags(mult);
    mult->add_option("--rho", opt.rho, "geometric rate")->required();
    mult->add_option("--alpha", opt.alpha, "polynomial exponent");
    mult->add_option("--A", opt.amp, "amplitude");
    mult->add_option("--K", opt.K, "probe truncation degree");
    add_common(mult);
    mult->callback([&] { action = [&] { return cmd_multiplier_check(opt); }; });

    auto* wit =
        app.add_subcommand("interp-witness", "Lorentz-vs-Lp separation witness report");
    opt.ctx.add_flags(wit);
    wit->add_option("--p", opt.p, "exponent in (1,2)")->required();
    wit->add_option("--n", opt.n, "truncation degree");
    wit->add_option("--pattern", opt.pattern, "ones | e0 | geometric");
    wit->add_option("--x", opt.xs, "explicit coefficients")->delimiter(',');
    wit->add_option("--sweep", opt.sweep, "emit CSV of ratios for n = LO..HI (doubling)");
    add_common(wit);
    wit->callback([&] { action = [&] { return cmd_interp_witness(opt); }; });

    auto* rep = app.add_subcommand("repro", "run the full acceptance suite");
    rep->add_option("--out", opt.out, "report path (default: stdout)");
    rep->callback([&] { action = [&] { return cmd_repro(opt); }; });

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        apply_config_defaults(args);
        std::reverse(args.begin(), args.end());  // CLI11 consumes reversed args
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        return action();
    } catch (const ofq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ofq::errc::convergence_failure ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
