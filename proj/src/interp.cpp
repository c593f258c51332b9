#include "ofq/interp.hpp"

#include <algorithm>
#include <cmath>

#include "ofq/kernels.hpp"

namespace ofq {

namespace {

// ‖f̂(k)Q(k)^{1/2}‖_{S²} assembled directly from the sparse terms:
// (Σ |x|²/q_weight(s))^{1/2}/d_k. Independent arithmetic path from the
// degree-norm route (which divides the monomial L² norms by √d_k).
double raw_fourier_hs(const AnalyticPoly& f, int k, const DimTable& dims) {
    std::vector<double> re, im, w;
    for (const auto& [key, x] : f.terms().at(k)) {
        re.push_back(x.real());
        im.push_back(x.imag());
        w.push_back(std::exp(-log_q_weight(key.first, f.context())));
    }
    const double s = kernels::weighted_sumsq(re.data(), im.data(), w.data(), re.size());
    return std::sqrt(s) * std::exp(-dims.log_d[static_cast<std::size_t>(k)]);
}

DimTable dims_for(const AnalyticPoly& f) {
    GroupParams g;
    g.N = f.context().N;
    g.N_q = 0.0;
    for (double l : f.context().lambda) g.N_q += l * l;
    return make_dim_table(g, std::max(1, f.max_degree()));
}

}  // namespace

double l1_functional(const AnalyticPoly& f, const GroupParams& g) {
    if (f.empty()) return 0.0;
    const DimTable dims = dims_for(f);
    const double log_f2 = 2.0 * std::log(g.F_norm);
    double sup = 0.0;
    for (const DegreeNorm& dn : degree_norms(f)) {
        const double simplified = std::exp(-dn.k * log_f2) * dn.l2;
        const double raw = std::exp(0.5 * dims.log_d[static_cast<std::size_t>(dn.k)] -
                                    dn.k * log_f2) *
                           raw_fourier_hs(f, dn.k, dims);
        if (std::abs(simplified - raw) > 1e-12 * std::max(1.0, simplified))
            fail(errc::invalid_argument, "Fourier-form consistency check failed");
        sup = std::max(sup, simplified);
    }
    return sup;
}

double lorentz_functional(const AnalyticPoly& f, double p, const GroupParams& g) {
    if (!(p > 1.0 && p <= 2.0)) fail(errc::bad_exponent, "p must lie in (1,2]");
    if (f.empty()) return 0.0;
    const double log_f2 = 2.0 * std::log(g.F_norm);
    std::vector<double> terms;
    for (const DegreeNorm& dn : degree_norms(f)) {
        if (dn.l2 == 0.0) continue;
        terms.push_back(std::exp(-dn.k * (2.0 - p) * log_f2) * std::pow(dn.l2, p));
    }
    return std::pow(kernels::sum(terms.data(), terms.size()), 1.0 / p);
}

WitnessReport separation_witness(double p, const std::vector<double>& x, const GroupParams& g,
                                 const CanonicalF& c) {
    if (!(p > 1.0 && p < 2.0)) fail(errc::bad_exponent, "p must lie in (1,2)");
    if (g.kac) fail(errc::kac_context, "witness is vacuous in a Kac context");
    if (x.empty()) fail(errc::invalid_argument, "need at least one coefficient");

    WitnessReport rep;
    rep.p = p;
    rep.x = x;
    rep.n = static_cast<int>(x.size()) - 1;

    std::vector<double> ap(x.size()), a2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        ap[i] = std::pow(std::abs(x[i]), p);
        a2[i] = x[i] * x[i];
    }
    rep.lhs = std::pow(kernels::sum(ap.data(), ap.size()), 1.0 / p);
    rep.rhs_bound = std::sqrt(kernels::sum(a2.data(), a2.size()));
    rep.ratio = rep.lhs / rep.rhs_bound;

    // Internal identity: the Lorentz functional on the witness collapses to
    // (Σ|x_k|^p)^{1/p}. Verified through the log-domain degree norms at every
    // n, and through the materialized polynomial whenever the coefficients
    // are representable in binary64.
    const int n = rep.n;
    const DimTable dims = make_dim_table(g, std::max(1, n));
    const double log_f = std::log(g.F_norm);
    const double log_l1 = std::log(c.abs_lambda(1));
    std::vector<double> terms;
    double max_log_coeff = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (x[static_cast<std::size_t>(k)] == 0.0) continue;
        const double log_coeff = std::log(std::abs(x[static_cast<std::size_t>(k)])) +
                                 0.5 * dims.log_d[static_cast<std::size_t>(k)] +
                                 (4.0 - p) * k / p * log_f;
        max_log_coeff = std::max(max_log_coeff, log_coeff);
        // ‖f_k‖₂ = coeff·‖(u_11)^k‖₂, log ‖(u_11)^k‖₂ = k·log|λ_1| - ½ log d_k
        const double log_fk = log_coeff + k * log_l1 -
                              0.5 * dims.log_d[static_cast<std::size_t>(k)];
        terms.push_back(std::exp(-k * (2.0 - p) * 2.0 * log_f + p * log_fk));
    }
    const double lorentz_logdomain =
        std::pow(kernels::sum(terms.data(), terms.size()), 1.0 / p);
    if (std::abs(lorentz_logdomain - rep.lhs) > 1e-9 * std::max(1.0, rep.lhs))
        fail(errc::invalid_argument, "witness identity failed in the log domain");

    if (max_log_coeff < 600.0) {
        AnalyticPoly f(c);
        for (int k = 0; k <= n; ++k) {
            if (x[static_cast<std::size_t>(k)] == 0.0) continue;
            IndexTuple ones(static_cast<std::size_t>(k), 1);
            f.add_term(ones, ones,
                       x[static_cast<std::size_t>(k)] *
                           std::exp(0.5 * dims.log_d[static_cast<std::size_t>(k)] +
                                    (4.0 - p) * k / p * log_f));
        }
        const double lor = lorentz_functional(f, p, g);
        if (std::abs(lor - rep.lhs) > 1e-9 * std::max(1.0, rep.lhs))
            fail(errc::invalid_argument, "witness identity failed on the materialized family");
    }
    return rep;
}

}  // namespace ofq
