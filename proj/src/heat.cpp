#include "ofq/heat.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ofq {

double ck(int k, const GroupParams& g) {
    if (k < 0) fail(errc::invalid_argument, "degree must be nonnegative");
    if (k == 0) return 0.0;
    const double s2 = (g.N_q - 2.0) * (g.N_q + 2.0);
    const double s = std::sqrt(s2);
    const double qp = std::pow(g.q, 2 * (k + 1));
    return (k + 1) / s * (1.0 + qp) / (1.0 - qp) - g.N_q / s2;
}

double HeatSpec::c(int k) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    const double v = ck(k, params_);
    cache_.emplace(k, v);
    return v;
}

AnalyticPoly apply_heat(const AnalyticPoly& f, double t, const GroupParams& g) {
    if (!(t >= 0.0)) fail(errc::invalid_argument, "t must be nonnegative");
    AnalyticPoly out(f.context());
    for (const auto& [k, deg] : f.terms()) {
        const double factor = std::exp(-t * ck(k, g));
        for (const auto& [key, x] : deg) out.add_term(key.first, key.second, x * factor);
    }
    return out;
}

double optimal_time(const GroupParams& g) {
    if (g.kac) return 0.0;
    return 2.0 * std::sqrt((g.N_q - 2.0) * (g.N_q + 2.0)) * std::log(g.F_norm);
}

MultiplierFamily heat_family(double t, const GroupParams& g) {
    const double s = std::sqrt((g.N_q - 2.0) * (g.N_q + 2.0));
    MultiplierFamily fam;
    fam.rho = std::exp(-t / s);
    fam.alpha = 0.0;
    // e^{-t·c_k} = ρ^{k+1}·e^{t·N_q/(N_q²-4)}·(1 + decaying correction); the
    // envelope constant does not affect the verdict.
    fam.A = fam.rho * std::exp(t * g.N_q / (s * s));
    return fam;
}

MultiplierVerdict classify_multiplier(const MultiplierFamily& fam, const GroupParams& g) {
    if (!(fam.A > 0.0) || !(fam.rho > 0.0)) fail(errc::invalid_argument, "need A > 0, rho > 0");
    const double L = 2.0 * std::log(fam.rho) + 4.0 * std::log(g.F_norm);
    constexpr double boundary = 1e-12;
    if (L < -boundary) return MultiplierVerdict::bounded;
    if (L > boundary) return MultiplierVerdict::unbounded;
    return 2.0 * fam.alpha < -1.0 ? MultiplierVerdict::bounded : MultiplierVerdict::unbounded;
}

const char* probe_verdict_name(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::convergent_certified: return "ConvergentCertified";
        case ProbeVerdict::convergent_estimated: return "ConvergentEstimated";
        case ProbeVerdict::divergent_evidence: return "DivergentEvidence";
        case ProbeVerdict::inconclusive: return "Inconclusive";
    }
    return "?";
}

ProbeReport series_probe(const std::function<double(int)>& log_phi, const GroupParams& g,
                         int K, double supplied_ratio) {
    if (K < 0) fail(errc::invalid_argument, "K must be nonnegative");
    ProbeReport rep;
    rep.K = K;
    const double log_f4 = 4.0 * std::log(g.F_norm);
    std::vector<double> log_terms(static_cast<std::size_t>(K) + 1);
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double lp = log_phi(k);
        if (!std::isfinite(lp)) fail(errc::invalid_argument, "log phi must be finite");
        log_terms[static_cast<std::size_t>(k)] = 2.0 * lp + k * log_f4;
        sum += std::exp(log_terms[static_cast<std::size_t>(k)]);
    }
    rep.partial_sum = sum;

    // estimate from the last 10 consecutive term ratios; no samples, no claim
    const int first = std::max(1, K - 9);
    bool growing = K >= 1;
    double est = std::numeric_limits<double>::infinity();
    for (int k = first; k <= K; ++k) {
        const double r = std::exp(log_terms[static_cast<std::size_t>(k)] -
                                  log_terms[static_cast<std::size_t>(k - 1)]);
        est = (k == first) ? r : std::max(est, r);
        growing = growing && r >= 1.0;
    }

    rep.ratio_supplied = supplied_ratio >= 0.0;
    rep.ratio = rep.ratio_supplied ? supplied_ratio : est;
    rep.tail_bound = std::numeric_limits<double>::infinity();
    const double last_term = std::exp(log_terms[static_cast<std::size_t>(K)]);
    if (rep.ratio < 1.0) rep.tail_bound = last_term * rep.ratio / (1.0 - rep.ratio);

    if (rep.ratio_supplied && rep.ratio < 1.0) {
        rep.verdict = ProbeVerdict::convergent_certified;
    } else if (growing) {
        rep.verdict = ProbeVerdict::divergent_evidence;
    } else if (!rep.ratio_supplied && rep.ratio < 1.0) {
        // An estimated ratio too close to 1 cannot be extrapolated from a
        // finite sample (p-series boundaries look geometric there).
        const double guard = 3.0 / std::max(10, K);
        rep.verdict = rep.ratio <= 1.0 - guard ? ProbeVerdict::convergent_estimated
                                               : ProbeVerdict::inconclusive;
    } else {
        rep.verdict = ProbeVerdict::inconclusive;
    }
    return rep;
}

}  // namespace ofq
