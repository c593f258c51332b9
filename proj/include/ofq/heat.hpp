#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "ofq/fmatrix.hpp"
#include "ofq/polynomial.hpp"

namespace ofq {

// Heat-semigroup eigenvalue c_k = U_k'(N_q)/U_k(N_q), c_0 = 0, evaluated in
// the cancellation-free form (k+1)/√(N_q²-4)·(1+q^{2k+2})/(1-q^{2k+2})
// - N_q/(N_q²-4).
double ck(int k, const GroupParams& g);

// Memoized c_k table; write-once per k behind a lock, reads return copies.
class HeatSpec {
  public:
    explicit HeatSpec(GroupParams g) : params_(std::move(g)) {}
    const GroupParams& group() const { return params_; }
    double c(int k) const;

  private:
    GroupParams params_;
    mutable std::map<int, double> cache_;
    mutable std::mutex mutex_;
};

// Φ_t: scales every degree-k term by e^{-t·c_k}. Semigroup in t, identity at
// t = 0, L²-contractive for t ≥ 0.
AnalyticPoly apply_heat(const AnalyticPoly& f, double t, const GroupParams& g);

// Ultracontractivity threshold t_F = 2√(N_q²-4)·log‖F‖ (0 in the Kac case).
double optimal_time(const GroupParams& g);

// φ(k) = A·ρ^k·(k+1)^α
struct MultiplierFamily {
    double A = 1.0;
    double rho = 1.0;
    double alpha = 0.0;
};

enum class MultiplierVerdict { bounded, unbounded };

// L²→L^∞ boundedness of the central multiplier: Σ φ(k)²‖F‖^{4k} < ∞, i.e.
// ρ²‖F‖⁴ < 1, or ρ²‖F‖⁴ = 1 with 2α < -1. Closed form, boundary resolved in
// the log domain.
MultiplierVerdict classify_multiplier(const MultiplierFamily& fam, const GroupParams& g);

// The heat family φ(k) = e^{-t·c_k} expressed as a MultiplierFamily through
// its exact geometric envelope: ρ = e^{-t/√(N_q²-4)}, α = 0.
MultiplierFamily heat_family(double t, const GroupParams& g);

enum class ProbeVerdict {
    convergent_certified,  // caller-supplied tail ratio < 1
    convergent_estimated,  // estimated ratio < 1 (not certified)
    divergent_evidence,    // terms grow along the sampled tail
    inconclusive,
};

const char* probe_verdict_name(ProbeVerdict v);

struct ProbeReport {
    double partial_sum = 0;  // S_K = Σ_{k≤K} φ(k)²‖F‖^{4k}
    double ratio = 0;        // supplied bound or estimate from the last 10 terms
    bool ratio_supplied = false;
    double tail_bound = 0;   // term_K·ratio/(1-ratio) when ratio < 1, else inf
    ProbeVerdict verdict = ProbeVerdict::inconclusive;
    int K = 0;
};

// Partial sum of the multiplier series with a geometric tail bound. The
// caller either supplies a bound on the term ratio beyond K or requests an
// estimate from the last 10 sampled terms; only a supplied ratio < 1 counts
// as certified.
ProbeReport series_probe(const std::function<double(int)>& phi, const GroupParams& g, int K,
                         double supplied_ratio = -1.0);

}  // namespace ofq
