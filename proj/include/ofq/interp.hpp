#pragma once

#include <vector>

#include "ofq/fmatrix.hpp"
#include "ofq/polynomial.hpp"

namespace ofq {

// Weak-type (1,1) functional: sup_k ‖F‖^{-2k}·‖f_k‖₂. Computed on the
// simplified degree norms with the raw Fourier form (√d_k·‖F‖^{-2k}·
// ‖f̂(k)Q(k)^{1/2}‖_{S²}, assembled from the term weights) asserted equal
// within 1e-12.
double l1_functional(const AnalyticPoly& f, const GroupParams& g);

// (Σ_k ‖F‖^{-2k(2-p)}·‖f_k‖₂^p)^{1/p} for 1 < p ≤ 2; equals the L² norm at
// p = 2.
double lorentz_functional(const AnalyticPoly& f, double p, const GroupParams& g);

struct WitnessReport {
    double p = 0;
    std::vector<double> x;
    double lhs = 0;        // (Σ|x_k|^p)^{1/p}: the functional on the witness
    double rhs_bound = 0;  // (Σ|x_k|²)^{1/2}: the L² domination
    double ratio = 0;
    int n = 0;             // truncation degree
};

// Witness family f = Σ_k x_k·√d_k·‖F‖^{(4-p)k/p}·(u_11)^k separating the
// Lorentz functional from the L^p norm in non-Kac contexts. The evaluated
// lorentz_functional must reproduce (Σ|x_k|^p)^{1/p} within 1e-9; checked by
// materializing the polynomial when representable and through the log-domain
// degree norms always.
WitnessReport separation_witness(double p, const std::vector<double>& x, const GroupParams& g,
                                 const CanonicalF& c);

}  // namespace ofq
