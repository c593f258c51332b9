#pragma once

#include <vector>

#include "ofq/fmatrix.hpp"
#include "ofq/polynomial.hpp"
#include "ofq/repdata.hpp"

namespace ofq {

enum class BoundSource {
    l2_floor,
    toeplitz_truncation,
    sharp_theorem_reference,
    cq_r_bound,
    cq_f_bound,
    triangle_sum,
};

const char* bound_source_name(BoundSource s);

struct BoundReport {
    double lower = 0;
    double upper = 0;
    BoundSource lower_source = BoundSource::l2_floor;
    BoundSource upper_source = BoundSource::cq_r_bound;
    int k = 0;
    double R = 0;
};

// Projection weight M_f(l, n) of the monomial u_{s t}: product over the last
// r = (k+n-l)/2 positions of (F*F)_{s_i}^{1/2}·(F*F)_{t_i}^{1/2}; 1 at r = 0.
// Throws not_in_s when n is outside S(l,k) = {|l-k|, |l-k|+2, ..., l+k}.
double mf(const IndexTuple& s, const IndexTuple& t, int l, int n_rep, const CanonicalF& c);

// Uniform geometric bound R for a span of degree-k monomials: max over pairs
// and over all k positions of (F*F)_{s_i}^{1/4}(F*F)_{t_i}^{1/4}. Taking all
// positions (not just the last r) is what makes M_f(l,n) ≤ R^{k+n-l} hold for
// every n in S(l,k).
double r_value(const std::vector<std::pair<IndexTuple, IndexTuple>>& span, const CanonicalF& c);

// C_q·(1-R^{2k+2})/(1-R²); the R → 1 limit C_q·(k+1) is used on |R-1| ≤ 1e-12.
double upper_bound(int k, double R, const GroupParams& g);

// Two-sided report for homogeneous f: the L² floor below, the sharpened
// C_q-R bound above.
BoundReport bound_report(const AnalyticPoly& f, const GroupParams& g);

}  // namespace ofq
