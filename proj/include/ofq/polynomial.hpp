#pragma once

#include <complex>
#include <map>
#include <vector>

#include "ofq/fmatrix.hpp"
#include "ofq/repdata.hpp"

namespace ofq {

// Analytic polynomial: Σ x_{s,t} u_{s_1 t_1}···u_{s_k t_k} over admissible
// index-tuple pairs, graded by degree. Distinct keys of one degree are
// orthogonal monomials, so norms reduce to weighted coefficient sums. Zero
// coefficients are never stored; term order is lexicographic on (k, s, t).
class AnalyticPoly {
  public:
    using Key = std::pair<IndexTuple, IndexTuple>;
    using TermMap = std::map<Key, std::complex<double>>;

    explicit AnalyticPoly(CanonicalF context) : context_(std::move(context)) {}

    // Adds x·u_{s t}; validates admissibility and equal lengths, merges with
    // an existing term, erases on cancellation.
    void add_term(const IndexTuple& s, const IndexTuple& t, std::complex<double> x);

    static AnalyticPoly monomial(const CanonicalF& c, const IndexTuple& s, const IndexTuple& t,
                                 std::complex<double> x = 1.0);

    const CanonicalF& context() const { return context_; }
    const std::map<int, TermMap>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    // Degree when homogeneous; throws not_homogeneous otherwise.
    int homogeneous_degree() const;
    std::size_t term_count() const;

    AnalyticPoly& operator*=(std::complex<double> a);
    AnalyticPoly& operator+=(const AnalyticPoly& other);  // same context required

  private:
    CanonicalF context_;
    std::map<int, TermMap> terms_;
};

// ‖u_{s_1 t_1}···u_{s_k t_k}‖₂ = √(Π_i λ_{s_i}² / d_k); depends on s only.
double monomial_l2_norm(const IndexTuple& s, const IndexTuple& t, const CanonicalF& c,
                        const DimTable& dims);

double l2_norm(const AnalyticPoly& f);

// Term-by-term *-involution: reverses each monomial, flips every index to
// N+1-i, conjugates the coefficient and scales it by Π λ_{s_i}·λ_{t_i}^{-1}
// (from u*_{ij} = λ_i λ_j^{-1} u_{N+1-i,N+1-j}). An involution.
AnalyticPoly adjoint(const AnalyticPoly& f);

// Equivalent-L^p-norm functional for homogeneous f supported on indices in
// [1, n] (the |λ|<1 range): d_k^{-1/2}·(Σ |x|²·[Π|λ_{s_i}|]^{4/p}·
// [Π|λ_{t_i}|]^{4/p-2})^{1/2}. At p = 2 this is exactly the L² norm; p = ∞
// uses 4/p = 0. Not the exact L^p norm: equivalence constants depend on F.
double lp_equiv_norm(const AnalyticPoly& f, double p);

struct DegreeNorm {
    int k;
    double l2;          // ‖f_k‖₂
    double fourier_hs;  // ‖f̂(k)Q(k)^{1/2}‖_{S²} = ‖f_k‖₂/√d_k
};

std::vector<DegreeNorm> degree_norms(const AnalyticPoly& f);

}  // namespace ofq
