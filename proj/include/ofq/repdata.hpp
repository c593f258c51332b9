#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ofq/error.hpp"
#include "ofq/fmatrix.hpp"

namespace ofq {

// Dilated Chebyshev values U_0 = 1, U_1 = x, x·U_k = U_{k+1} + U_{k-1}.

// Closed form (α^{k+1} - α^{-(k+1)})/(α - α^{-1}) with α = (x+√(x²-4))/2.
// Requires x > 2; evaluated through exp(log) so intermediate powers cannot
// overflow before the result does.
double chebyshev_u(int k, double x);

// Three-term recursion, any real x. Reference path for the closed form.
double chebyshev_u_recursive(int k, double x);

// log U_k(x) for x > 2; finite where U_k itself would overflow.
double log_chebyshev_u(int k, double x);

double quantum_dim(int k, const GroupParams& g);

// U_k(N) for N ≥ 3; k+1 at N = 2 (the recursion value, where the closed form
// degenerates).
double classical_dim(int k, int N);

// Quantum and classical dimensions d_0..d_K with log d alongside; log_d stays
// finite far beyond the overflow point of d itself (ratios of far-apart
// dimensions are always taken through log_d).
struct DimTable {
    std::vector<double> d;
    std::vector<double> log_d;
    std::vector<double> n_cl;

    int kmax() const { return static_cast<int>(d.size()) - 1; }
    // √(d_a / d_b) for any a, b within the table.
    double sqrt_dim_ratio(int a, int b) const;
};

DimTable make_dim_table(const GroupParams& g, int K);

// Index tuples are 1-based generator indices. A pure tensor e_{s_1}⊗...⊗e_{s_k}
// lies in H_k exactly when no adjacent pair is (a, N+1-a).
using IndexTuple = std::vector<int>;

bool is_admissible(const IndexTuple& t, int N);

// Π_i (F*F)_{s_i s_i} over the tuple; 1 for the empty tuple.
// Throws not_admissible when the tuple has a contracting adjacent pair.
double q_weight(const IndexTuple& t, const CanonicalF& c);
double log_q_weight(const IndexTuple& t, const CanonicalF& c);

// Orthonormal basis of H_k as dense columns in R^{N^k}: joint kernel of the
// k-1 adjacent contraction maps built from the canonical F. Small instances
// only (N^k ≤ 20000).
struct HkBasis {
    int N = 0;
    int k = 0;
    Eigen::MatrixXd basis;  // N^k rows, dim H_k orthonormal columns

    int dim() const { return static_cast<int>(basis.cols()); }
    // Index of the pure tensor e_{s_1}⊗...⊗e_{s_k} in the row ordering
    // (s_1 most significant).
    static Eigen::Index tensor_index(const IndexTuple& t, int N);
};

HkBasis hk_oracle(int N, int k, const CanonicalF& c);

}  // namespace ofq
