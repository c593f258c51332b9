#include "ofq/repdata.hpp"

#include <cmath>

namespace ofq {

namespace {

void require_x_gt_2(double x) {
    if (!(x > 2.0)) fail(errc::invalid_argument, "closed form needs x > 2");
}

void require_k_nonneg(int k) {
    if (k < 0) fail(errc::invalid_argument, "degree must be nonnegative");
}

}  // namespace

double chebyshev_u(int k, double x) {
    require_k_nonneg(k);
    require_x_gt_2(x);
    const double lg = log_chebyshev_u(k, x);
    return std::exp(lg);
}

double log_chebyshev_u(int k, double x) {
    require_k_nonneg(k);
    require_x_gt_2(x);
    // (x-2)(x+2) instead of x²-4: no cancellation near x = 2.
    const double s = std::sqrt((x - 2.0) * (x + 2.0));
    const double alpha = (x + s) / 2.0;
    const double beta_pow = std::pow(1.0 / alpha, 2 * (k + 1));  // (β/α)^{k+1}
    return (k + 1) * std::log(alpha) + std::log1p(-beta_pow) - std::log(s);
}

double chebyshev_u_recursive(int k, double x) {
    require_k_nonneg(k);
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int i = 1; i < k; ++i) {
        double next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double quantum_dim(int k, const GroupParams& g) { return chebyshev_u(k, g.N_q); }

double classical_dim(int k, int N) {
    require_k_nonneg(k);
    if (N < 2) fail(errc::invalid_argument, "N must be at least 2");
    if (N == 2) return static_cast<double>(k + 1);
    return chebyshev_u(k, static_cast<double>(N));
}

double DimTable::sqrt_dim_ratio(int a, int b) const {
    return std::exp(0.5 * (log_d[static_cast<std::size_t>(a)] - log_d[static_cast<std::size_t>(b)]));
}

DimTable make_dim_table(const GroupParams& g, int K) {
    if (K < 0) fail(errc::invalid_argument, "K must be nonnegative");
    DimTable t;
    t.d.resize(static_cast<std::size_t>(K) + 1);
    t.log_d.resize(static_cast<std::size_t>(K) + 1);
    t.n_cl.resize(static_cast<std::size_t>(K) + 1);
    // d recursion in the log domain via the ratio rho_k = d_{k-1}/d_k, which
    // stays in (0,1); the plain values saturate to inf once out of range.
    double rho = 0.0;
    double log_d = 0.0;
    for (int k = 0; k <= K; ++k) {
        t.log_d[static_cast<std::size_t>(k)] = log_d;
        t.d[static_cast<std::size_t>(k)] = std::exp(log_d);
        t.n_cl[static_cast<std::size_t>(k)] = classical_dim(k, g.N);
        double growth = g.N_q - rho;  // d_{k+1}/d_k
        rho = 1.0 / growth;
        log_d += std::log(growth);
    }
    return t;
}

bool is_admissible(const IndexTuple& t, int N) {
    for (int s : t)
        if (s < 1 || s > N) fail(errc::index_out_of_range, "tuple index out of [1,N]");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i + 1] == N + 1 - t[i]) return false;
    return true;
}

double q_weight(const IndexTuple& t, const CanonicalF& c) {
    return std::exp(log_q_weight(t, c));
}

double log_q_weight(const IndexTuple& t, const CanonicalF& c) {
    if (!is_admissible(t, c.N)) fail(errc::not_admissible, "tuple has a contracting adjacent pair");
    double lg = 0.0;
    for (int s : t) lg += std::log(c.q1(s));
    return lg;
}

Eigen::Index HkBasis::tensor_index(const IndexTuple& t, int N) {
    Eigen::Index idx = 0;
    for (int s : t) {
        if (s < 1 || s > N) fail(errc::index_out_of_range, "tuple index out of [1,N]");
        idx = idx * N + (s - 1);
    }
    return idx;
}

HkBasis hk_oracle(int N, int k, const CanonicalF& c) {
    if (N != c.N) fail(errc::invalid_argument, "N mismatch with canonical context");
    if (k < 0) fail(errc::invalid_argument, "degree must be nonnegative");
    double size = std::pow(static_cast<double>(N), k);
    if (size > 20000.0) fail(errc::too_large, "N^k exceeds the small-instance bound");
    const Eigen::Index dim = static_cast<Eigen::Index>(size + 0.5);

    HkBasis out;
    out.N = N;
    out.k = k;
    if (k <= 1) {
        out.basis = Eigen::MatrixXd::Identity(dim, dim);
        return out;
    }

    // One block of rows per contraction position i (0-based, acting on tensor
    // slots i, i+1): row index = multi-index of the k-2 untouched slots, and
    // the entry at (..., N+1-b, b, ...) is λ_b, since T = Σ_b λ_b e_{N+1-b}⊗e_b.
    const Eigen::Index reduced = dim / (N * N);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero((k - 1) * reduced, dim);
    for (int i = 0; i + 1 < k; ++i) {
        // strides: slots left of i form the high part, slots right of i+1 the low part
        Eigen::Index low = 1;
        for (int j = i + 2; j < k; ++j) low *= N;
        const Eigen::Index pair_stride = low;  // slot i+1 stride = low, slot i stride = low*N
        for (Eigen::Index row = 0; row < reduced; ++row) {
            const Eigen::Index hi = row / low;
            const Eigen::Index lo = row % low;
            const Eigen::Index base = hi * low * N * N + lo;
            for (int b = 1; b <= N; ++b) {
                const Eigen::Index a = N + 1 - b;
                const Eigen::Index col =
                    base + (a - 1) * pair_stride * N + (b - 1) * pair_stride;
                C(i * reduced + row, col) = c.lambda[static_cast<std::size_t>(b - 1)];
            }
        }
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double tol = 1e-10 * std::max(1.0, smax);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    out.basis = svd.matrixV().rightCols(dim - rank);
    return out;
}

}  // namespace ofq
