#include "ofq/fmatrix.hpp"

#include <algorithm>
#include <complex>
#include <limits>

#include "ofq/kernels.hpp"

namespace ofq {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

double max_abs_dev_from(const MatrixXcd& G, double target_diag) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j) {
            cplx want = (i == j) ? cplx(target_diag, 0.0) : cplx(0.0, 0.0);
            dev = std::max(dev, std::abs(G(i, j) - want));
        }
    return dev;
}

}  // namespace

int validate(const MatrixXcd& F, const ValidationOptions& opt) {
    if (F.rows() != F.cols()) fail(errc::not_square, "F must be square");
    const Eigen::Index N = F.rows();
    if (N < 2) fail(errc::invalid_argument, "F must be at least 2x2");

    Eigen::JacobiSVD<MatrixXcd> svd(F);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(N - 1);
    if (!(smin > 1e-12 * std::max(1.0, smax)))
        fail(errc::not_invertible, "smallest singular value below tolerance");

    const MatrixXcd G = F.conjugate() * F;
    const double tau = opt.tau_val_factor * smax * smax;
    const double dev_plus = max_abs_dev_from(G, 1.0);
    const double dev_minus = max_abs_dev_from(G, -1.0);
    if (dev_plus <= tau) return 1;
    if (dev_minus <= tau) return -1;
    fail(errc::relation_violated,
         "conj(F)F differs from +Id by " + std::to_string(dev_plus) + " and from -Id by " +
             std::to_string(dev_minus));
}

bool CanonicalF::kac() const {
    for (double l : lambda)
        if (std::abs(std::abs(l) - 1.0) > 1e-12) return false;
    return true;
}

Eigen::MatrixXcd CanonicalF::matrix() const {
    MatrixXcd F = MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) F(i, N - 1 - i) = lambda[static_cast<std::size_t>(i)];
    return F;
}

void CanonicalF::check_invariants(double tol) const {
    if (static_cast<int>(lambda.size()) != N || N < 2)
        fail(errc::decomposition_failed, "lambda length mismatch");
    if (sign != 1 && sign != -1) fail(errc::decomposition_failed, "sign must be +1 or -1");
    if (sign == -1 && N % 2 != 0)
        fail(errc::decomposition_failed, "sign -1 requires even N");
    int n = 0;
    for (int i = 0; i + 1 < N; ++i) {
        if (std::abs(lambda[i]) > std::abs(lambda[i + 1]) + tol)
            fail(errc::decomposition_failed, "|lambda| not ascending");
    }
    for (int i = 0; i < N; ++i) {
        double a = std::abs(lambda[static_cast<std::size_t>(i)]);
        if (a < 1.0 - tol) ++n;
        double prod = lambda[static_cast<std::size_t>(i)] * lambda[static_cast<std::size_t>(N - 1 - i)];
        if (std::abs(prod - sign) > tol)
            fail(errc::decomposition_failed, "lambda_i * lambda_{N+1-i} != sign");
        if (i >= n_small && i < N - n_small && std::abs(a - 1.0) > tol)
            fail(errc::decomposition_failed, "middle |lambda| must be 1");
    }
    if (n != n_small) fail(errc::decomposition_failed, "n_small inconsistent with lambda");
}

CanonicalF canonical_from_lambda(std::vector<double> lambda, int sign) {
    CanonicalF c;
    c.N = static_cast<int>(lambda.size());
    c.sign = sign;
    c.lambda = std::move(lambda);
    int n = 0;
    for (double l : c.lambda)
        if (std::abs(l) < 1.0 - 1e-12) ++n;
    c.n_small = n;
    c.check_invariants(1e-9);
    return c;
}

namespace {

// Antilinear map x ↦ F·conj(x). Squares to sign·Id on all of C^N and is
// antiunitary on the unit-singular-value subspace.
VectorXcd amap(const MatrixXcd& F, const VectorXcd& x) { return F * x.conjugate(); }

void project_out(VectorXcd& z, const std::vector<VectorXcd>& basis) {
    for (const auto& v : basis) z -= v.dot(z) * v;  // Eigen dot conjugates v
}

}  // namespace

CanonicalizeResult canonicalize(const MatrixXcd& F, const ValidationOptions& opt) {
    const int sign = validate(F, opt);
    const int N = static_cast<int>(F.rows());

    Eigen::JacobiSVD<MatrixXcd> svd(F, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();  // descending

    std::vector<int> big, middle, small;
    for (int i = 0; i < N; ++i) {
        if (std::abs(sv(i) - 1.0) <= opt.tau_pair)
            middle.push_back(i);
        else if (sv(i) > 1.0)
            big.push_back(i);
        else
            small.push_back(i);
    }
    if (big.size() != small.size())
        fail(errc::decomposition_failed, "singular values do not pair as (sigma, 1/sigma)");
    const int nb = static_cast<int>(big.size());
    // big is descending; smalls ascending pair with it in order
    std::vector<double> small_asc;
    for (auto it = small.rbegin(); it != small.rend(); ++it) small_asc.push_back(sv(*it));
    for (int p = 0; p < nb; ++p) {
        if (std::abs(sv(big[static_cast<std::size_t>(p)]) * small_asc[static_cast<std::size_t>(p)] - 1.0) >
            opt.tau_pair * sv(big[static_cast<std::size_t>(p)]))
            fail(errc::decomposition_failed, "singular values do not pair as (sigma, 1/sigma)");
    }
    const int m1 = N - 2 * nb;
    if (sign == -1 && m1 % 2 != 0)
        fail(errc::decomposition_failed, "sign -1 needs an even unit block");

    std::vector<VectorXcd> r(static_cast<std::size_t>(N));
    std::vector<double> lambda(static_cast<std::size_t>(N), 0.0);

    // Paired part: for a right-singular vector x at σ > 1, conj(x) carries
    // weight 1/σ and F·x/σ carries weight σ; F·conj(F·x/σ) = sign·x/σ closes
    // the pair, so only the σ > 1 vectors are needed.
    for (int p = 0; p < nb; ++p) {
        const double sigma = sv(big[static_cast<std::size_t>(p)]);
        const VectorXcd x = svd.matrixV().col(big[static_cast<std::size_t>(p)]);
        r[static_cast<std::size_t>(p)] = x.conjugate();
        VectorXcd y = (F * x) / sigma;
        if (sign == -1) y = -y;
        r[static_cast<std::size_t>(N - 1 - p)] = y;
        lambda[static_cast<std::size_t>(p)] = 1.0 / sigma;
        lambda[static_cast<std::size_t>(N - 1 - p)] = sign * sigma;
    }

    // Unit block: conj of the σ ≈ 1 right-singular subspace, closed under the
    // antilinear map A.
    if (m1 > 0) {
        std::vector<VectorXcd> mbasis;
        for (int idx : middle) mbasis.push_back(svd.matrixV().col(idx).conjugate());
        auto next_free = [&](const std::vector<VectorXcd>& used) -> VectorXcd {
            VectorXcd best;
            double best_norm = -1.0;
            for (const auto& m : mbasis) {
                VectorXcd z = m;
                project_out(z, used);
                double nz = z.norm();
                if (nz > best_norm) {
                    best_norm = nz;
                    best = z;
                }
            }
            if (best_norm < 1e-6)
                fail(errc::decomposition_failed, "unit block basis search degenerated");
            return best / best_norm;
        };

        if (sign == 1) {
            // Fixed vectors of A span the block; (v ± i v')/√2 pairs realize
            // the anti-diagonal unit entries.
            std::vector<VectorXcd> fixed;
            while (static_cast<int>(fixed.size()) < m1) {
                VectorXcd z = next_free(fixed);
                VectorXcd v = z + amap(F, z);
                if (v.norm() < 1.0) {
                    VectorXcd iz = cplx(0.0, 1.0) * z;
                    v = iz + amap(F, iz);
                }
                project_out(v, fixed);
                double nv = v.norm();
                if (nv < 1e-6)
                    fail(errc::decomposition_failed, "fixed-vector construction degenerated");
                fixed.push_back(v / nv);
            }
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (int l = 0; 2 * l + 1 < m1; ++l) {
                const VectorXcd& a = fixed[static_cast<std::size_t>(2 * l)];
                const VectorXcd& b = fixed[static_cast<std::size_t>(2 * l + 1)];
                r[static_cast<std::size_t>(nb + l)] = (a + cplx(0.0, 1.0) * b) * inv_sqrt2;
                r[static_cast<std::size_t>(N - 1 - nb - l)] = (a - cplx(0.0, 1.0) * b) * inv_sqrt2;
                lambda[static_cast<std::size_t>(nb + l)] = 1.0;
                lambda[static_cast<std::size_t>(N - 1 - nb - l)] = 1.0;
            }
            if (m1 % 2 == 1) {
                int c = nb + (m1 - 1) / 2;
                r[static_cast<std::size_t>(c)] = fixed[static_cast<std::size_t>(m1 - 1)];
                lambda[static_cast<std::size_t>(c)] = 1.0;
            }
        } else {
            // Quaternionic block: (z, -A z) pairs, +1 upper and -1 lower.
            std::vector<VectorXcd> used;
            for (int l = 0; 2 * l < m1; ++l) {
                VectorXcd z = next_free(used);
                VectorXcd az = amap(F, z);
                r[static_cast<std::size_t>(nb + l)] = z;
                r[static_cast<std::size_t>(N - 1 - nb - l)] = -az;
                lambda[static_cast<std::size_t>(nb + l)] = 1.0;
                lambda[static_cast<std::size_t>(N - 1 - nb - l)] = -1.0;
                used.push_back(z);
                used.push_back(az / az.norm());
            }
        }
    }

    MatrixXcd w(N, N);
    for (int i = 0; i < N; ++i) w.row(i) = r[static_cast<std::size_t>(i)].adjoint();

    CanonicalF canon;
    canon.N = N;
    canon.sign = sign;
    canon.lambda = lambda;
    canon.n_small = nb;
    canon.check_invariants(opt.tau_can);

    // Postcondition: w unitary and w·F·wᵗ equals the assembled form.
    const double scale = std::max(1.0, sv(0));
    double residual = 0.0;
    const MatrixXcd G = w * F * w.transpose();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            cplx want = (j == N - 1 - i) ? cplx(lambda[static_cast<std::size_t>(i)], 0.0)
                                         : cplx(0.0, 0.0);
            residual = std::max(residual, std::abs(G(i, j) - want));
        }
    const MatrixXcd U = w * w.adjoint();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            cplx want = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            residual = std::max(residual, std::abs(U(i, j) - want));
        }
    if (residual > opt.tau_can * scale)
        fail(errc::decomposition_failed,
             "postcondition residual " + std::to_string(residual) + " exceeds tolerance");

    return CanonicalizeResult{std::move(canon), std::move(w), residual};
}

GroupParams params(const CanonicalF& c, double series_tol) {
    GroupParams g;
    g.N = c.N;
    std::vector<double> sq(c.lambda.size());
    for (std::size_t i = 0; i < c.lambda.size(); ++i) sq[i] = c.lambda[i] * c.lambda[i];
    g.N_q = kernels::sum(sq.data(), sq.size());
    if (!(g.N_q > 2.0 + 1e-12))
        fail(errc::kac_degenerate, "N_q = 2: q has no solution in (0,1)");

    const double disc = std::sqrt((g.N_q - 2.0) * (g.N_q + 2.0));
    g.r_q = (g.N_q + disc) / 2.0;
    g.q = 1.0 / g.r_q;  // stable form of the smaller quadratic root
    g.F_norm = 0.0;
    for (double l : c.lambda) g.F_norm = std::max(g.F_norm, std::abs(l));
    g.kac = c.kac();

    // C_q = (1-q²)^{-1}·Π(1-q^{2m})^{-3}: truncate when the log increment
    // q^{2m}/(1-q²) drops below series_tol; geometric bound on the dropped
    // log-tail gives the reported error bound.
    const double q2 = g.q * g.q;
    double log_prod = 0.0;
    double term = q2;
    while (term / (1.0 - q2) >= series_tol && term > 0.0) {
        log_prod -= std::log1p(-term);
        term *= q2;
    }
    const double log_tail = 3.0 * term / ((1.0 - q2) * (1.0 - q2));
    g.C_q = std::exp(3.0 * log_prod) / (1.0 - q2);
    g.C_q_tail = g.C_q * std::expm1(log_tail);
    return g;
}

}  // namespace ofq
