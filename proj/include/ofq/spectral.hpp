#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ofq/fmatrix.hpp"
#include "ofq/repdata.hpp"

namespace ofq {

// Σ_k x_k (u_{st})^k for a single generator u_{st} with F_{ss} = 0 = F_{tt}
// (s, t off the anti-diagonal fixed points) and (F*F)_{ss}(F*F)_{tt} > 1.
struct SingleGenPoly {
    int s = 1;
    int t = 1;
    std::vector<std::complex<double>> x;  // x_0..x_deg
    CanonicalF c;

    int degree() const { return static_cast<int>(x.size()) - 1; }
    bool real_coeffs() const;

    static SingleGenPoly make(const CanonicalF& c, int s, int t,
                              std::vector<std::complex<double>> coeffs);
};

// Matrix of left multiplication by Σ x_k (u*_{st})^k against the orthonormal
// family v_m = √(d_m c^{-m})(u*_{st})^m, m ≤ M, with c = (F*F)_{tt}:
// A[j][m] = x_{j-m}·√(d_m/d_j)·c^{(j-m)/2}. Rectangular (M+deg+1)×(M+1): the
// domain is truncated, no output row is dropped, so every singular value is a
// true lower bound for the C*-norm.
Eigen::MatrixXcd toeplitz_truncation(const SingleGenPoly& p, int M);

// Matrix-free form: one weight vector per diagonal, applied with the fma
// kernels. Used by the power iteration.
class ToeplitzOperator {
  public:
    ToeplitzOperator(const SingleGenPoly& p, int M);

    int rows() const { return M_ + deg_ + 1; }
    int cols() const { return M_ + 1; }
    bool real() const { return real_; }

    // y (+)= A b and z (+)= A† y, in split real/imaginary storage; imaginary
    // parts may be null for the real path.
    void apply(const double* b_re, const double* b_im, double* y_re, double* y_im) const;
    void apply_adjoint(const double* y_re, const double* y_im, double* z_re,
                       double* z_im) const;

  private:
    int M_, deg_;
    bool real_;
    std::vector<std::complex<double>> x_;
    std::vector<std::vector<double>> diag_w_;  // [d][m], m = 0..M
};

struct LowerBoundInfo {
    double value = 0;      // certified: a Rayleigh quotient of the truncation
    bool converged = false;
    long iterations = 0;
};

// Largest singular value of the truncation by power iteration on A†A:
// deterministic uniform positive start, estimated relative error ≤ 1e-10
// (geometric extrapolation of the monotone Rayleigh sequence), at most 1e6
// iterations. The returned value is a lower bound for ‖Σ x_k (u_{st})^k‖
// whether or not the tolerance was reached.
LowerBoundInfo toeplitz_lower_detail(const SingleGenPoly& p, int M);

// Same, throwing convergence_failure when the tolerance is not reached.
double cstar_lower_bound(const SingleGenPoly& p, int M);

// Σ x_k c^{k/2}/√d_k — the sharp two-sided reference; nonnegative real x only.
double sharp_reference(const SingleGenPoly& p);

// Triangle-inequality upper bound Σ |x_k|·C_q(1-R²ᵏ⁺²)/(1-R²)·c^{k/2}/√d_k,
// with R the geometric bound of the adjoint-side monomial family (< 1 under
// the SingleGenPoly weight condition).
double cstar_upper_bound(const SingleGenPoly& p);

}  // namespace ofq
