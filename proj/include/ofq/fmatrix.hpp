#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "ofq/error.hpp"

namespace ofq {

struct ValidationOptions {
    // conj(F)·F = ±Id is checked entrywise against tau_val_factor·‖F‖².
    double tau_val_factor = 1e-10;
    // Postcondition tolerance for w·F·wᵗ against the assembled canonical form.
    double tau_can = 1e-8;
    // Tolerance for pairing singular values as (σ, 1/σ) and for |σ-1| ≈ 1.
    double tau_pair = 1e-8;
};

// Checks invertibility and conj(F)·F = ε·Id; returns ε ∈ {+1, -1}.
// Throws: not_square, not_invertible, relation_violated.
int validate(const Eigen::MatrixXcd& F, const ValidationOptions& opt = {});

// Anti-diagonal canonical form: F_c = Σ_i λ_i e_{i,N+1-i} with
// |λ_1| ≤ ... ≤ |λ_n| < 1 < |λ_{N-n+1}| ≤ ... ≤ |λ_N|, unit middle block,
// and λ_i·λ_{N+1-i} = sign for every i.
struct CanonicalF {
    std::vector<double> lambda;
    int sign = 1;
    int N = 0;
    int n_small = 0;  // number of indices with |λ_i| < 1

    // Diagonal of F*F in generator coordinates: (F*F)_{ss} = λ_s^{-2}.
    // 1-based s, matching generator indices u_{st}.
    double q1(int s) const {
        check_index(s);
        double l = lambda[static_cast<std::size_t>(s - 1)];
        return 1.0 / (l * l);
    }
    double abs_lambda(int s) const {
        check_index(s);
        return std::abs(lambda[static_cast<std::size_t>(s - 1)]);
    }
    bool kac() const;

    Eigen::MatrixXcd matrix() const;

    // Throws decomposition_failed when the ordering/pairing invariants do not
    // hold within tol.
    void check_invariants(double tol = 1e-8) const;

  private:
    void check_index(int s) const {
        if (s < 1 || s > N) fail(errc::index_out_of_range, "generator index out of [1,N]");
    }
};

// Builds a CanonicalF from user-supplied data (the JSON shorthand); validates
// the canonical invariants rather than repairing them.
CanonicalF canonical_from_lambda(std::vector<double> lambda, int sign);

struct CanonicalizeResult {
    CanonicalF canon;
    Eigen::MatrixXcd w;  // unitary with w·F·wᵗ = canonical form
    double residual;     // max-entry deviation of w·F·wᵗ from the form
};

// Reduces a validated F to canonical form by unitary congruence. Pairs the
// singular values as (σ, 1/σ), builds the paired part of the basis from the
// right-singular vectors, and closes the unit-singular-value block with the
// antilinear map x ↦ F·conj(x) (an involution for sign +1, quaternionic for
// sign -1). Self-certifying: the postcondition is checked within tau_can.
CanonicalizeResult canonicalize(const Eigen::MatrixXcd& F, const ValidationOptions& opt = {});

struct GroupParams {
    int N = 0;
    double N_q = 0;     // Tr(F*F) = Σ λ_i²
    double q = 0;       // smaller root of x + 1/x = N_q, in (0,1)
    double r_q = 0;     // 1/q
    double C_q = 0;     // (1-q²)^{-1}·Π_{m≥1}(1-q^{2m})^{-3}, truncated
    double C_q_tail = 0;  // upper bound on the truncation error of C_q
    double F_norm = 0;  // max |λ_i|
    bool kac = false;
};

// Throws kac_degenerate when N_q ≤ 2 (the N = 2 Kac case, q undefined).
GroupParams params(const CanonicalF& c, double series_tol = 1e-14);

}  // namespace ofq
