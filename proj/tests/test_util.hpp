#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "ofq/fmatrix.hpp"

namespace ofq_test {

inline double rel(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

inline ofq::CanonicalF ctx4() { return ofq::canonical_from_lambda({0.5, 1, 1, 2}, 1); }
inline ofq::CanonicalF ctx5() { return ofq::canonical_from_lambda({0.4, 0.5, 1, 2, 2.5}, 1); }
inline ofq::CanonicalF ctx_kac3() { return ofq::canonical_from_lambda({1, 1, 1}, 1); }

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        std::complex<double> d = R(i, i);
        Q.col(i) *= (d == std::complex<double>(0.0)) ? 1.0 : d / std::abs(d);
    }
    return Q;
}

}  // namespace ofq_test
