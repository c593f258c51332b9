#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ofq/polynomial.hpp"
#include "test_util.hpp"

using namespace ofq;
using ofq_test::ctx4;
using ofq_test::ctx5;
using ofq_test::rel;

namespace {

IndexTuple random_admissible(int k, int N, int max_index, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> idx(1, max_index);
    IndexTuple t(static_cast<std::size_t>(k));
    while (true) {
        for (auto& v : t) v = idx(rng);
        if (is_admissible(t, N)) return t;
    }
}

AnalyticPoly random_poly(const CanonicalF& c, std::mt19937_64& rng, int max_deg = 4,
                         int max_terms = 12, int max_index = 2) {
    std::uniform_int_distribution<int> deg(0, max_deg), terms(1, max_terms);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    AnalyticPoly f(c);
    const int m = terms(rng);
    for (int j = 0; j < m; ++j) {
        const int k = deg(rng);
        f.add_term(random_admissible(k, c.N, max_index, rng),
                   random_admissible(k, c.N, max_index, rng), {coef(rng), coef(rng)});
    }
    return f;
}

}  // namespace

TEST_CASE("monomial L2 norms") {
    CanonicalF c = ctx4();
    DimTable dims = make_dim_table(params(c), 4);
    CHECK(monomial_l2_norm({}, {}, c, dims) == doctest::Approx(1.0));
    CHECK(rel(monomial_l2_norm({1}, {1}, c, dims), 0.2) <= 1e-15);
    CHECK(rel(monomial_l2_norm({1, 1}, {1, 1}, c, dims), std::sqrt(0.0625 / 38.0625)) <= 1e-13);
    // depends on s only, not t
    CHECK(monomial_l2_norm({1}, {2}, c, dims) == monomial_l2_norm({1}, {3}, c, dims));
    CHECK_THROWS_AS(monomial_l2_norm({1}, {1, 2}, c, dims), error);
    CHECK_THROWS_AS(monomial_l2_norm({1, 4}, {1, 1}, c, dims), error);
}

TEST_CASE("polynomial L2 norm composes orthogonally") {
    CanonicalF c = ctx4();
    AnalyticPoly constant(c);
    constant.add_term({}, {}, 3.0);
    CHECK(l2_norm(constant) == doctest::Approx(3.0));

    AnalyticPoly f(c);
    f.add_term({1}, {1}, 1.0);
    f.add_term({2}, {2}, 1.0);
    CHECK(rel(l2_norm(f), std::sqrt(0.2)) <= 1e-14);

    AnalyticPoly g(c);
    g.add_term({}, {}, 1.0);
    g.add_term({1}, {1}, 1.0);
    CHECK(rel(l2_norm(g), std::sqrt(1.04)) <= 1e-14);
}

TEST_CASE("term bookkeeping: zero coefficients vanish, cancellation erases") {
    AnalyticPoly f(ctx4());
    f.add_term({1}, {1}, 0.0);
    CHECK(f.empty());
    f.add_term({1}, {1}, 2.0);
    f.add_term({1}, {1}, -2.0);
    CHECK(f.empty());
    CHECK_THROWS_AS(f.add_term({1, 4}, {1, 1}, 1.0), error);
}

TEST_CASE("adjoint rewrites through the flip relation") {
    CanonicalF c = ctx4();
    AnalyticPoly one(c);
    one.add_term({}, {}, 1.0);
    AnalyticPoly onestar = adjoint(one);
    REQUIRE(onestar.term_count() == 1);
    CHECK(onestar.terms().at(0).begin()->second == std::complex<double>(1.0));

    AnalyticPoly u11 = AnalyticPoly::monomial(c, {1}, {1});
    AnalyticPoly a = adjoint(u11);
    REQUIRE(a.term_count() == 1);
    const auto& [key, coef] = *a.terms().at(1).begin();
    CHECK(key.first == IndexTuple{4});
    CHECK(key.second == IndexTuple{4});
    CHECK(coef.real() == doctest::Approx(1.0));
    CHECK(rel(l2_norm(a), 0.8) <= 1e-14);

    // s != t exposes the lambda_s/lambda_t scale
    AnalyticPoly u12 = AnalyticPoly::monomial(c, {1}, {2});
    AnalyticPoly a12 = adjoint(u12);
    const auto& [k12, c12] = *a12.terms().at(1).begin();
    CHECK(k12.first == IndexTuple{4});
    CHECK(k12.second == IndexTuple{3});
    CHECK(c12.real() == doctest::Approx(0.5));
}

TEST_CASE("adjoint is an involution and matches the second Schur relation") {
    CanonicalF c = ctx5();
    DimTable dims = make_dim_table(params(c), 6);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        AnalyticPoly f = random_poly(c, rng, 4, 8, 5);
        AnalyticPoly back = adjoint(adjoint(f));
        // involution: exact key equality, coefficients to 1e-15
        REQUIRE(back.term_count() == f.term_count());
        for (const auto& [k, deg] : f.terms())
            for (const auto& [key, x] : deg) {
                auto it = back.terms().at(k).find(key);
                REQUIRE(it != back.terms().at(k).end());
                CHECK(std::abs(it->second - x) <= 1e-15 * std::abs(x));
            }
    }
    // per-monomial: ||u_st*||_2^2 = q_weight(t)/d_k
    std::uniform_int_distribution<int> idx(1, 5), deg(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = deg(rng);
        IndexTuple s(static_cast<std::size_t>(k)), t(static_cast<std::size_t>(k));
        for (auto& v : s) v = idx(rng);
        for (auto& v : t) v = idx(rng);
        if (!is_admissible(s, c.N) || !is_admissible(t, c.N)) continue;
        AnalyticPoly mono = AnalyticPoly::monomial(c, s, t, {0.3, -0.7});
        const double direct = l2_norm(adjoint(mono));
        const double schur =
            std::abs(std::complex<double>(0.3, -0.7)) *
            std::exp(0.5 * (log_q_weight(t, c) - dims.log_d[static_cast<std::size_t>(k)]));
        CHECK(rel(direct, schur) <= 1e-12);
    }
}

TEST_CASE("adjoint norm via Gram oracle on small instances") {
    // Brute force from hk_oracle: Q(k) compression + first Schur relation.
    CanonicalF c = ctx4();
    GroupParams g = params(c);
    DimTable dims = make_dim_table(g, 3);
    for (int k = 1; k <= 3; ++k) {
        HkBasis hk = hk_oracle(4, k, c);
        const Eigen::Index size = hk.basis.rows();
        Eigen::VectorXd w(size);
        for (Eigen::Index r = 0; r < size; ++r) {
            double prod = 1.0;
            Eigen::Index rem = r;
            for (int pos = 0; pos < k; ++pos) {
                prod *= c.q1(static_cast<int>(rem % 4) + 1);
                rem /= 4;
            }
            w(r) = prod;
        }
        Eigen::MatrixXd Q = hk.basis.transpose() * w.asDiagonal() * hk.basis;
        Eigen::MatrixXd Qinv = Q.inverse();
        const double dk = Q.trace();
        CHECK(rel(dk, quantum_dim(k, g)) <= 1e-8);

        // ||u_st||_2^2 = <xi_s, Q^{-1} xi_s>/d_k in H_k coordinates
        std::mt19937_64 rng(1000 + k);
        std::uniform_int_distribution<int> idx(1, 4);
        int done = 0;
        while (done < 8) {
            IndexTuple s(static_cast<std::size_t>(k)), t(static_cast<std::size_t>(k));
            for (auto& v : s) v = idx(rng);
            for (auto& v : t) v = idx(rng);
            if (!is_admissible(s, 4) || !is_admissible(t, 4)) continue;
            ++done;
            Eigen::VectorXd e = Eigen::VectorXd::Zero(size);
            e(HkBasis::tensor_index(s, 4)) = 1.0;
            Eigen::VectorXd coords = hk.basis.transpose() * e;
            const double gram = coords.dot(Qinv * coords) / dk;
            CHECK(rel(std::sqrt(gram), monomial_l2_norm(s, t, c, dims)) <= 1e-8);
        }
    }
}

TEST_CASE("lp equivalent norm") {
    CanonicalF c = ctx4();
    AnalyticPoly u11 = AnalyticPoly::monomial(c, {1}, {1});
    CHECK(rel(lp_equiv_norm(u11, std::numeric_limits<double>::infinity()), 0.8) <= 1e-14);
    CHECK(rel(lp_equiv_norm(u11, 1.0), 0.05) <= 1e-14);
    CHECK(rel(lp_equiv_norm(u11, 2.0), l2_norm(u11)) <= 1e-14);

    // p = 2 coincides with the L2 norm on random polynomials
    CanonicalF big = ctx5();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        AnalyticPoly f = random_poly(big, rng, 4, 12, 2);
        if (f.terms().size() != 1) continue;  // homogeneous only
        CHECK(rel(lp_equiv_norm(f, 2.0), l2_norm(f)) <= 1e-12);
    }

    AnalyticPoly mixed(c);
    mixed.add_term({}, {}, 1.0);
    mixed.add_term({1}, {1}, 1.0);
    CHECK_THROWS_AS(lp_equiv_norm(mixed, 2.0), error);  // not homogeneous

    AnalyticPoly outside = AnalyticPoly::monomial(c, {4}, {4});
    CHECK_THROWS_AS(lp_equiv_norm(outside, 2.0), error);  // index beyond |lambda|<1
    CHECK_THROWS_AS(lp_equiv_norm(u11, 0.5), error);      // bad exponent
}

TEST_CASE("degree norms and Plancherel") {
    CanonicalF c = ctx4();
    AnalyticPoly constant(c);
    constant.add_term({}, {}, 5.0);
    auto dn0 = degree_norms(constant);
    REQUIRE(dn0.size() == 1);
    CHECK(dn0[0].k == 0);
    CHECK(dn0[0].l2 == doctest::Approx(5.0));
    CHECK(dn0[0].fourier_hs == doctest::Approx(5.0));

    AnalyticPoly f(c);
    f.add_term({}, {}, 1.0);
    f.add_term({1}, {1}, 1.0);
    auto dn = degree_norms(f);
    REQUIRE(dn.size() == 2);
    CHECK(rel(dn[1].l2, 0.2) <= 1e-14);
    CHECK(rel(dn[1].fourier_hs, 0.08) <= 1e-14);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        AnalyticPoly r = random_poly(ctx5(), rng, 5, 15, 5);
        double sum = 0.0;
        for (const auto& d : degree_norms(r)) sum += d.l2 * d.l2;
        const double l2 = l2_norm(r);
        CHECK(rel(std::sqrt(sum), l2) <= 1e-13);
    }
}

TEST_CASE("compensated accumulation holds 1e-12 identities at 1e4 terms") {
    CanonicalF c = ctx5();
    DimTable dims = make_dim_table(params(c), 9);
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> deg(0, 8);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::map<AnalyticPoly::Key, std::complex<double>> want_terms;
    while (want_terms.size() < 10000) {
        const int k = deg(rng);
        AnalyticPoly::Key key{random_admissible(k, 5, 2, rng), random_admissible(k, 5, 2, rng)};
        want_terms[key] = {coef(rng), coef(rng)};  // overwrite on collision
    }
    AnalyticPoly f(c);
    long double ref = 0.0L;
    for (const auto& [key, x] : want_terms) {
        f.add_term(key.first, key.second, x);
        const double nrm = monomial_l2_norm(key.first, key.second, c, dims);
        ref += static_cast<long double>(std::norm(x)) * nrm * nrm;
    }
    REQUIRE(f.term_count() == 10000);
    const double want = static_cast<double>(sqrtl(ref));
    CHECK(rel(l2_norm(f), want) <= 1e-12);
}

TEST_CASE("Plancherel additivity on disjoint keys and coefficient homogeneity") {
    CanonicalF c = ctx5();
    std::mt19937_64 rng(8);
    AnalyticPoly f = random_poly(c, rng, 3, 6, 2);
    AnalyticPoly g(c);
    g.add_term({4}, {4}, {0.3, 0.1});
    g.add_term({4, 4}, {5, 2}, {-0.2, 0.0});
    AnalyticPoly sum = f;
    sum += g;
    const double lf = l2_norm(f), lg = l2_norm(g), ls = l2_norm(sum);
    CHECK(rel(ls * ls, lf * lf + lg * lg) <= 1e-13);

    AnalyticPoly scaled = f;
    scaled *= std::complex<double>(0.0, 2.0);  // |alpha| = 2
    CHECK(rel(l2_norm(scaled), 2.0 * lf) <= 1e-14);
}
