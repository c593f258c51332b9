#include <doctest.h>

#include <cmath>
#include <random>

#include "ofq/haagerup.hpp"
#include "test_util.hpp"

using namespace ofq;
using ofq_test::ctx4;
using ofq_test::rel;

TEST_CASE("projection weight M_f") {
    CanonicalF c = ctx4();
    // r = 0: empty product
    CHECK(mf({1, 1}, {1, 1}, 4, 2, c) == doctest::Approx(1.0));
    // reference values at l = k = 2
    CHECK(rel(mf({1, 1}, {1, 1}, 2, 2, c), 4.0) <= 1e-14);
    CHECK(rel(mf({1, 1}, {1, 1}, 2, 4, c), 16.0) <= 1e-14);
    // n outside S(l,k): wrong parity and out of range
    CHECK_THROWS_AS(mf({1, 1}, {1, 1}, 2, 3, c), error);
    CHECK_THROWS_AS(mf({1, 1}, {1, 1}, 2, 5, c), error);
    CHECK_THROWS_AS(mf({1, 1}, {1, 1}, 2, 1, c), error);
}

TEST_CASE("R value of a span") {
    CanonicalF c = ctx4();
    CHECK(rel(r_value({{{1}, {1}}}, c), 2.0) <= 1e-14);
    CHECK(rel(r_value({{{4}, {4}}}, c), 0.5) <= 1e-14);
    CHECK(r_value({{{2}, {3}}}, c) == doctest::Approx(1.0));  // unit |lambda| indices
    CHECK_THROWS_AS(r_value({{{1}, {1}}, {{1, 1}, {1, 1}}}, c), error);  // mixed degrees
}

TEST_CASE("M_f is dominated by R^{k+n-l} for every (l, n)") {
    CanonicalF c = ofq_test::ctx5();
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> idx(1, 5), deg(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = deg(rng);
        IndexTuple s(static_cast<std::size_t>(k)), t(static_cast<std::size_t>(k));
        for (auto& v : s) v = idx(rng);
        for (auto& v : t) v = idx(rng);
        if (!is_admissible(s, 5) || !is_admissible(t, 5)) continue;
        const double R = r_value({{s, t}}, c);
        for (int l = 0; l <= 10; ++l)
            for (int n = std::abs(l - k); n <= l + k; n += 2)
                CHECK(mf(s, t, l, n, c) <= std::pow(R, k + n - l) * (1.0 + 1e-12));
    }
}

TEST_CASE("sharpened upper bound factor") {
    GroupParams g = params(ctx4());
    // R = ||F||: the generic form
    const double R = g.F_norm;
    for (int k = 0; k <= 12; ++k) {
        const double want = g.C_q * (std::pow(R, 2 * k + 2) - 1.0) / (R * R - 1.0);
        CHECK(rel(upper_bound(k, R, g), want) <= 1e-13);
    }
    // R = 1 limit
    for (int k = 0; k <= 5; ++k)
        CHECK(rel(upper_bound(k, 1.0, g), g.C_q * (k + 1)) <= 1e-14);
    // R < 1: increasing in k with the geometric limit
    const double rsmall = 0.5;
    double prev = 0.0;
    for (int k = 0; k <= 40; ++k) {
        const double v = upper_bound(k, rsmall, g);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(rel(prev, g.C_q / (1.0 - rsmall * rsmall)) <= 1e-10);
    // increasing in R for R > 1
    CHECK(upper_bound(3, 2.0, g) < upper_bound(3, 2.5, g));
    CHECK_THROWS_AS(upper_bound(3, 0.0, g), error);
}

TEST_CASE("bound reports") {
    CanonicalF c = ctx4();
    GroupParams g = params(c);

    AnalyticPoly cube(c);
    cube.add_term({1, 1, 1}, {1, 1, 1}, 1.0);
    BoundReport rep = bound_report(cube, g);
    CHECK(rep.k == 3);
    CHECK(rep.R == doctest::Approx(2.0));
    CHECK(rep.lower_source == BoundSource::l2_floor);
    CHECK(rep.upper_source == BoundSource::cq_r_bound);
    const double l2 = l2_norm(cube);
    CHECK(rel(rep.lower, l2) <= 1e-14);
    CHECK(rel(rep.upper, g.C_q * 85.0 * l2) <= 1e-13);  // (1-R^8)/(1-R^2) = 85 at R = 2

    // Kac: R = 1 branch gives the (k+1) rate
    CanonicalF kc = ofq_test::ctx_kac3();
    GroupParams kg = params(kc);
    AnalyticPoly kf(kc);
    kf.add_term({1, 1}, {1, 2}, 1.0);
    BoundReport krep = bound_report(kf, kg);
    CHECK(rel(krep.upper, kg.C_q * 3.0 * krep.lower) <= 1e-13);

    // R < 1 span: bound uniform in k
    for (int k = 1; k <= 12; ++k) {
        AnalyticPoly f(c);
        f.add_term(IndexTuple(static_cast<std::size_t>(k), 4),
                   IndexTuple(static_cast<std::size_t>(k), 4), 1.0);
        BoundReport r = bound_report(f, g);
        CHECK(r.R == doctest::Approx(0.5));
        CHECK(r.upper / r.lower <= g.C_q / (1.0 - 0.25) + 1e-12);
    }
}
