#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ofq/kernels.hpp"

using namespace ofq::kernels;

namespace {

long double sum_ld(const std::vector<double>& x) {
    long double s = 0;
    for (double v : x) s += static_cast<long double>(v);
    return s;
}

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double lo = -1, double hi = 1) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    return x;
}

}  // namespace

TEST_CASE("compensated sum matches long-double reference") {
    std::mt19937_64 rng(1);
    for (std::size_t n : {0UL, 1UL, 3UL, 17UL, 1000UL, 10000UL}) {
        auto x = random_vec(n, rng);
        const double got = sum(x.data(), n);
        const double want = static_cast<double>(sum_ld(x));
        CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("compensated sum survives cancellation") {
    // plain accumulation loses the 1.0 entirely here
    std::vector<double> x = {1e16, 3.0, -1e16, 1.0};
    CHECK(sum(x.data(), x.size()) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("dot and weighted_sumsq match references") {
    std::mt19937_64 rng(2);
    for (std::size_t n : {1UL, 5UL, 129UL, 4096UL}) {
        auto a = random_vec(n, rng);
        auto b = random_vec(n, rng);
        auto w = random_vec(n, rng, 0.0, 2.0);
        long double dref = 0, wref = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dref += static_cast<long double>(a[i]) * b[i];
            wref += static_cast<long double>(w[i]) * (a[i] * a[i] + b[i] * b[i]);
        }
        CHECK(std::abs(dot(a.data(), b.data(), n) - static_cast<double>(dref)) <=
              1e-13 * std::max(1.0L, std::abs(dref)));
        CHECK(std::abs(weighted_sumsq(a.data(), b.data(), w.data(), n) -
                       static_cast<double>(wref)) <= 1e-13 * std::max(1.0L, wref));
        // null imaginary part and null weights are accepted
        CHECK(weighted_sumsq(a.data(), nullptr, nullptr, n) ==
              doctest::Approx(static_cast<double>([&] {
                  long double s = 0;
                  for (std::size_t i = 0; i < n; ++i) s += static_cast<long double>(a[i]) * a[i];
                  return s;
              }())).epsilon(1e-13));
    }
}

TEST_CASE("scalar and dispatched variants agree") {
    std::mt19937_64 rng(3);
    const std::size_t n = 1537;  // odd tail exercises the remainder loops
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);
    auto w = random_vec(n, rng, 0.0, 1.0);

    const isa saved = active_isa();
    for (isa which : {isa::scalar, isa::avx2}) {
        if (!force_isa(which)) continue;  // avx2 unsupported on this host
        CAPTURE(isa_name(which));
        CHECK(std::abs(sum(a.data(), n) - detail::sum_scalar(a.data(), n)) <= 1e-13);
        CHECK(std::abs(dot(a.data(), b.data(), n) -
                       detail::dot_scalar(a.data(), b.data(), n)) <= 1e-13);
        CHECK(std::abs(weighted_sumsq(a.data(), b.data(), w.data(), n) -
                       detail::weighted_sumsq_scalar(a.data(), b.data(), w.data(), n)) <=
              1e-13);
        CHECK(std::abs(sumsq(a.data(), n) - detail::sumsq_scalar(a.data(), n)) <=
              1e-12 * n);

        std::vector<double> y1(n, 0.5), y2(n, 0.5);
        fma_acc(y1.data(), 1.25, w.data(), a.data(), n);
        detail::fma_acc_scalar(y2.data(), 1.25, w.data(), a.data(), n);
        double dev = 0;
        for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(y1[i] - y2[i]));
        CHECK(dev <= 1e-14);

        std::vector<double> s1 = a, s2 = a;
        scale(s1.data(), 0.37, n);
        detail::scale_scalar(s2.data(), 0.37, n);
        CHECK(s1 == s2);
    }
    force_isa(saved);
}

TEST_CASE("isa override reports support") {
    const isa saved = active_isa();
    CHECK(force_isa(isa::scalar));
    CHECK(active_isa() == isa::scalar);
    force_isa(saved);
}
