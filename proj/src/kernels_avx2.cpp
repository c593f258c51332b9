// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma in its own TU and
// reached only through the runtime dispatch table, so the rest of the build
// stays generic.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "ofq/kernels.hpp"

namespace ofq::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

// Per-lane Neumaier update: (s, c) += p
inline void neumaier_step(__m256d& s, __m256d& c, __m256d p) {
    __m256d t = _mm256_add_pd(s, p);
    __m256d swap = _mm256_cmp_pd(abs_pd(s), abs_pd(p), _CMP_GE_OQ);
    __m256d big = _mm256_blendv_pd(p, s, swap);
    __m256d small = _mm256_blendv_pd(s, p, swap);
    c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
    s = t;
}

// Final reduction: Neumaier-sum the 8 partials (4 sums + 4 compensations).
inline double neumaier_reduce(__m256d s, __m256d c) {
    alignas(32) double buf[8];
    _mm256_store_pd(buf, s);
    _mm256_store_pd(buf + 4, c);
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < 8; ++i) {
        double t = acc + buf[i];
        if (std::abs(acc) >= std::abs(buf[i]))
            comp += (acc - t) + buf[i];
        else
            comp += (buf[i] - t) + acc;
        acc = t;
    }
    return acc + comp;
}

}  // namespace

double sum_avx2(const double* x, std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) neumaier_step(s, c, _mm256_loadu_pd(x + i));
    double acc = neumaier_reduce(s, c);
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        neumaier_step(s, c, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double acc = neumaier_reduce(s, c);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_sumsq_avx2(const double* re, const double* im, const double* w,
                           std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i);
        __m256d m = _mm256_mul_pd(r, r);
        if (im) {
            __m256d v = _mm256_loadu_pd(im + i);
            m = _mm256_fmadd_pd(v, v, m);
        }
        if (w) m = _mm256_mul_pd(_mm256_loadu_pd(w + i), m);
        neumaier_step(s, c, m);
    }
    double acc = neumaier_reduce(s, c);
    for (; i < n; ++i) {
        double m = re[i] * re[i];
        if (im) m += im[i] * im[i];
        acc += w ? w[i] * m : m;
    }
    return acc;
}

void fma_acc_avx2(double* y, double a, const double* w, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(w + i));
        __m256d r = _mm256_fmadd_pd(p, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] += a * w[i] * x[i];
}

double sumsq_avx2(const double* x, std::size_t n) {
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        s = _mm256_fmadd_pd(v, v, s);
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, s);
    double acc = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

void scale_avx2(double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

}  // namespace ofq::kernels::detail

#endif  // x86_64
