#include "ofq/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace ofq::kernels {

namespace detail {

double sum_scalar(const double* x, std::size_t n) {
    // Neumaier: running sum plus compensation of the lost low-order part.
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = s + x[i];
        if (std::abs(s) >= std::abs(x[i]))
            c += (s - t) + x[i];
        else
            c += (x[i] - t) + s;
        s = t;
    }
    return s + c;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = a[i] * b[i];
        double t = s + p;
        if (std::abs(s) >= std::abs(p))
            c += (s - t) + p;
        else
            c += (p - t) + s;
        s = t;
    }
    return s + c;
}

double weighted_sumsq_scalar(const double* re, const double* im, const double* w,
                             std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = re[i] * re[i];
        if (im) m += im[i] * im[i];
        double p = w ? w[i] * m : m;
        double t = s + p;
        if (s >= p)
            c += (s - t) + p;
        else
            c += (p - t) + s;
        s = t;
    }
    return s + c;
}

void fma_acc_scalar(double* y, double a, const double* w, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * w[i] * x[i];
}

double sumsq_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

void scale_scalar(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace detail

namespace {

struct kernel_table {
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*weighted_sumsq)(const double*, const double*, const double*, std::size_t);
    void (*fma_acc)(double*, double, const double*, const double*, std::size_t);
    double (*sumsq)(const double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
    isa which;
};

constexpr kernel_table scalar_table{
    detail::sum_scalar,    detail::dot_scalar,   detail::weighted_sumsq_scalar,
    detail::fma_acc_scalar, detail::sumsq_scalar, detail::scale_scalar,
    isa::scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr kernel_table avx2_table{
    detail::sum_avx2,    detail::dot_avx2,   detail::weighted_sumsq_avx2,
    detail::fma_acc_avx2, detail::sumsq_avx2, detail::scale_avx2,
    isa::avx2};

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
bool cpu_has_avx2() { return false; }
#endif

kernel_table g_table = scalar_table;
std::once_flag g_init_flag;

void init_from_env() {
    const char* env = std::getenv("OFQ_SIMD");
    bool want_avx2 = cpu_has_avx2();
    if (env) {
        if (std::strcmp(env, "scalar") == 0)
            want_avx2 = false;
        else if (std::strcmp(env, "avx2") == 0)
            want_avx2 = cpu_has_avx2();
        // anything else (incl. "auto"): keep CPU detection
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (want_avx2) g_table = avx2_table;
#else
    (void)want_avx2;
#endif
}

const kernel_table& table() {
    std::call_once(g_init_flag, init_from_env);
    return g_table;
}

}  // namespace

isa active_isa() { return table().which; }

bool force_isa(isa which) {
    std::call_once(g_init_flag, init_from_env);
    if (which == isa::scalar) {
        g_table = scalar_table;
        return true;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (which == isa::avx2 && cpu_has_avx2()) {
        g_table = avx2_table;
        return true;
    }
#endif
    return false;
}

const char* isa_name(isa which) { return which == isa::avx2 ? "avx2" : "scalar"; }

double sum(const double* x, std::size_t n) { return table().sum(x, n); }
double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
double weighted_sumsq(const double* re, const double* im, const double* w, std::size_t n) {
    return table().weighted_sumsq(re, im, w, n);
}
void fma_acc(double* y, double a, const double* w, const double* x, std::size_t n) {
    table().fma_acc(y, a, w, x, n);
}
double sumsq(const double* x, std::size_t n) { return table().sumsq(x, n); }
void scale(double* x, double a, std::size_t n) { table().scale(x, a, n); }

}  // namespace ofq::kernels
