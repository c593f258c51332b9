#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the norm accumulators and the Toeplitz
// power iteration. Every kernel has a scalar reference implementation and an
// AVX2 variant; the active set is picked once at startup from CPUID and can
// be overridden with OFQ_SIMD=scalar|avx2|auto (or force_isa in-process).
//
// The accumulating kernels (sum, dot, weighted_sumsq) use Neumaier
// compensation so 1e-12-level identities survive 1e4-term inputs. Scalar and
// AVX2 variants reduce in different orders and are equivalence-tested against
// each other to tight tolerances, not bit-exactly.
namespace ofq::kernels {

enum class isa { scalar, avx2 };

isa active_isa();
// Returns false if the requested ISA is unsupported on this CPU.
bool force_isa(isa which);
const char* isa_name(isa which);

// Compensated Σ x[i].
double sum(const double* x, std::size_t n);

// Compensated Σ a[i]·b[i].
double dot(const double* a, const double* b, std::size_t n);

// Compensated Σ w[i]·(re[i]² + im[i]²); im may be null (treated as zero).
double weighted_sumsq(const double* re, const double* im, const double* w, std::size_t n);

// y[i] += a·w[i]·x[i]
void fma_acc(double* y, double a, const double* w, const double* x, std::size_t n);

// Σ x[i]² (plain, used inside iteration loops where compensation is overkill)
double sumsq(const double* x, std::size_t n);

// x[i] *= a
void scale(double* x, double a, std::size_t n);

namespace detail {
// Scalar reference implementations, always available (equivalence tests
// compare the dispatched kernels against these).
double sum_scalar(const double* x, std::size_t n);
double dot_scalar(const double* a, const double* b, std::size_t n);
double weighted_sumsq_scalar(const double* re, const double* im, const double* w, std::size_t n);
void fma_acc_scalar(double* y, double a, const double* w, const double* x, std::size_t n);
double sumsq_scalar(const double* x, std::size_t n);
void scale_scalar(double* x, double a, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
double sum_avx2(const double* x, std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
double weighted_sumsq_avx2(const double* re, const double* im, const double* w, std::size_t n);
void fma_acc_avx2(double* y, double a, const double* w, const double* x, std::size_t n);
double sumsq_avx2(const double* x, std::size_t n);
void scale_avx2(double* x, double a, std::size_t n);
#endif
}  // namespace detail

}  // namespace ofq::kernels
