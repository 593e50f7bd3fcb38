#pragma once

#include <cstddef>

// Data-parallel inner loops used by the transforms, the quality metrics
// and the solver. Each kernel has a scalar reference implementation and
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected once at load
// time. All variants are written to produce bit-identical results: the
// per-element operation sequence is the same (fused multiply-add, IEEE
// sqrt/div), and reductions accumulate into four fixed lanes that are
// combined in a fixed order.

namespace cswm::kernels {

// c (m x n) = a (m x k) * b (k x n), all row-major. c may not alias a or b.
using MatmulFn = void (*)(const double* a, const double* b, double* c,
                          std::size_t m, std::size_t k, std::size_t n);

// Inner product of x and y.
using DotFn = double (*)(const double* x, const double* y, std::size_t n);

// Sum of squared differences between a and b.
using SumSqDiffFn = double (*)(const double* a, const double* b, std::size_t n);

// y += alpha * x, elementwise.
using AxpyFn = void (*)(double* y, double alpha, const double* x, std::size_t n);

namespace scalar {
void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);
}  // namespace avx2
bool avx2_supported();
#endif

#if defined(__aarch64__)
namespace neon {
void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);
}  // namespace neon
#endif

// Dispatched entry points.
extern const MatmulFn matmul;
extern const DotFn dot;
extern const SumSqDiffFn sum_sq_diff;
extern const AxpyFn axpy;

// Name of the selected variant: "avx2", "neon" or "scalar".
const char* backend_name();

}  // namespace cswm::kernels
