#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "cswm/kernels.hpp"

namespace cswm::kernels {

bool avx2_supported() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace avx2 {

void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, 0.0);
    const std::size_t nv = n & ~std::size_t(7);
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const __m256d va = _mm256_set1_pd(arow[kk]);
            const double* brow = b + kk * n;
            std::size_t j = 0;
            for (; j < nv; j += 8) {
                __m256d c0 = _mm256_loadu_pd(crow + j);
                __m256d c1 = _mm256_loadu_pd(crow + j + 4);
                c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), c0);
                c1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j + 4), c1);
                _mm256_storeu_pd(crow + j, c0);
                _mm256_storeu_pd(crow + j + 4, c1);
            }
            for (; j < n; ++j) {
                crow[j] = std::fma(arow[kk], brow[j], crow[j]);
            }
        }
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double tail = 0.0;
    for (; i < n; ++i) tail = std::fma(x[i], y[i], tail);
    return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        tail = std::fma(d, d, tail);
    }
    return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail;
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) {
        y[i] = std::fma(alpha, x[i], y[i]);
    }
}

}  // namespace avx2
}  // namespace cswm::kernels

#endif  // x86-64
