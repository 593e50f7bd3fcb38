#include "cswm/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace cswm::kernels {

namespace scalar {

void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double aik = arow[kk];
            const double* brow = b + kk * n;
            for (std::size_t j = 0; j < n; ++j) {
                crow[j] = std::fma(aik, brow[j], crow[j]);
            }
        }
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        acc0 = std::fma(x[i + 0], y[i + 0], acc0);
        acc1 = std::fma(x[i + 1], y[i + 1], acc1);
        acc2 = std::fma(x[i + 2], y[i + 2], acc2);
        acc3 = std::fma(x[i + 3], y[i + 3], acc3);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail = std::fma(x[i], y[i], tail);
    return ((acc0 + acc1) + (acc2 + acc3)) + tail;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        const double d0 = a[i + 0] - b[i + 0];
        const double d1 = a[i + 1] - b[i + 1];
        const double d2 = a[i + 2] - b[i + 2];
        const double d3 = a[i + 3] - b[i + 3];
        acc0 = std::fma(d0, d0, acc0);
        acc1 = std::fma(d1, d1, acc1);
        acc2 = std::fma(d2, d2, acc2);
        acc3 = std::fma(d3, d3, acc3);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        tail = std::fma(d, d, tail);
    }
    return ((acc0 + acc1) + (acc2 + acc3)) + tail;
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::fma(alpha, x[i], y[i]);
    }
}

}  // namespace scalar

namespace {

MatmulFn select_matmul() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return avx2::matmul;
#elif defined(__aarch64__)
    return neon::matmul;
#endif
    return scalar::matmul;
}

DotFn select_dot() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return avx2::dot;
#elif defined(__aarch64__)
    return neon::dot;
#endif
    return scalar::dot;
}

SumSqDiffFn select_sum_sq_diff() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return avx2::sum_sq_diff;
#elif defined(__aarch64__)
    return neon::sum_sq_diff;
#endif
    return scalar::sum_sq_diff;
}

AxpyFn select_axpy() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return avx2::axpy;
#elif defined(__aarch64__)
    return neon::axpy;
#endif
    return scalar::axpy;
}

}  // namespace

const MatmulFn matmul = select_matmul();
const DotFn dot = select_dot();
const SumSqDiffFn sum_sq_diff = select_sum_sq_diff();
const AxpyFn axpy = select_axpy();

const char* backend_name() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return "avx2";
#elif defined(__aarch64__)
    return "neon";
#endif
    return "scalar";
}

}  // namespace cswm::kernels
