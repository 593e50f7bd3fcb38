#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "cswm/kernels.hpp"

// Two float64x2 registers emulate the four reduction lanes used by the
// scalar reference and the AVX2 variant, so all backends agree bitwise.

namespace cswm::kernels::neon {

void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, 0.0);
    const std::size_t nv = n & ~std::size_t(3);
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const float64x2_t va = vdupq_n_f64(arow[kk]);
            const double* brow = b + kk * n;
            std::size_t j = 0;
            for (; j < nv; j += 4) {
                float64x2_t c0 = vld1q_f64(crow + j);
                float64x2_t c1 = vld1q_f64(crow + j + 2);
                c0 = vfmaq_f64(c0, va, vld1q_f64(brow + j));
                c1 = vfmaq_f64(c1, va, vld1q_f64(brow + j + 2));
                vst1q_f64(crow + j, c0);
                vst1q_f64(crow + j + 2, c1);
            }
            for (; j < n; ++j) {
                crow[j] = std::fma(arow[kk], brow[j], crow[j]);
            }
        }
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        acc01 = vfmaq_f64(acc01, vld1q_f64(x + i), vld1q_f64(y + i));
        acc23 = vfmaq_f64(acc23, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double tail = 0.0;
    for (; i < n; ++i) tail = std::fma(x[i], y[i], tail);
    const double l0 = vgetq_lane_f64(acc01, 0), l1 = vgetq_lane_f64(acc01, 1);
    const double l2 = vgetq_lane_f64(acc23, 0), l3 = vgetq_lane_f64(acc23, 1);
    return ((l0 + l1) + (l2 + l3)) + tail;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    const std::size_t nv = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < nv; i += 4) {
        const float64x2_t d01 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        const float64x2_t d23 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc01 = vfmaq_f64(acc01, d01, d01);
        acc23 = vfmaq_f64(acc23, d23, d23);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        tail = std::fma(d, d, tail);
    }
    const double l0 = vgetq_lane_f64(acc01, 0), l1 = vgetq_lane_f64(acc01, 1);
    const double l2 = vgetq_lane_f64(acc23, 0), l3 = vgetq_lane_f64(acc23, 1);
    return ((l0 + l1) + (l2 + l3)) + tail;
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    const std::size_t nv = n & ~std::size_t(1);
    std::size_t i = 0;
    for (; i < nv; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) {
        y[i] = std::fma(alpha, x[i], y[i]);
    }
}

}  // namespace cswm::kernels::neon

#endif  // aarch64
