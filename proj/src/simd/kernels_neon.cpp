#include <arm_neon.h>

#include "simd/tables.hpp"

namespace placenet::simd::detail {
namespace {

double dot_f64(const double* x, const double* y, std::size_t n) noexcept {
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 = vfmaq_f64(a0, vld1q_f64(x + i), vld1q_f64(y + i));
        a1 = vfmaq_f64(a1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(a0, a1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

float dot_f32(const float* x, const float* y, std::size_t n) noexcept {
    float32x4_t a0 = vdupq_n_f32(0.0f);
    float32x4_t a1 = vdupq_n_f32(0.0f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = vfmaq_f32(a0, vld1q_f32(x + i), vld1q_f32(y + i));
        a1 = vfmaq_f32(a1, vld1q_f32(x + i + 4), vld1q_f32(y + i + 4));
    }
    float s = vaddvq_f32(vaddq_f32(a0, a1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_f64(double a, const double* x, double* y, std::size_t n) noexcept {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_f32(float a, const float* x, float* y, std::size_t n) noexcept {
    const float32x4_t va = vdupq_n_f32(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) vst1q_f32(y + i, vfmaq_f32(vld1q_f32(y + i), va, vld1q_f32(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

double sum_f64(const double* x, std::size_t n) noexcept {
    float64x2_t a0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a0 = vaddq_f64(a0, vld1q_f64(x + i));
    double s = vaddvq_f64(a0);
    for (; i < n; ++i) s += x[i];
    return s;
}

void scale_f64(double a, double* x, std::size_t n) noexcept {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

}  // namespace

const KernelTable neon_table{dot_f64, dot_f32, axpy_f64, axpy_f32, sum_f64, scale_f64};

}  // namespace placenet::simd::detail
