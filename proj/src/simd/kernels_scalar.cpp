#include "simd/tables.hpp"

namespace placenet::simd::detail {
namespace {

double dot_f64(const double* x, const double* y, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

float dot_f32(const float* x, const float* y, std::size_t n) noexcept {
    float s = 0.0f;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_f64(double a, const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_f32(float a, const float* x, float* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum_f64(const double* x, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

void scale_f64(double a, double* x, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace

const KernelTable scalar_table{dot_f64, dot_f32, axpy_f64, axpy_f32, sum_f64, scale_f64};

}  // namespace placenet::simd::detail
