#pragma once
// Dense vector kernels used in the hot loops of the Lanczos eigensolver
// (double) and the skip-gram trainer (float).
//
// Every kernel has a scalar reference implementation. Vectorized variants
// (AVX2+FMA on x86-64, NEON on AArch64) are selected once at runtime; the
// selection can be overridden with PLACENET_SIMD=scalar|avx2|neon or
// force_isa() for testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace placenet::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

// True when the running CPU and the build both support isa.
bool isa_available(Isa isa) noexcept;

Isa active_isa() noexcept;

// Switches the dispatch table. Returns false (and leaves the table alone)
// when isa is unavailable. Not thread-safe against concurrent kernel calls.
bool force_isa(Isa isa) noexcept;

double dot(std::span<const double> x, std::span<const double> y) noexcept;
float dot(std::span<const float> x, std::span<const float> y) noexcept;

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
void axpy(float a, std::span<const float> x, std::span<float> y) noexcept;

double sum(std::span<const double> x) noexcept;

// x *= a
void scale(double a, std::span<double> x) noexcept;

// Per-ISA entry points, exposed for equivalence tests. Lengths are taken
// from x; y must be at least as long.
struct KernelTable {
    double (*dot_f64)(const double*, const double*, std::size_t) noexcept;
    float (*dot_f32)(const float*, const float*, std::size_t) noexcept;
    void (*axpy_f64)(double, const double*, double*, std::size_t) noexcept;
    void (*axpy_f32)(float, const float*, float*, std::size_t) noexcept;
    double (*sum_f64)(const double*, std::size_t) noexcept;
    void (*scale_f64)(double, double*, std::size_t) noexcept;
};

// Returns nullptr when isa was not compiled in.
const KernelTable* kernel_table(Isa isa) noexcept;

}  // namespace placenet::simd
