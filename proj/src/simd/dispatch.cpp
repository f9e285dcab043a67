#include <atomic>
#include <cstdlib>
#include <string_view>

#include "simd/tables.hpp"

namespace placenet::simd {
namespace {

bool cpu_has(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(PLACENET_HAVE_AVX2)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(PLACENET_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa pick_default() noexcept {
    if (const char* env = std::getenv("PLACENET_SIMD")) {
        const std::string_view want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == isa_name(isa) && cpu_has(isa)) return isa;
    }
    if (cpu_has(Isa::avx2)) return Isa::avx2;
    if (cpu_has(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

struct Dispatch {
    std::atomic<Isa> isa;
    std::atomic<const KernelTable*> table;

    Dispatch() {
        const Isa chosen = pick_default();
        isa.store(chosen);
        table.store(kernel_table(chosen));
    }
};

Dispatch& dispatch() noexcept {
    static Dispatch d;
    return d;
}

const KernelTable& active() noexcept { return *dispatch().table.load(std::memory_order_relaxed); }

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable* kernel_table(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return &detail::scalar_table;
        case Isa::avx2:
#if defined(PLACENET_HAVE_AVX2)
            return &detail::avx2_table;
#else
            return nullptr;
#endif
        case Isa::neon:
#if defined(PLACENET_HAVE_NEON)
            return &detail::neon_table;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

bool isa_available(Isa isa) noexcept { return kernel_table(isa) != nullptr && cpu_has(isa); }

Isa active_isa() noexcept { return dispatch().isa.load(); }

bool force_isa(Isa isa) noexcept {
    if (!isa_available(isa)) return false;
    dispatch().table.store(kernel_table(isa));
    dispatch().isa.store(isa);
    return true;
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
    return active().dot_f64(x.data(), y.data(), x.size());
}

float dot(std::span<const float> x, std::span<const float> y) noexcept {
    return active().dot_f32(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
    active().axpy_f64(a, x.data(), y.data(), x.size());
}

void axpy(float a, std::span<const float> x, std::span<float> y) noexcept {
    active().axpy_f32(a, x.data(), y.data(), x.size());
}

double sum(std::span<const double> x) noexcept { return active().sum_f64(x.data(), x.size()); }

void scale(double a, std::span<double> x) noexcept { active().scale_f64(a, x.data(), x.size()); }

}  // namespace placenet::simd
