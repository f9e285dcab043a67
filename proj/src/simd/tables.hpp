#pragma once

#include "placenet/simd/kernels.hpp"

namespace placenet::simd::detail {

extern const KernelTable scalar_table;
#if defined(PLACENET_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(PLACENET_HAVE_NEON)
extern const KernelTable neon_table;
#endif

}  // namespace placenet::simd::detail
