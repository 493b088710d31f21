#pragma once

#include "lfcap/simd/kernels.hpp"

namespace lfcap::simd::detail {

extern const Kernels scalar_kernels;
#if defined(LFCAP_HAVE_AVX2)
extern const Kernels avx2_kernels;
#endif
#if defined(LFCAP_HAVE_NEON)
extern const Kernels neon_kernels;
#endif

}  // namespace lfcap::simd::detail
