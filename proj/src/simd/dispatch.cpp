#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tables.hpp"

namespace lfcap::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(LFCAP_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(LFCAP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("ISA not available: " + std::string(isa_name(isa)));
  switch (isa) {
#if defined(LFCAP_HAVE_AVX2)
    case Isa::avx2:
      return detail::avx2_kernels;
#endif
#if defined(LFCAP_HAVE_NEON)
    case Isa::neon:
      return detail::neon_kernels;
#endif
    default:
      return detail::scalar_kernels;
  }
}

namespace {

const Kernels& select() {
  if (const char* forced = std::getenv("LFCAP_SIMD")) {
    const std::string_view name(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (name == isa_name(isa) && isa_available(isa)) return kernels_for(isa);
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) return kernels_for(isa);
  }
  return detail::scalar_kernels;
}

}  // namespace

const Kernels& kernels() {
  static const Kernels& table = select();
  return table;
}

Isa active_isa() { return kernels().isa; }

}  // namespace lfcap::simd
