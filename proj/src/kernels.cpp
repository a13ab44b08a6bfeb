#include "catsim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace catsim::kernels {

const Ops* avx2_ops_impl();  // defined in kernels_avx2.cpp, null off-x86

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops& select_ops() {
  if (const char* env = std::getenv("CATSIM_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return scalar_ops();
  if (const Ops* avx2 = avx2_ops_impl(); avx2 && avx2_supported()) return *avx2;
  return scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& ops = select_ops();
  return ops;
}

cplx overlap_exponent(std::span<const cplx> u, std::span<const cplx> v) {
  const Ops& k = active_ops();
  return k.cdotc(u, v) - 0.5 * (k.norm2(u) + k.norm2(v));
}

}  // namespace catsim::kernels
