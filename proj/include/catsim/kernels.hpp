#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace catsim::kernels {

using cplx = std::complex<double>;

/// Inner-loop primitives shared by the physics layers. Every operation has a
/// scalar reference implementation plus, on x86-64 hardware that reports
/// AVX2+FMA, a vectorized variant. The active table is selected once at
/// startup; setting CATSIM_SIMD=scalar in the environment forces the
/// reference path (the equivalence tests compare both tables directly).
struct Ops {
  const char* name;

  /// sum_k |v_k|^2
  double (*norm2)(std::span<const cplx> v);

  /// sum_k v_k * conj(u_k)  (the <u|v> inner product, BLAS zdotc convention)
  cplx (*cdotc)(std::span<const cplx> u, std::span<const cplx> v);

  /// e_k = -1/2 (|u_k|^2 + |v_k|^2) + v_k * conj(u_k), elementwise
  void (*pair_exponent_terms)(std::span<const cplx> u, std::span<const cplx> v,
                              std::span<cplx> e);

  /// sum_i e[idx[i]]
  cplx (*indexed_sum)(std::span<const cplx> e, std::span<const std::uint32_t> idx);

  /// sum_j (s_re[j] + i s_im[j]) / d[j]
  cplx (*recip_weighted_sum)(std::span<const double> s_re, std::span<const double> s_im,
                             std::span<const double> d);

  /// row[i] += Re(t0 * step^i), one geometric sweep over the row
  void (*wigner_row_accum)(std::span<double> row, cplx t0, cplx step);
};

const Ops& scalar_ops();
const Ops& active_ops();
bool avx2_supported();

/// log <u|v> for multimode coherent labels:
/// sum_k [ -1/2(|u_k|^2 + |v_k|^2) + v_k conj(u_k) ]
cplx overlap_exponent(std::span<const cplx> u, std::span<const cplx> v);

}  // namespace catsim::kernels
