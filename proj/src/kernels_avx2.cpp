#include "catsim/kernels.hpp"

// Compiled with -mavx2 -mfma on x86-64 (see src/CMakeLists.txt); callers reach
// this table only after the runtime CPUID check in kernels.cpp.
#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace catsim::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double norm2_avx2(std::span<const cplx> v) {
  const double* p = reinterpret_cast<const double*>(v.data());
  const std::size_t n = 2 * v.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(p + i);
    const __m256d b = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(p + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += p[i] * p[i];
  return acc;
}

cplx cdotc_avx2(std::span<const cplx> u, std::span<const cplx> v) {
  const double* up = reinterpret_cast<const double*>(u.data());
  const double* vp = reinterpret_cast<const double*>(v.data());
  const std::size_t n = 2 * u.size();
  // flips the sign of the ui*vr lanes so Im accumulates ur*vi - ui*vr
  const __m256d signs = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d uv = _mm256_loadu_pd(up + i);
    const __m256d vv = _mm256_loadu_pd(vp + i);
    acc_re = _mm256_fmadd_pd(uv, vv, acc_re);
    const __m256d vswap = _mm256_permute_pd(vv, 0b0101);
    acc_im = _mm256_fmadd_pd(uv, _mm256_xor_pd(vswap, signs), acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (std::size_t k = i / 2; k < u.size(); ++k) {
    re += v[k].real() * u[k].real() + v[k].imag() * u[k].imag();
    im += v[k].imag() * u[k].real() - v[k].real() * u[k].imag();
  }
  return {re, im};
}

void pair_exponent_terms_avx2(std::span<const cplx> u, std::span<const cplx> v,
                              std::span<cplx> e) {
  const double* up = reinterpret_cast<const double*>(u.data());
  const double* vp = reinterpret_cast<const double*>(v.data());
  double* ep = reinterpret_cast<double*>(e.data());
  const std::size_t n = 2 * u.size();
  const __m256d mhalf = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d uv = _mm256_loadu_pd(up + i);
    const __m256d vv = _mm256_loadu_pd(vp + i);
    const __m256d s = _mm256_fmadd_pd(uv, uv, _mm256_mul_pd(vv, vv));
    const __m256d p = _mm256_mul_pd(uv, vv);
    const __m256d q = _mm256_mul_pd(uv, _mm256_permute_pd(vv, 0b0101));
    // a = [n0, c0, n1, c1] with n = |u|^2+|v|^2 and c = Re(v conj(u))
    const __m256d a = _mm256_hadd_pd(s, p);
    const __m256d b = _mm256_hsub_pd(q, q);  // [im0, im0, im1, im1]
    const __m256d er = _mm256_fmadd_pd(mhalf, a, _mm256_permute_pd(a, 0b0101));
    _mm256_storeu_pd(ep + i, _mm256_blend_pd(er, b, 0b1010));
  }
  for (std::size_t k = i / 2; k < u.size(); ++k) {
    const double ur = u[k].real(), ui = u[k].imag();
    const double vr = v[k].real(), vi = v[k].imag();
    e[k] = {-0.5 * (ur * ur + ui * ui + vr * vr + vi * vi) + vr * ur + vi * ui,
            vi * ur - vr * ui};
  }
}

cplx indexed_sum_avx2(std::span<const cplx> e, std::span<const std::uint32_t> idx) {
  const double* base = reinterpret_cast<const double*>(e.data());
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m128i two = _mm_set1_epi32(2);
  const __m128i one = _mm_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 4 <= idx.size(); i += 4) {
    const __m128i raw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx.data() + i));
    const __m128i ire = _mm_mullo_epi32(raw, two);
    const __m128i iim = _mm_add_epi32(ire, one);
    acc_re = _mm256_add_pd(acc_re, _mm256_i32gather_pd(base, ire, 8));
    acc_im = _mm256_add_pd(acc_im, _mm256_i32gather_pd(base, iim, 8));
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; i < idx.size(); ++i) {
    re += e[idx[i]].real();
    im += e[idx[i]].imag();
  }
  return {re, im};
}

cplx recip_weighted_sum_avx2(std::span<const double> s_re, std::span<const double> s_im,
                             std::span<const double> d) {
  const __m256d ones = _mm256_set1_pd(1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= d.size(); j += 4) {
    const __m256d inv = _mm256_div_pd(ones, _mm256_loadu_pd(d.data() + j));
    acc_re = _mm256_fmadd_pd(_mm256_loadu_pd(s_re.data() + j), inv, acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_loadu_pd(s_im.data() + j), inv, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; j < d.size(); ++j) {
    const double inv = 1.0 / d[j];
    re += s_re[j] * inv;
    im += s_im[j] * inv;
  }
  return {re, im};
}

void wigner_row_accum_avx2(std::span<double> row, cplx t0, cplx step) {
  // four independent recurrence lanes, each advancing by step^4
  const cplx t1 = t0 * step, t2 = t1 * step, t3 = t2 * step;
  const cplx s4 = step * step * step * step;
  __m256d tre = _mm256_set_pd(t3.real(), t2.real(), t1.real(), t0.real());
  __m256d tim = _mm256_set_pd(t3.imag(), t2.imag(), t1.imag(), t0.imag());
  const __m256d sr = _mm256_set1_pd(s4.real());
  const __m256d si = _mm256_set1_pd(s4.imag());
  std::size_t i = 0;
  for (; i + 4 <= row.size(); i += 4) {
    double* p = row.data() + i;
    _mm256_storeu_pd(p, _mm256_add_pd(_mm256_loadu_pd(p), tre));
    const __m256d nre = _mm256_fmsub_pd(tre, sr, _mm256_mul_pd(tim, si));
    tim = _mm256_fmadd_pd(tre, si, _mm256_mul_pd(tim, sr));
    tre = nre;
  }
  cplx t{_mm_cvtsd_f64(_mm256_castpd256_pd128(tre)),
         _mm_cvtsd_f64(_mm256_castpd256_pd128(tim))};
  for (; i < row.size(); ++i) {
    row[i] += t.real();
    t *= step;
  }
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops{
      "avx2",
      norm2_avx2,
      cdotc_avx2,
      pair_exponent_terms_avx2,
      indexed_sum_avx2,
      recip_weighted_sum_avx2,
      wigner_row_accum_avx2,
  };
  return &ops;
}

}  // namespace catsim::kernels

#else

namespace catsim::kernels {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace catsim::kernels

#endif
