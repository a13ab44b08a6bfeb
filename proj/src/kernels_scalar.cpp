#include "catsim/kernels.hpp"

namespace catsim::kernels {

namespace {

double norm2_scalar(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& x : v) acc += x.real() * x.real() + x.imag() * x.imag();
  return acc;
}

cplx cdotc_scalar(std::span<const cplx> u, std::span<const cplx> v) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    re += v[k].real() * u[k].real() + v[k].imag() * u[k].imag();
    im += v[k].imag() * u[k].real() - v[k].real() * u[k].imag();
  }
  return {re, im};
}

void pair_exponent_terms_scalar(std::span<const cplx> u, std::span<const cplx> v,
                                std::span<cplx> e) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double ur = u[k].real(), ui = u[k].imag();
    const double vr = v[k].real(), vi = v[k].imag();
    e[k] = {-0.5 * (ur * ur + ui * ui + vr * vr + vi * vi) + vr * ur + vi * ui,
            vi * ur - vr * ui};
  }
}

cplx indexed_sum_scalar(std::span<const cplx> e, std::span<const std::uint32_t> idx) {
  double re = 0.0, im = 0.0;
  for (std::uint32_t i : idx) {
    re += e[i].real();
    im += e[i].imag();
  }
  return {re, im};
}

cplx recip_weighted_sum_scalar(std::span<const double> s_re, std::span<const double> s_im,
                               std::span<const double> d) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double inv = 1.0 / d[j];
    re += s_re[j] * inv;
    im += s_im[j] * inv;
  }
  return {re, im};
}

void wigner_row_accum_scalar(std::span<double> row, cplx t0, cplx step) {
  double tr = t0.real(), ti = t0.imag();
  const double sr = step.real(), si = step.imag();
  for (double& w : row) {
    w += tr;
    const double nr = tr * sr - ti * si;
    ti = tr * si + ti * sr;
    tr = nr;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      "scalar",
      norm2_scalar,
      cdotc_scalar,
      pair_exponent_terms_scalar,
      indexed_sum_scalar,
      recip_weighted_sum_scalar,
      wigner_row_accum_scalar,
  };
  return ops;
}

}  // namespace catsim::kernels
