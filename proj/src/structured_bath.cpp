#include "catsim/structured_bath.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "catsim/kernels.hpp"

namespace catsim {

namespace {

/// sinh(z)/z; direct evaluation is stable away from the origin.
cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-100) return 1.0;
  return std::sinh(z) / z;
}

cplx envelope_impl(double t, cplx m, cplx eta) {
  const cplx z = 0.5 * eta * t;
  if (std::abs(z) < 1e-3) {
    // series in z keeps the eta -> 0 double pole removable
    const cplx z2 = z * z;
    const cplx ch = 1.0 + z2 * (0.5 + z2 / 24.0);
    const cplx sc = 1.0 + z2 * (1.0 / 6.0 + z2 / 120.0);
    return (ch + 0.5 * m * t * sc) * std::exp(-0.5 * m * t);
  }
  // folded exponentials keep every factor bounded (Re eta <= Lambda = Re M)
  const cplx a = std::exp(0.5 * (eta - m) * t);
  const cplx b = std::exp(-0.5 * (eta + m) * t);
  return 0.5 * (a + b) + 0.5 * (m / eta) * (a - b);
}

/// Adaptive Simpson quadrature for the amplitude equation fallback.
cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                      cplx fm, cplx fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const cplx flm = f(lm), frm = f(rm);
  const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const cplx delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

/// Reservoir amplitude of one branch in its rotating frame. x encodes the
/// mode detuning, x = -(M/2 + i (branch rotation - omega_k)).
cplx mode_amplitude_impl(double t, cplx amp0, double gamma_k, double detuning, cplx m,
                         cplx eta) {
  const cplx x = -(0.5 * m + cplx{0.0, detuning});
  const cplx den = 4.0 * eta * (x * x - 0.25 * eta * eta);
  const double den_scale = 4.0 * std::abs(eta) * (std::norm(x) + 0.25 * std::norm(eta));
  if (!(std::abs(den) > 1e-12 * den_scale) || std::abs(eta) < 1e-14) {
    // degenerate pole structure: integrate the amplitude equation directly,
    // lambda~_k(t) = -i gamma_k int_0^t alpha~(s) e^{-i detuning s} ds
    const auto integrand = [&](double s) {
      return envelope_impl(s, m, eta) * std::exp(cplx{0.0, -detuning * s});
    };
    return cplx{0.0, -1.0} * gamma_k * amp0 *
           integrate(integrand, 0.0, t, 1e-13 * std::max(1.0, t));
  }
  const cplx a = std::exp((x + 0.5 * eta) * t);
  const cplx b = std::exp((x - 0.5 * eta) * t);
  const cplx num = eta * (m - 2.0 * x) * (a + b) - 2.0 * (m * x - 0.5 * eta * eta) * (a - b) -
                   2.0 * eta * (m - 2.0 * x);
  return cplx{0.0, 1.0} * gamma_k * amp0 * num / den;
}

}  // namespace

cplx LorentzParams::eta() const {
  const cplx m = M();
  return std::sqrt(m * m - 2.0 * lambda_width * gamma);
}

double LorentzParams::spectral_density(double omega_k) const {
  const double d = omega_c - omega_k;
  return (0.5 / std::numbers::pi) * gamma * lambda_width * lambda_width /
         (d * d + lambda_width * lambda_width);
}

void LorentzParams::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("LorentzParams: gamma must be > 0");
  if (!(lambda_width > 0.0))
    throw std::invalid_argument("LorentzParams: lambda_width must be > 0");
  if (!(omega >= 0.0)) throw std::invalid_argument("LorentzParams: omega must be >= 0");
}

cplx memory_kernel(double dt, const LorentzParams& p) {
  if (dt < 0.0) throw std::invalid_argument("memory_kernel: dt must be >= 0");
  return 0.5 * p.gamma * p.lambda_width * std::exp(-p.M() * dt);
}

cplx alpha_envelope(double t, const LorentzParams& p) { return envelope_impl(t, p.M(), p.eta()); }

cplx beta_envelope(double t, const LorentzParams& p) {
  return envelope_impl(t, p.M_beta(), p.eta_beta());
}

cplx alpha_structured(double t, cplx alpha0, const LorentzParams& p) {
  if (t < 0.0) throw std::invalid_argument("alpha_structured: t must be >= 0");
  return alpha0 * alpha_envelope(t, p);
}

cplx beta_structured(double t, cplx beta0, const LorentzParams& p) {
  if (t < 0.0) throw std::invalid_argument("beta_structured: t must be >= 0");
  return beta0 * beta_envelope(t, p);
}

cplx alpha_markov(double t, cplx alpha0, double kappa) {
  if (t < 0.0) throw std::invalid_argument("alpha_markov: t must be >= 0");
  if (kappa < 0.0) throw std::invalid_argument("alpha_markov: kappa must be >= 0");
  return alpha0 * std::exp(-kappa * t);
}

cplx lambda_structured(double t, double omega_k, cplx alpha0, double gamma_k,
                       const LorentzParams& p) {
  if (t < 0.0) throw std::invalid_argument("lambda_structured: t must be >= 0");
  return mode_amplitude_impl(t, alpha0, gamma_k, p.delta_omega() - omega_k, p.M(), p.eta());
}

cplx chi_structured(double t, double omega_k, cplx beta0, double gamma_k,
                    const LorentzParams& p) {
  if (t < 0.0) throw std::invalid_argument("chi_structured: t must be >= 0");
  return mode_amplitude_impl(t, beta0, gamma_k, p.delta_omega_prime() - omega_k, p.M_beta(),
                             p.eta_beta());
}

ContinuumGrid ContinuumGrid::for_params(const LorentzParams& p, std::size_t n_modes,
                                        double width_in_lambda) {
  ContinuumGrid g;
  g.n_modes = n_modes;
  g.center = p.omega_c;
  g.half_width = width_in_lambda * p.lambda_width;
  return g;
}

std::vector<double> ContinuumGrid::mode_frequencies() const {
  std::vector<double> w(n_modes);
  const double dw = 2.0 * half_width / static_cast<double>(n_modes);
  for (std::size_t k = 0; k < n_modes; ++k)
    w[k] = center - half_width + dw * (static_cast<double>(k) + 0.5);
  return w;
}

std::vector<double> ContinuumGrid::couplings(const LorentzParams& p) const {
  const double dw = 2.0 * half_width / static_cast<double>(n_modes);
  std::vector<double> g(n_modes);
  const std::vector<double> w = mode_frequencies();
  for (std::size_t k = 0; k < n_modes; ++k) g[k] = std::sqrt(p.spectral_density(w[k]) * dw);
  return g;
}

double ContinuumGrid::coverage(const LorentzParams& p) const {
  const double dw = 2.0 * half_width / static_cast<double>(n_modes);
  double acc = 0.0;
  for (double w : mode_frequencies()) acc += p.spectral_density(w) * dw;
  return acc / (0.5 * p.gamma * p.lambda_width);
}

cplx reservoir_overlap(double t, const ContinuumGrid& grid, const LorentzParams& p, cplx alpha0,
                       cplx beta0) {
  if (t < 0.0) throw std::invalid_argument("reservoir_overlap: t must be >= 0");
  const double cov = grid.coverage(p);
  if (cov < 0.95) {
    throw std::runtime_error("reservoir_overlap: grid carries only " + std::to_string(cov) +
                             " of the Lorentzian weight; widen or refine the grid");
  }
  const std::vector<double> w = grid.mode_frequencies();
  const std::vector<double> g = grid.couplings(p);
  std::vector<cplx> lambda(grid.n_modes), chi(grid.n_modes);
  for (std::size_t k = 0; k < grid.n_modes; ++k) {
    lambda[k] = lambda_structured(t, w[k], alpha0, g[k], p);
    chi[k] = chi_structured(t, w[k], beta0, g[k], p);
  }
  return std::exp(kernels::overlap_exponent(lambda, chi));
}

BranchAmplitudes evolve_structured(cplx alpha0, const LorentzParams& p, const ContinuumGrid& grid,
                                   std::span<const double> times) {
  p.validate();
  const std::vector<double> w = grid.mode_frequencies();
  const std::vector<double> g = grid.couplings(p);

  BranchAmplitudes amps;
  amps.times.assign(times.begin(), times.end());
  const std::size_t nt = times.size();
  amps.alpha.resize(nt);
  amps.beta.resize(nt);
  amps.lambda.resize(nt);
  amps.chi.resize(nt);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nt); ++i) {
    const auto ti = static_cast<std::size_t>(i);
    const double t = times[ti];
    amps.alpha[ti] = alpha_structured(t, alpha0, p) * std::polar(1.0, -p.delta_omega() * t);
    amps.beta[ti] = beta_structured(t, alpha0, p) * std::polar(1.0, -p.delta_omega_prime() * t);
    amps.lambda[ti].resize(grid.n_modes);
    amps.chi[ti].resize(grid.n_modes);
    for (std::size_t k = 0; k < grid.n_modes; ++k) {
      const cplx rot = std::polar(1.0, -w[k] * t);
      amps.lambda[ti][k] = lambda_structured(t, w[k], alpha0, g[k], p) * rot;
      amps.chi[ti][k] = chi_structured(t, w[k], alpha0, g[k], p) * rot;
    }
  }
  return amps;
}

cplx markov_cross_exponent(double t, cplx alpha0, double omega, double kappa) {
  if (kappa <= 0.0) return 0.0;
  const double n = std::norm(alpha0);
  const cplx km{kappa, -omega};
  const cplx cross = kappa * (1.0 - std::exp(-2.0 * km * t)) / km;
  const double direct = -std::expm1(-2.0 * kappa * t);  // 1 - e^{-2 kappa t}
  return n * (cross - direct);
}

}  // namespace catsim
