#pragma once

#include <complex>
#include <span>
#include <vector>

#include "catsim/model.hpp"

namespace catsim {

/// Lorentzian reservoir J(w) = (1/2pi) gamma Lambda^2 / ((omega_c - w)^2 + Lambda^2).
/// gamma sets the system relaxation scale (tau_q ~ 1/gamma) and lambda_width
/// the reservoir correlation scale (tau_r = 1/Lambda); Lambda < gamma is the
/// strong-coupling regime. omega is the dispersive shift entering the kernel
/// phase; omega_c locates the spectral density (structured scenarios work in
/// the frame where omega_c = 0).
struct LorentzParams {
  double gamma = 1.0;
  double lambda_width = 1.0;
  double omega = 1.0;
  double omega_c = 0.0;

  cplx M() const { return {lambda_width, -omega}; }
  cplx eta() const;  // principal sqrt(M^2 - 2 Lambda gamma)
  cplx M_beta() const { return std::conj(M()); }
  cplx eta_beta() const { return std::conj(eta()); }

  double delta_omega() const { return omega_c + omega; }
  double delta_omega_prime() const { return omega_c - omega; }

  double spectral_density(double omega_k) const;

  void validate() const;
};

/// f(dt) = (gamma Lambda / 2) e^{-M dt}, the alpha-branch memory kernel.
cplx memory_kernel(double dt, const LorentzParams& p);

/// Rotating-frame propagation factor alpha~(t)/alpha~(0)
///   [cosh(eta t/2) + M sinh(eta t/2)/eta] e^{-M t/2},
/// with the removable eta -> 0 singularity handled by series expansion.
cplx alpha_envelope(double t, const LorentzParams& p);
/// Same with M -> conj(M) (the omega -> -omega branch).
cplx beta_envelope(double t, const LorentzParams& p);

/// Rotating-frame amplitudes alpha~(t) = alpha0 * envelope.
cplx alpha_structured(double t, cplx alpha0, const LorentzParams& p);
cplx beta_structured(double t, cplx beta0, const LorentzParams& p);

/// Markov-limit amplitude alpha~(t) = alpha0 e^{-kappa t}.
cplx alpha_markov(double t, cplx alpha0, double kappa);
/// Wideband value of the integrated kernel at omega = 0.
inline double markov_kappa(const LorentzParams& p) { return 0.5 * p.gamma; }

/// Rotating-frame reservoir amplitude lambda~_k(t) of the alpha branch, from
/// the Laplace-transform closed form; falls back to quadrature of the
/// coupled amplitude equation when the closed-form denominator degenerates.
/// The lab-frame amplitude is lambda~_k e^{-i omega_k t}.
cplx lambda_structured(double t, double omega_k, cplx alpha0, double gamma_k,
                       const LorentzParams& p);
/// The beta-branch analogue chi~_k(t).
cplx chi_structured(double t, double omega_k, cplx beta0, double gamma_k,
                    const LorentzParams& p);

/// Uniform discretization of the Lorentzian continuum over
/// [omega_c - half_width, omega_c + half_width] (midpoint rule), used as the
/// finite-bath oracle and for reservoir overlaps.
struct ContinuumGrid {
  std::size_t n_modes = 4000;
  double center = 0.0;
  double half_width = 0.0;  ///< defaults to 50 Lambda when left at 0

  static ContinuumGrid for_params(const LorentzParams& p, std::size_t n_modes = 4000,
                                  double width_in_lambda = 50.0);

  std::vector<double> mode_frequencies() const;
  std::vector<double> couplings(const LorentzParams& p) const;  // gamma_k = sqrt(J dw)
  /// fraction of the full Lorentzian weight carried by the grid
  double coverage(const LorentzParams& p) const;
};

/// <chi(t)|lambda(t)> summed over the grid modes. Refuses grids covering
/// less than 95% of the Lorentzian weight.
cplx reservoir_overlap(double t, const ContinuumGrid& grid, const LorentzParams& p,
                       cplx alpha0, cplx beta0);

/// Lab-frame two-branch trajectory on the continuum grid: cavity labels
/// alpha~ e^{-i dw t}, beta~ e^{-i dw' t} and per-mode reservoir labels.
BranchAmplitudes evolve_structured(cplx alpha0, const LorentzParams& p,
                                   const ContinuumGrid& grid, std::span<const double> times);

/// log <chi(t)|lambda(t)> of the dispersive Markov (Lindblad) reference with
/// decay kappa and branch rotations exp(-/+ i omega t):
///   |alpha0|^2 [ kappa (1 - e^{-2(kappa - i omega)t})/(kappa - i omega)
///                - (1 - e^{-2 kappa t}) ].
cplx markov_cross_exponent(double t, cplx alpha0, double omega, double kappa);

}  // namespace catsim
