#include "catsim/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "catsim/kernels.hpp"

namespace catsim {

void SystemParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("SystemParams: omega must be > 0");
  if (!(phi >= 0.0 && phi <= std::numbers::pi / 2))
    throw std::invalid_argument("SystemParams: phi must lie in [0, pi/2]");
  if (!std::isfinite(alpha0.real()) || !std::isfinite(alpha0.imag()))
    throw std::invalid_argument("SystemParams: alpha0 must be finite");
}

double TwoBranchState::norm_squared() const {
  const cplx cavity = std::exp(kernels::overlap_exponent(std::span(&beta, 1), std::span(&alpha, 1)));
  const cplx bath = std::exp(kernels::overlap_exponent(chi, lambda));
  // <psi|psi> = |w1|^2 + |w0|^2 + 2 Re[ w1 conj(w0) <beta|alpha><chi|lambda> ]
  return std::norm(weight_1) + std::norm(weight_0) +
         2.0 * std::real(weight_1 * std::conj(weight_0) * cavity * bath);
}

TwoBranchState initial_state(const SystemParams& params, std::size_t n_modes) {
  params.validate();
  TwoBranchState s;
  s.weight_1 = std::sin(params.phi);
  s.weight_0 = std::cos(params.phi);
  s.alpha = params.alpha0;
  s.beta = params.alpha0;
  s.lambda.assign(n_modes, cplx{0.0, 0.0});
  s.chi.assign(n_modes, cplx{0.0, 0.0});
  return s;
}

TwoBranchState state_at(const SystemParams& params, const BranchAmplitudes& amps,
                        std::size_t time_index) {
  if (time_index >= amps.times.size())
    throw std::out_of_range("state_at: time index outside trajectory");
  TwoBranchState s;
  const double t = amps.times[time_index];
  // omega_x contributes only this relative branch phase (it cancels in all
  // reported observables).
  s.weight_1 = std::sin(params.phi) * std::exp(cplx{0.0, -params.omega_x * t});
  s.weight_0 = std::cos(params.phi);
  s.alpha = amps.alpha[time_index];
  s.beta = amps.beta[time_index];
  s.lambda = amps.lambda[time_index];
  s.chi = amps.chi[time_index];
  return s;
}

std::pair<TwoBranchState, TwoBranchState> apply_probe_pulse(const TwoBranchState& state) {
  constexpr cplx mi{0.0, -1.0};
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  TwoBranchState out1 = state;
  out1.weight_1 = state.weight_1 * inv_sqrt2;
  out1.weight_0 = mi * state.weight_0 * inv_sqrt2;

  TwoBranchState out0 = state;
  out0.weight_1 = mi * state.weight_1 * inv_sqrt2;
  out0.weight_0 = state.weight_0 * inv_sqrt2;

  return {out1, out0};
}

}  // namespace catsim
