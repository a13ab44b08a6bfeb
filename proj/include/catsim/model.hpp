#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace catsim {

using cplx = std::complex<double>;

/// Scalar physics parameters of the dispersive qubit-cavity model.
///
/// Time conventions: finite-bath results are reported in units of pi/omega,
/// structured-bath results in units of 1/gamma (see LorentzParams).
struct SystemParams {
  double omega_x = 0.0;  ///< exciton frequency; a global phase on the |1> branch
  double omega_c = 0.0;  ///< cavity frequency
  double omega = 1.0;    ///< dispersive shift, the qubit-conditioned cavity detuning
  double phi = 0.0;      ///< initial qubit phase, weights (sin phi, cos phi)
  cplx alpha0 = 0.0;     ///< initial cavity label; |alpha0|^2 = mean photon number

  /// rotation frequency of the qubit-|1> cavity branch
  double delta_omega() const { return omega_c + omega; }
  /// rotation frequency of the qubit-|0> cavity branch
  double delta_omega_prime() const { return omega_c - omega; }

  /// Throws std::invalid_argument when omega <= 0 or phi lies outside [0, pi/2].
  void validate() const;
};

/// Time-indexed coherent labels of the two qubit-conditioned branches.
/// alpha/lambda belong to the |1> branch, beta/chi to the |0> branch.
struct BranchAmplitudes {
  std::vector<double> times;
  std::vector<cplx> alpha, beta;                 // [time]
  std::vector<std::vector<cplx>> lambda, chi;    // [time][mode]
};

/// One time slice of the evolved state
///   weight_1 |1>|alpha>|lambda> + weight_0 |0>|beta>|chi>.
struct TwoBranchState {
  cplx weight_1;
  cplx weight_0;
  cplx alpha;
  cplx beta;
  std::vector<cplx> lambda;
  std::vector<cplx> chi;

  /// <psi|psi> evaluated through coherent overlaps; in (0, 1] for the states
  /// produced by the pipeline.
  double norm_squared() const;
};

/// (sin phi |1> + cos phi |0>) x |alpha0> x vacuum
TwoBranchState initial_state(const SystemParams& params, std::size_t n_modes);

/// Slice of a propagated trajectory; carries the omega_x branch phase.
TwoBranchState state_at(const SystemParams& params, const BranchAmplitudes& amps,
                        std::size_t time_index);

/// Ideal instantaneous pi/2 probe rotation. Returns the post-pulse states
/// conditioned on qubit outcome |1> (first) and |0> (second); bath labels are
/// untouched and the two outcomes together conserve the input norm.
std::pair<TwoBranchState, TwoBranchState> apply_probe_pulse(const TwoBranchState& state);

}  // namespace catsim
