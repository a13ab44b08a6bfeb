#pragma once

#include <complex>
#include <span>

namespace catsim {

using cplx = std::complex<double>;

/// Two-bosonic-qubit encoding of a|alpha,lambda> + b|beta,chi>: amplitudes of
/// |11>, |10>, |01>, |00> plus the overlap data (S/R magnitudes, theta and
/// phi_b phases) the transformation was built from. phi_b is the second
/// subsystem's phase, renamed to avoid clashing with the initial qubit phase.
struct TwoQubitState {
  cplx p_plus;
  cplx q_plus;
  cplx q_minus;
  cplx p_minus;
  double s_plus, s_minus;
  double r_plus, r_minus;
  double theta, phi_b;

  double norm_squared() const;
};

/// Encodes the two-branch state with cavity labels (alpha, beta) and
/// reservoir labels (lambda, chi) into the orthonormal two-qubit basis and
/// normalizes. The encoding is an isometry on the two-dimensional branch
/// span. Throws std::invalid_argument when the input state has zero norm.
TwoQubitState encode_two_qubits(cplx a, cplx b, cplx alpha, cplx beta,
                                std::span<const cplx> lambda, std::span<const cplx> chi);

/// Pure-state two-qubit concurrence C = 2|p+ p- - q+ q-| in [0, 1].
double concurrence(const TwoQubitState& tq);

}  // namespace catsim
