#include "catsim/two_qubit.hpp"

#include <cmath>
#include <stdexcept>

#include "catsim/coherent.hpp"

namespace catsim {

double TwoQubitState::norm_squared() const {
  return std::norm(p_plus) + std::norm(q_plus) + std::norm(q_minus) + std::norm(p_minus);
}

TwoQubitState encode_two_qubits(cplx a, cplx b, cplx alpha, cplx beta,
                                std::span<const cplx> lambda, std::span<const cplx> chi) {
  const cplx cav = coherent_overlap(std::span(&alpha, 1), std::span(&beta, 1));   // <alpha|beta>
  const cplx res = coherent_overlap(lambda, chi);                                 // <lambda|chi>
  const double s = std::abs(cav);
  const double r = std::abs(res);

  TwoQubitState tq;
  tq.s_plus = std::sqrt(0.5 * (1.0 + s));
  tq.s_minus = std::sqrt(std::max(0.0, 0.5 * (1.0 - s)));
  tq.r_plus = std::sqrt(0.5 * (1.0 + r));
  tq.r_minus = std::sqrt(std::max(0.0, 0.5 * (1.0 - r)));
  // e^{i theta} = <beta|alpha>/|<alpha|beta>|; phase fixed to 0 at exactly
  // orthogonal labels, where any choice gives the same density operator.
  tq.theta = s > 0.0 ? std::arg(std::conj(cav)) : 0.0;
  tq.phi_b = r > 0.0 ? std::arg(std::conj(res)) : 0.0;

  const cplx rot = std::exp(cplx{0.0, -(tq.theta + tq.phi_b)});
  tq.p_plus = (a + b * rot) * tq.s_plus * tq.r_plus;
  tq.p_minus = (a + b * rot) * tq.s_minus * tq.r_minus;
  tq.q_plus = (-a + b * rot) * tq.s_plus * tq.r_minus;
  tq.q_minus = (-a + b * rot) * tq.s_minus * tq.r_plus;

  const double n2 = tq.norm_squared();
  if (!(n2 > 1e-300)) throw std::invalid_argument("encode_two_qubits: zero-norm input state");
  const double inv = 1.0 / std::sqrt(n2);
  tq.p_plus *= inv;
  tq.p_minus *= inv;
  tq.q_plus *= inv;
  tq.q_minus *= inv;
  return tq;
}

double concurrence(const TwoQubitState& tq) {
  return 2.0 * std::abs(tq.p_plus * tq.p_minus - tq.q_plus * tq.q_minus);
}

}  // namespace catsim
