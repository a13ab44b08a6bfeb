#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace catsim {

using cplx = std::complex<double>;

/// A multimode coherent label: one amplitude per stored mode. Labels only
/// carry the modes they actually involve, so overlaps over 900-mode
/// reservoirs reduce to exponent sums over the stored entries.
using CoherentLabel = std::vector<cplx>;

/// <u|v> = exp( sum_k [ -1/2(|u_k|^2+|v_k|^2) + v_k conj(u_k) ] )
cplx coherent_overlap(std::span<const cplx> u, std::span<const cplx> v);

/// Density operator rho = sum_ij C_ij |u_i><u_j| over non-orthogonal coherent
/// labels, with the Gram matrix G_ij = <u_i|u_j> cached at construction.
/// Values are immutable once built.
class CoherentMixture {
 public:
  CoherentMixture(std::vector<CoherentLabel> labels, Eigen::MatrixXcd coeff);

  /// Mixture specified by coefficients and overlaps alone; label-dependent
  /// operations (Wigner, photon number, trace distance) are unavailable.
  static CoherentMixture from_gram(Eigen::MatrixXcd coeff, Eigen::MatrixXcd gram);

  Eigen::Index rank() const { return coeff_.rows(); }
  const std::vector<CoherentLabel>& labels() const;
  bool has_labels() const { return has_labels_; }
  const Eigen::MatrixXcd& coeff() const { return coeff_; }
  const Eigen::MatrixXcd& gram() const { return gram_; }

  /// Tr rho = sum_ij C_ij G_ji
  cplx trace() const;

  /// Same mixture rescaled to unit trace; throws on vanishing trace.
  CoherentMixture normalized() const;

  /// Eigenvalues of G^{1/2} C G^{1/2} (the nonzero spectrum of rho plus
  /// explicit zeros), descending. Small negatives within -1e-10 are clamped
  /// to zero; anything below that raises std::runtime_error. Gram directions
  /// with eigenvalue < 1e-12 are treated as rank collapse and dropped.
  std::vector<double> spectrum() const;

 private:
  CoherentMixture() = default;
  std::vector<CoherentLabel> labels_;
  Eigen::MatrixXcd coeff_;
  Eigen::MatrixXcd gram_;
  bool has_labels_ = false;
};

/// S = -sum p log2 p over spectrum(mix), in bits. Requires a normalized
/// mixture (trace within 1e-8 of one).
double von_neumann_entropy(const CoherentMixture& mix);

/// Gamma = 1 - Tr rho^2 = 1 - sum p^2.
double purity_defect(const CoherentMixture& mix);

/// D = 1/2 tr|rho_a - rho_b| evaluated on the union label list. Both inputs
/// must be normalized and carry labels.
double trace_distance(const CoherentMixture& a, const CoherentMixture& b);

}  // namespace catsim
