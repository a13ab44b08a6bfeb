#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "catsim/model.hpp"

namespace catsim {

/// Finite reservoir of n_modes oscillators on a uniform frequency grid with a
/// single coupling constant (a per-mode profile can be supplied through
/// coupling_override).
struct FiniteBathConfig {
  std::size_t n_modes = 900;
  double omega_min = 0.0;
  double omega_max = 10.0;
  double gamma_k = 0.125;
  std::uint64_t seed = 1;  ///< consumed by fragment sampling downstream
  std::vector<double> coupling_override;

  /// omega_k = omega_min + k (omega_max - omega_min)/(N-1); both endpoints
  /// are included (a single mode sits at omega_min).
  std::vector<double> mode_frequencies() const;
  std::vector<double> couplings() const;
  void validate() const;
};

enum class Branch { plus, minus };

/// Hermitian generator of i d/dt v = G v with v = (cavity, bath modes):
/// diagonal (head, omega_1..omega_N), first row/column gamma_k. head is
/// omega_c + omega for the plus branch and omega_c - omega for minus.
struct BranchGenerator {
  double head = 0.0;
  std::vector<double> mode_freq;
  std::vector<double> coupling;

  Eigen::MatrixXcd dense() const;
};

BranchGenerator assemble_generator(const SystemParams& params, const FiniteBathConfig& bath,
                                   Branch branch);

/// Exact propagator exp(-i G t) for the arrowhead generator, built from one
/// eigendecomposition and reused for every requested time. The secular
/// equation is solved per interlacing interval and the couplings are
/// reconstructed from the computed roots so that the implicit eigenvector
/// matrix stays numerically orthogonal. Decoupled modes (zero coupling) and
/// repeated frequencies are deflated first.
class ArrowheadSolver {
 public:
  explicit ArrowheadSolver(const BranchGenerator& gen);

  /// Eigenvalues of the coupled block, ascending (deflated modes excluded).
  std::span<const double> coupled_eigenvalues() const { return mu_; }

  /// v(t) = exp(-i G t) v0 for a general initial vector (head first).
  std::vector<cplx> evolve(std::span<const cplx> v0, double t) const;

  /// Fast path for v0 = amp * e_head (cavity excitation, bath vacuum).
  std::vector<cplx> evolve_head(cplx amp, double t) const;

 private:
  void solve_secular(double lo, double hi);
  double root_minus_pole(std::size_t j, std::size_t k) const;
  void spectral_apply(cplx head_in, std::span<const cplx> eff_in, double t,
                      cplx& head_out, std::span<cplx> eff_out) const;

  std::size_t n_modes_ = 0;  // original bath size
  double head_ = 0.0;

  // effective coupled system after deflation
  std::vector<double> w_;     // strictly increasing pole frequencies
  std::vector<double> g2_;    // squared couplings
  std::vector<double> ghat_;  // couplings reconstructed from the roots
  std::vector<std::vector<std::pair<std::uint32_t, double>>> members_;  // (mode, weight)

  // deflated modes evolving by a bare phase
  std::vector<std::pair<std::uint32_t, double>> deflated_;  // (mode, frequency)

  // roots mu_j = w_[anchor_j] + tau_j, ascending
  std::vector<double> mu_;
  std::vector<std::uint32_t> anchor_;
  std::vector<double> tau_;
  std::vector<double> weight0_;  // head components U_{0j} of the eigenvectors
};

/// Amplitude series of one branch: cavity label and bath labels at each time.
struct BranchSeries {
  std::vector<double> times;
  std::vector<cplx> amp;
  std::vector<std::vector<cplx>> modes;
};

/// Propagates v(0) = (alpha0, 0, ..., 0) through exp(-i G t) at the requested
/// times (sorted, starting at 0). Throws std::runtime_error with generator
/// diagnostics if the eigendecomposition cannot be completed.
BranchSeries evolve_finite(const SystemParams& params, const FiniteBathConfig& bath,
                           Branch branch, std::span<const double> times);

/// Both branches in one BranchAmplitudes record.
BranchAmplitudes evolve_both(const SystemParams& params, const FiniteBathConfig& bath,
                             std::span<const double> times);

/// |amp(t)|^2 + sum_k |mode_k(t)|^2, conserved along each branch.
double total_excitation(const BranchSeries& series, std::size_t time_index);

}  // namespace catsim
