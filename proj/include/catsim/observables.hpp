#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catsim/coherent.hpp"
#include "catsim/model.hpp"
#include "catsim/structured_bath.hpp"

namespace catsim {

/// A randomly chosen subset of reservoir modes of fractional size f.
struct FragmentSelection {
  std::vector<std::uint32_t> indices;  // distinct, sorted
  double fraction = 0.0;
};

/// round(f N) distinct mode indices, uniform without replacement;
/// deterministic in (seed, stream).
FragmentSelection sample_fragment(std::size_t n_modes, double fraction, std::uint64_t seed,
                                  std::uint64_t stream);

/// Reduced cavity state: rank-2 mixture over {alpha, beta} whose coherence
/// carries the full reservoir overlap <chi|lambda>, normalized.
CoherentMixture cavity_state(const TwoBranchState& branch);

/// Reduced state of a reservoir fragment: mixture over the fragment-restricted
/// labels, coherence weighted by <beta|alpha> <chi|lambda>_{R-F}, normalized.
CoherentMixture fragment_state(const TwoBranchState& branch, const FragmentSelection& sel);

/// Joint cavity+fragment state over labels (alpha + lambda_F), (beta + chi_F),
/// coherence weighted by <chi|lambda>_{R-F}, normalized.
CoherentMixture cavity_fragment_state(const TwoBranchState& branch,
                                      const FragmentSelection& sel);

/// I_{A:F} = S(rho_c) + S(rho_F) - S(rho_cF) in bits.
double mutual_information(const TwoBranchState& branch, const FragmentSelection& sel);

/// Normalized average mutual information over random fragments per fraction.
struct NamiCurve {
  std::vector<double> fractions;
  std::vector<double> values;  // avg I / (2 S(A)) per fraction
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
};

/// Averages I_{A:F} over `realizations` uniform fragments per fraction and
/// divides by 2 S(A); identically zero when S(A) < 1e-9 (the t = 0 limit).
NamiCurve nami_curve(const TwoBranchState& branch, std::span<const double> fractions,
                     std::size_t realizations, std::uint64_t seed);

struct WignerAxis {
  double min = -6.0;
  double max = 6.0;
  std::size_t count = 201;
  double step() const { return count > 1 ? (max - min) / double(count - 1) : 0.0; }
};

struct WignerGrid {
  WignerAxis re, im;
  std::vector<double> values;  // values[iy * re.count + ix]
  double at(std::size_t ix, std::size_t iy) const { return values[iy * re.count + ix]; }
  /// sum W dA over the grid
  double integral() const;
  double min_value() const;
};

/// Phase-space quasi-probability W(z) of a single-mode mixture,
/// (2/pi) sum_ij C_ij exp[-2|z|^2 + 2 z u_j* + 2 z* u_i - u_i u_j*
///                        - |u_i|^2/2 - |u_j|^2/2].
/// Throws std::invalid_argument on multimode input.
WignerGrid wigner(const CoherentMixture& mix, const WignerAxis& re, const WignerAxis& im);

/// Axes covering every label center plus `margin` on each side.
WignerAxis wigner_auto_axis(const CoherentMixture& mix, bool imaginary, double margin = 3.0,
                            std::size_t count = 201);

/// <n> = sum_ij C_ij u_i u_j* G_ji of a normalized single-mode mixture.
double mean_photon_number(const CoherentMixture& mix);

/// Mean photon number and idempotency defect along the structured-bath
/// trajectory (post-pulse qubit-|1> branch by default, pre-pulse state when
/// post_pulse is false). Times are in units of 1/gamma.
struct StructuredTrajectory {
  std::vector<double> times;
  std::vector<double> mean_photons;
  std::vector<double> idempotency;
};

StructuredTrajectory structured_trajectory(cplx alpha0, double phi, const LorentzParams& p,
                                           const ContinuumGrid& grid,
                                           std::span<const double> times,
                                           bool post_pulse = true);

/// Dispersive Markov (Lindblad) reference with decay kappa and branch
/// rotations e^{-/+ i omega t}.
StructuredTrajectory markov_trajectory(cplx alpha0, double phi, double kappa, double omega,
                                       std::span<const double> times, bool post_pulse = true);

/// Cavity-reservoir concurrence of the post-pulse qubit-|1> branch through
/// the two-bosonic-qubit encoding.
std::vector<double> concurrence_series(cplx alpha0, double phi, const LorentzParams& p,
                                       const ContinuumGrid& grid, std::span<const double> times);

/// Family of orthogonal initial cat-state pairs and the trace-distance grid
/// for the information-backflow measure.
struct BlpConfig {
  std::vector<double> photon_numbers{5.0, 10.0, 20.0};
  std::vector<double> thetas{0.0, 1.5707963267948966, 3.141592653589793};
  std::size_t time_points = 2000;
  double t_max = 20.0;               ///< in units of 1/gamma
  double increment_floor = 1e-12;    ///< positive increments below this are roundoff
};

struct BlpResult {
  std::vector<double> lambda_over_gamma;
  std::vector<double> measure;  ///< N per scan point (maximum over the family)
  std::string pair_family;
};

/// Backflow measure for one Lorentzian setting: pairs evolve through both
/// dispersive branches with equal weight, coherences carry the reservoir
/// overlap, and N sums the positive trace-distance increments on the grid,
/// maximized over the pair family. Only pairs orthogonal to 1e-9 are
/// accepted.
double blp_measure(const LorentzParams& p, const BlpConfig& cfg);

/// Same propagation with the exact Markov factors; the measure vanishes for
/// this contractive semigroup.
double blp_measure_markov(double kappa, double omega, double photon_number, double theta,
                          const BlpConfig& cfg);

/// Scan over Lambda/gamma, one measure per grid point.
BlpResult blp_scan(double gamma, double omega_over_gamma,
                   std::span<const double> lambda_over_gamma, const BlpConfig& cfg);

}  // namespace catsim
