#include "catsim/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "catsim/kernels.hpp"

namespace catsim {

namespace {

constexpr double kGramFloor = 1e-12;       // rank-collapse cutoff on Gram eigenvalues
constexpr double kNegativeClamp = -1e-10;  // tolerated numerical negativity of rho

void require_hermitian(const Eigen::MatrixXcd& c, const char* what) {
  if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, c.cwiseAbs().maxCoeff()))
    throw std::invalid_argument(std::string(what) + ": coefficient matrix is not Hermitian");
}

/// Maps rho onto its support: returns S with S^dagger C S Hermitian of
/// reduced dimension, where S = V_kept diag(sqrt(g_kept)).
Eigen::MatrixXcd gram_half(const Eigen::MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("coherent: Gram eigendecomposition failed");
  const auto& g = es.eigenvalues();
  if (g.minCoeff() < -1e-9 * std::max(1.0, g.maxCoeff()))
    throw std::runtime_error("coherent: Gram matrix not positive semidefinite");
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (g[i] > kGramFloor) ++kept;
  Eigen::MatrixXcd s(gram.rows(), kept);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g[i] <= kGramFloor) continue;
    s.col(col++) = es.eigenvectors().col(i) * std::sqrt(g[i]);
  }
  return s;
}

/// Eigenvalues of G^{1/2} C G^{1/2}, unclamped, padded with zeros to rank.
std::vector<double> raw_spectrum(const Eigen::MatrixXcd& coeff, const Eigen::MatrixXcd& gram) {
  const Eigen::MatrixXcd s = gram_half(gram);
  std::vector<double> out(static_cast<std::size_t>(coeff.rows()), 0.0);
  if (s.cols() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.adjoint() * coeff * s);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("coherent: spectrum eigendecomposition failed");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      out[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

cplx coherent_overlap(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("coherent_overlap: labels must have equal mode counts");
  return std::exp(kernels::overlap_exponent(u, v));
}

CoherentMixture::CoherentMixture(std::vector<CoherentLabel> labels, Eigen::MatrixXcd coeff)
    : labels_(std::move(labels)), coeff_(std::move(coeff)), has_labels_(true) {
  const auto r = static_cast<Eigen::Index>(labels_.size());
  if (coeff_.rows() != r || coeff_.cols() != r)
    throw std::invalid_argument("CoherentMixture: coefficient matrix does not match label count");
  require_hermitian(coeff_, "CoherentMixture");
  gram_.resize(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    gram_(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < r; ++j) {
      const cplx g = coherent_overlap(labels_[static_cast<std::size_t>(i)],
                                      labels_[static_cast<std::size_t>(j)]);
      gram_(i, j) = g;
      gram_(j, i) = std::conj(g);
    }
  }
}

CoherentMixture CoherentMixture::from_gram(Eigen::MatrixXcd coeff, Eigen::MatrixXcd gram) {
  if (coeff.rows() != gram.rows() || coeff.cols() != gram.cols() || coeff.rows() != coeff.cols())
    throw std::invalid_argument("CoherentMixture::from_gram: shape mismatch");
  require_hermitian(coeff, "CoherentMixture::from_gram");
  CoherentMixture m;
  m.coeff_ = std::move(coeff);
  m.gram_ = std::move(gram);
  return m;
}

const std::vector<CoherentLabel>& CoherentMixture::labels() const {
  if (!has_labels_)
    throw std::logic_error("CoherentMixture: labels unavailable (built from Gram data)");
  return labels_;
}

cplx CoherentMixture::trace() const { return (coeff_ * gram_).trace(); }

CoherentMixture CoherentMixture::normalized() const {
  const double tr = std::real(trace());
  if (!(std::abs(tr) > 1e-300))
    throw std::runtime_error("CoherentMixture: cannot normalize a vanishing trace");
  CoherentMixture m = *this;
  m.coeff_ /= tr;
  return m;
}

std::vector<double> CoherentMixture::spectrum() const {
  std::vector<double> s = raw_spectrum(coeff_, gram_);
  for (double& p : s) {
    if (p < 0.0) {
      if (p < kNegativeClamp)
        throw std::runtime_error("CoherentMixture: spectrum has a negative eigenvalue beyond tolerance");
      p = 0.0;
    }
  }
  return s;
}

double von_neumann_entropy(const CoherentMixture& mix) {
  if (std::abs(mix.trace() - 1.0) > 1e-8)
    throw std::invalid_argument("von_neumann_entropy: mixture is not normalized");
  double s = 0.0;
  for (double p : mix.spectrum())
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

double purity_defect(const CoherentMixture& mix) {
  double sum2 = 0.0;
  for (double p : mix.spectrum()) sum2 += p * p;
  return 1.0 - sum2;
}

double trace_distance(const CoherentMixture& a, const CoherentMixture& b) {
  const auto& la = a.labels();
  const auto& lb = b.labels();
  const auto ra = static_cast<Eigen::Index>(la.size());
  const auto rb = static_cast<Eigen::Index>(lb.size());

  std::vector<CoherentLabel> all(la);
  all.insert(all.end(), lb.begin(), lb.end());

  Eigen::MatrixXcd diff = Eigen::MatrixXcd::Zero(ra + rb, ra + rb);
  diff.topLeftCorner(ra, ra) = a.coeff();
  diff.bottomRightCorner(rb, rb) = -b.coeff();

  // Duplicated labels across a and b only shrink the Gram rank; the floor in
  // gram_half already discards those directions.
  const CoherentMixture d(std::move(all), std::move(diff));
  double dist = 0.0;
  for (double ev : raw_spectrum(d.coeff(), d.gram())) dist += std::abs(ev);
  return 0.5 * dist;
}

}  // namespace catsim
