#include "catsim/finite_bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "catsim/kernels.hpp"

namespace catsim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Secular function psi(tau) = (head - w_a) - tau + sum_k g2_k/(delta_k + tau)
/// evaluated in the shifted variable mu = w_a + tau; delta_k = w_a - w_k is
/// exact in double arithmetic.
struct SecularEval {
  double head_minus_anchor;
  std::span<const double> delta;
  std::span<const double> g2;

  void operator()(double tau, double& value, double& slope) const {
    double v = head_minus_anchor - tau;
    double s = -1.0;
    for (std::size_t k = 0; k < delta.size(); ++k) {
      const double d = delta[k] + tau;
      const double q = g2[k] / d;
      v += q;
      s -= q / d;
    }
    value = v;
    slope = s;
  }
};

/// Monotone-decreasing root of psi on (ta, tb) with psi(ta) > 0 > psi(tb);
/// safeguarded Newton, bisection fallback.
double solve_bracketed(const SecularEval& f, double ta, double tb) {
  double tau = 0.5 * (ta + tb);
  for (int iter = 0; iter < 300; ++iter) {
    double value, slope;
    f(tau, value, slope);
    if (value == 0.0) return tau;
    if (value > 0.0)
      ta = tau;
    else
      tb = tau;
    if (tb - ta <= 2.0 * kEps * std::max(std::abs(ta), std::abs(tb)) + 1e-300) break;
    double next = tau - value / slope;
    if (!(next > ta && next < tb)) next = 0.5 * (ta + tb);
    if (next == tau) break;
    tau = next;
  }
  return 0.5 * (ta + tb);
}

}  // namespace

std::vector<double> FiniteBathConfig::mode_frequencies() const {
  std::vector<double> w(n_modes);
  if (n_modes == 1) {
    w[0] = omega_min;
    return w;
  }
  const double step = (omega_max - omega_min) / static_cast<double>(n_modes - 1);
  for (std::size_t k = 0; k < n_modes; ++k) w[k] = omega_min + step * static_cast<double>(k);
  return w;
}

std::vector<double> FiniteBathConfig::couplings() const {
  if (!coupling_override.empty()) {
    if (coupling_override.size() != n_modes)
      throw std::invalid_argument("FiniteBathConfig: coupling_override size mismatch");
    return coupling_override;
  }
  return std::vector<double>(n_modes, gamma_k);
}

void FiniteBathConfig::validate() const {
  if (n_modes < 1) throw std::invalid_argument("FiniteBathConfig: n_modes must be >= 1");
  if (!(omega_min < omega_max) && n_modes > 1)
    throw std::invalid_argument("FiniteBathConfig: omega_min must be < omega_max");
  if (!(gamma_k >= 0.0)) throw std::invalid_argument("FiniteBathConfig: gamma_k must be >= 0");
  for (double g : coupling_override)
    if (!(g >= 0.0)) throw std::invalid_argument("FiniteBathConfig: couplings must be >= 0");
}

Eigen::MatrixXcd BranchGenerator::dense() const {
  const auto n = static_cast<Eigen::Index>(mode_freq.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  m(0, 0) = head;
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k + 1, k + 1) = mode_freq[static_cast<std::size_t>(k)];
    m(0, k + 1) = coupling[static_cast<std::size_t>(k)];
    m(k + 1, 0) = coupling[static_cast<std::size_t>(k)];
  }
  return m;
}

BranchGenerator assemble_generator(const SystemParams& params, const FiniteBathConfig& bath,
                                   Branch branch) {
  params.validate();
  bath.validate();
  BranchGenerator gen;
  gen.head = branch == Branch::plus ? params.delta_omega() : params.delta_omega_prime();
  gen.mode_freq = bath.mode_frequencies();
  gen.coupling = bath.couplings();
  return gen;
}

ArrowheadSolver::ArrowheadSolver(const BranchGenerator& gen)
    : n_modes_(gen.mode_freq.size()), head_(gen.head) {
  // Sort modes by frequency, then deflate: zero couplings drop out directly,
  // groups sharing a frequency rotate into one coupled combination plus
  // decoupled remainders.
  std::vector<std::uint32_t> order(n_modes_);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return gen.mode_freq[a] < gen.mode_freq[b];
  });

  std::size_t i = 0;
  while (i < n_modes_) {
    const double w = gen.mode_freq[order[i]];
    std::size_t j = i;
    double g2sum = 0.0;
    std::vector<std::uint32_t> group;
    while (j < n_modes_ && gen.mode_freq[order[j]] == w) {
      const double g = gen.coupling[order[j]];
      if (g == 0.0) {
        deflated_.push_back({order[j], w});
      } else {
        group.push_back(order[j]);
        g2sum += g * g;
      }
      ++j;
    }
    if (!group.empty()) {
      const double norm = std::sqrt(g2sum);
      std::vector<std::pair<std::uint32_t, double>> members;
      members.reserve(group.size());
      for (std::uint32_t idx : group) members.push_back({idx, gen.coupling[idx] / norm});
      w_.push_back(w);
      g2_.push_back(g2sum);
      members_.push_back(std::move(members));
    }
    i = j;
  }

  const std::size_t m = w_.size();
  if (m == 0) {
    mu_ = {head_};
    anchor_ = {0};
    tau_ = {0.0};
    weight0_ = {1.0};
    return;
  }

  const double gnorm = std::sqrt(std::accumulate(g2_.begin(), g2_.end(), 0.0));
  const double lo = std::min(head_, w_.front()) - gnorm - 1.0;
  const double hi = std::max(head_, w_.back()) + gnorm + 1.0;
  solve_secular(lo, hi);

  // Inverse-eigenvalue reconstruction of the couplings from the computed
  // roots keeps the implicit eigenvector matrix orthogonal to machine
  // precision. Interlacing pairs each factor with a same-scale gap, so the
  // running product stays O(1).
  ghat_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    double prod = (w_[k] - mu_[0]) * root_minus_pole(m, k);
    for (std::size_t l = 0; l < k; ++l) prod *= root_minus_pole(l + 1, k) / (w_[l] - w_[k]);
    for (std::size_t l = k + 1; l < m; ++l) prod *= root_minus_pole(l, k) / (w_[l] - w_[k]);
    if (!(prod >= 0.0) || !std::isfinite(prod)) {
      std::ostringstream msg;
      msg << "ArrowheadSolver: coupling reconstruction failed at mode " << k
          << " (head=" << head_ << ", poles in [" << w_.front() << ", " << w_.back()
          << "], |g|=" << gnorm << ")";
      throw std::runtime_error(msg.str());
    }
    ghat_[k] = std::sqrt(prod);
  }

  weight0_.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    double s = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double d = root_minus_pole(j, k);
      s += ghat_[k] * ghat_[k] / (d * d);
    }
    weight0_[j] = 1.0 / std::sqrt(s);
  }
}

void ArrowheadSolver::solve_secular(double lo, double hi) {
  const std::size_t m = w_.size();
  mu_.resize(m + 1);
  anchor_.resize(m + 1);
  tau_.resize(m + 1);

  std::vector<double> delta(m);

  auto eval_at = [&](double mu) {
    double v = head_ - mu;
    for (std::size_t k = 0; k < m; ++k) v += g2_[k] / (mu - w_[k]);
    return v;
  };

  for (std::size_t j = 0; j <= m; ++j) {
    double left, right;   // interval containing root j
    std::uint32_t a;      // anchoring pole index
    if (j == 0) {
      left = lo;
      right = w_[0];
      a = 0;
    } else if (j == m) {
      left = w_[m - 1];
      right = hi;
      a = static_cast<std::uint32_t>(m - 1);
    } else {
      left = w_[j - 1];
      right = w_[j];
      const double mid = left + 0.5 * (right - left);
      a = eval_at(mid) > 0.0 ? static_cast<std::uint32_t>(j) : static_cast<std::uint32_t>(j - 1);
    }

    for (std::size_t k = 0; k < m; ++k) delta[k] = w_[a] - w_[k];
    const SecularEval f{head_ - w_[a], delta, g2_};

    double ta, tb;  // psi(ta) > 0 > psi(tb)
    if (j == 0) {
      ta = lo - w_[0];
      tb = 0.0;
    } else if (j == m) {
      ta = 0.0;
      tb = hi - w_[m - 1];
    } else if (a == j) {
      ta = (left + 0.5 * (right - left)) - w_[a];
      tb = 0.0;
    } else {
      ta = 0.0;
      tb = (left + 0.5 * (right - left)) - w_[a];
    }

    const double tau = solve_bracketed(f, ta, tb);
    anchor_[j] = a;
    tau_[j] = tau;
    mu_[j] = w_[a] + tau;
  }

  for (std::size_t j = 0; j < m; ++j) {
    if (!(mu_[j] <= w_[j] && w_[j] <= mu_[j + 1])) {
      std::ostringstream msg;
      msg << "ArrowheadSolver: interlacing violated near pole " << j << " (head=" << head_
          << ", pole=" << w_[j] << ")";
      throw std::runtime_error(msg.str());
    }
  }
}

double ArrowheadSolver::root_minus_pole(std::size_t j, std::size_t k) const {
  if (anchor_[j] == k) return tau_[j];
  return (w_[anchor_[j]] - w_[k]) + tau_[j];
}

void ArrowheadSolver::spectral_apply(cplx head_in, std::span<const cplx> eff_in, double t,
                                     cplx& head_out, std::span<cplx> eff_out) const {
  const std::size_t m = w_.size();
  const std::size_t nroots = m + 1;

  // c_j = U0j * (head_in + sum_k ghat_k eff_k/(mu_j - w_k)); s_j = U0j e^{-i mu_j t} c_j
  std::vector<double> s_re(nroots), s_im(nroots), d(nroots);
  const bool pure_head = eff_in.empty();
  for (std::size_t j = 0; j < nroots; ++j) {
    cplx c = head_in;
    if (!pure_head) {
      for (std::size_t k = 0; k < m; ++k) c += ghat_[k] * eff_in[k] / root_minus_pole(j, k);
    }
    const double ph = -mu_[j] * t;
    const cplx s = weight0_[j] * weight0_[j] * std::polar(1.0, ph) * c;
    s_re[j] = s.real();
    s_im[j] = s.imag();
  }

  cplx acc = 0.0;
  for (std::size_t j = 0; j < nroots; ++j) acc += cplx{s_re[j], s_im[j]};
  head_out = acc;

  const auto& k = kernels::active_ops();
  for (std::size_t kk = 0; kk < m; ++kk) {
    for (std::size_t j = 0; j < nroots; ++j) d[j] = root_minus_pole(j, kk);
    eff_out[kk] = ghat_[kk] * k.recip_weighted_sum(std::span<const double>(s_re),
                                                   std::span<const double>(s_im),
                                                   std::span<const double>(d));
  }
}

std::vector<cplx> ArrowheadSolver::evolve_head(cplx amp, double t) const {
  std::vector<cplx> out(n_modes_ + 1, cplx{0.0, 0.0});
  const std::size_t m = w_.size();
  std::vector<cplx> eff_out(m);
  cplx head_out;
  spectral_apply(amp, {}, t, head_out, eff_out);
  out[0] = head_out;
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& [mode, weight] : members_[k]) out[mode + 1] = weight * eff_out[k];
  return out;
}

std::vector<cplx> ArrowheadSolver::evolve(std::span<const cplx> v0, double t) const {
  if (v0.size() != n_modes_ + 1)
    throw std::invalid_argument("ArrowheadSolver::evolve: state size mismatch");
  const std::size_t m = w_.size();

  std::vector<cplx> eff_in(m);
  for (std::size_t k = 0; k < m; ++k) {
    cplx acc = 0.0;
    for (const auto& [mode, weight] : members_[k]) acc += weight * v0[mode + 1];
    eff_in[k] = acc;
  }

  std::vector<cplx> eff_out(m);
  cplx head_out;
  spectral_apply(v0[0], eff_in, t, head_out, eff_out);

  std::vector<cplx> out(n_modes_ + 1, cplx{0.0, 0.0});
  out[0] = head_out;
  for (std::size_t k = 0; k < m; ++k) {
    // coupled component propagates spectrally; the in-group remainder only
    // picks up the bare mode phase
    const cplx phase = std::polar(1.0, -w_[k] * t);
    for (const auto& [mode, weight] : members_[k])
      out[mode + 1] = weight * eff_out[k] + phase * (v0[mode + 1] - weight * eff_in[k]);
  }
  for (const auto& [mode, freq] : deflated_)
    out[mode + 1] = std::polar(1.0, -freq * t) * v0[mode + 1];
  return out;
}

BranchSeries evolve_finite(const SystemParams& params, const FiniteBathConfig& bath,
                           Branch branch, std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("evolve_finite: empty time grid");
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("evolve_finite: times must be sorted");

  const ArrowheadSolver solver(assemble_generator(params, bath, branch));

  BranchSeries series;
  series.times.assign(times.begin(), times.end());
  series.amp.resize(times.size());
  series.modes.resize(times.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(times.size()); ++i) {
    std::vector<cplx> v = solver.evolve_head(params.alpha0, times[static_cast<std::size_t>(i)]);
    series.amp[static_cast<std::size_t>(i)] = v[0];
    series.modes[static_cast<std::size_t>(i)].assign(v.begin() + 1, v.end());
  }
  return series;
}

BranchAmplitudes evolve_both(const SystemParams& params, const FiniteBathConfig& bath,
                             std::span<const double> times) {
  BranchSeries plus = evolve_finite(params, bath, Branch::plus, times);
  BranchSeries minus = evolve_finite(params, bath, Branch::minus, times);
  BranchAmplitudes amps;
  amps.times = std::move(plus.times);
  amps.alpha = std::move(plus.amp);
  amps.lambda = std::move(plus.modes);
  amps.beta = std::move(minus.amp);
  amps.chi = std::move(minus.modes);
  return amps;
}

double total_excitation(const BranchSeries& series, std::size_t time_index) {
  const auto& k = kernels::active_ops();
  return std::norm(series.amp[time_index]) + k.norm2(series.modes[time_index]);
}

}  // namespace catsim
