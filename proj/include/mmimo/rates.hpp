#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmimo/beamforming.hpp"
#include "mmimo/linalg.hpp"
#include "mmimo/types.hpp"

namespace mmimo {

/// Linear per-user SINR, unit noise variance and unit-power symbols.
struct SinrVector {
  std::vector<double> values;
};

/// Monte-Carlo sum-rate estimate in bits/s/Hz.
struct RateEstimate {
  double mean_rate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;

  double ci95_halfwidth() const { return 1.96 * std_error; }
};

/// Power-independent description of one realization of a linear link.
///
/// gain(k, l) is the squared coupling of stream l into the detector of user k:
/// |h_k^T g_l|^2 on the downlink and |w_k^T h_l|^2 on the uplink. noise(k) is
/// 1 on the downlink and ||w_k||^2 on the uplink. Then
///   SINR_k(p) = p gain(k,k) / (p sum_{l != k} gain(k,l) + noise(k)).
class LinkGains {
 public:
  LinkGains(std::size_t users, std::vector<double> gain, std::vector<double> noise);

  std::size_t users() const noexcept { return users_; }
  double gain(std::size_t k, std::size_t l) const { return gain_[k * users_ + l]; }
  double noise(std::size_t k) const { return noise_[k]; }

  SinrVector sinr(double power) const;
  double sum_rate(double power) const;

 private:
  std::size_t users_;
  std::vector<double> gain_;
  std::vector<double> noise_;
};

/// Throws ConfigError on a direction mismatch or non-conforming dimensions;
/// DegenerateChannel for a zero uplink combiner column.
LinkGains link_gains(const ComplexMatrix& h, const BeamformerSet& b);

SinrVector downlink_sinr(const ComplexMatrix& h, const BeamformerSet& g, double pt);
SinrVector uplink_sinr(const ComplexMatrix& h, const BeamformerSet& w, double pu);

/// sum_k log2(1 + SINR_k).
double sum_rate(const SinrVector& sinrs);

struct CurveSpec {
  LinkDirection direction = LinkDirection::Downlink;
  Scheme scheme = Scheme::ZF;
  Normalization normalization = Normalization::Vector;
};

struct MonteCarloOptions {
  unsigned threads = 1;
};

/// Ergodic sum rate of every curve at every power, over cfg.trials draws keyed
/// (cfg.seed, trial). All curves and powers share the same draws. Powers are
/// applied as pt to downlink curves and as pu to uplink curves; cfg.pt and
/// cfg.pu are ignored. Result is indexed [curve][power] and is bit-identical
/// for any thread count. A degenerate draw raises DegenerateChannel carrying
/// the trial index.
std::vector<std::vector<RateEstimate>> ergodic_sum_rates(const SystemConfig& cfg,
                                                         std::span<const CurveSpec> curves,
                                                         std::span<const double> powers,
                                                         MonteCarloOptions opts = {});

/// Single-curve form at cfg.pt (downlink) or cfg.pu (uplink).
RateEstimate ergodic_sum_rate(const SystemConfig& cfg, LinkDirection direction, Scheme scheme,
                              Normalization normalization, MonteCarloOptions opts = {});

/// K log2(1 + p E{1/||F||_F^2}) for unnormalized ZF F, with the expectation
/// replaced by its sample mean. The standard error is propagated by the delta
/// method. One estimate per power.
std::vector<RateEstimate> ergodic_zf_mat_u1(const SystemConfig& cfg,
                                            std::span<const double> powers,
                                            MonteCarloOptions opts = {});
RateEstimate ergodic_zf_mat_u1(const SystemConfig& cfg, MonteCarloOptions opts = {});

}  // namespace mmimo
