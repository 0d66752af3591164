#include "mmimo/rates.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "mmimo/channel.hpp"
#include "parallel.hpp"

namespace mmimo {

LinkGains::LinkGains(std::size_t users, std::vector<double> gain, std::vector<double> noise)
    : users_(users), gain_(std::move(gain)), noise_(std::move(noise)) {
  if (gain_.size() != users_ * users_ || noise_.size() != users_)
    throw std::invalid_argument("LinkGains: size mismatch");
}

SinrVector LinkGains::sinr(double power) const {
  SinrVector out;
  out.values.resize(users_);
  for (std::size_t k = 0; k < users_; ++k) {
    double interference = 0.0;
    for (std::size_t l = 0; l < users_; ++l)
      if (l != k) interference += gain(k, l);
    out.values[k] = power * gain(k, k) / (power * interference + noise(k));
  }
  return out;
}

double LinkGains::sum_rate(double power) const { return mmimo::sum_rate(sinr(power)); }

LinkGains link_gains(const ComplexMatrix& h, const BeamformerSet& b) {
  const std::size_t k = h.rows();
  if (b.matrix.rows() != h.cols() || b.matrix.cols() != k) {
    throw ConfigError("beamformer dimensions (" + std::to_string(b.matrix.rows()) + "x" +
                      std::to_string(b.matrix.cols()) + ") do not conform to channel (" +
                      std::to_string(h.rows()) + "x" + std::to_string(h.cols()) + ")");
  }
  // coupling(i, j) = h_i^T b_j
  const ComplexMatrix coupling = matmul(h, b.matrix);
  std::vector<double> gain(k * k);
  std::vector<double> noise(k, 1.0);
  if (b.direction == LinkDirection::Downlink) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gain[i * k + j] = std::norm(coupling(i, j));
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) gain[i * k + j] = std::norm(coupling(j, i));
      noise[i] = column_norm_sq(b.matrix, i);
      if (!(noise[i] > 0.0))
        throw DegenerateChannel("combiner column " + std::to_string(i) + " is zero");
    }
  }
  return LinkGains(k, std::move(gain), std::move(noise));
}

SinrVector downlink_sinr(const ComplexMatrix& h, const BeamformerSet& g, double pt) {
  if (g.direction != LinkDirection::Downlink)
    throw ConfigError("downlink_sinr: beamformer direction must be downlink");
  return link_gains(h, g).sinr(pt);
}

SinrVector uplink_sinr(const ComplexMatrix& h, const BeamformerSet& w, double pu) {
  if (w.direction != LinkDirection::Uplink)
    throw ConfigError("uplink_sinr: beamformer direction must be uplink");
  return link_gains(h, w).sinr(pu);
}

double sum_rate(const SinrVector& sinrs) {
  double r = 0.0;
  for (double s : sinrs.values) r += std::log2(1.0 + s);
  return r;
}

namespace {

RateEstimate summarize(std::span<const double> samples, std::size_t stride, std::size_t offset,
                       std::uint64_t trials) {
  double sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) sum += samples[t * stride + offset];
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  double ss = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double d = samples[t * stride + offset] - mean;
    ss += d * d;
  }
  const double sd = trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), trials};
}

void check_config(const SystemConfig& cfg, Scheme scheme) {
  SystemConfig probe = cfg;
  probe.pt = probe.pu = 1.0;  // powers are supplied separately
  validate_config(probe, scheme);
}

// Unnormalized ZF / MRT matrices for one draw, computed at most once.
struct DrawCache {
  const ComplexMatrix& h;
  std::optional<ComplexMatrix> zf;
  std::optional<ComplexMatrix> matched;

  const ComplexMatrix& zf_matrix() {
    if (!zf) zf = zf_precoder(h);
    return *zf;
  }
  const ComplexMatrix& matched_matrix() {
    if (!matched) matched = hermitian(h);
    return *matched;
  }

  BeamformerSet beamformer(const CurveSpec& c) {
    const ComplexMatrix& f = c.scheme == Scheme::ZF ? zf_matrix() : matched_matrix();
    if (c.direction == LinkDirection::Downlink)
      return {normalize(f, c.normalization), c.scheme, c.normalization, c.direction};
    return {f, c.scheme, Normalization::None, c.direction};
  }
};

[[noreturn]] void rethrow_with_trial(std::uint64_t trial, const std::exception& e) {
  throw DegenerateChannel("degenerate channel draw at trial " + std::to_string(trial) + ": " +
                              e.what(),
                          trial);
}

}  // namespace

std::vector<std::vector<RateEstimate>> ergodic_sum_rates(const SystemConfig& cfg,
                                                         std::span<const CurveSpec> curves,
                                                         std::span<const double> powers,
                                                         MonteCarloOptions opts) {
  for (const CurveSpec& c : curves) {
    check_combination(c.direction, c.scheme, c.normalization);
    check_config(cfg, c.scheme);
  }
  for (double p : powers)
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("power must be finite and >= 0");

  const std::size_t stride = curves.size() * powers.size();
  std::vector<double> samples(cfg.trials * stride);

  detail::parallel_for(cfg.trials, opts.threads, [&](std::uint64_t t) {
    const ComplexMatrix h = draw_channel(cfg, {cfg.seed, t});
    DrawCache cache{h, std::nullopt, std::nullopt};
    try {
      for (std::size_t c = 0; c < curves.size(); ++c) {
        const LinkGains gains = link_gains(h, cache.beamformer(curves[c]));
        for (std::size_t p = 0; p < powers.size(); ++p)
          samples[t * stride + c * powers.size() + p] = gains.sum_rate(powers[p]);
      }
    } catch (const NotPositiveDefinite& e) {
      rethrow_with_trial(t, e);
    } catch (const DegenerateChannel& e) {
      rethrow_with_trial(t, e);
    }
  });

  std::vector<std::vector<RateEstimate>> out(curves.size());
  for (std::size_t c = 0; c < curves.size(); ++c) {
    out[c].reserve(powers.size());
    for (std::size_t p = 0; p < powers.size(); ++p)
      out[c].push_back(summarize(samples, stride, c * powers.size() + p, cfg.trials));
  }
  return out;
}

RateEstimate ergodic_sum_rate(const SystemConfig& cfg, LinkDirection direction, Scheme scheme,
                              Normalization normalization, MonteCarloOptions opts) {
  validate_config(cfg, scheme);
  const CurveSpec curve{direction, scheme, normalization};
  const double power = direction == LinkDirection::Downlink ? cfg.pt : cfg.pu;
  return ergodic_sum_rates(cfg, std::span(&curve, 1), std::span(&power, 1), opts)[0][0];
}

std::vector<RateEstimate> ergodic_zf_mat_u1(const SystemConfig& cfg,
                                            std::span<const double> powers,
                                            MonteCarloOptions opts) {
  check_config(cfg, Scheme::ZF);
  std::vector<double> inv_fro(cfg.trials);
  detail::parallel_for(cfg.trials, opts.threads, [&](std::uint64_t t) {
    const ComplexMatrix h = draw_channel(cfg, {cfg.seed, t});
    try {
      // ||F||_F^2 = tr((H H^H)^{-1})
      const ComplexMatrix inv = invert_hpd(gram_rows(h));
      double trace = 0.0;
      for (std::size_t i = 0; i < inv.rows(); ++i) trace += inv(i, i).real();
      inv_fro[t] = 1.0 / trace;
    } catch (const NotPositiveDefinite& e) {
      rethrow_with_trial(t, e);
    }
  });

  const RateEstimate x = summarize(inv_fro, 1, 0, cfg.trials);
  const double k = cfg.k;
  std::vector<RateEstimate> out;
  out.reserve(powers.size());
  for (double p : powers) {
    const double inner = 1.0 + p * x.mean_rate;
    out.push_back({k * std::log2(inner), k * p * x.std_error / (inner * std::numbers::ln2),
                   cfg.trials});
  }
  return out;
}

RateEstimate ergodic_zf_mat_u1(const SystemConfig& cfg, MonteCarloOptions opts) {
  validate_config(cfg, Scheme::ZF);
  return ergodic_zf_mat_u1(cfg, std::span(&cfg.pt, 1), opts)[0];
}

}  // namespace mmimo
