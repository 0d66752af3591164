#include "mmimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace mmimo {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_base(StreamKey key) {
  return mix64(mix64(key.seed + kGolden) ^ mix64(key.trial_index * kGolden + 0x632BE59BD9B4E019ULL));
}

// Uniform on (0, 1]; never returns 0 so log() below is finite.
double to_unit(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller with radius scaled for variance 1/2 per component: |z|^2 ~ Exp(1).
cplx entry_from_base(std::uint64_t base, std::uint32_t user, std::uint32_t antenna) {
  const std::uint64_t index = (static_cast<std::uint64_t>(user) << 32) | antenna;
  const double u1 = to_unit(mix64(base + (2 * index + 1) * kGolden));
  const double u2 = to_unit(mix64(base + (2 * index + 2) * kGolden));
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

struct Accumulator {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

}  // namespace

cplx channel_entry(StreamKey key, std::uint32_t user, std::uint32_t antenna) {
  return entry_from_base(stream_base(key), user, antenna);
}

ComplexMatrix draw_channel(std::uint32_t k, std::uint32_t m, StreamKey key) {
  const std::uint64_t base = stream_base(key);
  ComplexMatrix h(k, m);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < m; ++j) h(i, j) = entry_from_base(base, i, j);
  return h;
}

ComplexMatrix draw_channel(const SystemConfig& cfg, StreamKey key) {
  return draw_channel(cfg.k, cfg.m, key);
}

MomentReport analytic_moments(std::uint32_t m) {
  const double M = m;
  MomentReport r;
  r.m = m;
  r.stats[0] = {"|h_k|^2", 0, 0, M, M, 0, 0};
  r.stats[1] = {"h_k^H h_l", 0, 0, 0.0, M, 0, 0};
  r.stats[2] = {"|h_k|^4", 0, 0, M * M + M, 4 * M * M * M + 10 * M * M + 6 * M, 0, 0};
  r.stats[3] = {"|h_k^H h_l|^2", 0, 0, M, M * M + 2 * M, 0, 0};
  return r;
}

MomentReport estimate_moments(std::uint32_t m, std::uint64_t samples, std::uint64_t seed) {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (samples < 1000) throw ConfigError("samples must be >= 1000");

  Accumulator norm_sq, norm_fourth, inner_sq;
  // Complex inner product: accumulate the mean and E|x - mean|^2 directly.
  cplx inner_sum = 0.0;
  double inner_abs_sq_sum = 0.0;

  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t base = stream_base({seed, s});
    double nk = 0.0;
    cplx ip = 0.0;
    for (std::uint32_t j = 0; j < m; ++j) {
      const cplx hk = entry_from_base(base, 0, j);
      const cplx hl = entry_from_base(base, 1, j);
      nk += std::norm(hk);
      ip += std::conj(hk) * hl;
    }
    norm_sq.add(nk);
    norm_fourth.add(nk * nk);
    inner_sq.add(std::norm(ip));
    inner_sum += ip;
    inner_abs_sq_sum += std::norm(ip);
  }

  MomentReport r = analytic_moments(m);
  const double n = static_cast<double>(samples);
  const cplx inner_mean = inner_sum / n;

  r.stats[0].empirical_mean = norm_sq.mean;
  r.stats[0].empirical_variance = norm_sq.variance();
  r.stats[1].empirical_mean = std::abs(inner_mean);
  r.stats[1].empirical_variance = (inner_abs_sq_sum - n * std::norm(inner_mean)) / (n - 1.0);
  r.stats[2].empirical_mean = norm_fourth.mean;
  r.stats[2].empirical_variance = norm_fourth.variance();
  r.stats[3].empirical_mean = inner_sq.mean;
  r.stats[3].empirical_variance = inner_sq.variance();

  for (MomentStat& st : r.stats) {
    st.samples = samples;
    st.z = (st.empirical_mean - st.analytic_mean) / std::sqrt(st.analytic_variance / n);
  }
  return r;
}

double gram_deviation(const ComplexMatrix& h) {
  const ComplexMatrix g = gram_rows(h);
  const double inv_m = 1.0 / static_cast<double>(h.cols());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) * inv_m - (i == j ? 1.0 : 0.0)));
  return worst;
}

double effective_channel_deviation(std::uint32_t m, std::uint32_t k, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (k > m) throw ConfigError("k exceeds m");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  std::vector<double> dev(trials);
  for (std::uint64_t t = 0; t < trials; ++t) dev[t] = gram_deviation(draw_channel(k, m, {seed, t}));
  const auto mid = dev.begin() + static_cast<std::ptrdiff_t>(trials / 2);
  std::nth_element(dev.begin(), mid, dev.end());
  if (trials % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(dev.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace mmimo
