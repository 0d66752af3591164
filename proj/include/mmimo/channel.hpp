#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "mmimo/linalg.hpp"
#include "mmimo/types.hpp"

namespace mmimo {

/// Identifies one Monte-Carlo realization. Equal keys give bit-identical
/// draws; distinct keys give independent ones.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
};

/// The CN(0,1) entry at (user, antenna) of the channel drawn for `key`.
///
/// Entries are generated counter-style from (seed, trial, user, antenna), so
/// the K x M draw is the top-left block of any larger draw with the same key.
/// Sweeps over K or M therefore reuse the same users and antennas.
cplx channel_entry(StreamKey key, std::uint32_t user, std::uint32_t antenna);

/// K x M matrix of i.i.d. CN(0,1) entries; row k is h_k^T.
ComplexMatrix draw_channel(std::uint32_t k, std::uint32_t m, StreamKey key);
ComplexMatrix draw_channel(const SystemConfig& cfg, StreamKey key);

enum class Moment : std::size_t {
  NormSq = 0,        // ||h_k||^2
  InnerProduct = 1,  // h_k^H h_l
  NormFourth = 2,    // ||h_k||^4
  InnerSq = 3,       // |h_k^H h_l|^2
};

struct MomentStat {
  std::string_view name;
  double empirical_mean = 0.0;  // modulus of the mean for the complex inner product
  double empirical_variance = 0.0;
  double analytic_mean = 0.0;
  double analytic_variance = 0.0;
  std::uint64_t samples = 0;
  double z = 0.0;  // (empirical_mean - analytic_mean) / sqrt(analytic_variance / samples)
};

struct MomentReport {
  std::uint32_t m = 0;
  std::array<MomentStat, 4> stats;

  const MomentStat& operator[](Moment q) const { return stats[static_cast<std::size_t>(q)]; }
};

/// Closed-form means and variances of the four quantities for length-m
/// CN(0,1) vectors.
MomentReport analytic_moments(std::uint32_t m);

/// Draws `samples` independent pairs (h_k, h_l) of length m and compares the
/// empirical moments with analytic_moments(m). Requires samples >= 1000.
MomentReport estimate_moments(std::uint32_t m, std::uint64_t samples, std::uint64_t seed);

/// max_{i,j} |(1/M)(H H^H)_{ij} - delta_{ij}| for one realization.
double gram_deviation(const ComplexMatrix& h);

/// Median of gram_deviation over `trials` independent K x M draws.
double effective_channel_deviation(std::uint32_t m, std::uint32_t k, std::uint64_t trials,
                                   std::uint64_t seed);

}  // namespace mmimo
