#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmimo {

enum class LinkDirection { Downlink, Uplink };

/// Linear transceiver family. MRT is downlink-only, MRC uplink-only; ZF is
/// valid in both directions.
enum class Scheme { ZF, MRT, MRC };

/// Power normalization of a beamformer. Downlink precoders always carry
/// Vector or Matrix; uplink combiners carry None.
enum class Normalization { Vector, Matrix, None };

/// Operating point of a single-cell multi-user link. Powers are linear and
/// the noise variance is fixed at one, so `pt` is the total downlink SNR and
/// `pu` the per-user uplink SNR.
struct SystemConfig {
  std::uint32_t m = 24;      // base-station antennas
  std::uint32_t k = 20;      // single-antenna users
  double pt = 1.0;           // downlink total transmit power
  double pu = 1.0;           // uplink per-user transmit power
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Invalid configuration or argument. The message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A channel realization for which a Gram-based beamformer cannot be formed.
/// Under CN(0,1) draws with K < M this has probability zero.
class DegenerateChannel : public std::runtime_error {
 public:
  explicit DegenerateChannel(const std::string& what,
                             std::optional<std::uint64_t> trial = std::nullopt)
      : std::runtime_error(what), trial_(trial) {}

  std::optional<std::uint64_t> trial() const noexcept { return trial_; }

 private:
  std::optional<std::uint64_t> trial_;
};

/// Checks the invariants of `cfg` for `scheme` and returns it unchanged.
/// ZF additionally requires k <= m. k == m with ZF is accepted but a
/// warning is appended to `warnings` when given.
SystemConfig validate_config(const SystemConfig& cfg, Scheme scheme,
                             std::vector<std::string>* warnings = nullptr);

/// Throws ConfigError unless `scheme` and `normalization` are a legal pairing
/// for `direction`.
void check_combination(LinkDirection direction, Scheme scheme,
                       Normalization normalization);

std::string_view to_string(LinkDirection d);
std::string_view to_string(Scheme s);
std::string_view to_string(Normalization n);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace mmimo
