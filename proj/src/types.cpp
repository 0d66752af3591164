#include "mmimo/types.hpp"

#include <cmath>

namespace mmimo {

SystemConfig validate_config(const SystemConfig& cfg, Scheme scheme,
                             std::vector<std::string>* warnings) {
  if (cfg.m < 1) throw ConfigError("m must be >= 1");
  if (cfg.k < 1) throw ConfigError("k must be >= 1");
  if (!(cfg.pt > 0.0) || !std::isfinite(cfg.pt))
    throw ConfigError("pt must be a positive finite power");
  if (!(cfg.pu > 0.0) || !std::isfinite(cfg.pu))
    throw ConfigError("pu must be a positive finite power");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");

  if (scheme == Scheme::ZF) {
    if (cfg.k > cfg.m) {
      throw ConfigError("k exceeds m: ZF Gram matrix singular by construction (k=" +
                        std::to_string(cfg.k) + ", m=" + std::to_string(cfg.m) + ")");
    }
    if (cfg.k == cfg.m && warnings != nullptr) {
      warnings->push_back("k equals m: ZF Gram matrix is ill-conditioned on some draws");
    }
  }
  return cfg;
}

void check_combination(LinkDirection direction, Scheme scheme,
                       Normalization normalization) {
  if (direction == LinkDirection::Downlink) {
    if (scheme == Scheme::MRC) throw ConfigError("scheme MRC is uplink-only");
    if (normalization == Normalization::None)
      throw ConfigError("normalization must be Vector or Matrix on the downlink");
  } else {
    if (scheme == Scheme::MRT) throw ConfigError("scheme MRT is downlink-only");
    if (normalization != Normalization::None)
      throw ConfigError("normalization must be None on the uplink");
  }
}

std::string_view to_string(LinkDirection d) {
  return d == LinkDirection::Downlink ? "downlink" : "uplink";
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::ZF: return "ZF";
    case Scheme::MRT: return "MRT";
    case Scheme::MRC: return "MRC";
  }
  return "?";
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::Vector: return "vector";
    case Normalization::Matrix: return "matrix";
    case Normalization::None: return "none";
  }
  return "?";
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace mmimo
