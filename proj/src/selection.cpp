#include "mmimo/selection.hpp"

#include <cmath>
#include <string>

namespace mmimo::selection {

namespace {

void check_users(std::uint32_t m, std::uint32_t k) {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (k > m)
    throw ConfigError("k exceeds m (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")");
}

void check_power(double p, const char* field) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw ConfigError(std::string(field) + " must be a positive finite power");
}

}  // namespace

double p_th_dl(std::uint32_t m, std::uint32_t k) {
  check_users(m, k);
  if (k < 2) throw ConfigError("k must be >= 2 for the downlink power threshold");
  const double M = m, K = k;
  return K * K / ((K - 1.0) * (M - K + 1.0));
}

double p_th_ul(std::uint32_t m, std::uint32_t k) {
  check_users(m, k);
  const double M = m, K = k;
  return 1.0 / (M - K + 1.0);
}

double p_cross(LinkDirection direction, std::uint32_t m) {
  if (m < 2) throw ConfigError("m must be >= 2");
  const double M = m;
  return (direction == LinkDirection::Downlink ? 4.0 : 1.0) / (M - 1.0);
}

double k_cross_dl(double pt, std::uint32_t m) {
  check_power(pt, "pt");
  if (m < 1) throw ConfigError("m must be >= 1");
  return pt * (static_cast<double>(m) + 1.0) / (1.0 + pt);
}

double k_cross_ul(double pu, std::uint32_t m) {
  check_power(pu, "pu");
  if (m < 1) throw ConfigError("m must be >= 1");
  return static_cast<double>(m) + 1.0 - 1.0 / pu;
}

ModeDecision select_mode(LinkDirection direction, double power, std::uint32_t m, std::uint32_t k) {
  check_power(power, direction == LinkDirection::Downlink ? "pt" : "pu");
  ModeDecision d;
  d.direction = direction;
  d.threshold_kind = ThresholdKind::PowerThreshold;
  d.m = m;
  d.k = k;
  d.power = power;
  if (direction == LinkDirection::Downlink) {
    d.threshold_value = p_th_dl(m, k);
    d.chosen = power >= d.threshold_value ? Scheme::ZF : Scheme::MRT;
  } else {
    d.threshold_value = p_th_ul(m, k);
    d.chosen = power >= d.threshold_value ? Scheme::ZF : Scheme::MRC;
  }
  return d;
}

}  // namespace mmimo::selection
