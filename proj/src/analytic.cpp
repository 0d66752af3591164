#include "mmimo/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mmimo::analytic {

namespace {

void check_domain(double power, std::uint32_t m, std::uint32_t k, bool needs_k_le_m) {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(power >= 0.0) || !std::isfinite(power))
    throw ConfigError("power must be finite and >= 0");
  if (needs_k_le_m && k > m)
    throw ConfigError("k exceeds m (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")");
}

double k_log2_1p(std::uint32_t k, double sinr) {
  return static_cast<double>(k) * std::log2(1.0 + sinr);
}

}  // namespace

double zf_dl_lower(double pt, std::uint32_t m, std::uint32_t k) {
  check_domain(pt, m, k, true);
  const double M = m, K = k;
  return k_log2_1p(k, pt * (M - K) / K);
}

double zf_dl_vec(double pt, std::uint32_t m, std::uint32_t k) {
  check_domain(pt, m, k, true);
  const double M = m, K = k;
  return k_log2_1p(k, pt * (M - K + 1.0) / K);
}

double mrt_dl_vec_low(double pt, std::uint32_t m, std::uint32_t k) {
  check_domain(pt, m, k, false);
  const double M = m, K = k;
  return k_log2_1p(k, pt * M / (pt * (K - 1.0) + K));
}

double mrt_dl_vec_high(double pt, std::uint32_t m, std::uint32_t k) { return mrt_dl_mat(pt, m, k); }

double mrt_dl_mat(double pt, std::uint32_t m, std::uint32_t k) {
  check_domain(pt, m, k, false);
  const double M = m, K = k;
  return k_log2_1p(k, pt * (M + 1.0) / (pt * (K - 1.0) + K));
}

double mrc_ul_high(double pu, std::uint32_t m, std::uint32_t k) {
  check_domain(pu, m, k, false);
  const double M = m, K = k;
  return k_log2_1p(k, pu * (M + 1.0) / (pu * (K - 1.0) + 1.0));
}

double mrc_ul_low(double pu, std::uint32_t m, std::uint32_t k) {
  check_domain(pu, m, k, false);
  const double M = m, K = k;
  return k_log2_1p(k, pu * M / (pu * (K - 1.0) + 1.0));
}

double zf_ul_low(double pu, std::uint32_t m, std::uint32_t k) {
  check_domain(pu, m, k, true);
  const double M = m, K = k;
  return k_log2_1p(k, pu * (M - K + 1.0));
}

std::string_view name(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::ZfDlLower: return "zf-dl-lower";
    case ClosedFormId::ZfDlVec: return "zf-dl-vec";
    case ClosedFormId::MrtDlVecLow: return "mrt-dl-vec-low";
    case ClosedFormId::MrtDlVecHigh: return "mrt-dl-vec-high";
    case ClosedFormId::MrtDlMat: return "mrt-dl-mat";
    case ClosedFormId::MrcUlHigh: return "mrc-ul-high";
    case ClosedFormId::MrcUlLow: return "mrc-ul-low";
    case ClosedFormId::ZfUlLow: return "zf-ul-low";
  }
  return "?";
}

std::optional<ClosedFormId> closed_form_from_name(std::string_view n) {
  for (ClosedFormId id : kAllClosedForms)
    if (name(id) == n) return id;
  return std::nullopt;
}

LinkDirection direction(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::MrcUlHigh:
    case ClosedFormId::MrcUlLow:
    case ClosedFormId::ZfUlLow:
      return LinkDirection::Uplink;
    default:
      return LinkDirection::Downlink;
  }
}

Validity validity(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::ZfDlLower: return Validity::Bound;
    case ClosedFormId::ZfDlVec: return Validity::Bound;
    case ClosedFormId::MrtDlVecLow: return Validity::LowSnr;
    case ClosedFormId::MrtDlVecHigh: return Validity::HighSnr;
    case ClosedFormId::MrtDlMat: return Validity::LowAndHighSnr;
    case ClosedFormId::MrcUlHigh: return Validity::HighSnr;
    case ClosedFormId::MrcUlLow: return Validity::LowSnr;
    case ClosedFormId::ZfUlLow: return Validity::LowSnr;
  }
  return Validity::Bound;
}

ClosedForm evaluate(ClosedFormId id, double power, std::uint32_t m, std::uint32_t k) {
  double v = 0.0;
  switch (id) {
    case ClosedFormId::ZfDlLower: v = zf_dl_lower(power, m, k); break;
    case ClosedFormId::ZfDlVec: v = zf_dl_vec(power, m, k); break;
    case ClosedFormId::MrtDlVecLow: v = mrt_dl_vec_low(power, m, k); break;
    case ClosedFormId::MrtDlVecHigh: v = mrt_dl_vec_high(power, m, k); break;
    case ClosedFormId::MrtDlMat: v = mrt_dl_mat(power, m, k); break;
    case ClosedFormId::MrcUlHigh: v = mrc_ul_high(power, m, k); break;
    case ClosedFormId::MrcUlLow: v = mrc_ul_low(power, m, k); break;
    case ClosedFormId::ZfUlLow: v = zf_ul_low(power, m, k); break;
  }
  return {id, v, validity(id)};
}

double asymptotic_mk(AsymptoticScheme scheme, double power, std::uint32_t m) {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (!(power >= 0.0) || !std::isfinite(power))
    throw ConfigError("power must be finite and >= 0");
  const double M = m;
  switch (scheme) {
    case AsymptoticScheme::ZfDownlink:
      return power * std::numbers::log2e;
    case AsymptoticScheme::MrtDownlink:
    case AsymptoticScheme::MrcUplinkScaled:
      return M * std::log2(1.0 + power / (power + 1.0));
    case AsymptoticScheme::MrcUplink:
      return M;
  }
  throw ConfigError("unknown asymptotic scheme");
}

double gradient_difference(double pt, std::uint32_t m) {
  if (!(pt > 0.0) || !std::isfinite(pt)) throw ConfigError("pt must be a positive finite power");
  if (m < 2) throw ConfigError("m must be >= 2");
  const double M = m;
  const double mrt_slope = (pt + 1.0) * (pt + 1.0) / ((M + 1.0) * pt * std::log(4.0));
  const double zf_slope = (M + 1.0) * (pt + 1.0) / (M * pt * (2.0 * M + 1.0) * std::numbers::ln2);
  return mrt_slope - zf_slope;
}

}  // namespace mmimo::analytic
