#pragma once

#include <cstdint>

#include "mmimo/types.hpp"

namespace mmimo::selection {

// Switching points between ZF and matched filtering (MRT downlink, MRC
// uplink), derived from the low-SNR closed forms. Powers are linear.

/// K^2 / ((K-1)(M-K+1)). Above it ZF-vector beats MRT-matrix on the
/// downlink. Requires 2 <= k <= m.
double p_th_dl(std::uint32_t m, std::uint32_t k);

/// 1 / (M-K+1). Above it ZF beats MRC on the uplink. Requires k <= m.
double p_th_ul(std::uint32_t m, std::uint32_t k);

/// Minimum over K of the power threshold (attained at K = 2):
/// 4/(M-1) downlink, 1/(M-1) uplink. Requires m >= 2.
double p_cross(LinkDirection direction, std::uint32_t m);

/// pt (M+1) / (1+pt). MRT for K at or above it. Returned unrounded.
double k_cross_dl(double pt, std::uint32_t m);

/// M + 1 - 1/pu. MRC for K at or above it. Returned unrounded.
double k_cross_ul(double pu, std::uint32_t m);

enum class ThresholdKind { PowerThreshold, PowerCross, UserCross };

struct ModeDecision {
  LinkDirection direction = LinkDirection::Downlink;
  Scheme chosen = Scheme::ZF;
  ThresholdKind threshold_kind = ThresholdKind::PowerThreshold;
  double threshold_value = 0.0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  double power = 0.0;
};

/// ZF when power >= the power threshold for (m, k), otherwise MRT
/// (downlink) or MRC (uplink). Downlink requires k >= 2.
ModeDecision select_mode(LinkDirection direction, double power, std::uint32_t m, std::uint32_t k);

}  // namespace mmimo::selection
