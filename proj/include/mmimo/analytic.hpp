#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "mmimo/types.hpp"

namespace mmimo::analytic {

// Closed-form ergodic sum rates in bits/s/Hz. `pt` is the total downlink
// power, `pu` the per-user uplink power, both linear with unit noise.
// Functions marked "k <= m" throw ConfigError outside that domain; every
// function rejects m == 0, k == 0 and negative or non-finite power.

/// K log2(1 + pt (M - K) / K). Lower bound for ZF with either
/// normalization. k <= m.
double zf_dl_lower(double pt, std::uint32_t m, std::uint32_t k);

/// K log2(1 + pt (M - K + 1) / K). Upper bound for ZF with vector
/// normalization, tight at low SNR. k <= m.
double zf_dl_vec(double pt, std::uint32_t m, std::uint32_t k);

/// MRT, vector normalization, low SNR: K log2(1 + pt M / (pt (K-1) + K)).
double mrt_dl_vec_low(double pt, std::uint32_t m, std::uint32_t k);

/// MRT, vector normalization, high SNR: K log2(1 + pt (M+1) / (pt (K-1) + K)).
/// Same expression as mrt_dl_mat.
double mrt_dl_vec_high(double pt, std::uint32_t m, std::uint32_t k);

/// MRT, matrix normalization, low and high SNR:
/// K log2(1 + pt (M+1) / (pt (K-1) + K)).
double mrt_dl_mat(double pt, std::uint32_t m, std::uint32_t k);

/// MRC, high SNR: K log2(1 + pu (M+1) / (pu (K-1) + 1)).
double mrc_ul_high(double pu, std::uint32_t m, std::uint32_t k);

/// MRC, low SNR: K log2(1 + pu M / (pu (K-1) + 1)).
double mrc_ul_low(double pu, std::uint32_t m, std::uint32_t k);

/// ZF combiner, low SNR: K log2(1 + pu (M - K + 1)). k <= m.
double zf_ul_low(double pu, std::uint32_t m, std::uint32_t k);

enum class Validity { LowSnr, HighSnr, LowAndHighSnr, Bound, ExactLimit };

enum class ClosedFormId {
  ZfDlLower,
  ZfDlVec,
  MrtDlVecLow,
  MrtDlVecHigh,
  MrtDlMat,
  MrcUlHigh,
  MrcUlLow,
  ZfUlLow,
};

inline constexpr ClosedFormId kAllClosedForms[] = {
    ClosedFormId::ZfDlLower,   ClosedFormId::ZfDlVec,  ClosedFormId::MrtDlVecLow,
    ClosedFormId::MrtDlVecHigh, ClosedFormId::MrtDlMat, ClosedFormId::MrcUlHigh,
    ClosedFormId::MrcUlLow,    ClosedFormId::ZfUlLow,
};

struct ClosedForm {
  ClosedFormId id;
  double value;
  Validity validity;
};

/// Catalog name, e.g. "zf-dl-vec".
std::string_view name(ClosedFormId id);
std::optional<ClosedFormId> closed_form_from_name(std::string_view name);
LinkDirection direction(ClosedFormId id);
Validity validity(ClosedFormId id);

/// Evaluates `id`; `power` is pt or pu according to direction(id).
ClosedForm evaluate(ClosedFormId id, double power, std::uint32_t m, std::uint32_t k);

enum class AsymptoticScheme {
  ZfDownlink,        // pt log2(e)
  MrtDownlink,       // M log2(1 + pt / (pt + 1))
  MrcUplink,         // M
  MrcUplinkScaled,   // M log2(1 + pu_sum / (pu_sum + 1)), pu = pu_sum / M
};

/// Limit of the sum rate as M = K grows, for the given scheme.
double asymptotic_mk(AsymptoticScheme scheme, double power, std::uint32_t m);

/// Difference between the slopes in K of the MRT-matrix and ZF-vector
/// low-SNR rates at the downlink user cross point:
///   (pt+1)^2 / ((M+1) pt ln 4) - (M+1)(pt+1) / (M pt (2M+1) ln 2).
/// Requires pt > 0 and m >= 2.
double gradient_difference(double pt, std::uint32_t m);

}  // namespace mmimo::analytic
