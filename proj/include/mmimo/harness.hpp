#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmimo/analytic.hpp"
#include "mmimo/rates.hpp"
#include "mmimo/types.hpp"

namespace mmimo::harness {

enum class SweepAxis { Users, PowerDb, Antennas };

enum class CurveSource {
  MonteCarlo,          // ergodic_sum_rates
  ZfMatrixFirstBound,  // ergodic_zf_mat_u1
  ClosedForm,          // analytic::evaluate
};

/// One named output series of a sweep.
///
/// Monte-Carlo names: zf-vec, zf-mat, mrt-vec, mrt-mat (downlink), zf-ul, mrc
/// (uplink) and zf-mat-u1. Closed-form names are the analytic catalog names
/// (zf-dl-vec, mrt-dl-mat, mrc-ul-low, ...).
struct Curve {
  std::string name;
  CurveSource source = CurveSource::MonteCarlo;
  CurveSpec spec;
  analytic::ClosedFormId closed_form = analytic::ClosedFormId::ZfDlVec;
};

std::optional<Curve> curve_from_name(std::string_view name);

/// Comma-separated curve list; throws ConfigError naming an unknown curve.
std::vector<Curve> parse_curves(std::string_view list);

/// "start:stop:step", inclusive of stop within half a step. Throws
/// ConfigError on a malformed range or a non-positive step.
std::vector<double> parse_axis_range(std::string_view range);

SweepAxis parse_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Users;
  std::vector<double> axis_values;
  SystemConfig fixed;  // the swept field is overwritten per axis value
  std::vector<Curve> curves;
};

/// Throws ConfigError unless axis values are nonempty and strictly increasing
/// (and positive integers on the Users/Antennas axes) and at least one curve
/// is given.
void check_spec(const SweepSpec& spec);

struct CsvRow {
  double axis_value = 0.0;
  std::string curve;
  double rate = 0.0;
  std::optional<double> stderr_rate;     // empty for closed forms
  std::optional<std::uint64_t> trials;   // empty for closed forms
};

inline constexpr std::string_view kCsvHeader = "axis,curve,rate,stderr,trials";

/// Rows in axis-major, curve-minor order.
std::vector<CsvRow> run_sweep_rows(const SweepSpec& spec, MonteCarloOptions opts = {});

/// Header line then one line per row; numbers with 9 significant digits.
std::string to_csv(std::span<const CsvRow> rows);

std::string run_sweep(const SweepSpec& spec, MonteCarloOptions opts = {});

/// Figure presets: 3a 3b 4a 4b 6a 6b 7a 7b 8a 8b 9a 9b.
std::span<const std::string_view> figure_ids();

/// Preset sweep for a figure id; ConfigError for an unknown id.
SweepSpec figure_spec(std::string_view id);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::uint64_t moment_samples = 100000;
  std::uint64_t realizations = 2000;
};

/// Moment identities, normalization power, ZF orthogonality, ZF vector vs.
/// matrix ordering, Gram concentration and configuration guards.
ValidationReport run_validation(const ValidationOptions& opts = {});

std::string format_report(const ValidationReport& report);

/// Human-readable threshold summary. Mode decisions are included for the
/// powers that are given.
std::string print_thresholds(std::uint32_t m, std::uint32_t k, std::optional<double> pt_db,
                             std::optional<double> pu_db);

}  // namespace mmimo::harness
