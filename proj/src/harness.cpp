#include "mmimo/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mmimo/beamforming.hpp"
#include "mmimo/channel.hpp"
#include "mmimo/selection.hpp"

namespace mmimo::harness {

namespace {

struct McName {
  std::string_view name;
  CurveSpec spec;
};

constexpr std::array<McName, 6> kMonteCarloCurves{{
    {"zf-vec", {LinkDirection::Downlink, Scheme::ZF, Normalization::Vector}},
    {"zf-mat", {LinkDirection::Downlink, Scheme::ZF, Normalization::Matrix}},
    {"mrt-vec", {LinkDirection::Downlink, Scheme::MRT, Normalization::Vector}},
    {"mrt-mat", {LinkDirection::Downlink, Scheme::MRT, Normalization::Matrix}},
    {"zf-ul", {LinkDirection::Uplink, Scheme::ZF, Normalization::None}},
    {"mrc", {LinkDirection::Uplink, Scheme::MRC, Normalization::None}},
}};

constexpr std::string_view kZfMatFirstBound = "zf-mat-u1";

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(std::string(what) + ": cannot parse '" + t + "'");
  return v;
}

std::uint32_t as_count(double v, std::string_view field) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e7)
    throw ConfigError(std::string(field) + " axis values must be positive integers");
  return static_cast<std::uint32_t>(v);
}

SystemConfig config_at(const SweepSpec& spec, double axis_value) {
  SystemConfig cfg = spec.fixed;
  switch (spec.axis) {
    case SweepAxis::Users: cfg.k = as_count(axis_value, "users"); break;
    case SweepAxis::Antennas: cfg.m = as_count(axis_value, "antennas"); break;
    case SweepAxis::PowerDb: cfg.pt = cfg.pu = db_to_linear(axis_value); break;
  }
  return cfg;
}

}  // namespace

std::optional<Curve> curve_from_name(std::string_view name) {
  for (const McName& mc : kMonteCarloCurves)
    if (mc.name == name) return Curve{std::string(name), CurveSource::MonteCarlo, mc.spec, {}};
  if (name == kZfMatFirstBound) {
    return Curve{std::string(name), CurveSource::ZfMatrixFirstBound,
                 {LinkDirection::Downlink, Scheme::ZF, Normalization::Matrix}, {}};
  }
  if (auto id = analytic::closed_form_from_name(name))
    return Curve{std::string(name), CurveSource::ClosedForm, {}, *id};
  return std::nullopt;
}

std::vector<Curve> parse_curves(std::string_view list) {
  std::vector<Curve> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    const std::string item =
        trim(list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos));
    if (!item.empty()) {
      auto c = curve_from_name(item);
      if (!c) throw ConfigError("curves: unknown curve '" + item + "'");
      out.push_back(std::move(*c));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("curves: empty curve list");
  return out;
}

std::vector<double> parse_axis_range(std::string_view range) {
  const auto c1 = range.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos)
    throw ConfigError("axis-range: expected start:stop:step, got '" + std::string(range) + "'");
  const double start = parse_double(range.substr(0, c1), "axis-range start");
  const double stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1), "axis-range stop");
  const double step = parse_double(range.substr(c2 + 1), "axis-range step");
  if (!(step > 0.0)) throw ConfigError("axis-range: step must be > 0");
  if (stop < start) throw ConfigError("axis-range: stop must be >= start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> values(n);
  // Index-based so that 0.5 dB grids stay exact.
  for (std::size_t i = 0; i < n; ++i) values[i] = start + static_cast<double>(i) * step;
  return values;
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "users") return SweepAxis::Users;
  if (name == "power-db") return SweepAxis::PowerDb;
  if (name == "antennas") return SweepAxis::Antennas;
  throw ConfigError("axis: expected users, power-db or antennas, got '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Users: return "users";
    case SweepAxis::PowerDb: return "power-db";
    case SweepAxis::Antennas: return "antennas";
  }
  return "?";
}

void check_spec(const SweepSpec& spec) {
  if (spec.axis_values.empty()) throw ConfigError("axis values must be nonempty");
  for (std::size_t i = 1; i < spec.axis_values.size(); ++i)
    if (!(spec.axis_values[i] > spec.axis_values[i - 1]))
      throw ConfigError("axis values must be strictly increasing");
  if (spec.curves.empty()) throw ConfigError("curves must be nonempty");
  for (double v : spec.axis_values) {
    if (!std::isfinite(v)) throw ConfigError("axis values must be finite");
    if (spec.axis == SweepAxis::Users) as_count(v, "users");
    if (spec.axis == SweepAxis::Antennas) as_count(v, "antennas");
  }
  for (const Curve& c : spec.curves)
    if (!curve_from_name(c.name)) throw ConfigError("curves: unknown curve '" + c.name + "'");
}

std::vector<CsvRow> run_sweep_rows(const SweepSpec& spec, MonteCarloOptions opts) {
  check_spec(spec);
  const std::size_t n_axis = spec.axis_values.size();
  const std::size_t n_curves = spec.curves.size();
  std::vector<CsvRow> rows(n_axis * n_curves);

  std::vector<CurveSpec> mc_specs;
  std::vector<std::size_t> mc_index;  // curve index of each Monte-Carlo spec
  bool want_first_bound = false;
  for (std::size_t c = 0; c < n_curves; ++c) {
    const Curve& curve = spec.curves[c];
    if (curve.source == CurveSource::MonteCarlo) {
      mc_specs.push_back(curve.spec);
      mc_index.push_back(c);
    } else if (curve.source == CurveSource::ZfMatrixFirstBound) {
      want_first_bound = true;
    }
  }

  auto put_mc = [&](std::size_t a, std::size_t c, const RateEstimate& e) {
    rows[a * n_curves + c] = {spec.axis_values[a], spec.curves[c].name, e.mean_rate, e.std_error,
                              e.trials};
  };

  if (spec.axis == SweepAxis::PowerDb) {
    // One pass over the draws serves every power on the axis.
    std::vector<double> powers(n_axis);
    for (std::size_t a = 0; a < n_axis; ++a) powers[a] = db_to_linear(spec.axis_values[a]);
    if (!mc_specs.empty()) {
      const auto est = ergodic_sum_rates(spec.fixed, mc_specs, powers, opts);
      for (std::size_t i = 0; i < mc_specs.size(); ++i)
        for (std::size_t a = 0; a < n_axis; ++a) put_mc(a, mc_index[i], est[i][a]);
    }
    if (want_first_bound) {
      const auto est = ergodic_zf_mat_u1(spec.fixed, powers, opts);
      for (std::size_t c = 0; c < n_curves; ++c)
        if (spec.curves[c].source == CurveSource::ZfMatrixFirstBound)
          for (std::size_t a = 0; a < n_axis; ++a) put_mc(a, c, est[a]);
    }
  } else {
    for (std::size_t a = 0; a < n_axis; ++a) {
      const SystemConfig cfg = config_at(spec, spec.axis_values[a]);
      if (!mc_specs.empty()) {
        const std::array<double, 2> powers{cfg.pt, cfg.pu};
        const auto est = ergodic_sum_rates(cfg, mc_specs, powers, opts);
        for (std::size_t i = 0; i < mc_specs.size(); ++i)
          put_mc(a, mc_index[i], est[i][mc_specs[i].direction == LinkDirection::Downlink ? 0 : 1]);
      }
      if (want_first_bound) {
        const auto est = ergodic_zf_mat_u1(cfg, std::span(&cfg.pt, 1), opts);
        for (std::size_t c = 0; c < n_curves; ++c)
          if (spec.curves[c].source == CurveSource::ZfMatrixFirstBound) put_mc(a, c, est[0]);
      }
    }
  }

  for (std::size_t a = 0; a < n_axis; ++a) {
    const SystemConfig cfg = config_at(spec, spec.axis_values[a]);
    for (std::size_t c = 0; c < n_curves; ++c) {
      const Curve& curve = spec.curves[c];
      if (curve.source != CurveSource::ClosedForm) continue;
      const double power =
          analytic::direction(curve.closed_form) == LinkDirection::Downlink ? cfg.pt : cfg.pu;
      rows[a * n_curves + c] = {spec.axis_values[a], curve.name,
                                analytic::evaluate(curve.closed_form, power, cfg.m, cfg.k).value,
                                std::nullopt, std::nullopt};
    }
  }
  return rows;
}

std::string to_csv(std::span<const CsvRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const CsvRow& r : rows) {
    out += fmt9(r.axis_value);
    out += ',';
    out += r.curve;
    out += ',';
    out += fmt9(r.rate);
    out += ',';
    if (r.stderr_rate) out += fmt9(*r.stderr_rate);
    out += ',';
    if (r.trials) out += std::to_string(*r.trials);
    out += '\n';
  }
  return out;
}

std::string run_sweep(const SweepSpec& spec, MonteCarloOptions opts) {
  return to_csv(run_sweep_rows(spec, opts));
}

std::span<const std::string_view> figure_ids() {
  static constexpr std::array<std::string_view, 12> ids{"3a", "3b", "4a", "4b", "6a", "6b",
                                                         "7a", "7b", "8a", "8b", "9a", "9b"};
  return ids;
}

SweepSpec figure_spec(std::string_view id) {
  SweepSpec s;
  s.fixed.m = 24;
  s.fixed.k = 20;
  s.fixed.trials = 10000;
  s.fixed.seed = 1;
  std::string curves;

  auto users = [&] {
    s.axis = SweepAxis::Users;
    s.axis_values = parse_axis_range("1:24:1");
  };
  auto power = [&] {
    s.axis = SweepAxis::PowerDb;
    s.axis_values = parse_axis_range("-20:20:1");
  };
  auto antennas = [&] {
    s.axis = SweepAxis::Antennas;
    s.axis_values = parse_axis_range("10:100:10");
    s.fixed.k = 10;
    s.fixed.pt = s.fixed.pu = db_to_linear(-20.0);
  };

  if (id == "3a") {
    users();
    s.fixed.pt = db_to_linear(-13.8);
    curves = "zf-vec,zf-mat,zf-mat-u1,zf-dl-vec,zf-dl-lower";
  } else if (id == "3b") {
    users();
    s.fixed.pt = db_to_linear(-13.8);
    curves = "mrt-vec,mrt-mat,mrt-dl-vec-low,mrt-dl-mat";
  } else if (id == "4a") {
    users();
    s.fixed.pu = db_to_linear(13.8);
    curves = "mrc,mrc-ul-high";
  } else if (id == "4b") {
    users();
    s.fixed.pu = db_to_linear(-13.8);
    curves = "mrc,mrc-ul-low";
  } else if (id == "6a") {
    power();
    curves = "zf-vec,mrt-mat";
  } else if (id == "6b") {
    power();
    curves = "zf-ul,mrc";
  } else if (id == "7a") {
    users();
    s.fixed.pt = selection::p_cross(LinkDirection::Downlink, s.fixed.m);
    curves = "zf-vec,mrt-mat";
  } else if (id == "7b") {
    users();
    s.fixed.pu = selection::p_cross(LinkDirection::Uplink, s.fixed.m);
    curves = "zf-ul,mrc";
  } else if (id == "8a") {
    users();
    s.fixed.pt = db_to_linear(0.0);
    curves = "zf-vec,zf-mat,mrt-vec,mrt-mat";
  } else if (id == "8b") {
    users();
    s.fixed.pt = db_to_linear(5.0);
    curves = "zf-vec,zf-mat,mrt-vec,mrt-mat";
  } else if (id == "9a") {
    antennas();
    curves = "mrt-mat,mrt-dl-mat";
  } else if (id == "9b") {
    antennas();
    curves = "mrc,mrc-ul-low";
  } else {
    throw ConfigError("figure: unknown id '" + std::string(id) + "'");
  }
  s.curves = parse_curves(curves);
  return s;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(const ValidationOptions& opts) {
  ValidationReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  for (std::uint32_t m : {4u, 8u, 24u}) {
    const MomentReport r = estimate_moments(m, opts.moment_samples, opts.seed);
    for (const MomentStat& st : r.stats) {
      const double var_rel = std::abs(st.empirical_variance / st.analytic_variance - 1.0);
      std::ostringstream d;
      d << "mean " << st.empirical_mean << " vs " << st.analytic_mean << " (z=" << st.z
        << "), var " << st.empirical_variance << " vs " << st.analytic_variance;
      add("moment " + std::string(st.name) + " M=" + std::to_string(m),
          std::abs(st.z) <= 4.5 && var_rel <= 0.10, d.str());
    }
  }

  {
    double worst_power = 0.0, worst_leak = 0.0, worst_ul = 0.0, worst_order = 0.0;
    for (std::uint32_t k : {2u, 8u, 20u}) {
      const SystemConfig cfg{24, k, 1.0, 1.0, opts.realizations, opts.seed};
      for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const ComplexMatrix h = draw_channel(cfg, {cfg.seed, t});
        BeamformerSet zf_vec, zf_mat;
        for (Scheme s : {Scheme::ZF, Scheme::MRT}) {
          for (Normalization n : {Normalization::Vector, Normalization::Matrix}) {
            BeamformerSet g = make_precoder(h, s, n);
            worst_power = std::max(worst_power, std::abs(frobenius_norm_sq(g.matrix) - 1.0));
            if (s != Scheme::ZF) continue;
            const ComplexMatrix hg = matmul(h, g.matrix);
            for (std::size_t i = 0; i < k; ++i)
              for (std::size_t j = 0; j < k; ++j)
                if (i != j)
                  worst_leak = std::max(worst_leak, std::abs(hg(i, j)) /
                                                        std::sqrt(column_norm_sq(g.matrix, j)));
            (n == Normalization::Vector ? zf_vec : zf_mat) = std::move(g);
          }
        }
        const ComplexMatrix hw = matmul(h, zf_combiner(h));
        worst_ul = std::max(worst_ul, frobenius_distance(hw, ComplexMatrix::identity(k)));

        const LinkGains vec = link_gains(h, zf_vec);
        const LinkGains mat = link_gains(h, zf_mat);
        for (double pt : {0.1, 1.0, 10.0})
          worst_order = std::max(worst_order, mat.sum_rate(pt) - vec.sum_rate(pt));
      }
    }
    add("normalization total power", worst_power <= 1e-10,
        "max |sum ||g_k||^2 - 1| = " + fmt9(worst_power));
    add("ZF precoder orthogonality", worst_leak <= 1e-8,
        "max |h_i^T g_j| / ||g_j|| = " + fmt9(worst_leak));
    add("ZF combiner orthogonality", worst_ul <= 1e-8, "max ||H W - I||_F = " + fmt9(worst_ul));
    add("ZF vector >= ZF matrix per realization", worst_order <= 1e-10,
        "max (matrix - vector) = " + fmt9(worst_order));
  }

  {
    const double d50 = effective_channel_deviation(50, 4, 200, opts.seed);
    const double d200 = effective_channel_deviation(200, 4, 200, opts.seed);
    const double d800 = effective_channel_deviation(800, 4, 200, opts.seed);
    add("Gram concentration (1/M) H H^H -> I", d50 > d200 && d200 > d800,
        "median deviation M=50: " + fmt9(d50) + ", M=200: " + fmt9(d200) + ", M=800: " + fmt9(d800));
  }

  {
    bool rejected = false;
    std::string msg;
    try {
      validate_config({4, 5, 1.0, 1.0, 1, opts.seed}, Scheme::ZF);
    } catch (const ConfigError& e) {
      rejected = true;
      msg = e.what();
    }
    add("ZF with k > m rejected as configuration error", rejected, msg);
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::string out;
  for (const CheckResult& c : report.checks) {
    out += c.passed ? "[PASS] " : "[FAIL] ";
    out += c.name;
    out += ": ";
    out += c.detail;
    out += '\n';
  }
  out += report.passed() ? "validation passed\n" : "validation FAILED\n";
  return out;
}

std::string print_thresholds(std::uint32_t m, std::uint32_t k, std::optional<double> pt_db,
                             std::optional<double> pu_db) {
  std::ostringstream o;
  auto both = [](double linear) { return fmt9(linear) + " (" + fmt9(linear_to_db(linear)) + " dB)"; };

  o << "M = " << m << ", K = " << k << '\n';
  if (k >= 2 && k <= m)
    o << "P_th,DL    = " << both(selection::p_th_dl(m, k)) << '\n';
  else
    o << "P_th,DL    = n/a (requires 2 <= K <= M)\n";
  if (k <= m)
    o << "P_th,UL    = " << both(selection::p_th_ul(m, k)) << '\n';
  else
    o << "P_th,UL    = n/a (requires K <= M)\n";
  if (m >= 2) {
    o << "P_cross,DL = " << both(selection::p_cross(LinkDirection::Downlink, m)) << '\n';
    o << "P_cross,UL = " << both(selection::p_cross(LinkDirection::Uplink, m)) << '\n';
  }
  if (pt_db) {
    const double pt = db_to_linear(*pt_db);
    o << "K_cross,DL = " << fmt9(selection::k_cross_dl(pt, m)) << " at pt = " << fmt9(*pt_db)
      << " dB\n";
    if (k >= 2 && k <= m) {
      const auto d = selection::select_mode(LinkDirection::Downlink, pt, m, k);
      o << "downlink mode: " << to_string(d.chosen) << " (pt " << fmt9(*pt_db) << " dB "
        << (d.chosen == Scheme::ZF ? ">=" : "<") << " P_th,DL " << fmt9(linear_to_db(d.threshold_value))
        << " dB)\n";
    }
  }
  if (pu_db) {
    const double pu = db_to_linear(*pu_db);
    o << "K_cross,UL = " << fmt9(selection::k_cross_ul(pu, m)) << " at pu = " << fmt9(*pu_db)
      << " dB\n";
    if (k <= m) {
      const auto d = selection::select_mode(LinkDirection::Uplink, pu, m, k);
      o << "uplink mode: " << to_string(d.chosen) << " (pu " << fmt9(*pu_db) << " dB "
        << (d.chosen == Scheme::ZF ? ">=" : "<") << " P_th,UL " << fmt9(linear_to_db(d.threshold_value))
        << " dB)\n";
    }
  }
  return o.str();
}

}  // namespace mmimo::harness
