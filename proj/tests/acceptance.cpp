// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion.
//
//   mmimo_acceptance                 run all criteria
//   mmimo_acceptance --criterion 6   run one criterion
//
// Reference values are computed here from the formulas written out inline,
// not through mmimo::analytic, so a typo in the library cannot cancel out.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mmimo/analytic.hpp"
#include "mmimo/beamforming.hpp"
#include "mmimo/channel.hpp"
#include "mmimo/harness.hpp"
#include "mmimo/rates.hpp"

using namespace mmimo;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

MonteCarloOptions mc() { return {std::max(1u, std::thread::hardware_concurrency())}; }

RateEstimate mc_rate(std::uint32_t m, std::uint32_t k, double p, LinkDirection d, Scheme s,
                     Normalization n, std::uint64_t trials, std::uint64_t seed) {
  SystemConfig cfg{m, k, p, p, trials, seed};
  return ergodic_sum_rate(cfg, d, s, n, mc());
}

// ---- closed-form oracles --------------------------------------------------

double ref_zf_vec(double pt, double m, double k) { return k * std::log2(1 + pt * (m - k + 1) / k); }
double ref_mrt_vec_low(double pt, double m, double k) {
  return k * std::log2(1 + pt * m / (pt * (k - 1) + k));
}
double ref_mrt_mat(double pt, double m, double k) {
  return k * std::log2(1 + pt * (m + 1) / (pt * (k - 1) + k));
}
double ref_mrc_high(double pu, double m, double k) {
  return k * std::log2(1 + pu * (m + 1) / (pu * (k - 1) + 1));
}
double ref_mrc_low(double pu, double m, double k) { return k * std::log2(1 + pu * m / (pu * (k - 1) + 1)); }
double ref_gradient(double pt, double m) {
  return (pt + 1) * (pt + 1) / ((m + 1) * pt * std::log(4.0)) -
         (m + 1) * (pt + 1) / (m * pt * (2 * m + 1) * std::numbers::ln2);
}

// ---- criteria -------------------------------------------------------------

Outcome c1_moments() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream d;
  for (std::uint32_t m : {4u, 8u, 24u}) {
    const double M = m;
    const MomentReport r = estimate_moments(m, 100000, 101);
    struct Ref {
      Moment q;
      double mean, var;
    };
    const Ref refs[] = {{Moment::NormSq, M, M},
                        {Moment::NormFourth, M * M + M, 4 * M * M * M + 10 * M * M + 6 * M},
                        {Moment::InnerSq, M, M * M + 2 * M}};
    for (const Ref& ref : refs) {
      const MomentStat& s = r[ref.q];
      const double z = (s.empirical_mean - ref.mean) / std::sqrt(ref.var / s.samples);
      const double var_err = std::abs(s.empirical_variance / ref.var - 1.0);
      const bool good = std::abs(z) <= 4.5 && var_err <= 0.10;
      ok = ok && good;
      d << fmt(" M=%u %s z=%.2f var%%=%.2f%s;", m, std::string(s.name).c_str(), z, 100 * var_err,
               good ? "" : " (!)");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 10.0;
  d << fmt(" runtime %.2f s", secs);
  return {ok, d.str()};
}

Outcome c2_am_gm() {
  std::uint64_t violations = 0, total = 0;
  double worst = -INFINITY;
  for (std::uint32_t k : {2u, 8u, 20u}) {
    for (std::uint64_t t = 0; t < 10000; ++t) {
      const ComplexMatrix h = draw_channel(k, 24, {202, t});
      const LinkGains vec = link_gains(h, make_precoder(h, Scheme::ZF, Normalization::Vector));
      const LinkGains mat = link_gains(h, make_precoder(h, Scheme::ZF, Normalization::Matrix));
      for (double pt : {0.1, 1.0, 10.0}) {
        const double gap = mat.sum_rate(pt) - vec.sum_rate(pt);
        worst = std::max(worst, gap);
        ++total;
        if (!(vec.sum_rate(pt) >= mat.sum_rate(pt) - 1e-10)) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%llu / %llu comparisons violate vector >= matrix; max (matrix - vector) = %.3g",
                               static_cast<unsigned long long>(violations),
                               static_cast<unsigned long long>(total), worst)};
}

Outcome c3_zf_vec_low_snr() {
  const double pt = db(-13.8);
  const RateEstimate r = mc_rate(24, 20, pt, LinkDirection::Downlink, Scheme::ZF, Normalization::Vector, 10000, 303);
  const double ref = 20 * std::log2(1 + pt * 5.0 / 20.0);
  const double tol = std::max(3 * r.std_error, 0.02 * ref);
  return {std::abs(r.mean_rate - ref) <= tol,
          fmt("MC %.5f +- %.5f vs %.5f (error %.3f%%, tolerance %.5f)", r.mean_rate, r.std_error, ref,
              100 * (r.mean_rate / ref - 1), tol)};
}

Outcome c4_mrt_closed_forms() {
  const double pt = db(-13.8);
  const RateEstimate mat = mc_rate(24, 20, pt, LinkDirection::Downlink, Scheme::MRT, Normalization::Matrix, 10000, 404);
  const RateEstimate vec = mc_rate(24, 20, pt, LinkDirection::Downlink, Scheme::MRT, Normalization::Vector, 10000, 404);
  const double ref_mat = ref_mrt_mat(pt, 24, 20);
  const double ref_vec = ref_mrt_vec_low(pt, 24, 20);
  const double e_mat = mat.mean_rate / ref_mat - 1;
  const double e_vec = vec.mean_rate / ref_vec - 1;
  return {std::abs(e_mat) <= 0.10 && std::abs(e_vec) <= 0.03,
          fmt("matrix %.5f vs %.5f (%.2f%%, limit 10%%); vector %.5f vs %.5f (%.2f%%, limit 3%%)", mat.mean_rate,
              ref_mat, 100 * e_mat, vec.mean_rate, ref_vec, 100 * e_vec)};
}

Outcome c5_mrc_closed_forms() {
  const double hi = db(13.8), lo = db(-13.8);
  const RateEstimate rh = mc_rate(24, 20, hi, LinkDirection::Uplink, Scheme::MRC, Normalization::None, 10000, 505);
  const RateEstimate rl = mc_rate(24, 20, lo, LinkDirection::Uplink, Scheme::MRC, Normalization::None, 10000, 505);
  const double eh = rh.mean_rate / ref_mrc_high(hi, 24, 20) - 1;
  const double el = rl.mean_rate / ref_mrc_low(lo, 24, 20) - 1;
  return {std::abs(eh) <= 0.05 && std::abs(el) <= 0.05,
          fmt("high SNR %.4f vs %.4f (%.2f%%); low SNR %.4f vs %.4f (%.2f%%); limit 5%%", rh.mean_rate,
              ref_mrc_high(hi, 24, 20), 100 * eh, rl.mean_rate, ref_mrc_low(lo, 24, 20), 100 * el)};
}

// First upward zero crossing of (zf - other) on the dB grid, linearly interpolated.
std::optional<double> crossing_db(const std::vector<double>& grid, const std::vector<RateEstimate>& zf,
                                  const std::vector<RateEstimate>& other) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = zf[i - 1].mean_rate - other[i - 1].mean_rate;
    const double b = zf[i].mean_rate - other[i].mean_rate;
    if (a < 0 && b >= 0) return grid[i - 1] + (grid[i] - grid[i - 1]) * (-a) / (b - a);
  }
  return std::nullopt;
}

Outcome power_crossing(LinkDirection dir, Scheme other, Normalization other_norm, double target_db,
                       std::uint64_t seed) {
  std::vector<double> grid, powers;
  for (int i = -40; i <= 40; ++i) {
    grid.push_back(0.5 * i);
    powers.push_back(db(0.5 * i));
  }
  const Normalization zf_norm = dir == LinkDirection::Downlink ? Normalization::Vector : Normalization::None;
  const CurveSpec curves[] = {{dir, Scheme::ZF, zf_norm}, {dir, other, other_norm}};
  const auto est = ergodic_sum_rates({24, 20, 1, 1, 10000, seed}, curves, powers, mc());
  const auto x = crossing_db(grid, est[0], est[1]);
  if (!x) return {false, "no crossing found on -20..20 dB"};
  return {std::abs(*x - target_db) <= 1.0,
          fmt("crossing at %.3f dB vs %.3f dB (difference %.3f dB, limit 1 dB)", *x, target_db, *x - target_db)};
}

Outcome c6_dl_threshold() {
  return power_crossing(LinkDirection::Downlink, Scheme::MRT, Normalization::Matrix, 10 * std::log10(400.0 / 95.0), 606);
}

Outcome c7_ul_threshold() {
  return power_crossing(LinkDirection::Uplink, Scheme::MRC, Normalization::None, 10 * std::log10(0.2), 707);
}

Outcome c8_power_cross() {
  bool ok = true;
  std::ostringstream d;
  struct Side {
    LinkDirection dir;
    Scheme other;
    Normalization zf_norm, other_norm;
    double power;
    const char* label;
  };
  const Side sides[] = {
      {LinkDirection::Downlink, Scheme::MRT, Normalization::Vector, Normalization::Matrix, 4.0 / 23, "DL"},
      {LinkDirection::Uplink, Scheme::MRC, Normalization::None, Normalization::None, 1.0 / 23, "UL"},
  };
  for (const Side& s : sides) {
    std::vector<std::uint32_t> bad;
    double worst = INFINITY;
    std::uint32_t worst_k = 0;
    for (std::uint32_t k = 2; k <= 24; ++k) {
      const SystemConfig cfg{24, k, s.power, s.power, 10000, 808};
      const CurveSpec curves[] = {{s.dir, Scheme::ZF, s.zf_norm}, {s.dir, s.other, s.other_norm}};
      const double p[] = {s.power};
      const auto est = ergodic_sum_rates(cfg, curves, p, mc());
      const double se = std::hypot(est[0][0].std_error, est[1][0].std_error);
      const double margin = (est[1][0].mean_rate - est[0][0].mean_rate) / se;
      if (margin < worst) {
        worst = margin;
        worst_k = k;
      }
      if (est[1][0].mean_rate < est[0][0].mean_rate - 2 * se) bad.push_back(k);
    }
    ok = ok && bad.empty();
    d << fmt(" %s: worst K=%u at %.1f std errors;", s.label, worst_k, worst);
    if (!bad.empty()) {
      d << " ZF ahead by > 2 std errors at K =";
      for (std::uint32_t k : bad) d << ' ' << k;
      d << ';';
    }
  }
  return {ok, d.str()};
}

Outcome c9_user_cross() {
  bool ok = true;
  std::ostringstream d;
  std::vector<std::uint32_t> bad;
  for (std::uint32_t k = 1; k <= 24; ++k) {
    const double zf = ref_zf_vec(1.0, 24, k), mrt = ref_mrt_mat(1.0, 24, k);
    // Cross-check the library against the inline formulas.
    ok = ok && std::abs(analytic::zf_dl_vec(1.0, 24, k) - zf) <= 1e-12 * zf &&
         std::abs(analytic::mrt_dl_mat(1.0, 24, k) - mrt) <= 1e-12 * mrt;
    const bool right = k <= 12 ? zf > mrt : mrt > zf;
    if (!right) bad.push_back(k);
  }
  ok = ok && bad.empty();
  d << "closed forms";
  if (bad.empty()) {
    d << " ordered as required;";
  } else {
    d << " misordered at K =";
    for (std::uint32_t k : bad)
      d << fmt(" %u (ZF %.4f, MRT %.4f)", k, ref_zf_vec(1.0, 24, k), ref_mrt_mat(1.0, 24, k));
    d << ';';
  }

  for (std::uint32_t k : {10u, 15u}) {
    const SystemConfig cfg{24, k, 1.0, 1.0, 10000, 909};
    const CurveSpec curves[] = {{LinkDirection::Downlink, Scheme::ZF, Normalization::Vector},
                                {LinkDirection::Downlink, Scheme::MRT, Normalization::Matrix}};
    const double p[] = {1.0};
    const auto est = ergodic_sum_rates(cfg, curves, p, mc());
    const double se = std::hypot(est[0][0].std_error, est[1][0].std_error);
    const double lead = k == 10 ? est[0][0].mean_rate - est[1][0].mean_rate : est[1][0].mean_rate - est[0][0].mean_rate;
    const bool good = lead >= -2 * se;
    ok = ok && good;
    d << fmt(" MC K=%u: ZF %.4f, MRT %.4f%s;", k, est[0][0].mean_rate, est[1][0].mean_rate, good ? "" : " (!)");
  }
  return {ok, d.str()};
}

Outcome c10_asymptotics() {
  bool ok = true;
  std::ostringstream d;
  double prev = -INFINITY, last = 0;
  for (std::uint32_t k : {100u, 1000u, 10000u}) {
    const double r = analytic::zf_dl_vec(1.0, k, k);
    const double ref = k * std::log2(1.0 + 1.0 / k);
    ok = ok && std::abs(r - ref) <= 1e-12 * ref && r > prev && r < std::numbers::log2e;
    prev = last = r;
    d << fmt(" K=%u: %.6f;", k, r);
  }
  const double rel = std::abs(last / std::numbers::log2e - 1);
  ok = ok && rel < 0.01;
  d << fmt(" relative error at 1e4: %.2e;", rel);

  const RateEstimate mrc = mc_rate(64, 64, 1e4, LinkDirection::Uplink, Scheme::MRC, Normalization::None, 2000, 1010);
  const double e = mrc.mean_rate / 64 - 1;
  ok = ok && std::abs(e) <= 0.10;
  d << fmt(" MRC M=K=64: %.3f (%.2f%% from 64, limit 10%%)", mrc.mean_rate, 100 * e);
  return {ok, d.str()};
}

Outcome c11_large_m() {
  bool ok = true;
  std::ostringstream d;
  const double p = db(-20.0);
  struct Curve {
    LinkDirection dir;
    Scheme scheme;
    Normalization norm;
    double (*ref)(double, double, double);
    const char* label;
  };
  const Curve curves[] = {
      {LinkDirection::Downlink, Scheme::MRT, Normalization::Matrix, ref_mrt_mat, "MRT-mat"},
      {LinkDirection::Uplink, Scheme::MRC, Normalization::None, ref_mrc_low, "MRC"},
  };
  for (const Curve& c : curves) {
    std::vector<double> err;
    d << ' ' << c.label << ':';
    for (std::uint32_t m : {10u, 40u, 100u}) {
      const RateEstimate r = mc_rate(m, 10, p, c.dir, c.scheme, c.norm, 10000, 1111);
      const double ref = c.ref(p, m, 10);
      err.push_back(std::abs(r.mean_rate - ref) / ref);
      d << fmt(" M=%u %.3f%%", m, 100 * err.back());
    }
    const bool mono = err[1] <= err[0] && err[2] <= err[1];
    const bool small = err[2] <= 0.03;
    ok = ok && mono && small;
    d << (mono ? "" : " (not nonincreasing)") << (small ? "" : " (above 3% at M=100)") << ';';
  }
  return {ok, d.str()};
}

Outcome c12_gradient() {
  bool ok = true;
  std::ostringstream d;
  int negative = 0;
  for (double pt : {1e-3, 1e-2, 1e-1})
    for (std::uint32_t m : {16u, 24u, 64u, 256u}) {
      const double g = analytic::gradient_difference(pt, m);
      const double ref = ref_gradient(pt, m);
      ok = ok && std::abs(g - ref) <= 1e-12 * std::abs(ref);
      if (!(g > 0)) {
        ok = false;
        ++negative;
        d << fmt(" (pt=%g, m=%u) = %.4g;", pt, m, g);
      }
    }
  return {ok, negative == 0 ? std::string("positive on the whole grid")
                            : fmt("%d of 12 grid points not positive:", negative) + d.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome c13_determinism() {
#ifdef MMIMO_CLI_PATH
  const std::string cli = MMIMO_CLI_PATH;
  std::string out[3];
  const unsigned threads[] = {1, 1, 4};
  for (int i = 0; i < 3; ++i) {
    const std::string file = "acceptance_c13_" + std::to_string(i) + ".csv";
    const std::string cmd = "\"" + cli + "\" reproduce-fig 3a --seed 7 --threads " + std::to_string(threads[i]) +
                            " --out " + file;
    if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
    out[i] = read_file(file);
  }
  const char* how = "via CLI";
#else
  harness::SweepSpec spec = harness::figure_spec("3a");
  spec.fixed.seed = 7;
  const std::string out[3] = {harness::run_sweep(spec, {1}), harness::run_sweep(spec, {1}),
                              harness::run_sweep(spec, {4})};
  const char* how = "in process";
#endif
  const bool same_serial = !out[0].empty() && out[0] == out[1];
  const bool same_parallel = out[0] == out[2];
  return {same_serial && same_parallel,
          fmt("%s: serial repeat %s, serial vs 4 threads %s (%zu bytes)", how, same_serial ? "identical" : "DIFFERS",
              same_parallel ? "identical" : "DIFFERS", out[0].size())};
}

struct Criterion {
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"moment identities", c1_moments},
    {"ZF vector >= matrix per realization", c2_am_gm},
    {"ZF vector closed form at low SNR", c3_zf_vec_low_snr},
    {"MRT closed forms", c4_mrt_closed_forms},
    {"MRC closed forms", c5_mrc_closed_forms},
    {"downlink power threshold", c6_dl_threshold},
    {"uplink power threshold", c7_ul_threshold},
    {"power cross points", c8_power_cross},
    {"user cross point", c9_user_cross},
    {"M = K asymptotics", c10_asymptotics},
    {"large-M tightness", c11_large_m},
    {"gradient positivity", c12_gradient},
    {"determinism", c13_determinism},
};

bool run_one(int n) {
  const Criterion& c = kCriteria[n - 1];
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const auto first = o.detail.find_first_not_of(' ');
  std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << "criterion " << n << " (" << c.title
            << "): " << (first == std::string::npos ? "" : o.detail.substr(first)) << std::endl;
  return o.passed;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int count = static_cast<int>(std::size(kCriteria));
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (n < 1 || n > count) {
      std::cerr << "criterion must be in 1.." << count << '\n';
      return 2;
    }
    return run_one(n) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
    return 2;
  }
  int failed = 0;
  for (int n = 1; n <= count; ++n)
    if (!run_one(n)) ++failed;
  std::cout << (count - failed) << " of " << count << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
