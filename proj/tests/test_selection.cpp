#include <cmath>

#include "doctest.h"
#include "mmimo/analytic.hpp"
#include "mmimo/selection.hpp"

using namespace mmimo;
using namespace mmimo::selection;

TEST_SUITE("selection") {
  TEST_CASE("power thresholds") {
    CHECK(p_th_dl(24, 20) == doctest::Approx(400.0 / 95.0));
    CHECK(10 * std::log10(p_th_dl(24, 20)) == doctest::Approx(6.2434).epsilon(1e-4));
    CHECK(p_th_dl(24, 2) == doctest::Approx(4.0 / 23.0));
    CHECK(p_th_ul(24, 20) == doctest::Approx(0.2));
    CHECK(p_th_ul(24, 24) == 1.0);
    CHECK(p_th_ul(24, 2) == doctest::Approx(1.0 / 23.0));
    CHECK_THROWS_AS(p_th_dl(24, 1), ConfigError);
    CHECK_THROWS_AS(p_th_dl(4, 5), ConfigError);
    CHECK_THROWS_AS(p_th_ul(4, 5), ConfigError);
  }

  TEST_CASE("thresholds increase with K and bottom out at the cross power") {
    for (std::uint32_t m : {8u, 24u, 100u}) {
      for (std::uint32_t k = 2; k < m; ++k) {
        CHECK(p_th_dl(m, k + 1) > p_th_dl(m, k));
        CHECK(p_th_ul(m, k + 1) > p_th_ul(m, k));
      }
      CHECK(p_cross(LinkDirection::Downlink, m) == doctest::Approx(p_th_dl(m, 2)));
      CHECK(p_cross(LinkDirection::Uplink, m) == doctest::Approx(p_th_ul(m, 2)));
    }
    CHECK(10 * std::log10(p_cross(LinkDirection::Downlink, 24)) == doctest::Approx(-7.597).epsilon(1e-3));
    CHECK(10 * std::log10(p_cross(LinkDirection::Uplink, 24)) == doctest::Approx(-13.617).epsilon(1e-3));
    CHECK_THROWS_AS(p_cross(LinkDirection::Uplink, 1), ConfigError);
  }

  TEST_CASE("user cross points") {
    CHECK(k_cross_dl(1.0, 24) == 12.5);
    CHECK(k_cross_dl(1e12, 24) == doctest::Approx(25.0));
    CHECK(k_cross_ul(1.0 / 23, 24) == doctest::Approx(2.0));
    CHECK(k_cross_ul(1.0, 24) == 24.0);
    CHECK(k_cross_ul(1e12, 24) == doctest::Approx(25.0));
    CHECK_THROWS_AS(k_cross_dl(0.0, 24), ConfigError);
    CHECK_THROWS_AS(k_cross_ul(-1.0, 24), ConfigError);
  }

  TEST_CASE("downlink user cross point against the closed forms") {
    // At pt = 1, M = 24 the closed forms actually cross where
    // 2K^2 - 26K + 25 = 0, i.e. K = 11.954; the large-M cross point is 12.5.
    // MRT already leads at K = 12 and keeps leading above.
    using analytic::mrt_dl_mat;
    using analytic::zf_dl_vec;
    CHECK(zf_dl_vec(1.0, 24, 11) > mrt_dl_mat(1.0, 24, 11));
    CHECK(mrt_dl_mat(1.0, 24, 12) > zf_dl_vec(1.0, 24, 12));
    CHECK(mrt_dl_mat(1.0, 24, 13) > zf_dl_vec(1.0, 24, 13));
    const double exact = (26.0 + std::sqrt(26.0 * 26.0 - 8.0 * 25.0)) / 4.0;
    CHECK(exact == doctest::Approx(11.9544).epsilon(1e-4));
    CHECK(std::abs(k_cross_dl(1.0, 24) - exact) < 1.0);
  }

  TEST_CASE("select_mode") {
    const ModeDecision zf = select_mode(LinkDirection::Downlink, std::pow(10.0, 0.63), 24, 20);
    CHECK(zf.chosen == Scheme::ZF);
    CHECK(zf.threshold_kind == ThresholdKind::PowerThreshold);
    CHECK(zf.threshold_value == doctest::Approx(400.0 / 95.0));
    CHECK(zf.m == 24);
    CHECK(zf.k == 20);

    CHECK(select_mode(LinkDirection::Uplink, 0.1, 24, 20).chosen == Scheme::MRC);
    CHECK(select_mode(LinkDirection::Uplink, 0.3, 24, 20).chosen == Scheme::ZF);

    // A tie selects ZF.
    CHECK(select_mode(LinkDirection::Downlink, p_th_dl(24, 20), 24, 20).chosen == Scheme::ZF);
    CHECK(select_mode(LinkDirection::Uplink, p_th_ul(24, 20), 24, 20).chosen == Scheme::ZF);

    const double below = 0.99 * p_cross(LinkDirection::Downlink, 24);
    for (std::uint32_t k = 2; k <= 24; ++k)
      CHECK(select_mode(LinkDirection::Downlink, below, 24, k).chosen == Scheme::MRT);

    CHECK_THROWS_AS(select_mode(LinkDirection::Downlink, 1.0, 24, 1), ConfigError);
    CHECK_THROWS_AS(select_mode(LinkDirection::Uplink, 0.0, 24, 2), ConfigError);
  }

  TEST_CASE("decisions agree with the sign of the closed-form rate difference") {
    for (std::uint32_t m : {8u, 24u, 64u})
      for (std::uint32_t k = 2; k <= m; ++k)
        for (double db = -25.0; db <= 15.0; db += 0.5) {
          const double p = std::pow(10.0, db / 10);
          const double dl = analytic::zf_dl_vec(p, m, k) - analytic::mrt_dl_mat(p, m, k);
          const double ul = analytic::zf_ul_low(p, m, k) - analytic::mrc_ul_low(p, m, k);
          if (std::abs(dl) > 1e-9)
            CHECK((select_mode(LinkDirection::Downlink, p, m, k).chosen == Scheme::ZF) == (dl > 0));
          if (std::abs(ul) > 1e-9)
            CHECK((select_mode(LinkDirection::Uplink, p, m, k).chosen == Scheme::ZF) == (ul > 0));
        }
  }
}
