#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ooklight/analytic.hpp"
#include "ooklight/photon_stats.hpp"

using namespace ooklight;

namespace {

/// Independent Lambert-W oracle: plain bisection of w e^w - x on [-1, 50],
/// valid for every test argument below e^50. Slow and simple on purpose.
double lambert_bisect(double x) {
  double lo = -1.0;
  double hi = 50.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mid * std::exp(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("Lambert W spot values") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(std::abs(lambert_w0(std::numbers::e) - 1.0) <= 1e-15);
  CHECK(lambert_w0(1.0) == doctest::Approx(0.56714329040978387).epsilon(1e-15));
  CHECK(lambert_w0(0.1) == doctest::Approx(0.091276527160862264).epsilon(1e-15));
  CHECK(lambert_w0(-0.25) == doctest::Approx(-0.3574029561813889).epsilon(1e-14));
  CHECK(lambert_w0(543.6563656918091) ==
        doctest::Approx(4.741883043226925474).epsilon(1e-15));
  CHECK(lambert_w0(54365.636569180905) ==
        doctest::Approx(8.7360315249184701281).epsilon(1e-15));
  CHECK(lambert_w0(1e12) == doctest::Approx(24.435004404934913).epsilon(1e-15));
  // Near the branch point the series takes over.
  CHECK(lambert_w0(-1.0 / std::numbers::e + 1e-9) ==
        doctest::Approx(-0.99992626875538194).epsilon(1e-12));
  CHECK(lambert_w0(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("Lambert W agrees with a bisection oracle") {
  for (double x = -0.25; x < 0.0; x += 0.027) {
    CAPTURE(x);
    CHECK(std::abs(lambert_w0(x) - lambert_bisect(x)) <= 5e-13);
  }
  for (double x = 1e-6; x < 1e8; x *= 3.7) {
    CAPTURE(x);
    const double w = lambert_w0(x);
    CHECK(std::abs(w - lambert_bisect(x)) <= 5e-13 * (1.0 + std::abs(w)));
  }
}

TEST_CASE("Lambert W residual and inverse identities") {
  SUBCASE("residual contract on a log grid") {
    for (double x = 1e-8; x <= 1e8; x *= 1.9) {
      CAPTURE(x);
      const double w = lambert_w0(x);
      CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
    }
  }
  SUBCASE("residual contract on the negative branch segment") {
    for (double x = -0.3678; x < -1e-6; x += 0.0061) {
      CAPTURE(x);
      const double w = lambert_w0(x);
      CHECK(std::abs(w * std::exp(w) - x) <= 1e-12);
    }
  }
  SUBCASE("round trip w -> w e^w -> W") {
    for (double w = -0.99; w <= 300.0; w += 2.3) {
      CAPTURE(w);
      const double x = w * std::exp(w);
      CHECK(std::abs(lambert_w0(x) - w) <= 1e-12 * (1.0 + std::abs(w)));
    }
  }
}

TEST_CASE("Lambert W domain errors") {
  CHECK_THROWS_AS((void)lambert_w0(-1.0), std::domain_error);
  CHECK_THROWS_AS((void)lambert_w0(std::nan("")), std::domain_error);
}

TEST_CASE("second-order rate and its stationary pulse mean") {
  const AnalyticPoint pt(0.01, 1.0, 1.0);
  const ApproxValue mu = mu_opt_classical(pt);
  CHECK(mu.value == doctest::Approx(0.42177337183731312828).epsilon(1e-14));
  CHECK(mu.in_domain);

  const ApproxValue rate = ppm_rate_approx(pt, mu.value);
  CHECK(rate.value == doctest::Approx(0.04259946245125378884).epsilon(1e-13));
  CHECK(rate.in_domain);  // eta mu ~ 0.42 < 0.5

  // Out-of-domain flag once the expansion variable reaches 1/2.
  CHECK_FALSE(ppm_rate_approx(pt, 0.6).in_domain);
  CHECK_THROWS_AS((void)ppm_rate_approx(pt, 0.005), std::domain_error);

  // Noisier light pushes the optimum down.
  const AnalyticPoint noisy(0.01, 1.0, 2.0);
  CHECK(mu_opt_classical(noisy).value ==
        doctest::Approx(0.23947209890401925745).epsilon(1e-14));

  // The stationary mean of a strongly sub-Poissonian source can exceed the
  // physical bound 1/(1-g2); the flag reports it.
  const AnalyticPoint subpoisson(1e-8, 1e-4, 0.99);
  const ApproxValue unphysical = mu_opt_classical(subpoisson);
  CHECK(unphysical.value > max_mean_for_g2(0.99));
  CHECK_FALSE(unphysical.in_domain);

  CHECK_THROWS_AS((void)mu_opt_classical(AnalyticPoint(0.01, 1.0, 0.0)),
                  std::domain_error);
}

TEST_CASE("second-order rate is stationary at the closed-form optimum") {
  const AnalyticPoint pt(0.05, 0.8, 1.3);
  const double mu = mu_opt_classical(pt).value;
  const double h = 3e-6 * mu;
  const double up = ppm_rate_approx(pt, mu + h).value;
  const double down = ppm_rate_approx(pt, mu - h).value;
  const double at = ppm_rate_approx(pt, mu).value;
  CHECK(std::abs((up - down) / (2.0 * h) * mu / at) <= 1e-8);
}

TEST_CASE("optimized-PIE closed form") {
  CHECK(pie_ppm_approx(0.1).value ==
        doctest::Approx(1.8252896708011602414).epsilon(1e-14));
  CHECK(pie_ppm_approx(0.01).value ==
        doctest::Approx(4.259946245125378884).epsilon(1e-14));
  CHECK(pie_ppm_approx(0.001).value ==
        doctest::Approx(6.9945152707281793).epsilon(1e-14));
  CHECK(pie_ppm_approx(1e-4).value ==
        doctest::Approx(9.8831823434381779012).epsilon(1e-14));
  CHECK(pie_ppm_approx(0.1).in_domain);

  // At x = 2 the inner W hits 1 and the optimized PIE vanishes.
  const ApproxValue edge = pie_ppm_approx(2.0);
  CHECK(edge.value == 0.0);
  CHECK_FALSE(edge.in_domain);
  CHECK_FALSE(pie_ppm_approx(3.0).in_domain);

  // Strictly decreasing over its validity range.
  double previous = pie_ppm_approx(1e-6).value;
  for (double x = 2e-6; x < 1.9; x *= 1.7) {
    CAPTURE(x);
    const double value = pie_ppm_approx(x).value;
    CHECK(value < previous);
    previous = value;
  }
  CHECK_THROWS_AS((void)pie_ppm_approx(0.0), std::domain_error);
}

TEST_CASE("optimized classical rate ties the two closed-form routes together") {
  // Substituting the stationary mean into the second-order rate must equal
  // the PIE-function form of the same maximum.
  for (double nbar = 0.002; nbar <= 0.1; nbar *= 2.9) {
    for (double eta = 0.2; eta <= 1.0; eta += 0.27) {
      for (double g2 = 1.0; g2 <= 3.0; g2 += 0.8) {
        CAPTURE(nbar);
        CAPTURE(eta);
        CAPTURE(g2);
        const AnalyticPoint pt(nbar, eta, g2);
        const double direct = ppm_rate_approx(pt, mu_opt_classical(pt).value).value;
        const double via_pie = ppm_rate_classical_opt(pt).value;
        CHECK(direct == doctest::Approx(via_pie).epsilon(1e-12));
      }
    }
  }
  CHECK(ppm_rate_classical_opt(AnalyticPoint(0.01, 1.0, 1.0)).value ==
        doctest::Approx(0.04259946245125379).epsilon(1e-13));
  CHECK_THROWS_AS((void)ppm_rate_classical_opt(AnalyticPoint(0.01, 1.0, 0.5)),
                  std::domain_error);
}

TEST_CASE("optimized nonclassical rate") {
  SUBCASE("single-photon branch holds above the threshold transmission") {
    const NonclassicalRate rate = ppm_rate_nonclassical_opt(0.01, 0.5);
    CHECK(rate.branch == NonclassicalBranch::FockOne);
    CHECK(std::abs(rate.value - 0.005 * std::log2(100.0)) <= 1e-12);
    CHECK(rate.value == doctest::Approx(0.033219280948873623).epsilon(1e-13));
  }
  SUBCASE("mixture branch below the threshold") {
    const NonclassicalRate rate = ppm_rate_nonclassical_opt(0.01, 0.2);
    CHECK(rate.branch == NonclassicalBranch::Mixed);
    CHECK(rate.value == doctest::Approx(0.013785252590930937399).epsilon(1e-13));
  }
  SUBCASE("the two branches meet continuously at the threshold") {
    const double nbar = 0.01;
    const double threshold = 2.0 / std::log(1.0 / nbar);
    const NonclassicalRate below =
        ppm_rate_nonclassical_opt(nbar, threshold * (1.0 - 1e-9));
    const NonclassicalRate above =
        ppm_rate_nonclassical_opt(nbar, threshold * (1.0 + 1e-9));
    CHECK(below.branch == NonclassicalBranch::Mixed);
    CHECK(above.branch == NonclassicalBranch::FockOne);
    CHECK(below.value == doctest::Approx(above.value).epsilon(1e-7));
  }
  SUBCASE("sub-Poissonian statistics never fall below the Poissonian closed form") {
    for (double nbar = 0.001; nbar <= 0.2; nbar *= 3.1) {
      for (double eta = 0.05; eta <= 1.0; eta += 0.19) {
        CAPTURE(nbar);
        CAPTURE(eta);
        const double nonclassical = ppm_rate_nonclassical_opt(nbar, eta).value;
        const double classical =
            ppm_rate_classical_opt(AnalyticPoint(nbar, eta, 1.0)).value;
        CHECK(nonclassical >= classical * (1.0 - 1e-12));
      }
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS((void)ppm_rate_nonclassical_opt(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)ppm_rate_nonclassical_opt(0.01, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)ppm_rate_nonclassical_opt(0.01, 1.5), std::domain_error);
  }
}

TEST_CASE("analytic point validation") {
  CHECK_THROWS_AS(AnalyticPoint(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticPoint(0.01, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticPoint(0.01, 1.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticPoint(0.01, 1.0, -0.2), std::invalid_argument);
}
