#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ooklight/info_theory.hpp"

using namespace ooklight;

namespace {

/// Entropy-difference form of the on-off-keying mutual information,
/// H2(qbar) - p H2(q1) - (1-p) H2(q0): the textbook route, used to
/// cross-check the cancellation-safe KL form implemented by the library.
double mi_entropy_form(double p, double q1, double q0) {
  const double qbar = p * q1 + (1.0 - p) * q0;
  return binary_entropy(qbar) - p * binary_entropy(q1) -
         (1.0 - p) * binary_entropy(q0);
}

}  // namespace

TEST_CASE("binary entropy basics") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.25) ==
        doctest::Approx(0.81127812445913286391).epsilon(1e-15));
  for (double q = 0.05; q < 0.5; q += 0.07) {
    CAPTURE(q);
    CHECK(binary_entropy(q) == doctest::Approx(binary_entropy(1.0 - q)).epsilon(1e-15));
    CHECK(binary_entropy(q) > 0.0);
    CHECK(binary_entropy(q) < 1.0);
  }
  CHECK_THROWS_AS((void)binary_entropy(-0.01), std::domain_error);
  CHECK_THROWS_AS((void)binary_entropy(1.01), std::domain_error);
}

TEST_CASE("OOK mutual information spot values") {
  CHECK(ook_mutual_info(0.5, 0.5, 0.0) ==
        doctest::Approx(0.31127812445913286).epsilon(1e-14));
  CHECK(ook_mutual_info(0.5, 1.0, 0.0) == 1.0);
  CHECK(ook_mutual_info(0.3, 0.7, 0.7) == 0.0);
  // Perfect detection reduces OOK to a noiseless binary source.
  for (double p = 0.1; p < 0.95; p += 0.2) {
    CAPTURE(p);
    CHECK(ook_mutual_info(p, 1.0, 0.0) ==
          doctest::Approx(binary_entropy(p)).epsilon(1e-14));
  }
}

TEST_CASE("KL form agrees with the entropy-difference form") {
  for (double p = 0.05; p < 1.0; p += 0.18) {
    for (double q1 = 0.1; q1 <= 0.95; q1 += 0.17) {
      for (double q0 = 0.02; q0 < q1; q0 += 0.13) {
        CAPTURE(p);
        CAPTURE(q1);
        CAPTURE(q0);
        const double kl = ook_mutual_info(p, q1, q0);
        const double entropy = mi_entropy_form(p, q1, q0);
        CHECK(std::abs(kl - entropy) <= 1e-12);
      }
    }
  }
}

TEST_CASE("OOK mutual information is bounded and non-negative") {
  for (double p = 0.05; p < 1.0; p += 0.13) {
    for (double q1 = 0.0; q1 <= 1.0; q1 += 0.21) {
      for (double q0 = 0.0; q0 <= 1.0; q0 += 0.26) {
        CAPTURE(p);
        CAPTURE(q1);
        CAPTURE(q0);
        const double mi = ook_mutual_info(p, q1, q0);
        CHECK(mi >= 0.0);
        CHECK(mi <= binary_entropy(p) + 1e-12);
      }
    }
  }
}

TEST_CASE("PPM per-bin rate") {
  CHECK(ppm_rate(0.5, 0.0) == 0.5);
  CHECK(ppm_rate(0.25, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ppm_rate(0.1, 1.0) == 0.0);
  CHECK_THROWS_AS((void)ppm_rate(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS((void)ppm_rate(1.0, 0.1), std::domain_error);
  CHECK_THROWS_AS((void)ppm_rate(0.5, 1.5), std::domain_error);
}

TEST_CASE("soft-decision OOK never loses to hard-erasure PPM per bin") {
  // Same pulse probability and no-click probability: the OOK channel output
  // is a strictly finer observation than a frame-erasure flag.
  for (double p = 0.02; p <= 0.5; p += 0.06) {
    for (double eps = 0.0; eps <= 0.95; eps += 0.19) {
      CAPTURE(p);
      CAPTURE(eps);
      const double ook = ook_mutual_info(p, 1.0 - eps, 0.0);
      const double ppm = ppm_rate(p, eps);
      CHECK(ook >= ppm - 1e-12);
    }
  }
}

TEST_CASE("capacity PIE closed form") {
  CHECK(capacity_pie(1.0) == 2.0);  // bit-exact via log1p
  CHECK(capacity_pie(0.01) == doctest::Approx(8.0937407804587989).epsilon(1e-15));
  CHECK(capacity_pie(0.1) == doctest::Approx(4.8344668561366463395).epsilon(1e-15));
  CHECK(capacity_pie(1e-4) == doctest::Approx(14.73047955278608573).epsilon(1e-15));
  // Strictly decreasing in the detected flux.
  double previous = capacity_pie(1e-6);
  for (double x = 1e-5; x <= 10.0; x *= 2.7) {
    CAPTURE(x);
    const double value = capacity_pie(x);
    CHECK(value < previous);
    previous = value;
  }
  CHECK_THROWS_AS((void)capacity_pie(0.0), std::domain_error);
  CHECK_THROWS_AS((void)capacity_pie(-1.0), std::domain_error);
}

TEST_CASE("modulation point validation") {
  CHECK_NOTHROW(ModulationPoint(Scheme::PPM, 0.5));
  CHECK_NOTHROW(ModulationPoint(Scheme::OOK, 0.9));
  CHECK_THROWS_AS(ModulationPoint(Scheme::PPM, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(ModulationPoint(Scheme::OOK, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModulationPoint(Scheme::OOK, 1.0), std::invalid_argument);
}
