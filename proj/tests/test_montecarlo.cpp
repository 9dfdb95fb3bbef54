#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ooklight/montecarlo.hpp"

using namespace ooklight;

TEST_CASE("SplitMix64 matches the published reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);

  SplitMix64 seeded(kDefaultSeed);
  CHECK(seeded.next() == 0xCA8216FA9058D0FAull);
  CHECK(seeded.uniform() == doctest::Approx(0.9253594679308002).epsilon(1e-15));
}

TEST_CASE("uniform draws stay in [0, 1) with the right mean") {
  SplitMix64 rng(12345);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 10000.0 == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("photon-number sampling follows the source distribution") {
  SUBCASE("degenerate sources are deterministic") {
    SplitMix64 rng(7);
    const PhotonSource vacuum = PhotonSource::poisson(0.0);
    const PhotonSource fock2 = PhotonSource::fock_mixture(2.0);
    for (int i = 0; i < 100; ++i) {
      CHECK(sample_photon_number(vacuum, rng) == 0);
      CHECK(sample_photon_number(fock2, rng) == 2);
    }
  }
  SUBCASE("Fock mixture draws only the two adjacent occupations") {
    SplitMix64 rng(11);
    const PhotonSource src = PhotonSource::fock_mixture(1.5);
    long long sum = 0;
    for (int i = 0; i < 100000; ++i) {
      const int n = sample_photon_number(src, rng);
      REQUIRE((n == 1 || n == 2));
      sum += n;
    }
    CHECK(static_cast<double>(sum) / 100000.0 == doctest::Approx(1.5).epsilon(0.01));
  }
  SUBCASE("Poisson empirical moments") {
    SplitMix64 rng(13);
    const PhotonSource src = PhotonSource::poisson(0.7);
    long long sum = 0;
    long long zeros = 0;
    for (int i = 0; i < 100000; ++i) {
      const int n = sample_photon_number(src, rng);
      sum += n;
      zeros += n == 0 ? 1 : 0;
    }
    CHECK(static_cast<double>(sum) / 100000.0 == doctest::Approx(0.7).epsilon(0.02));
    CHECK(static_cast<double>(zeros) / 100000.0 ==
          doctest::Approx(std::exp(-0.7)).epsilon(0.01));
  }
  SUBCASE("explicit distribution") {
    SplitMix64 rng(17);
    const PhotonSource src = PhotonSource::explicit_dist({0.25, 0.0, 0.75});
    long long twos = 0;
    for (int i = 0; i < 100000; ++i) {
      const int n = sample_photon_number(src, rng);
      REQUIRE((n == 0 || n == 2));
      twos += n == 2 ? 1 : 0;
    }
    CHECK(static_cast<double>(twos) / 100000.0 == doctest::Approx(0.75).epsilon(0.01));
  }
}

TEST_CASE("click sampling endpoints") {
  SplitMix64 rng(19);
  const ChannelParams opaque(0.0, 0.0);
  const ChannelParams perfect(1.0, 0.0);
  const PhotonSource one = PhotonSource::fock_mixture(1.0);
  const PhotonSource poisson = PhotonSource::poisson(3.0);
  for (int i = 0; i < 200; ++i) {
    CHECK_FALSE(sample_click(poisson, opaque, rng));
    CHECK(sample_click(one, perfect, rng));
  }
  // Dark counts click even without any light.
  const ChannelParams dark_only(0.0, 0.999);
  const PhotonSource vacuum = PhotonSource::poisson(0.0);
  int clicks = 0;
  for (int i = 0; i < 10000; ++i) {
    clicks += sample_click(vacuum, dark_only, rng) ? 1 : 0;
  }
  CHECK(static_cast<double>(clicks) / 10000.0 == doctest::Approx(0.999).epsilon(0.005));
}

TEST_CASE("no-count estimates agree with the closed forms") {
  SUBCASE("lossy Poisson light") {
    const McConfig config(PhotonSource::poisson(2.0), ChannelParams(0.5, 0.0), 200000);
    const NoCountEstimate estimate = estimate_no_count(config);
    CHECK(std::abs(estimate.eps_hat - std::exp(-1.0)) <= 4.0 * estimate.std_err);
    CHECK(estimate.std_err ==
          doctest::Approx(std::sqrt(estimate.eps_hat * (1 - estimate.eps_hat) / 200000.0))
              .epsilon(1e-12));
  }
  SUBCASE("Fock mixture with dark counts") {
    const PhotonSource src = PhotonSource::fock_mixture(1.5);
    const ChannelParams channel(0.25, 0.05);
    const McConfig config(src, channel, 200000);
    const NoCountEstimate estimate = estimate_no_count(config);
    const double expected = src.no_count_exact(0.25) * (1.0 - 0.05);
    CHECK(std::abs(estimate.eps_hat - expected) <= 4.0 * estimate.std_err);
  }
  SUBCASE("degenerate certainty") {
    const McConfig config(PhotonSource::fock_mixture(1.0), ChannelParams(1.0, 0.0), 1000);
    const NoCountEstimate estimate = estimate_no_count(config);
    CHECK(estimate.eps_hat == 0.0);
    CHECK(estimate.std_err == 0.0);
  }
}

TEST_CASE("estimates are deterministic per seed and vary across seeds") {
  const McConfig a(PhotonSource::poisson(0.7), ChannelParams(0.5, 0.0), 50000, 42);
  const McConfig b(PhotonSource::poisson(0.7), ChannelParams(0.5, 0.0), 50000, 42);
  const McConfig c(PhotonSource::poisson(0.7), ChannelParams(0.5, 0.0), 50000, 43);
  const NoCountEstimate ea = estimate_no_count(a);
  const NoCountEstimate eb = estimate_no_count(b);
  const NoCountEstimate ec = estimate_no_count(c);
  CHECK(ea.eps_hat == eb.eps_hat);
  CHECK(ea.eps_hat != ec.eps_hat);
  const double expected = std::exp(-0.35);
  CHECK(std::abs(ea.eps_hat - expected) <= 5.0 * ea.std_err);
  CHECK(std::abs(ec.eps_hat - expected) <= 5.0 * ec.std_err);
}

TEST_CASE("Monte-Carlo configuration validation") {
  CHECK_THROWS_AS(McConfig(PhotonSource::poisson(0.7), ChannelParams(0.5, 0.0), 0),
                  std::invalid_argument);
}
