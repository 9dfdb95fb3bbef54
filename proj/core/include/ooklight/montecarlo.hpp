#pragma once

#include <cstdint>

#include "ooklight/photon_stats.hpp"

namespace ooklight {

/// SplitMix64 generator (Steele, Lea & Vigna): 64-bit state, one
/// multiply-xorshift pipeline per output. Small, fast, and reproducible
/// across platforms, which is all the Monte-Carlo oracle needs.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  /// Next 64 pseudo-random bits.
  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Default seed of the validation suite; fixed so reports are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// One Monte-Carlo experiment: estimate the no-click probability of a
/// source behind a lossy channel with dark counts.
struct McConfig {
  McConfig(PhotonSource source, ChannelParams channel, long long trials,
           std::uint64_t seed = kDefaultSeed);

  PhotonSource source;
  ChannelParams channel;
  long long trials;
  std::uint64_t seed;
};

/// Draw a photon number from the source: Poisson by sequential CDF
/// inversion (one uniform; fine for the small means validated here),
/// Fock mixtures by a single Bernoulli split, explicit pmfs by lookup.
[[nodiscard]] int sample_photon_number(const PhotonSource& source, SplitMix64& rng);

/// Simulate one bin: every photon survives independently with probability
/// eta, an independent dark event fires with probability dark_prob, and the
/// detector clicks iff at least one survivor or dark event occurred.
[[nodiscard]] bool sample_click(const PhotonSource& source, const ChannelParams& channel,
                                SplitMix64& rng);

/// Empirical no-click probability with its binomial standard error.
struct NoCountEstimate {
  double eps_hat;  ///< fraction of trials without a click
  double std_err;  ///< sqrt(eps_hat (1 - eps_hat) / trials)
};

/// Run config.trials independent bins.
[[nodiscard]] NoCountEstimate estimate_no_count(const McConfig& config);

}  // namespace ooklight
