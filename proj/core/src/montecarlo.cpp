#include "ooklight/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ooklight {

McConfig::McConfig(PhotonSource source_, ChannelParams channel_, long long trials_,
                   std::uint64_t seed_)
    : source(std::move(source_)), channel(channel_), trials(trials_), seed(seed_) {
  if (trials < 1) {
    throw std::invalid_argument("Monte-Carlo estimation needs at least one trial, got " +
                                std::to_string(trials));
  }
}

int sample_photon_number(const PhotonSource& source, SplitMix64& rng) {
  switch (source.kind()) {
    case SourceKind::Poisson: {
      const double mu = source.mean_photon();
      if (mu == 0.0) return 0;
      // Sequential CDF inversion: one uniform per draw; O(mu) work, which is
      // fine for the small pulse means this oracle validates. The cap is far
      // beyond any mass representable in double for such means.
      const double u = rng.uniform();
      double term = std::exp(-mu);
      double cdf = term;
      int n = 0;
      while (u >= cdf && n < 4096) {
        ++n;
        term *= mu / n;
        cdf += term;
      }
      return n;
    }
    case SourceKind::FockMixture: {
      const double mu = source.mean_photon();
      const double floor_mu = std::floor(mu);
      const double f = mu - floor_mu;
      return static_cast<int>(floor_mu) + (rng.uniform() < f ? 1 : 0);
    }
    case SourceKind::Explicit: {
      const double u = rng.uniform();
      const auto& probs = source.probabilities();
      double cdf = 0.0;
      for (std::size_t n = 0; n < probs.size(); ++n) {
        cdf += probs[n];
        if (u < cdf) return static_cast<int>(n);
      }
      return static_cast<int>(probs.size()) - 1;
    }
  }
  throw std::logic_error("unreachable source kind");
}

bool sample_click(const PhotonSource& source, const ChannelParams& channel,
                  SplitMix64& rng) {
  const int n = sample_photon_number(source, rng);
  bool click = false;
  // Every photon gets its own survival draw; no short-circuit, so the random
  // stream consumed by a trial depends only on the sampled photon number.
  for (int i = 0; i < n; ++i) {
    if (rng.uniform() < channel.eta) click = true;
  }
  if (rng.uniform() < channel.dark_prob) click = true;
  return click;
}

NoCountEstimate estimate_no_count(const McConfig& config) {
  SplitMix64 rng(config.seed);
  long long no_click = 0;
  for (long long t = 0; t < config.trials; ++t) {
    if (!sample_click(config.source, config.channel, rng)) ++no_click;
  }
  const double eps_hat =
      static_cast<double>(no_click) / static_cast<double>(config.trials);
  const double std_err =
      std::sqrt(eps_hat * (1.0 - eps_hat) / static_cast<double>(config.trials));
  return {eps_hat, std_err};
}

}  // namespace ooklight
