#pragma once

#include <vector>

namespace ooklight {

/// Photon-number statistics of the light occupying a pulsed time bin.
enum class SourceKind { Poisson, FockMixture, Explicit };

/// Immutable photon-number distribution carrying the moments needed for
/// direct-detection rate calculations.
///
/// `fock_mixture(mu)` is the minimum-variance distribution at fixed mean: a
/// two-component mixture of the adjacent Fock states floor(mu) and
/// floor(mu)+1 with weights 1-mu+floor(mu) and mu-floor(mu).
class PhotonSource {
 public:
  /// Coherent/classical pulse: P(n) = e^-mu mu^n / n!.
  static PhotonSource poisson(double mean_photons);

  /// Minimum-variance mixture of the two Fock states adjacent to the mean.
  static PhotonSource fock_mixture(double mean_photons);

  /// Arbitrary finite distribution; probs[n] = P(n photons).
  /// Entries must be >= 0 and sum to 1 within 1e-12.
  static PhotonSource explicit_dist(std::vector<double> probs);

  [[nodiscard]] SourceKind kind() const noexcept { return kind_; }

  /// Mean photon number mu of the pulse.
  [[nodiscard]] double mean_photon() const noexcept { return mean_; }

  /// Normalized second-order correlation g2 = <n(n-1)> / mu^2.
  /// Throws std::domain_error for a zero-mean source.
  [[nodiscard]] double g2() const;

  /// Probability that a detector behind transmission eta registers no
  /// photon: sum_n P(n) (1-eta)^n, evaluated in closed form for Poisson
  /// (e^{-eta mu}) and Fock mixtures ((1 - eta f)(1-eta)^floor(mu)).
  /// Throws std::domain_error unless 0 <= eta <= 1.
  [[nodiscard]] double no_count_exact(double eta) const;

  /// Explicit distributions only: the stored pmf.
  /// Throws std::logic_error for parametric sources.
  [[nodiscard]] const std::vector<double>& probabilities() const;

 private:
  PhotonSource(SourceKind kind, double mean, std::vector<double> probs);

  SourceKind kind_;
  double mean_;
  std::vector<double> probs_;  // empty unless kind_ == Explicit
};

/// Detection channel: power transmission plus an independent per-bin
/// dark-count click probability.
struct ChannelParams {
  explicit ChannelParams(double eta, double dark_prob = 0.0);

  double eta;        ///< transmission in [0, 1]
  double dark_prob;  ///< per-bin dark click probability in [0, 1)
};

/// Result of the second-order no-count expansion; `clamped` reports that the
/// raw polynomial left [0, 1] and was clipped back to the boundary.
struct ClampedProb {
  double value;
  bool clamped;
};

/// Second-order expansion of the no-count probability in the detected flux:
/// 1 - eta mu + g2 (eta mu)^2 / 2, clamped to [0, 1].
[[nodiscard]] ClampedProb no_count_approx(double mu, double g2, double eta);

/// Largest mean photon number a physical distribution can have at a given
/// g2: 1/(1-g2) for g2 < 1 (variance non-negativity), +infinity otherwise.
[[nodiscard]] double max_mean_for_g2(double g2);

/// Smallest photon-number variance achievable at fixed mean mu:
/// (mu - floor(mu)) (1 - mu + floor(mu)), attained by the adjacent-Fock
/// two-component mixture.
[[nodiscard]] double min_variance(double mu);

}  // namespace ooklight
