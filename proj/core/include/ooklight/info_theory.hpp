#pragma once

namespace ooklight {

/// Binary modulation formats covered by the rate calculations.
enum class Scheme { OOK, PPM };

/// A modulation operating point: the probability that a time bin carries a
/// pulse. PPM spends one pulse per frame of 1/pulse_prob bins, so it needs
/// pulse_prob <= 1/2.
struct ModulationPoint {
  ModulationPoint(Scheme scheme, double pulse_prob);

  Scheme scheme;
  double pulse_prob;
};

/// Outcome of a rate optimization; everything is per time bin.
struct RateResult {
  double mi_per_bin;  ///< Shannon mutual information [bits/bin]
  double pie;         ///< photon information efficiency mi/(eta nbar) [bits/photon]
  double opt_mu;      ///< maximizing pulse mean photon number
  double opt_inv_p;   ///< maximizing 1/pulse_prob = opt_mu/nbar [bins]
};

/// Binary entropy H2(q) in bits, with the 0 log 0 = 0 convention.
/// Throws std::domain_error outside [0, 1].
[[nodiscard]] double binary_entropy(double q);

/// Mutual information in bits of the binary asymmetric channel induced by
/// on-off keying: input "pulse" with probability pulse_prob, click
/// probabilities click_given_pulse / click_given_empty. Evaluated as an
/// input-weighted sum of binary KL divergences, which is exact and avoids
/// the catastrophic cancellation of the entropy-difference form at extreme
/// click probabilities.
[[nodiscard]] double ook_mutual_info(double pulse_prob, double click_given_pulse,
                                     double click_given_empty);

/// Pulse-position-modulation information per bin: a frame of 1/pulse_prob
/// bins behaves as an erasure channel on log2(1/pulse_prob) bits, giving
/// pulse_prob (1 - erasure_prob) log2(1/pulse_prob) bits/bin.
[[nodiscard]] double ppm_rate(double pulse_prob, double erasure_prob);

/// Photon information efficiency of the unrestricted single-mode capacity
/// at mean detected photon number x per bin:
/// log2(1/x) + (1 + 1/x) log2(1 + x). Throws std::domain_error for x <= 0.
[[nodiscard]] double capacity_pie(double eta_nbar);

}  // namespace ooklight
