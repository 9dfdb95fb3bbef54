#pragma once

namespace ooklight {

/// Operating point of the small-signal closed forms.
struct AnalyticPoint {
  AnalyticPoint(double nbar, double eta, double g2);

  double nbar;  ///< mean photons per bin at the channel input, > 0
  double eta;   ///< channel transmission, in (0, 1]
  double g2;    ///< source second-order correlation, >= 0
};

/// A closed-form value plus a flag telling whether the expression was
/// evaluated inside its stated validity domain.
struct ApproxValue {
  double value;
  bool in_domain;
};

/// Principal branch W0 of the Lambert W function: the solution w >= -1 of
/// w e^w = x. Region-dependent seed (branch-point series, small-x series,
/// log-based asymptote) polished by Halley iteration; for large x the
/// iteration runs on w + ln w = ln x to stay overflow-free. Residual
/// contract: |w e^w - x| <= 1e-12 max(1, |x|).
/// Throws std::domain_error for x < -1/e or NaN.
[[nodiscard]] double lambert_w0(double x);

/// Second-order pulse-position-modulation rate in bits/bin,
/// eta nbar (1 - g2 eta mu / 2) log2(mu / nbar), for pulse mean mu.
/// Requires mu > nbar. Flagged out of domain when the expansion variable
/// eta mu reaches 0.5, where the quadratic truncation of the no-count
/// probability stops being trustworthy.
[[nodiscard]] ApproxValue ppm_rate_approx(const AnalyticPoint& pt, double mu);

/// Stationary pulse mean of the second-order rate:
/// mu* = (2 / (eta g2)) / W(2e / (g2 eta nbar)). Requires g2 > 0.
/// Flagged out of domain when mu* exceeds the physical mean bound
/// 1/(1-g2) that applies to sub-Poissonian sources (g2 < 1).
[[nodiscard]] ApproxValue mu_opt_classical(const AnalyticPoint& pt);

/// Photon information efficiency of the optimized second-order rate as a
/// function of the mean detected photon number x = g2 eta nbar:
/// Pi(x) = (1/W(2e/x) - 1) log2((x/2) W(2e/x)), bits/photon.
/// Flagged out of domain once W(2e/x) <= 1 (x >= 2), where the optimized
/// pulse mean would not exceed nbar and the premise of the optimization
/// fails. Throws std::domain_error for x <= 0.
[[nodiscard]] ApproxValue pie_ppm_approx(double mean_output_photons);

/// Optimized second-order rate for classical-or-noisier light
/// (g2 >= 1, enforced): eta nbar Pi(g2 eta nbar) bits/bin. The flag is
/// inherited from pie_ppm_approx.
[[nodiscard]] ApproxValue ppm_rate_classical_opt(const AnalyticPoint& pt);

/// Which expression realizes the optimized rate over minimum-variance
/// photon statistics.
enum class NonclassicalBranch {
  FockOne,  ///< single-photon pulses, mu = 1, exactly eta nbar log2(1/nbar)
  Mixed     ///< adjacent-Fock mixtures with mu > 1
};

struct NonclassicalRate {
  double value;  ///< bits/bin
  NonclassicalBranch branch;
};

/// Closed-form optimized rate over minimum-variance (adjacent-Fock mixture)
/// sources: eta nbar log2(1/nbar) when eta >= 2/ln(1/nbar), otherwise
/// eta nbar (1 + eta/2) Pi(eta nbar / (1 + eta/2)). The two branches agree
/// at the threshold. Requires 0 < nbar < 1 and 0 < eta <= 1.
[[nodiscard]] NonclassicalRate ppm_rate_nonclassical_opt(double nbar, double eta);

}  // namespace ooklight
