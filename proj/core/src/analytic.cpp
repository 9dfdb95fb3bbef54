#include "ooklight/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ooklight/photon_stats.hpp"

namespace ooklight {
namespace {

constexpr double kE = std::numbers::e;

void check_positive_flux(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("mean detected photon number must be positive and finite, got " +
                            std::to_string(x));
  }
}

}  // namespace

AnalyticPoint::AnalyticPoint(double nbar_, double eta_, double g2_)
    : nbar(nbar_), eta(eta_), g2(g2_) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("nbar must be positive and finite, got " +
                                std::to_string(nbar));
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("closed forms need 0 < eta <= 1, got " +
                                std::to_string(eta));
  }
  if (!(g2 >= 0.0) || !std::isfinite(g2)) {
    throw std::invalid_argument("g2 must be finite and >= 0, got " + std::to_string(g2));
  }
}

double lambert_w0(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("lambert_w0: argument is NaN");
  }
  constexpr double kInvE = 1.0 / kE;
  if (x < -kInvE) {
    throw std::domain_error("lambert_w0 is real only for x >= -1/e, got " +
                            std::to_string(x));
  }
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.25) {
    // Branch-point series in p = sqrt(2 (e x + 1)); the argument is clamped
    // because x >= -1/e only up to rounding.
    const double p = std::sqrt(std::max(0.0, 2.0 * (kE * x + 1.0)));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    if (p < 1e-4) return w;  // series is at machine precision; Halley would divide by ~0
  } else if (x < 0.0) {
    w = x * (1.0 - x + 1.5 * x * x);  // truncated Taylor series of W at 0
  } else if (x < 3.0) {
    w = std::log1p(x);  // crude seed inside the Halley basin
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;  // asymptotic expansion
  }

  if (x >= 3.0) {
    // Iterate on g(w) = w + ln w - ln x, which never overflows: Halley step
    // with g' = 1 + 1/w, g'' = -1/w^2.
    const double lx = std::log(x);
    for (int i = 0; i < 64; ++i) {
      const double g = w + std::log(w) - lx;
      if (g == 0.0) break;
      const double gp = 1.0 + 1.0 / w;
      const double dw = g / (gp + g / (2.0 * w * w * gp));
      w -= dw;
      if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
    }
  } else {
    // Halley step on f(w) = w e^w - x with f' = e^w (w+1), f'' = e^w (w+2).
    for (int i = 0; i < 64; ++i) {
      const double ew = std::exp(w);
      const double f = w * ew - x;
      if (f == 0.0) break;
      const double denom = ew * (w + 1.0) - f * (w + 2.0) / (2.0 * (w + 1.0));
      const double dw = f / denom;
      w -= dw;
      if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
    }
  }
  return w;
}

ApproxValue ppm_rate_approx(const AnalyticPoint& pt, double mu) {
  if (!(mu > pt.nbar)) {
    throw std::domain_error("second-order rate needs pulse mean mu > nbar, got mu = " +
                            std::to_string(mu) + " at nbar = " + std::to_string(pt.nbar));
  }
  const double value =
      pt.eta * pt.nbar * (1.0 - 0.5 * pt.g2 * pt.eta * mu) * std::log2(mu / pt.nbar);
  const bool in_domain = pt.eta * mu < 0.5;
  return {value, in_domain};
}

ApproxValue mu_opt_classical(const AnalyticPoint& pt) {
  if (!(pt.g2 > 0.0)) {
    throw std::domain_error(
        "the stationary pulse mean is defined for g2 > 0; the second-order rate "
        "has no interior maximum at g2 = 0");
  }
  const double w = lambert_w0(2.0 * kE / (pt.g2 * pt.eta * pt.nbar));
  const double mu = 2.0 / (pt.eta * pt.g2 * w);
  const bool in_domain = !(mu > max_mean_for_g2(pt.g2));
  return {mu, in_domain};
}

ApproxValue pie_ppm_approx(double mean_output_photons) {
  check_positive_flux(mean_output_photons);
  const double x = mean_output_photons;
  const double w = lambert_w0(2.0 * kE / x);
  const double value = (1.0 / w - 1.0) * std::log2(0.5 * x * w);
  return {value, w > 1.0};
}

ApproxValue ppm_rate_classical_opt(const AnalyticPoint& pt) {
  if (!(pt.g2 >= 1.0)) {
    throw std::domain_error(
        "the classical optimized rate applies to g2 >= 1; sub-Poissonian light "
        "is handled by ppm_rate_nonclassical_opt");
  }
  const ApproxValue pie = pie_ppm_approx(pt.g2 * pt.eta * pt.nbar);
  return {pt.eta * pt.nbar * pie.value, pie.in_domain};
}

NonclassicalRate ppm_rate_nonclassical_opt(double nbar, double eta) {
  if (!(nbar > 0.0 && nbar < 1.0)) {
    throw std::domain_error(
        "the nonclassical optimized rate needs 0 < nbar < 1, got " + std::to_string(nbar));
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("the nonclassical optimized rate needs 0 < eta <= 1, got " +
                            std::to_string(eta));
  }
  const double log2_inv_nbar = std::log2(1.0 / nbar);
  const double threshold = 2.0 / (log2_inv_nbar * std::numbers::ln2);  // 2 / ln(1/nbar)
  if (eta >= threshold) {
    return {eta * nbar * log2_inv_nbar, NonclassicalBranch::FockOne};
  }
  const double scale = 1.0 + 0.5 * eta;
  const double pie = pie_ppm_approx(eta * nbar / scale).value;
  return {eta * nbar * scale * pie, NonclassicalBranch::Mixed};
}

}  // namespace ooklight
