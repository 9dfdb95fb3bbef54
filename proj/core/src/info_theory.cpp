#include "ooklight/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ooklight {
namespace {

void check_prob(const char* what, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " +
                            std::to_string(p));
  }
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// KL divergence in bits between Bernoulli(a) and Bernoulli(b).
/// comp_b is 1-b supplied by the caller in a cancellation-free form.
double bernoulli_kl(double a, double b, double comp_b) {
  double kl = 0.0;
  if (a > 0.0) kl += a * std::log2(a / b);
  if (a < 1.0) kl += (1.0 - a) * std::log2((1.0 - a) / comp_b);
  return std::max(0.0, kl);  // clip tiny negative fp noise
}

}  // namespace

ModulationPoint::ModulationPoint(Scheme scheme_, double pulse_prob_)
    : scheme(scheme_), pulse_prob(pulse_prob_) {
  if (!(pulse_prob > 0.0 && pulse_prob < 1.0)) {
    throw std::invalid_argument("pulse_prob must lie in (0, 1), got " +
                                std::to_string(pulse_prob));
  }
  if (scheme == Scheme::PPM && pulse_prob > 0.5) {
    throw std::invalid_argument(
        "PPM frames need at least two bins, so pulse_prob <= 1/2; got " +
        std::to_string(pulse_prob));
  }
}

double binary_entropy(double q) {
  check_prob("entropy argument", q);
  return -xlog2x(q) - xlog2x(1.0 - q);
}

double ook_mutual_info(double pulse_prob, double click_given_pulse,
                       double click_given_empty) {
  if (!(pulse_prob > 0.0 && pulse_prob < 1.0)) {
    throw std::domain_error("pulse_prob must lie in (0, 1), got " +
                            std::to_string(pulse_prob));
  }
  check_prob("click_given_pulse", click_given_pulse);
  check_prob("click_given_empty", click_given_empty);

  const double q1 = click_given_pulse;
  const double q0 = click_given_empty;
  if (q1 == q0) return 0.0;  // output independent of input

  const double p = pulse_prob;
  const double qbar = p * q1 + (1.0 - p) * q0;
  const double comp_qbar = p * (1.0 - q1) + (1.0 - p) * (1.0 - q0);
  return p * bernoulli_kl(q1, qbar, comp_qbar) +
         (1.0 - p) * bernoulli_kl(q0, qbar, comp_qbar);
}

double ppm_rate(double pulse_prob, double erasure_prob) {
  if (!(pulse_prob > 0.0 && pulse_prob < 1.0)) {
    throw std::domain_error("pulse_prob must lie in (0, 1), got " +
                            std::to_string(pulse_prob));
  }
  check_prob("erasure_prob", erasure_prob);
  return pulse_prob * (1.0 - erasure_prob) * std::log2(1.0 / pulse_prob);
}

double capacity_pie(double eta_nbar) {
  if (!(eta_nbar > 0.0) || !std::isfinite(eta_nbar)) {
    throw std::domain_error("capacity PIE needs a positive detected flux, got " +
                            std::to_string(eta_nbar));
  }
  const double x = eta_nbar;
  // log2(1+x) via log1p keeps the x -> 0 limit and makes capacity_pie(1) == 2.
  return -std::log2(x) + (1.0 + 1.0 / x) * std::log1p(x) / std::numbers::ln2;
}

}  // namespace ooklight
