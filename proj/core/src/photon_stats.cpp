#include "ooklight/photon_stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace ooklight {
namespace {

constexpr double kPmfSumTol = 1e-12;

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("transmission eta must lie in [0, 1], got " +
                            std::to_string(eta));
  }
}

void check_mean(const char* what, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument(std::string(what) +
                                " mean photon number must be finite and >= 0, got " +
                                std::to_string(mean));
  }
}

}  // namespace

PhotonSource::PhotonSource(SourceKind kind, double mean, std::vector<double> probs)
    : kind_(kind), mean_(mean), probs_(std::move(probs)) {}

PhotonSource PhotonSource::poisson(double mean_photons) {
  check_mean("Poisson", mean_photons);
  return {SourceKind::Poisson, mean_photons, {}};
}

PhotonSource PhotonSource::fock_mixture(double mean_photons) {
  check_mean("Fock-mixture", mean_photons);
  return {SourceKind::FockMixture, mean_photons, {}};
}

PhotonSource PhotonSource::explicit_dist(std::vector<double> probs) {
  if (probs.empty()) {
    throw std::invalid_argument("explicit distribution needs at least one entry");
  }
  double sum = 0.0;
  double mean = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (!(probs[n] >= 0.0) || !std::isfinite(probs[n])) {
      throw std::invalid_argument("explicit distribution has an invalid weight at n=" +
                                  std::to_string(n));
    }
    sum += probs[n];
    mean += static_cast<double>(n) * probs[n];
  }
  if (std::abs(sum - 1.0) > kPmfSumTol) {
    throw std::invalid_argument("explicit distribution sums to " + std::to_string(sum) +
                                "; expected 1 within 1e-12");
  }
  return {SourceKind::Explicit, mean, std::move(probs)};
}

double PhotonSource::g2() const {
  if (mean_ <= 0.0) {
    throw std::domain_error("g2 is undefined for a zero-mean source");
  }
  switch (kind_) {
    case SourceKind::Poisson:
      return 1.0;
    case SourceKind::FockMixture: {
      const double m = std::floor(mean_);
      const double f = mean_ - m;
      const double pair_rate = (1.0 - f) * m * (m - 1.0) + f * (m + 1.0) * m;
      return pair_rate / (mean_ * mean_);
    }
    case SourceKind::Explicit: {
      double pair_rate = 0.0;
      for (std::size_t n = 2; n < probs_.size(); ++n) {
        pair_rate += static_cast<double>(n) * static_cast<double>(n - 1) * probs_[n];
      }
      return pair_rate / (mean_ * mean_);
    }
  }
  throw std::logic_error("unreachable source kind");
}

double PhotonSource::no_count_exact(double eta) const {
  check_eta(eta);
  switch (kind_) {
    case SourceKind::Poisson:
      return std::exp(-eta * mean_);
    case SourceKind::FockMixture: {
      const double m = std::floor(mean_);
      const double f = mean_ - m;
      return (1.0 - eta * f) * std::pow(1.0 - eta, m);
    }
    case SourceKind::Explicit: {
      double sum = 0.0;
      double survive_none = 1.0;  // (1-eta)^n, built incrementally
      for (const double p : probs_) {
        sum += p * survive_none;
        survive_none *= 1.0 - eta;
      }
      return sum;
    }
  }
  throw std::logic_error("unreachable source kind");
}

const std::vector<double>& PhotonSource::probabilities() const {
  if (kind_ != SourceKind::Explicit) {
    throw std::logic_error("probabilities() requires an explicit distribution");
  }
  return probs_;
}

ChannelParams::ChannelParams(double eta_, double dark_prob_)
    : eta(eta_), dark_prob(dark_prob_) {
  check_eta(eta);
  if (!(dark_prob >= 0.0 && dark_prob < 1.0)) {
    throw std::invalid_argument("dark_prob must lie in [0, 1), got " +
                                std::to_string(dark_prob));
  }
}

ClampedProb no_count_approx(double mu, double g2, double eta) {
  check_mean("pulse", mu);
  if (!(g2 >= 0.0)) {
    throw std::domain_error("g2 must be >= 0, got " + std::to_string(g2));
  }
  check_eta(eta);
  const double x = eta * mu;
  double value = 1.0 - x + 0.5 * g2 * x * x;
  bool clamped = false;
  if (value < 0.0) {
    value = 0.0;
    clamped = true;
  } else if (value > 1.0) {
    value = 1.0;
    clamped = true;
  }
  return {value, clamped};
}

double max_mean_for_g2(double g2) {
  if (!(g2 >= 0.0)) {
    throw std::domain_error("g2 must be >= 0, got " + std::to_string(g2));
  }
  if (g2 >= 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 1.0 / (1.0 - g2);
}

double min_variance(double mu) {
  check_mean("pulse", mu);
  const double f = mu - std::floor(mu);
  return f * (1.0 - f);
}

}  // namespace ooklight
