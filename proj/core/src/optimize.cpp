#include "ooklight/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ooklight/analytic.hpp"

namespace ooklight {
namespace {

constexpr double kDefaultMuFloor = 1e-6;
constexpr double kFockScanCell = 0.125;  // >= 8 pre-scan points per unit mean

PhotonSource make_source(SourceFamily family, double mu) {
  return family == SourceFamily::Poisson ? PhotonSource::poisson(mu)
                                         : PhotonSource::fock_mixture(mu);
}

/// Union of a log-spaced and a linear grid on [lo, hi], optionally densified
/// to a maximum linear cell width; sorted, deduplicated, endpoints exact.
std::vector<double> prescan_grid(double lo, double hi, const ScanOptions& options) {
  const int n = std::max(2, options.min_points);
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(2 * n));
  if (lo > 0.0) {
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
      xs.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    }
  }
  for (int i = 0; i < n; ++i) {
    xs.push_back(lo + (hi - lo) * i / (n - 1));
  }
  if (options.max_cell > 0.0) {
    const double span = hi - lo;
    const double cells_needed = std::ceil(span / options.max_cell);
    if (cells_needed > 8e6) {
      throw std::runtime_error(
          "pre-scan densification would need more than 8e6 points; narrow the "
          "search interval or raise max_cell");
    }
    const long long cells = static_cast<long long>(cells_needed);
    for (long long i = 1; i < cells; ++i) {
      xs.push_back(lo + span * static_cast<double>(i) / static_cast<double>(cells));
    }
  }
  for (double& x : xs) x = std::clamp(x, lo, hi);  // exp/log round-trip slop
  for (const double anchor : options.anchors) {
    if (anchor >= lo && anchor <= hi) xs.push_back(anchor);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

OptimizeProblem::OptimizeProblem(Scheme scheme_, SourceFamily family_, double nbar_,
                                 ChannelParams channel_,
                                 std::pair<double, double> mu_bounds_, double tol_)
    : scheme(scheme_),
      family(family_),
      nbar(nbar_),
      channel(channel_),
      mu_bounds(mu_bounds_),
      tol(tol_) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("nbar must be positive and finite, got " +
                                std::to_string(nbar));
  }
  if (!(mu_bounds.first > nbar)) {
    throw std::invalid_argument(
        "mu_bounds.first must exceed nbar (pulse_prob < 1), got low = " +
        std::to_string(mu_bounds.first) + " at nbar = " + std::to_string(nbar));
  }
  if (!(mu_bounds.second > mu_bounds.first) || !std::isfinite(mu_bounds.second)) {
    throw std::invalid_argument("mu_bounds must be a finite increasing interval");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tol must be positive, got " + std::to_string(tol));
  }
}

OptimizeProblem default_problem(Scheme scheme, SourceFamily family, double nbar,
                                ChannelParams channel) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("nbar must be positive and finite, got " +
                                std::to_string(nbar));
  }
  if (channel.eta <= 0.0) {
    throw std::domain_error("rate optimization needs eta > 0: the rate vanishes "
                            "identically on an opaque channel");
  }
  // Scale the upper bound from the closed-form optimum of Poissonian light;
  // the true maximizer of every covered family sits far below 100x that.
  const double w = lambert_w0(2.0 * std::numbers::e / (channel.eta * nbar));
  const double mu_estimate = 2.0 / (channel.eta * w);
  const double lo = std::max(2.0 * nbar, kDefaultMuFloor);
  const double hi = std::max(50.0, 100.0 * mu_estimate);
  return {scheme, family, nbar, channel, {lo, hi}};
}

double rate_at(const OptimizeProblem& problem, double mu) {
  if (!(mu > problem.nbar)) {
    throw std::domain_error("rate_at needs mu > nbar so that pulse_prob < 1, got mu = " +
                            std::to_string(mu));
  }
  const double p = problem.nbar / mu;
  const ModulationPoint mod(problem.scheme, p);  // enforces the PPM frame rule
  const PhotonSource source = make_source(problem.family, mu);
  const double eps = source.no_count_exact(problem.channel.eta);
  if (problem.scheme == Scheme::PPM) {
    return ppm_rate(mod.pulse_prob, eps);
  }
  const double q0 = problem.channel.dark_prob;
  const double q1 = 1.0 - eps * (1.0 - q0);
  return ook_mutual_info(mod.pulse_prob, q1, q0);
}

ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol, const ScanOptions& options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("maximize_scalar needs a finite interval lo < hi");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("maximize_scalar needs tol > 0");
  }

  const auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw std::runtime_error("maximize_scalar: objective is not finite at x = " +
                               std::to_string(x));
    }
    return v;
  };

  const std::vector<double> xs = prescan_grid(lo, hi, options);
  std::size_t best = 0;
  double grid_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = eval(xs[i]);
    if (v > grid_max) {
      grid_max = v;
      best = i;
    }
  }

  // Golden-section refinement of the bracket around the best pre-scan cell.
  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[std::min(best + 1, xs.size() - 1)];
  ScalarMax refined{xs[best], -std::numeric_limits<double>::infinity()};
  const auto track = [&refined](double x, double v) {
    if (v > refined.f) refined = {x, v};
  };

  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  track(c, fc);
  track(d, fd);
  for (int i = 0; i < 512 && (b - a) > tol * std::max(std::abs(a), std::abs(b)); ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
      track(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
      track(d, fd);
    }
  }

  // Refinement explores the bracket containing the pre-scan maximum, so it
  // must come back at least that high (up to the search's own resolution);
  // falling measurably short means the objective is not unimodal there.
  if (refined.f < grid_max - 64.0 * tol * (1.0 + std::abs(grid_max))) {
    throw std::runtime_error(
        "maximize_scalar: golden-section refinement lost the pre-scan maximum; "
        "the objective does not look unimodal on the bracket around x = " +
        std::to_string(xs[best]));
  }
  if (grid_max > refined.f) {
    return {xs[best], grid_max};
  }
  return refined;
}

RateResult optimize_rate(const OptimizeProblem& problem) {
  if (problem.channel.eta <= 0.0) {
    throw std::domain_error("rate optimization needs eta > 0: the rate vanishes "
                            "identically on an opaque channel");
  }
  ScanOptions options;
  if (problem.family == SourceFamily::FockMixture) {
    // The Fock-mixture objective has kinks at integer mu where its variance
    // (and so its rate) is locally extremal: densify the pre-scan to cover
    // every unit cell and anchor it on the integers themselves, since a
    // generic grid never lands on them and near-equal kink maxima one unit
    // apart would otherwise be resolved in favor of the wrong one.
    options.max_cell = kFockScanCell;
    for (double m = std::ceil(problem.mu_bounds.first);
         m <= std::floor(problem.mu_bounds.second); m += 1.0) {
      options.anchors.push_back(m);
    }
  }
  const auto objective = [&problem](double mu) { return rate_at(problem, mu); };
  const ScalarMax max = maximize_scalar(objective, problem.mu_bounds.first,
                                        problem.mu_bounds.second, problem.tol, options);
  RateResult result;
  result.mi_per_bin = max.f;
  result.pie = max.f / (problem.channel.eta * problem.nbar);
  result.opt_mu = max.x;
  result.opt_inv_p = max.x / problem.nbar;
  return result;
}

EnhancementResult enhancement_ratio(Scheme scheme, double nbar, double eta) {
  const ChannelParams channel(eta, 0.0);
  const RateResult poisson =
      optimize_rate(default_problem(scheme, SourceFamily::Poisson, nbar, channel));
  const RateResult fock =
      optimize_rate(default_problem(scheme, SourceFamily::FockMixture, nbar, channel));
  if (!(poisson.mi_per_bin > 0.0)) {
    throw std::runtime_error("enhancement ratio undefined: the Poisson baseline rate is "
                             "zero at nbar = " + std::to_string(nbar) +
                             ", eta = " + std::to_string(eta));
  }
  return {fock.mi_per_bin / poisson.mi_per_bin, fock.opt_mu};
}

}  // namespace ooklight
