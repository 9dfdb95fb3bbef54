#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ooklight/info_theory.hpp"
#include "ooklight/photon_stats.hpp"

namespace ooklight {

/// Parametric source families the one-parameter optimizer can sweep.
enum class SourceFamily { Poisson, FockMixture };

/// One-dimensional rate-optimization problem: scheme, source family,
/// per-bin mean nbar and channel are fixed; the pulse mean mu is free with
/// pulse probability p = nbar/mu.
struct OptimizeProblem {
  OptimizeProblem(Scheme scheme, SourceFamily family, double nbar,
                  ChannelParams channel, std::pair<double, double> mu_bounds,
                  double tol = 1e-9);

  Scheme scheme;
  SourceFamily family;
  double nbar;
  ChannelParams channel;
  std::pair<double, double> mu_bounds;  ///< search interval, low > nbar
  double tol;                           ///< relative x-tolerance of the refinement
};

/// Problem with the default search interval
/// [max(2 nbar, 1e-6), max(50, 100 * closed-form optimum estimate)].
/// Throws std::domain_error when channel.eta == 0 (no rate to optimize).
[[nodiscard]] OptimizeProblem default_problem(Scheme scheme, SourceFamily family,
                                              double nbar, ChannelParams channel);

/// Exact per-bin information rate of `problem` at pulse mean mu:
/// the source's closed-form no-count probability feeds the erasure rate
/// (PPM) or the asymmetric-channel mutual information with dark counts
/// (OOK, click_given_empty = dark_prob,
/// click_given_pulse = 1 - eps (1 - dark_prob)).
/// Throws std::domain_error unless mu > nbar (and mu >= 2 nbar for PPM).
[[nodiscard]] double rate_at(const OptimizeProblem& problem, double mu);

/// Location and value of a scalar maximum.
struct ScalarMax {
  double x;
  double f;
};

/// Pre-scan density controls for maximize_scalar.
struct ScanOptions {
  int min_points = 64;    ///< log-spaced and linear points, each
  double max_cell = 0.0;  ///< extra linear densification pitch; 0 disables
  /// Abscissas the pre-scan must evaluate exactly (values outside [lo, hi]
  /// are ignored). Use this to seed known kink locations of the objective.
  std::vector<double> anchors;
};

/// Deterministic scalar maximizer for piecewise-smooth unimodal-ish
/// objectives: a combined log+linear pre-scan grid locates the best cell,
/// golden-section search refines its bracket to relative x-tolerance tol,
/// and the returned maximum is the best of every point ever evaluated.
/// Throws std::runtime_error if the objective returns a non-finite value
/// (naming the abscissa) or if refinement falls measurably below the
/// pre-scan maximum (non-unimodal objective).
[[nodiscard]] ScalarMax maximize_scalar(const std::function<double(double)>& f,
                                        double lo, double hi, double tol,
                                        const ScanOptions& options = {});

/// Maximize rate_at over problem.mu_bounds. Fock-mixture objectives are
/// piecewise-smooth with kinks at integer mu, so their pre-scan grid is
/// densified to at least 8 points per unit mean.
/// Throws std::domain_error when channel.eta == 0.
[[nodiscard]] RateResult optimize_rate(const OptimizeProblem& problem);

/// Optimized-rate ratio, minimum-variance source over Poissonian source.
struct EnhancementResult {
  double ratio;        ///< optimized Fock-mixture rate / optimized Poisson rate
  double fock_mu_opt;  ///< maximizer on the Fock-mixture side
};

/// Enhancement from sub-Poissonian statistics at one (scheme, nbar, eta)
/// point, dark-count-free. Throws std::runtime_error if the Poisson
/// baseline rate is not positive.
[[nodiscard]] EnhancementResult enhancement_ratio(Scheme scheme, double nbar, double eta);

}  // namespace ooklight
