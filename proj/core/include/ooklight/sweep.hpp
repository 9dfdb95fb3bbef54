#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ooklight/montecarlo.hpp"
#include "ooklight/optimize.hpp"

namespace ooklight {

/// One sweep axis. Endpoints must be positive and ordered, points >= 2.
struct GridSpec {
  GridSpec(double min, double max, int points, bool log_spaced = true);

  double min;
  double max;
  int points;
  bool log_spaced;
};

/// Materialize the axis; endpoints are hit exactly.
[[nodiscard]] std::vector<double> make_grid(const GridSpec& spec);

/// Shortest decimal string that parses back to exactly the same double.
[[nodiscard]] std::string format_double(double value);

// ===== PIE-versus-detected-flux sweep (pie-curve) =====

struct PieCurveSpec {
  GridSpec eta_nbar{1e-4, 1e-1, 61, /*log_spaced=*/true};
};

/// One abscissa of the photon-information-efficiency comparison, computed
/// at unit transmission with nbar equal to the detected flux.
struct PieCurveRow {
  double eta_nbar;          ///< mean detected photons per bin
  double pie_analytic_Pi;   ///< closed-form optimized second-order PIE
  double pie_ppm_poisson;   ///< exact-optimized PPM PIE, Poisson source
  double pie_ook_poisson;   ///< exact-optimized OOK PIE, Poisson source
  double pie_ook_dark;      ///< OOK PIE with dark_prob = eta_nbar / 4
  double capacity_pie;      ///< unrestricted single-mode capacity PIE
  double inv_p_analytic;    ///< closed-form optimal frame length mu*/nbar
  double inv_p_ppm;         ///< exact-optimized PPM frame length
  double inv_p_ook;         ///< exact-optimized OOK 1/pulse_prob
  std::string flags;        ///< semicolon-joined validity markers, "" if clean
};

[[nodiscard]] std::vector<PieCurveRow> run_pie_curve(const PieCurveSpec& spec);
void write_pie_curve_csv(const std::vector<PieCurveRow>& rows, std::ostream& out);

/// Standalone SVG line chart (log-x) of the PIE columns; a plotting
/// convenience, the CSV stays the interchange contract.
void write_pie_curve_svg(const std::vector<PieCurveRow>& rows, std::ostream& out);

// ===== enhancement-ratio map (ratio-map) =====

struct RatioMapSpec {
  GridSpec eta{0.01, 1.0, 50, /*log_spaced=*/true};
  GridSpec nbar{1e-3, 0.2, 50, /*log_spaced=*/true};
};

/// Enhancement of the optimized rate from minimum-variance photon
/// statistics relative to Poissonian light, per scheme.
struct RatioMapRow {
  double eta;
  double nbar;
  double ratio_ppm;
  double ratio_ook;
  double fock_mu_opt_ppm;
  double fock_mu_opt_ook;
  bool single_photon_optimal_ppm;  ///< |fock_mu_opt - 1| <= 1e-6
  bool single_photon_optimal_ook;
  std::string flags;
};

[[nodiscard]] std::vector<RatioMapRow> run_ratio_map(const RatioMapSpec& spec);
void write_ratio_map_csv(const std::vector<RatioMapRow>& rows, std::ostream& out);

// ===== single-point optimization (optimize) =====

struct OptimizeRow {
  Scheme scheme;
  SourceFamily family;
  double nbar;
  double eta;
  double dark_prob;
  RateResult result;
  std::string flags;
};

/// Optimize one operating point with default search bounds.
[[nodiscard]] OptimizeRow run_optimize(Scheme scheme, SourceFamily family, double nbar,
                                       double eta, double dark_prob);
void write_optimize_csv(const OptimizeRow& row, std::ostream& out);
void write_optimize_text(const OptimizeRow& row, std::ostream& out);

// ===== Monte-Carlo validation suite (validate) =====

struct ValidateCase {
  std::string label;
  PhotonSource source;
  ChannelParams channel;
};

struct ValidateOutcome {
  std::string label;
  double expected;  ///< analytic no-click probability
  double estimate;  ///< Monte-Carlo estimate
  double std_err;
  double sigma;     ///< |estimate - expected| / std_err
  bool pass;        ///< |estimate - expected| <= 4 std_err
};

/// The stock 12-case agreement suite: {Poisson(0.7), FockMixture(1.5)} x
/// eta in {0.25, 0.5, 1} x dark_prob in {0, 0.05}.
[[nodiscard]] std::vector<ValidateCase> default_validate_suite();

/// Run every case with `trials` bins; case k uses stream seed ^ k.
[[nodiscard]] std::vector<ValidateOutcome> run_validate(const std::vector<ValidateCase>& cases,
                                                        long long trials, std::uint64_t seed);

void write_validate_report(const std::vector<ValidateOutcome>& outcomes, std::ostream& out);
[[nodiscard]] bool all_passed(const std::vector<ValidateOutcome>& outcomes);

}  // namespace ooklight
