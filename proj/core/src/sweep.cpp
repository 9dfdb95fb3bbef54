#include "ooklight/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ooklight/analytic.hpp"

namespace ooklight {
namespace {

/// Run body(0..count-1) on a small thread pool. Work items must be
/// independent; the first exception wins and is rethrown after join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      std::max(1u, std::min<unsigned>(hw == 0 ? 4 : hw, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void append_flag(std::string& flags, const char* token) {
  if (!flags.empty()) flags += ';';
  flags += token;
}

/// An optimum pinned at the top of the search interval means the interval,
/// not the physics, chose it; sweeps surface that as a validity flag.
bool at_upper_bound(const OptimizeProblem& problem, const RateResult& result) {
  return result.opt_mu >= problem.mu_bounds.second * (1.0 - 16.0 * problem.tol);
}

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::PPM ? "ppm" : "ook";
}

const char* family_name(SourceFamily family) {
  return family == SourceFamily::Poisson ? "poisson" : "fock";
}

}  // namespace

GridSpec::GridSpec(double min_, double max_, int points_, bool log_spaced_)
    : min(min_), max(max_), points(points_), log_spaced(log_spaced_) {
  if (!(min > 0.0) || !(max > min) || !std::isfinite(max)) {
    throw std::invalid_argument("grid endpoints must satisfy 0 < min < max");
  }
  if (points < 2) {
    throw std::invalid_argument("grids need at least 2 points, got " +
                                std::to_string(points));
  }
}

std::vector<double> make_grid(const GridSpec& spec) {
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const int n = spec.points;
  if (spec.log_spaced) {
    const double lmin = std::log(spec.min);
    const double lmax = std::log(spec.max);
    for (int i = 0; i < n; ++i) {
      grid[static_cast<std::size_t>(i)] = std::exp(lmin + (lmax - lmin) * i / (n - 1));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      grid[static_cast<std::size_t>(i)] = spec.min + (spec.max - spec.min) * i / (n - 1);
    }
  }
  grid.front() = spec.min;
  grid.back() = spec.max;
  return grid;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    throw std::runtime_error("failed to format a double");
  }
  return {buffer, end};
}

// ===== pie-curve =====

std::vector<PieCurveRow> run_pie_curve(const PieCurveSpec& spec) {
  const std::vector<double> xs = make_grid(spec.eta_nbar);
  std::vector<PieCurveRow> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    PieCurveRow row{};
    row.eta_nbar = x;

    const ApproxValue pie_analytic = pie_ppm_approx(x);
    row.pie_analytic_Pi = pie_analytic.value;
    if (!pie_analytic.in_domain) append_flag(row.flags, "analytic_pie_out_of_domain");

    const ApproxValue mu_analytic = mu_opt_classical(AnalyticPoint(x, 1.0, 1.0));
    row.inv_p_analytic = mu_analytic.value / x;
    if (!mu_analytic.in_domain) append_flag(row.flags, "analytic_mu_out_of_domain");

    const ChannelParams clean(1.0, 0.0);
    const OptimizeProblem ppm_problem =
        default_problem(Scheme::PPM, SourceFamily::Poisson, x, clean);
    const RateResult ppm = optimize_rate(ppm_problem);
    row.pie_ppm_poisson = ppm.pie;
    row.inv_p_ppm = ppm.opt_inv_p;
    if (at_upper_bound(ppm_problem, ppm)) append_flag(row.flags, "ppm_mu_at_bound");

    const OptimizeProblem ook_problem =
        default_problem(Scheme::OOK, SourceFamily::Poisson, x, clean);
    const RateResult ook = optimize_rate(ook_problem);
    row.pie_ook_poisson = ook.pie;
    row.inv_p_ook = ook.opt_inv_p;
    if (at_upper_bound(ook_problem, ook)) append_flag(row.flags, "ook_mu_at_bound");

    const ChannelParams dark(1.0, 0.25 * x);
    const OptimizeProblem dark_problem =
        default_problem(Scheme::OOK, SourceFamily::Poisson, x, dark);
    const RateResult ook_dark = optimize_rate(dark_problem);
    row.pie_ook_dark = ook_dark.pie;
    if (at_upper_bound(dark_problem, ook_dark)) append_flag(row.flags, "ook_dark_mu_at_bound");

    row.capacity_pie = capacity_pie(x);
    rows[i] = std::move(row);
  });
  return rows;
}

void write_pie_curve_csv(const std::vector<PieCurveRow>& rows, std::ostream& out) {
  out << "eta_nbar,pie_analytic_Pi,pie_ppm_poisson,pie_ook_poisson,pie_ook_dark,"
         "capacity_pie,inv_p_analytic,inv_p_ppm,inv_p_ook,flags\n";
  for (const PieCurveRow& row : rows) {
    out << format_double(row.eta_nbar) << ',' << format_double(row.pie_analytic_Pi)
        << ',' << format_double(row.pie_ppm_poisson) << ','
        << format_double(row.pie_ook_poisson) << ',' << format_double(row.pie_ook_dark)
        << ',' << format_double(row.capacity_pie) << ','
        << format_double(row.inv_p_analytic) << ',' << format_double(row.inv_p_ppm)
        << ',' << format_double(row.inv_p_ook) << ',' << row.flags << '\n';
  }
}

// ===== SVG plot =====

namespace {

struct PlotSeries {
  const char* label;
  const char* color;
  const char* dash;  // SVG dash array, or "" for solid
  std::vector<double> y;
};

std::string px(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

}  // namespace

void write_pie_curve_svg(const std::vector<PieCurveRow>& rows, std::ostream& out) {
  if (rows.size() < 2) {
    throw std::invalid_argument("the SVG plot needs at least two rows");
  }
  const double width = 880.0;
  const double height = 560.0;
  const double left = 70.0;
  const double right = width - 240.0;
  const double top = 40.0;
  const double bottom = height - 64.0;

  std::vector<double> xs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) xs[i] = rows[i].eta_nbar;

  std::vector<PlotSeries> series = {
      {"capacity limit", "#888888", "6,4", {}},
      {"optimized second-order form", "#d62728", "", {}},
      {"PPM, Poisson light (exact)", "#111111", "", {}},
      {"OOK, Poisson light (exact)", "#1f77b4", "", {}},
      {"OOK with dark counts", "#1f77b4", "5,3", {}},
  };
  for (const PieCurveRow& row : rows) {
    series[0].y.push_back(row.capacity_pie);
    series[1].y.push_back(row.pie_analytic_Pi);
    series[2].y.push_back(row.pie_ppm_poisson);
    series[3].y.push_back(row.pie_ook_poisson);
    series[4].y.push_back(row.pie_ook_dark);
  }

  const double lx_min = std::log10(xs.front());
  const double lx_max = std::log10(xs.back());
  double y_peak = 0.0;
  for (const PlotSeries& s : series) {
    y_peak = std::max(y_peak, *std::max_element(s.y.begin(), s.y.end()));
  }
  const double y_step = std::max(1.0, std::ceil(y_peak / 6.0));
  const double y_max = y_step * std::ceil(y_peak / y_step);

  const auto map_x = [&](double x) {
    return left + (std::log10(x) - lx_min) / (lx_max - lx_min) * (right - left);
  };
  const auto map_y = [&](double y) { return bottom - y / y_max * (bottom - top); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">\n";

  // Axes.
  out << "<line x1=\"" << px(left) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(right)
      << "\" y2=\"" << px(bottom) << "\" stroke=\"#222\"/>\n"
      << "<line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left)
      << "\" y2=\"" << px(bottom) << "\" stroke=\"#222\"/>\n";

  // Decade ticks on the log x axis.
  for (int k = static_cast<int>(std::ceil(lx_min - 1e-9));
       k <= static_cast<int>(std::floor(lx_max + 1e-9)); ++k) {
    const double gx = map_x(std::pow(10.0, k));
    out << "<line x1=\"" << px(gx) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(gx)
        << "\" y2=\"" << px(bottom + 6.0) << "\" stroke=\"#222\"/>\n"
        << "<text x=\"" << px(gx) << "\" y=\"" << px(bottom + 24.0)
        << "\" text-anchor=\"middle\">1e" << k << "</text>\n";
  }
  // Horizontal grid and y ticks.
  for (double y = 0.0; y <= y_max + 1e-9; y += y_step) {
    const double gy = map_y(y);
    out << "<line x1=\"" << px(left) << "\" y1=\"" << px(gy) << "\" x2=\"" << px(right)
        << "\" y2=\"" << px(gy) << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << px(left - 10.0) << "\" y=\"" << px(gy + 4.0)
        << "\" text-anchor=\"end\">" << format_double(y) << "</text>\n";
  }

  out << "<text x=\"" << px((left + right) / 2.0) << "\" y=\"" << px(height - 16.0)
      << "\" text-anchor=\"middle\">mean detected photons per bin</text>\n"
      << "<text x=\"20\" y=\"" << px((top + bottom) / 2.0)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << px((top + bottom) / 2.0)
      << ")\">photon information efficiency [bits/photon]</text>\n";

  // Series polylines and legend.
  double legend_y = top + 10.0;
  for (const PlotSeries& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
    if (s.dash[0] != '\0') out << " stroke-dasharray=\"" << s.dash << "\"";
    out << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << px(map_x(xs[i])) << ',' << px(map_y(s.y[i])) << ' ';
    }
    out << "\"/>\n";

    const double lx = right + 16.0;
    out << "<line x1=\"" << px(lx) << "\" y1=\"" << px(legend_y) << "\" x2=\""
        << px(lx + 28.0) << "\" y2=\"" << px(legend_y) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\"";
    if (s.dash[0] != '\0') out << " stroke-dasharray=\"" << s.dash << "\"";
    out << "/>\n<text x=\"" << px(lx + 36.0) << "\" y=\"" << px(legend_y + 4.0) << "\">"
        << s.label << "</text>\n";
    legend_y += 22.0;
  }

  out << "</g>\n</svg>\n";
}

// ===== ratio-map =====

std::vector<RatioMapRow> run_ratio_map(const RatioMapSpec& spec) {
  const std::vector<double> etas = make_grid(spec.eta);
  const std::vector<double> nbars = make_grid(spec.nbar);
  std::vector<RatioMapRow> rows(etas.size() * nbars.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double eta = etas[i / nbars.size()];
    const double nbar = nbars[i % nbars.size()];
    RatioMapRow row{};
    row.eta = eta;
    row.nbar = nbar;
    const EnhancementResult ppm = enhancement_ratio(Scheme::PPM, nbar, eta);
    const EnhancementResult ook = enhancement_ratio(Scheme::OOK, nbar, eta);
    row.ratio_ppm = ppm.ratio;
    row.ratio_ook = ook.ratio;
    row.fock_mu_opt_ppm = ppm.fock_mu_opt;
    row.fock_mu_opt_ook = ook.fock_mu_opt;
    row.single_photon_optimal_ppm = std::abs(ppm.fock_mu_opt - 1.0) <= 1e-6;
    row.single_photon_optimal_ook = std::abs(ook.fock_mu_opt - 1.0) <= 1e-6;
    rows[i] = std::move(row);
  });
  return rows;
}

void write_ratio_map_csv(const std::vector<RatioMapRow>& rows, std::ostream& out) {
  out << "eta,nbar,ratio_ppm,ratio_ook,fock_mu_opt_ppm,fock_mu_opt_ook,"
         "single_photon_optimal_ppm,single_photon_optimal_ook,flags\n";
  for (const RatioMapRow& row : rows) {
    out << format_double(row.eta) << ',' << format_double(row.nbar) << ','
        << format_double(row.ratio_ppm) << ',' << format_double(row.ratio_ook) << ','
        << format_double(row.fock_mu_opt_ppm) << ','
        << format_double(row.fock_mu_opt_ook) << ','
        << (row.single_photon_optimal_ppm ? '1' : '0') << ','
        << (row.single_photon_optimal_ook ? '1' : '0') << ',' << row.flags << '\n';
  }
}

// ===== optimize =====

OptimizeRow run_optimize(Scheme scheme, SourceFamily family, double nbar, double eta,
                         double dark_prob) {
  OptimizeRow row{scheme, family, nbar, eta, dark_prob, {}, {}};
  const OptimizeProblem problem =
      default_problem(scheme, family, nbar, ChannelParams(eta, dark_prob));
  row.result = optimize_rate(problem);
  if (at_upper_bound(problem, row.result)) append_flag(row.flags, "opt_mu_at_bound");
  return row;
}

void write_optimize_csv(const OptimizeRow& row, std::ostream& out) {
  out << "scheme,family,nbar,eta,dark_prob,mi_per_bin,pie,opt_mu,opt_inv_p,flags\n"
      << scheme_name(row.scheme) << ',' << family_name(row.family) << ','
      << format_double(row.nbar) << ',' << format_double(row.eta) << ','
      << format_double(row.dark_prob) << ',' << format_double(row.result.mi_per_bin)
      << ',' << format_double(row.result.pie) << ',' << format_double(row.result.opt_mu)
      << ',' << format_double(row.result.opt_inv_p) << ',' << row.flags << '\n';
}

void write_optimize_text(const OptimizeRow& row, std::ostream& out) {
  out << "scheme        : " << scheme_name(row.scheme) << '\n'
      << "source family : " << family_name(row.family) << '\n'
      << "nbar          : " << format_double(row.nbar) << " photons/bin\n"
      << "eta           : " << format_double(row.eta) << '\n'
      << "dark_prob     : " << format_double(row.dark_prob) << '\n'
      << "mi_per_bin    : " << format_double(row.result.mi_per_bin) << " bits/bin\n"
      << "pie           : " << format_double(row.result.pie) << " bits/photon\n"
      << "opt_mu        : " << format_double(row.result.opt_mu) << " photons\n"
      << "opt_inv_p     : " << format_double(row.result.opt_inv_p) << " bins\n"
      << "flags         : " << (row.flags.empty() ? "(none)" : row.flags) << '\n';
}

// ===== validate =====

std::vector<ValidateCase> default_validate_suite() {
  std::vector<ValidateCase> cases;
  const double etas[] = {0.25, 0.5, 1.0};
  const double darks[] = {0.0, 0.05};
  for (const double eta : etas) {
    for (const double dark : darks) {
      char label[64];
      std::snprintf(label, sizeof(label), "poisson(0.7) eta=%.2f dark=%.2f", eta, dark);
      cases.push_back({label, PhotonSource::poisson(0.7), ChannelParams(eta, dark)});
      std::snprintf(label, sizeof(label), "fock(1.5)    eta=%.2f dark=%.2f", eta, dark);
      cases.push_back({label, PhotonSource::fock_mixture(1.5), ChannelParams(eta, dark)});
    }
  }
  return cases;
}

std::vector<ValidateOutcome> run_validate(const std::vector<ValidateCase>& cases,
                                          long long trials, std::uint64_t seed) {
  std::vector<ValidateOutcome> outcomes(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const ValidateCase& vc = cases[i];
    const double expected =
        vc.source.no_count_exact(vc.channel.eta) * (1.0 - vc.channel.dark_prob);
    // Per-case stream: decorrelates cases while keeping the suite reproducible.
    const McConfig config(vc.source, vc.channel, trials,
                          seed ^ static_cast<std::uint64_t>(i));
    const NoCountEstimate estimate = estimate_no_count(config);
    ValidateOutcome outcome;
    outcome.label = vc.label;
    outcome.expected = expected;
    outcome.estimate = estimate.eps_hat;
    outcome.std_err = estimate.std_err;
    const double diff = std::abs(estimate.eps_hat - expected);
    if (estimate.std_err > 0.0) {
      outcome.sigma = diff / estimate.std_err;
    } else {
      outcome.sigma = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    outcome.pass = diff <= 4.0 * estimate.std_err || diff == 0.0;
    outcomes[i] = std::move(outcome);
  });
  return outcomes;
}

void write_validate_report(const std::vector<ValidateOutcome>& outcomes,
                           std::ostream& out) {
  std::size_t passed = 0;
  for (const ValidateOutcome& o : outcomes) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "[%s] %-32s expected=%.6f estimated=%.6f sigma=%.2f\n",
                  o.pass ? "PASS" : "FAIL", o.label.c_str(), o.expected, o.estimate,
                  o.sigma);
    out << line;
    if (o.pass) ++passed;
  }
  out << passed << '/' << outcomes.size() << " cases within 4 sigma\n";
}

bool all_passed(const std::vector<ValidateOutcome>& outcomes) {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const ValidateOutcome& o) { return o.pass; });
}

}  // namespace ooklight
