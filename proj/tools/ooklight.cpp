// Command-line front end: reproducible CSV sweeps and single-point queries
// for achievable information rates of on-off keyed optical links with
// direct photon detection.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ooklight/sweep.hpp"

namespace {

using ooklight::Scheme;
using ooklight::SourceFamily;

/// Write through `fn` to the file at `path`, or to stdout when path is "".
void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings LF everywhere
  if (!out) {
    throw std::runtime_error("cannot open output path: " + path);
  }
  fn(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed while writing output path: " + path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ooklight: achievable information rates and photon information "
      "efficiencies of on-off keyed / pulse-position modulated optical links "
      "with direct detection"};
  app.set_version_flag("--version", "1.0.0");
  app.require_subcommand(1);

  // ---- pie-curve ----
  double pn_min = 1e-4;
  double pn_max = 1e-1;
  int pn_points = 61;
  std::string pie_out;
  std::string pie_plot;
  CLI::App* pie = app.add_subcommand(
      "pie-curve",
      "Sweep photon information efficiencies over the mean detected flux (CSV)");
  pie->add_option("--eta-nbar-min", pn_min, "smallest mean detected photon number")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pie->add_option("--eta-nbar-max", pn_max, "largest mean detected photon number")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pie->add_option("--eta-nbar-points", pn_points, "grid size (log-spaced)")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  pie->add_option("--out", pie_out, "output CSV path (default: stdout)");
  pie->add_option("--plot", pie_plot, "also write a standalone SVG line chart here");

  // ---- ratio-map ----
  double eta_min = 0.01;
  double eta_max = 1.0;
  int eta_points = 50;
  double nb_min = 1e-3;
  double nb_max = 0.2;
  int nb_points = 50;
  std::string map_out;
  CLI::App* map = app.add_subcommand(
      "ratio-map",
      "Map the rate enhancement from minimum-variance photon statistics over "
      "(eta, nbar) (CSV)");
  map->add_option("--eta-min", eta_min, "smallest transmission")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  map->add_option("--eta-max", eta_max, "largest transmission")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  map->add_option("--eta-points", eta_points, "transmission grid size (log-spaced)")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  map->add_option("--nbar-min", nb_min, "smallest mean photon number per bin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  map->add_option("--nbar-max", nb_max, "largest mean photon number per bin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  map->add_option("--nbar-points", nb_points, "mean-photon grid size (log-spaced)")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  map->add_option("--out", map_out, "output CSV path (default: stdout)");

  // ---- optimize ----
  std::string opt_scheme;
  std::string opt_family = "poisson";
  double opt_nbar = 0.0;
  double opt_eta = 0.0;
  std::string opt_dark = "none";
  std::string opt_format = "text";
  std::string opt_out;
  CLI::App* opt = app.add_subcommand(
      "optimize", "Optimize the information rate at a single operating point");
  opt->add_option("--scheme", opt_scheme, "modulation scheme")
      ->required()
      ->check(CLI::IsMember({"ook", "ppm"}));
  opt->add_option("--family", opt_family, "photon statistics of the pulse")
      ->check(CLI::IsMember({"poisson", "fock"}))
      ->capture_default_str();
  opt->add_option("--nbar", opt_nbar, "mean photon number per bin")
      ->required()
      ->check(CLI::PositiveNumber);
  opt->add_option("--eta", opt_eta, "channel transmission")
      ->required()
      ->check(CLI::Range(1e-12, 1.0));
  opt->add_option("--dark", opt_dark,
                  "dark-count rule: none, or quarter (dark_prob = eta*nbar/4)")
      ->check(CLI::IsMember({"none", "quarter"}))
      ->capture_default_str();
  opt->add_option("--format", opt_format, "output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  opt->add_option("--out", opt_out, "output path (default: stdout)");

  // ---- validate ----
  long long val_trials = 1000000;
  std::uint64_t val_seed = ooklight::kDefaultSeed;
  CLI::App* val = app.add_subcommand(
      "validate",
      "Check closed-form no-click probabilities against the Monte-Carlo sampler");
  val->add_option("--trials", val_trials, "trials per case")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  val->add_option("--seed", val_seed, "base seed of the sampler")
      ->capture_default_str();
  std::string val_out;
  val->add_option("--out", val_out, "report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 covers --help/--version; everything else is usage
  }

  try {
    if (app.got_subcommand(pie)) {
      ooklight::PieCurveSpec spec{{pn_min, pn_max, pn_points, true}};
      const auto rows = ooklight::run_pie_curve(spec);
      write_output(pie_out,
                   [&rows](std::ostream& out) { write_pie_curve_csv(rows, out); });
      if (!pie_plot.empty()) {
        write_output(pie_plot,
                     [&rows](std::ostream& out) { write_pie_curve_svg(rows, out); });
      }
      return 0;
    }
    if (app.got_subcommand(map)) {
      ooklight::RatioMapSpec spec{{eta_min, eta_max, eta_points, true},
                                  {nb_min, nb_max, nb_points, true}};
      const auto rows = ooklight::run_ratio_map(spec);
      write_output(map_out,
                   [&rows](std::ostream& out) { write_ratio_map_csv(rows, out); });
      return 0;
    }
    if (app.got_subcommand(opt)) {
      const Scheme scheme = opt_scheme == "ppm" ? Scheme::PPM : Scheme::OOK;
      const SourceFamily family =
          opt_family == "fock" ? SourceFamily::FockMixture : SourceFamily::Poisson;
      const double dark_prob =
          opt_dark == "quarter" ? 0.25 * opt_eta * opt_nbar : 0.0;
      const auto row = ooklight::run_optimize(scheme, family, opt_nbar, opt_eta, dark_prob);
      const bool csv = opt_format == "csv";
      write_output(opt_out, [&row, csv](std::ostream& out) {
        if (csv) {
          write_optimize_csv(row, out);
        } else {
          write_optimize_text(row, out);
        }
      });
      return 0;
    }
    // validate is the only subcommand left.
    const auto outcomes =
        ooklight::run_validate(ooklight::default_validate_suite(), val_trials, val_seed);
    write_output(val_out, [&outcomes](std::ostream& out) {
      write_validate_report(outcomes, out);
    });
    return all_passed(outcomes) ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
