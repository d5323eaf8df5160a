// Command-line surface: sweeps, single-point reports, fits, the two-qubit
// model curve, and the generalized-protocol optimality scan.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qet/io.hpp"
#include "qet/svg.hpp"

namespace {

std::string fmt(double v, const char* format = "%.12g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// --out beats QET_OUT beats the working directory.
std::string resolve_out_dir(const CLI::Option* out_opt,
                            const std::string& out_value) {
  if (out_opt->count() > 0) return out_value;
  if (const char* env = std::getenv("QET_OUT"); env && *env) return env;
  return ".";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw qet::IoError("cannot create directory " + dir + ": " +
                             ec.message());
  if (!std::filesystem::is_directory(dir)) {
    throw qet::IoError("not a directory: " + dir);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact-diagonalization workbench for measurement/feedback energy "
      "extraction on a four-spin chain"};
  app.require_subcommand(1);
  // --h is a domain flag on several subcommands, so the help flag must not
  // claim the short form -h anywhere.
  app.set_help_flag("--help", "print this help message and exit");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Field sweep; writes sweep.csv and optionally figures");
  sweep->set_help_flag("--help", "print this help message and exit");
  qet::SweepConfig cfg;
  std::string sweep_out;
  sweep->add_option("--h-min", cfg.h_min, "lower end of the field grid")
      ->capture_default_str();
  sweep->add_option("--h-max", cfg.h_max, "upper end of the field grid")
      ->capture_default_str();
  sweep->add_option("--steps", cfg.steps, "number of grid points")
      ->capture_default_str();
  sweep->add_option("--theta-grid", cfg.theta_grid_resolution,
                    "angle-grid resolution for the optimality check")
      ->capture_default_str();
  auto* sweep_out_opt =
      sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_flag("--svg", cfg.emit_svg, "also render the figure set");

  // point
  auto* point = app.add_subcommand(
      "point", "Full report for a single field value, as JSON on stdout");
  point->set_help_flag("--help", "print this help message and exit");
  double point_h = 0.5;
  double point_theta = 0.0;
  point->add_option("--h", point_h, "field value")->required();
  auto* theta_opt = point->add_option(
      "--theta", point_theta, "feedback angle (default: the optimal angle)");

  // fit
  auto* fit = app.add_subcommand(
      "fit", "Proportionality fits of extracted energy vs entropy changes");
  fit->set_help_flag("--help", "print this help message and exit");

  // minimal
  auto* minimal = app.add_subcommand(
      "minimal", "Two-qubit model curve; writes minimal.csv and fit report");
  minimal->set_help_flag("--help", "print this help message and exit");
  double min_k = 1.0, min_hmax = 1.99;
  int min_steps = 100;
  std::string min_out;
  minimal->add_option("--k", min_k, "coupling")->capture_default_str();
  minimal->add_option("--h-max", min_hmax, "upper end of the field grid")
      ->capture_default_str();
  minimal->add_option("--steps", min_steps, "number of grid points")
      ->capture_default_str();
  auto* min_out_opt = minimal->add_option("--out", min_out, "output directory");

  // scan
  auto* scan = app.add_subcommand(
      "scan", "Grid scan over generalized measurement/feedback directions");
  scan->set_help_flag("--help", "print this help message and exit");
  double scan_h = 0.5;
  int scan_res = 32;
  scan->add_option("--h", scan_h, "field value")->capture_default_str();
  scan->add_option("--resolution", scan_res, "grid points per angle")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(qet::ExitCode::Config);
  }

  try {
    if (sweep->parsed()) {
      cfg.output_dir = resolve_out_dir(sweep_out_opt, sweep_out);
      qet::validate(cfg);
      ensure_dir(cfg.output_dir);
      const auto rows = qet::sweep_parallel(cfg);
      const std::string csv_path = cfg.output_dir + "/sweep.csv";
      qet::write_sweep_csv(csv_path, rows);
      std::cout << "wrote " << csv_path << " (" << rows.size() << " rows)\n";
      if (cfg.emit_svg) {
        for (const auto& p : qet::write_sweep_figures(cfg.output_dir, rows)) {
          std::cout << "wrote " << p << "\n";
        }
      }
    } else if (point->parsed()) {
      std::optional<double> theta;
      if (theta_opt->count() > 0) theta = point_theta;
      const auto pa = qet::analyze_point(point_h, theta);
      std::cout << qet::point_report_json(pa) << "\n";
    } else if (fit->parsed()) {
      const qet::SweepConfig fit_cfg;  // defaults: 100 points on [0, 0.99]
      const auto rows = qet::sweep_parallel(fit_cfg);
      std::vector<double> eb, ds34, ds4;
      std::vector<double> eb_lo, ds34_lo, ds4_lo;  // small-signal h <= 0.1
      for (const auto& r : rows) {
        eb.push_back(r.E_B_max);
        ds34.push_back(r.dS34);
        ds4.push_back(r.dS4);
        if (r.h <= 0.1) {
          eb_lo.push_back(r.E_B_max);
          ds34_lo.push_back(r.dS34);
          ds4_lo.push_back(r.dS4);
        }
      }
      const auto report = [](const std::string& name,
                             const qet::FitResult& f) {
        std::cout << name << ": slope = " << fmt(f.slope)
                  << ", max relative deviation = " << fmt(f.max_rel_deviation)
                  << ", beta = -1/slope = " << fmt(-1.0 / f.slope) << "\n";
      };
      report("E_B_max vs dS34", qet::proportionality_fit(ds34, eb));
      report("E_B_max vs dS4 ", qet::proportionality_fit(ds4, eb));
      report("E_B_max vs dS34, h <= 0.1",
             qet::proportionality_fit(ds34_lo, eb_lo));
      report("E_B_max vs dS4,  h <= 0.1",
             qet::proportionality_fit(ds4_lo, eb_lo));
    } else if (minimal->parsed()) {
      if (!(min_hmax > 0.0 && min_hmax < 2.0)) {
        throw qet::ConfigError("minimal: need 0 < h_max < 2");
      }
      if (min_steps < 2) {
        throw qet::ConfigError("minimal: need at least 2 steps");
      }
      std::vector<double> grid(min_steps);
      for (int i = 0; i < min_steps; ++i) {
        grid[i] = min_hmax * i / (min_steps - 1);
      }
      const auto fits = qet::minimal_fits(min_k, grid);
      const std::string dir = resolve_out_dir(min_out_opt, min_out);
      ensure_dir(dir);
      const std::string csv_path = dir + "/minimal.csv";
      qet::write_minimal_csv(csv_path, fits.curve);
      std::cout << "wrote " << csv_path << " (" << fits.curve.size()
                << " rows)\n";
      std::cout << "EB vs dSB:       slope = " << fmt(fits.fit.slope)
                << ", max relative deviation = "
                << fmt(fits.fit.max_rel_deviation)
                << ", beta = " << fmt(fits.beta) << "\n";
      std::cout << "EB vs dSB_tilde: slope = " << fmt(fits.fit_tilde.slope)
                << ", max relative deviation = "
                << fmt(fits.fit_tilde.max_rel_deviation)
                << ", beta_tilde = " << fmt(fits.beta_tilde) << "\n";
    } else if (scan->parsed()) {
      const auto gs = qet::solve_ground_state({scan_h});
      const auto rep = qet::optimality_scan(gs, scan_res);
      std::cout << "grid max extracted energy     = " << fmt(rep.grid_max)
                << "\n";
      std::cout << "standard-protocol optimum     = " << fmt(rep.baseline_max)
                << "\n";
      std::cout << "grid within tolerance of it   = "
                << (rep.grid_within_tolerance ? "yes" : "no") << "\n";
      for (size_t i = 0; i < rep.family_t.size(); ++i) {
        std::cout << "planar family t = " << fmt(rep.family_t[i], "%.6g")
                  << " -> " << fmt(rep.family_value[i]) << "\n";
      }
      std::cout << "planar family attains optimum = "
                << (rep.family_attains ? "yes" : "no") << "\n";
    }
  } catch (const qet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
