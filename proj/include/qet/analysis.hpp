#pragma once

#include <optional>
#include <string>

#include "qet/minimal.hpp"

namespace qet {

// One row of the field sweep; column order is the file format.
struct SweepRow {
  double h = 0, E_A = 0, E12_int = 0, E_B_max = 0, theta_star = 0;
  double E4_h = 0, E34_int = 0;
  double S34_g = 0, I_QC = 0, dS34 = 0, dS4 = 0;
  double J0_g = 0, J1_g = 0, J2_g = 0, Bp_g = 0, Bm_g = 0, C_g = 0;
  double J0_f = 0, J1_f = 0, J2_f = 0, Bp_f = 0, Bm_f = 0, C_f = 0;
  double ds_00 = 0, ds_01 = 0, ds_10 = 0, ds_11 = 0;
  double dJ0 = 0, dJ1 = 0, dJ2 = 0, dBp = 0, dBm = 0, dC = 0;
  double dC0 = 0, dC1 = 0, dJ0_0 = 0, dJ0_1 = 0;

  static constexpr int kColumns = 37;
  static const std::array<const char*, kColumns>& column_names();
  std::array<double, kColumns> values() const;
  static SweepRow from_values(const std::array<double, kColumns>& v);
};

// Everything computed for one field value, at one feedback angle (the
// optimal one unless overridden). The same routine backs the sweep, the
// single-point report, and the fits, so their numbers agree exactly.
struct PointAnalysis {
  GroundStateSolution gs;
  std::array<MeasurementOutcome, 2> outcomes;
  double theta = 0.0;  // angle actually applied
  ProtocolRun run;
  EnergyBreakdown breakdown;  // at the applied angle
  EntropyLedger ledger;
  Mat rho34_g, rho34_f;
  EffectiveHamiltonian eff_g, eff_f;
  BlockSpectrum spect_g, spect_f;
  EntropyDecomposition dec;
  SweepRow row;
};

PointAnalysis analyze_point(double h, std::optional<double> theta_override = {},
                            int theta_grid_resolution = 1000);

// Numeric consistency checks that only need the row values; used when rows
// are written out. Throws InvariantViolation naming the offending row. The
// breakdown identity E4_h + E34_int = E_B_max only holds when the row was
// computed at the optimal angle, which is the only kind of row a sweep
// produces.
void check_row_invariants(const SweepRow& row);

struct SweepConfig {
  double h_min = 0.0;
  double h_max = 0.99;
  int steps = 100;
  int theta_grid_resolution = 1000;
  std::string output_dir = ".";
  bool emit_svg = false;
};

// Throws ConfigError unless 0 <= h_min < h_max < 1 and steps >= 2.
void validate(const SweepConfig& config);

std::vector<double> sweep_grid(const SweepConfig& config);

std::vector<SweepRow> sweep_serial(const SweepConfig& config);

// Same rows; grid points are independent, so they are computed concurrently
// when OpenMP is available (identical arithmetic per row either way).
std::vector<SweepRow> sweep_parallel(const SweepConfig& config);

}  // namespace qet
