#include "qet/analysis.hpp"

#include <cmath>
#include <exception>
#include <sstream>

namespace qet {

namespace {

void require(bool ok, const std::string& what, double h) {
  if (!ok) {
    std::ostringstream msg;
    msg << "invariant violated at h = " << h << ": " << what;
    throw InvariantViolation(msg.str());
  }
}

void require_close(double lhs, double rhs, double tol, const std::string& what,
                   double h) {
  if (!(std::abs(lhs - rhs) <= tol)) {
    std::ostringstream msg;
    msg << "invariant violated at h = " << h << ": " << what << " (" << lhs
        << " vs " << rhs << ")";
    throw InvariantViolation(msg.str());
  }
}

}  // namespace

const std::array<const char*, SweepRow::kColumns>& SweepRow::column_names() {
  static const std::array<const char*, kColumns> names = {
      "h",     "E_A",   "E12_int", "E_B_max", "theta_star", "E4_h",
      "E34_int", "S34_g", "I_QC",  "dS34",    "dS4",        "J0_g",
      "J1_g",  "J2_g",  "Bp_g",    "Bm_g",    "C_g",        "J0_f",
      "J1_f",  "J2_f",  "Bp_f",    "Bm_f",    "C_f",        "ds_00",
      "ds_01", "ds_10", "ds_11",   "dJ0",     "dJ1",        "dJ2",
      "dBp",   "dBm",   "dC",      "dC0",     "dC1",        "dJ0_0",
      "dJ0_1"};
  return names;
}

std::array<double, SweepRow::kColumns> SweepRow::values() const {
  return {h,     E_A,   E12_int, E_B_max, theta_star, E4_h,  E34_int,
          S34_g, I_QC,  dS34,    dS4,     J0_g,       J1_g,  J2_g,
          Bp_g,  Bm_g,  C_g,     J0_f,    J1_f,       J2_f,  Bp_f,
          Bm_f,  C_f,   ds_00,   ds_01,   ds_10,      ds_11, dJ0,
          dJ1,   dJ2,   dBp,     dBm,     dC,         dC0,   dC1,
          dJ0_0, dJ0_1};
}

SweepRow SweepRow::from_values(const std::array<double, kColumns>& v) {
  SweepRow r;
  int i = 0;
  r.h = v[i++]; r.E_A = v[i++]; r.E12_int = v[i++]; r.E_B_max = v[i++];
  r.theta_star = v[i++]; r.E4_h = v[i++]; r.E34_int = v[i++];
  r.S34_g = v[i++]; r.I_QC = v[i++]; r.dS34 = v[i++]; r.dS4 = v[i++];
  r.J0_g = v[i++]; r.J1_g = v[i++]; r.J2_g = v[i++]; r.Bp_g = v[i++];
  r.Bm_g = v[i++]; r.C_g = v[i++]; r.J0_f = v[i++]; r.J1_f = v[i++];
  r.J2_f = v[i++]; r.Bp_f = v[i++]; r.Bm_f = v[i++]; r.C_f = v[i++];
  r.ds_00 = v[i++]; r.ds_01 = v[i++]; r.ds_10 = v[i++]; r.ds_11 = v[i++];
  r.dJ0 = v[i++]; r.dJ1 = v[i++]; r.dJ2 = v[i++]; r.dBp = v[i++];
  r.dBm = v[i++]; r.dC = v[i++]; r.dC0 = v[i++]; r.dC1 = v[i++];
  r.dJ0_0 = v[i++]; r.dJ0_1 = v[i++];
  return r;
}

PointAnalysis analyze_point(double h, std::optional<double> theta_override,
                            int theta_grid_resolution) {
  PointAnalysis pa;
  pa.gs = solve_ground_state({h});
  validate_calibration(pa.gs);
  pa.outcomes = measure(pa.gs);

  const auto [theta_star, eb_max] = optimal_theta(pa.gs);
  pa.theta = theta_override.value_or(theta_star);

  pa.run.E_A = infused_energy(pa.gs, pa.outcomes);
  pa.run.theta_star = theta_star;
  pa.run.E_B_max = eb_max;
  std::tie(pa.run.X, pa.run.Y) = xy_coefficients(pa.gs);
  pa.run.rho_f = feedback(pa.outcomes, pa.theta);
  pa.run.E_B_of_theta = extracted_energy(pa.gs, pa.run.rho_f);
  pa.breakdown = extraction_breakdown(pa.gs, pa.run.rho_f);
  pa.ledger = entropy_ledger(pa.gs, pa.outcomes, pa.run.rho_f);

  pa.rho34_g = partial_trace(pa.gs.rho(), {3, 4});
  pa.rho34_f = partial_trace(pa.run.rho_f, {3, 4});
  pa.eff_g = effective_hamiltonian(pa.rho34_g, kBetaEffective);
  pa.eff_f = effective_hamiltonian(pa.rho34_f, kBetaEffective);
  pa.spect_g = block_spectrum(pa.eff_g);
  pa.spect_f = block_spectrum(pa.eff_f);
  pa.dec = entropy_decomposition(pa.eff_g, pa.eff_f, pa.spect_g, pa.spect_f,
                                 pa.rho34_g, pa.rho34_f);

  // Internal consistency, enforced on every analysis.
  const HamiltonianParts parts =
      build_hamiltonian({h}, pa.gs.cal.eta, pa.gs.cal.xi);
  require_close(pa.run.E_A, closed_form_EA(pa.gs), 1e-10,
                "direct vs closed-form infused energy", h);
  require_close(pa.run.E_B_of_theta, closed_form_EB(pa.gs, pa.theta), 1e-10,
                "direct vs closed-form extracted energy", h);
  require_close((parts.H * pa.run.rho_f).trace().real(),
                pa.run.E_A - pa.run.E_B_of_theta, 1e-10,
                "post-feedback energy bookkeeping", h);
  require(std::abs((parts.V * pa.run.rho_f).trace().real()) <= 1e-10,
          "bond 2-3 stays at zero energy after feedback", h);
  for (const auto& o : pa.outcomes) {
    require(std::abs((parts.V * o.post_state).trace().real()) <= 1e-10,
            "bond 2-3 stays at zero energy after measurement", h);
  }
  for (int i = 0; i < theta_grid_resolution; ++i) {
    const double theta = M_PI * i / theta_grid_resolution;
    require(closed_form_EB(pa.gs, theta) <= pa.run.E_B_max + 1e-12,
            "optimal angle beats the angle grid", h);
  }
  require_close(pa.breakdown.E4_h + pa.breakdown.E34_int, pa.run.E_B_of_theta,
                1e-10, "term-wise split sums to the extracted energy", h);
  require(-pa.ledger.dS34 <= pa.ledger.I_QC + 1e-12,
          "entropy decrease bounded by the information gain", h);
  require(pa.ledger.I_QC >= -1e-12 &&
              pa.ledger.I_QC <= pa.ledger.S34_g + 1e-12,
          "information gain within [0, S34_g]", h);

  const double ds_sum = pa.dec.ds[0][0] + pa.dec.ds[0][1] + pa.dec.ds[1][0] +
                        pa.dec.ds[1][1];
  const double coeff_sum = pa.dec.dJ0 + pa.dec.dJ1 + pa.dec.dJ2 + pa.dec.dBp +
                           pa.dec.dBm + pa.dec.dC;
  require_close(ds_sum, pa.ledger.dS34, 1e-9,
                "level-resolved entropy split sums to dS34", h);
  require_close(coeff_sum, pa.ledger.dS34, 1e-9,
                "operator-resolved entropy split sums to dS34", h);
  require_close(pa.dec.dC_j[0] + pa.dec.dC_j[1], pa.dec.dC, 1e-10,
                "block split of dC", h);
  require_close(pa.dec.dJ0_j[0] + pa.dec.dJ0_j[1], pa.dec.dJ0, 1e-10,
                "block split of dJ0", h);

  for (const auto* eff : {&pa.eff_g, &pa.eff_f}) {
    const Mat* rho = (eff == &pa.eff_g) ? &pa.rho34_g : &pa.rho34_f;
    EigResult eig = eig_hermitian(eff->betaH);
    Mat back = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      back += std::exp(-eig.values[i]) * eig.vectors.col(i) *
              eig.vectors.col(i).adjoint();
    }
    require((back - *rho).cwiseAbs().maxCoeff() <= 1e-10,
            "exp(-betaH) reconstructs the reduced state", h);
  }
  for (const auto* sp : {&pa.spect_g, &pa.spect_f}) {
    const double z = std::exp(-sp->lambda[0][0]) + std::exp(-sp->lambda[0][1]) +
                     std::exp(-sp->lambda[1][0]) + std::exp(-sp->lambda[1][1]);
    require_close(z, 1.0, 1e-10, "block spectra normalize", h);
  }
  // Thermal energy identity: at shared beta, the energy drop of the reduced
  // state equals -dS34/beta.
  const double e_g = (pa.eff_g.betaH * pa.rho34_g).trace().real() / pa.eff_g.beta;
  const double e_f = (pa.eff_f.betaH * pa.rho34_f).trace().real() / pa.eff_f.beta;
  require_close(e_g - e_f, -pa.ledger.dS34 / kBetaEffective, 1e-9,
                "thermal reading of the entropy change", h);

  SweepRow& r = pa.row;
  r.h = h;
  r.E_A = pa.run.E_A;
  r.E12_int = pa.breakdown.E12_int;
  r.E_B_max = pa.run.E_B_max;
  r.theta_star = pa.run.theta_star;
  r.E4_h = pa.breakdown.E4_h;
  r.E34_int = pa.breakdown.E34_int;
  r.S34_g = pa.ledger.S34_g;
  r.I_QC = pa.ledger.I_QC;
  r.dS34 = pa.ledger.dS34;
  r.dS4 = pa.ledger.dS4;
  r.J0_g = pa.eff_g.J0; r.J1_g = pa.eff_g.J1; r.J2_g = pa.eff_g.J2;
  r.Bp_g = pa.eff_g.Bp; r.Bm_g = pa.eff_g.Bm; r.C_g = pa.eff_g.C;
  r.J0_f = pa.eff_f.J0; r.J1_f = pa.eff_f.J1; r.J2_f = pa.eff_f.J2;
  r.Bp_f = pa.eff_f.Bp; r.Bm_f = pa.eff_f.Bm; r.C_f = pa.eff_f.C;
  r.ds_00 = pa.dec.ds[0][0]; r.ds_01 = pa.dec.ds[0][1];
  r.ds_10 = pa.dec.ds[1][0]; r.ds_11 = pa.dec.ds[1][1];
  r.dJ0 = pa.dec.dJ0; r.dJ1 = pa.dec.dJ1; r.dJ2 = pa.dec.dJ2;
  r.dBp = pa.dec.dBp; r.dBm = pa.dec.dBm; r.dC = pa.dec.dC;
  r.dC0 = pa.dec.dC_j[0]; r.dC1 = pa.dec.dC_j[1];
  r.dJ0_0 = pa.dec.dJ0_j[0]; r.dJ0_1 = pa.dec.dJ0_j[1];
  return pa;
}

void check_row_invariants(const SweepRow& r) {
  const double ds_sum = r.ds_00 + r.ds_01 + r.ds_10 + r.ds_11;
  const double coeff_sum = r.dJ0 + r.dJ1 + r.dJ2 + r.dBp + r.dBm + r.dC;
  require_close(ds_sum, r.dS34, 1e-9, "row level split vs dS34", r.h);
  require_close(coeff_sum, r.dS34, 1e-9, "row operator split vs dS34", r.h);
  require_close(r.dC0 + r.dC1, r.dC, 1e-10, "row dC block split", r.h);
  require_close(r.dJ0_0 + r.dJ0_1, r.dJ0, 1e-10, "row dJ0 block split", r.h);
  require_close(r.E4_h + r.E34_int, r.E_B_max, 1e-10,
                "row term-wise split vs E_B_max", r.h);
  require(-r.dS34 <= r.I_QC + 1e-12,
          "row entropy decrease bounded by information gain", r.h);
  require(r.I_QC <= r.S34_g + 1e-12, "row information below S34_g", r.h);
}

void validate(const SweepConfig& config) {
  if (!(config.h_min >= 0.0 && config.h_min < config.h_max &&
        config.h_max < 1.0)) {
    throw ConfigError("sweep: need 0 <= h_min < h_max < 1, got [" +
                      std::to_string(config.h_min) + ", " +
                      std::to_string(config.h_max) + "]");
  }
  if (config.steps < 2) {
    throw ConfigError("sweep: need at least 2 steps, got " +
                      std::to_string(config.steps));
  }
  if (config.theta_grid_resolution < 1) {
    throw ConfigError("sweep: theta grid resolution must be positive");
  }
}

std::vector<double> sweep_grid(const SweepConfig& config) {
  validate(config);
  std::vector<double> grid(config.steps);
  for (int i = 0; i < config.steps; ++i) {
    grid[i] = config.h_min +
              (config.h_max - config.h_min) * i / (config.steps - 1);
  }
  return grid;
}

std::vector<SweepRow> sweep_serial(const SweepConfig& config) {
  const std::vector<double> grid = sweep_grid(config);
  std::vector<SweepRow> rows(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    rows[i] = analyze_point(grid[i], {}, config.theta_grid_resolution).row;
  }
  return rows;
}

std::vector<SweepRow> sweep_parallel(const SweepConfig& config) {
  const std::vector<double> grid = sweep_grid(config);
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    try {
      rows[i] = analyze_point(grid[i], {}, config.theta_grid_resolution).row;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return rows;
}

}  // namespace qet
