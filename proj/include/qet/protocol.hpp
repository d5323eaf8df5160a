#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qet/chain.hpp"

namespace qet {

// Three-step protocol: a projective measurement on site 1, classical
// communication of the outcome, and an outcome-conditioned rotation on
// site 4. Energy bookkeeping is done against the calibrated Hamiltonian, so
// "infused" and "extracted" energies are plain expectation values.

struct MeasurementOutcome {
  int mu = 0;               // which projector fired
  double probability = 0.0;
  Mat post_state;           // normalized 16-dim density matrix
};

struct FeedbackSpec {
  double theta = 0.0;  // rotation angle about the y-axis at site 4
};

struct ProtocolRun {
  double E_A = 0.0;           // energy the measurement deposits
  double E_B_of_theta = 0.0;  // energy the feedback removes at this angle
  double theta_star = 0.0;
  double E_B_max = 0.0;
  double X = 0.0, Y = 0.0;    // closed-form coefficients:
                              // E_B(theta) = (X cos2theta + Y sin2theta - X)/8
  Mat rho_f;                  // post-feedback ensemble state
};

struct EnergyBreakdown {
  double E12_int = 0.0;  // bond 1-2 energy deposited by the measurement
  double E4_h = 0.0;     // field energy removed at site 4
  double E34_int = 0.0;  // bond 3-4 energy removed (negative: it is paid)
};

// Generalized protocol: measurement along an arbitrary unit axis r on
// site 1, and per-outcome rotations about arbitrary unit axes n0, n1 with
// angles omega0, omega1 on site 4.
struct GeneralProtocolParams {
  Eigen::Vector3d r{1.0, 0.0, 0.0};
  Eigen::Vector3d n0{0.0, 1.0, 0.0};
  Eigen::Vector3d n1{0.0, -1.0, 0.0};
  double omega0 = 0.0;
  double omega1 = 0.0;
};

// x-axis measurement on site 1: projectors (1 ± sigma1^x)/2.
std::array<MeasurementOutcome, 2> measure(const GroundStateSolution& gs);

// Average energy after the measurement (the ground state is calibrated to
// zero, so this is the infused energy), by direct trace.
double infused_energy(const GroundStateSolution& gs,
                      const std::array<MeasurementOutcome, 2>& outcomes);

// Same quantity from the amplitude closed form.
double closed_form_EA(const GroundStateSolution& gs);

// Portion of the infused energy sitting in the 1-2 bond.
double measurement_interaction_energy(
    const GroundStateSolution& gs,
    const std::array<MeasurementOutcome, 2>& outcomes);

// rho_f = sum_mu p_mu U4(mu) rho_m(mu) U4(mu)^dagger with
// U4(mu) = cos(theta) + i (-1)^mu sigma4^y sin(theta).
Mat feedback(const std::array<MeasurementOutcome, 2>& outcomes, double theta);

// Energy removed by the feedback, by direct trace: -<H_B> in rho_f (the
// other parts of H are unchanged by the rotation).
double extracted_energy(const GroundStateSolution& gs, const Mat& rho_f);

// The same from the closed form via (X, Y).
double closed_form_EB(const GroundStateSolution& gs, double theta);

// Closed-form coefficients (X, Y) of E_B(theta).
std::pair<double, double> xy_coefficients(const GroundStateSolution& gs);

// Maximizer of E_B(theta): 2 theta* = atan2(Y, X). If X and Y both vanish
// the objective is flat; returns (0, 0) rather than failing.
std::pair<double, double> optimal_theta(const GroundStateSolution& gs);

// Term-wise energy changes between rho_f and the ground state.
EnergyBreakdown extraction_breakdown(const GroundStateSolution& gs,
                                     const Mat& rho_f);

// Measurement along unit axis r: projectors (1 ± r.sigma1)/2.
std::array<MeasurementOutcome, 2> general_measure(const GroundStateSolution& gs,
                                                  const Eigen::Vector3d& r);

// Infused energy for the r-axis measurement, closed form (depends only on
// r_z by symmetry of the amplitude pattern).
double general_EA(const GroundStateSolution& gs, const Eigen::Vector3d& r);

// Post-feedback state for the generalized protocol.
Mat general_feedback(const std::array<MeasurementOutcome, 2>& outcomes,
                     const GeneralProtocolParams& params);

struct GeneralEB {
  double E_B = 0.0;
  // Per-outcome quadrature coefficients: the mu term of E_B equals
  // (x cos 2w + y sin 2w + z)/16 at rotation angle w, maximized at
  // 2w = atan2(y, x).
  std::array<double, 2> x{}, y{}, z{};
};

// Closed-form extracted energy for the generalized protocol.
GeneralEB general_EB(const GroundStateSolution& gs,
                     const GeneralProtocolParams& params);

struct ScanReport {
  double grid_max = 0.0;      // best E_B over the scanned protocol space
  double baseline_max = 0.0;  // optimum of the standard x-axis protocol
  std::vector<double> family_t;      // sampled planar-family parameter
  std::vector<double> family_value;  // family E_B at each t (optimal angles)
  GeneralProtocolParams best;        // refined grid arg max
  bool grid_within_tolerance = false;  // grid_max <= baseline_max + 1e-6
  bool family_attains = false;        // family values within 1e-8 of baseline
};

// Exhaustive scan of the generalized protocol space: `resolution` points per
// angular coordinate of r and each n_mu, the rotation angles handled exactly
// per grid point (the objective is a sinusoid in each omega), plus one local
// refinement pass around the best grid point. Verifies that nothing beats
// the standard protocol and that the planar family
// r = (cos t, sin t, 0), n_mu = ((-1)^mu sin t, (-1)^(mu+1) cos t, 0)
// attains the same optimum for every sampled t.
ScanReport optimality_scan(const GroundStateSolution& gs, int resolution = 32);

}  // namespace qet
