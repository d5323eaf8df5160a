#pragma once

#include "qet/linalg.hpp"

namespace qet {

// Four spin-1/2 sites in a line. The Hamiltonian splits into a left block
// (sites 1-2, carrying the field on site 1), a right block (sites 3-4,
// carrying the field on site 4) and the bond joining them:
//
//   H_A = h S1^z + S1.S2 + eta
//   H_B = h S4^z + S3.S4 + eta
//   V   = S2.S3 + xi
//
// with S^a = sigma^a / 2 and the exchange coupling set to 1. The offsets
// eta and xi are calibrated so that the ground state assigns zero energy to
// each of the three parts separately.

struct ModelParams {
  double h = 0.0;  // field in units of the exchange coupling, 0 <= h < 1
};

struct CalibrationConstants {
  double eta = 0.0;
  double xi = 0.0;
};

struct HamiltonianParts {
  Mat H_A, H_B, V, H;  // 16-dimensional; H = H_A + H_B + V
};

// The ground state in the zero-magnetization sector is supported on six
// basis states and, with the global phase fixed, takes the form
//
//   |g> = a(|udud> + |dudu>) - b(|uudd> + |dduu>) - c|uddu> - d|duud>
//
// (u = up = bit 0, d = down = bit 1, site 1 leftmost/most significant).
struct GroundStateSolution {
  double h = 0.0;
  double energy = 0.0;  // of the calibrated H; zero up to tolerance
  double gap = 0.0;     // distance to the first excited level
  Vec psi;              // dim 16, phase-fixed
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  CalibrationConstants cal;

  Mat rho() const { return psi * psi.adjoint(); }
};

// S^a = sigma^a/2 on site `site` of the 4-site register.
Mat spin_op(char axis, int site);

// S_i . S_j (vector of spin-1/2 operators dotted) on the 4-site register.
Mat heisenberg_bond(int i, int j);

HamiltonianParts build_hamiltonian(const ModelParams& params, double eta,
                                   double xi);

// Diagonalizes the uncalibrated Hamiltonian, verifies the ground state sits
// in the zero-magnetization sector, extracts the amplitude pattern above,
// and determines eta, xi both from the ground-state expectation values and
// from closed forms in (a,b,c,d,h); the two routes must agree to 1e-10.
GroundStateSolution solve_ground_state(const ModelParams& params);

struct CalibrationReport {
  double E_A = 0.0, E_B = 0.0, V = 0.0;  // ground-state expectations
  double total = 0.0;                    // <H>, also zero
  double min_coefficient = 0.0;          // min of (a,b,c,d), recorded
};

// Checks that all three calibrated parts have vanishing ground-state
// expectation value (tolerance 1e-10). Throws CalibrationFailure otherwise.
CalibrationReport validate_calibration(const GroundStateSolution& gs);

}  // namespace qet
