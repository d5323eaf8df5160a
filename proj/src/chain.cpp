#include "qet/chain.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qet {

namespace {

constexpr int kSites = 4;
constexpr Eigen::Index kDim = 16;

// Basis indices of the six amplitudes in the ground-state pattern.
constexpr Eigen::Index kUdud = 0b0101;  // +a
constexpr Eigen::Index kDudu = 0b1010;  // +a
constexpr Eigen::Index kUudd = 0b0011;  // -b
constexpr Eigen::Index kDduu = 0b1100;  // -b
constexpr Eigen::Index kUddu = 0b0110;  // -c
constexpr Eigen::Index kDuud = 0b1001;  // -d

}  // namespace

Mat spin_op(char axis, int site) {
  return 0.5 * embed_site_operator(axis, site, kSites);
}

Mat heisenberg_bond(int i, int j) {
  Mat out = Mat::Zero(kDim, kDim);
  for (char axis : {'x', 'y', 'z'}) {
    out += spin_op(axis, i) * spin_op(axis, j);
  }
  return out;
}

HamiltonianParts build_hamiltonian(const ModelParams& params, double eta,
                                   double xi) {
  const Mat id = Mat::Identity(kDim, kDim);
  HamiltonianParts parts;
  parts.H_A = params.h * spin_op('z', 1) + heisenberg_bond(1, 2) + eta * id;
  parts.H_B = params.h * spin_op('z', 4) + heisenberg_bond(3, 4) + eta * id;
  parts.V = heisenberg_bond(2, 3) + xi * id;
  parts.H = parts.H_A + parts.H_B + parts.V;
  return parts;
}

GroundStateSolution solve_ground_state(const ModelParams& params) {
  if (!(params.h >= 0.0 && params.h < 1.0)) {
    throw DomainError("solve_ground_state: field h = " +
                      std::to_string(params.h) +
                      " outside the supported range [0, 1)");
  }

  const HamiltonianParts raw = build_hamiltonian(params, 0.0, 0.0);
  EigResult eig = eig_hermitian(raw.H);

  const double gap = eig.values[1] - eig.values[0];
  if (gap < 1e-10) {
    throw DegenerateGroundState(
        "solve_ground_state: spectral gap " + std::to_string(gap) +
        " below 1e-10, the lowest level is (nearly) crossed");
  }

  Vec psi = eig.vectors.col(0);

  // Magnetization sector check on the full vector: zero total magnetization
  // means exactly two down spins, i.e. basis indices with two set bits.
  double outside = 0.0;
  for (Eigen::Index idx = 0; idx < kDim; ++idx) {
    if (std::popcount(static_cast<unsigned>(idx)) != 2) {
      outside += std::norm(psi[idx]);
    }
  }
  if (outside > 1e-10) {
    throw SectorViolation(
        "solve_ground_state: weight " + std::to_string(outside) +
        " outside the zero-magnetization sector");
  }

  // Fix the global phase: make the |udud> amplitude real positive; if it is
  // (numerically) absent, use the |uddu> amplitude instead.
  Complex anchor = psi[kUdud];
  if (std::abs(anchor) < 1e-10) anchor = -psi[kUddu];
  if (std::abs(anchor) > 0.0) psi *= std::conj(anchor) / std::abs(anchor);

  GroundStateSolution gs;
  gs.h = params.h;
  gs.gap = gap;
  gs.psi = psi;
  gs.a = psi[kUdud].real();
  gs.b = -psi[kUudd].real();
  gs.c = -psi[kUddu].real();
  gs.d = -psi[kDuud].real();

  // Calibration offsets from the ground-state expectation values: eta and
  // xi shift H_A, H_B, V so each has zero expectation in |g>.
  const auto expect = [&](const Mat& op) {
    return (psi.adjoint() * op * psi)(0, 0).real();
  };
  const double eta_trace =
      -expect(params.h * spin_op('z', 1) + heisenberg_bond(1, 2));
  const double xi_trace = -expect(heisenberg_bond(2, 3));

  // The same offsets in closed form over the amplitude pattern.
  const double a = gs.a, b = gs.b, c = gs.c, d = gs.d, h = params.h;
  const double eta_closed =
      0.25 * (1.0 - 4.0 * b * b - 2.0 * h * (c * c - d * d) +
              4.0 * a * (c + d));
  const double xi_closed =
      0.25 * (2.0 * a * a + 2.0 * b * b - c * c - d * d + 8.0 * a * b);

  if (std::abs(eta_trace - eta_closed) > 1e-10 ||
      std::abs(xi_trace - xi_closed) > 1e-10) {
    throw InvariantViolation(
        "solve_ground_state: closed-form offsets disagree with expectation "
        "values (eta " +
        std::to_string(eta_trace) + " vs " + std::to_string(eta_closed) +
        ", xi " + std::to_string(xi_trace) + " vs " +
        std::to_string(xi_closed) + ")");
  }

  gs.cal = {eta_trace, xi_trace};
  gs.energy = eig.values[0] + 2.0 * gs.cal.eta + gs.cal.xi;
  return gs;
}

CalibrationReport validate_calibration(const GroundStateSolution& gs) {
  const HamiltonianParts parts =
      build_hamiltonian({gs.h}, gs.cal.eta, gs.cal.xi);
  const auto expect = [&](const Mat& op) {
    return (gs.psi.adjoint() * op * gs.psi)(0, 0).real();
  };
  CalibrationReport rep;
  rep.E_A = expect(parts.H_A);
  rep.E_B = expect(parts.H_B);
  rep.V = expect(parts.V);
  rep.total = expect(parts.H);
  rep.min_coefficient = std::min(std::min(gs.a, gs.b), std::min(gs.c, gs.d));

  const auto check = [](double value, const char* name) {
    if (std::abs(value) > 1e-10) {
      throw CalibrationFailure(std::string("validate_calibration: <") + name +
                               "> = " + std::to_string(value));
    }
  };
  check(rep.E_A, "H_A");
  check(rep.E_B, "H_B");
  check(rep.V, "V");
  check(rep.total, "H");
  return rep;
}

}  // namespace qet
