#pragma once

#include <array>

#include "qet/protocol.hpp"

namespace qet {

// Entropic side of the protocol: entropies of the site-3/4 (and site-4)
// reductions, the information gained by the measurement, and a thermal
// reading of the reduced states through an effective Hamiltonian
// rho_34 = exp(-beta H_34).

struct EntropyLedger {
  double S34_g = 0.0, S34_f = 0.0;  // sites {3,4} before/after the protocol
  double S4_g = 0.0, S4_f = 0.0;    // site {4} alone
  double I_QC = 0.0;  // S(rho34_g) - sum_mu p_mu S(rho34_m(mu)): what the
                      // measurement learned about the far end
  double dS34 = 0.0;  // S34_f - S34_g
  double dS4 = 0.0;   // S4_f - S4_g
};

// -log rho_34 written over the two-site operator basis
//
//   betaH = 2 J2 (S3^x S4^x - S3^y S4^y) + 2 J1 (S3^x S4^x + S3^y S4^y)
//         + J0 S3^z S4^z + Bp (S3^z + S4^z) + Bm (S3^z - S4^z) + C
//
// which couples only within the even block {uu, dd} and the odd block
// {ud, du} of the two-site magnetization.
struct EffectiveHamiltonian {
  double beta = 0.0;
  Mat betaH;  // 4x4, -log rho_34; H_34 itself is betaH / beta
  double J0 = 0.0, J1 = 0.0, J2 = 0.0;
  double Bp = 0.0, Bm = 0.0, C = 0.0;
  double offblock_residual = 0.0;  // how much of betaH the form above misses
};

// The two 2x2 blocks of betaH and their spectra. Block index 1 is the even
// magnetization block on {uu, dd}; block index 0 is the odd block on
// {ud, du}. Eigenvalues ascend within each block.
struct BlockSpectrum {
  Eigen::Matrix2d delta1, delta0;
  std::array<std::array<double, 2>, 2> lambda{};  // [block][level]
  std::array<Eigen::Matrix2d, 2> vecs{};          // columns per block
};

// Per-level and per-operator decomposition of dS34 between two thermal
// readings at a common beta. ds[j][i] pairs levels by ascending order within
// block j. The operator pieces are changes of coefficient-weighted
// expectations; they sum to dS34 exactly because tr(rho.betaH) equals the
// entropy for a state of the form exp(-betaH).
struct EntropyDecomposition {
  std::array<std::array<double, 2>, 2> ds{};  // [block][level]
  double dJ0 = 0.0, dJ1 = 0.0, dJ2 = 0.0;
  double dBp = 0.0, dBm = 0.0, dC = 0.0;
  std::array<double, 2> dC_j{};   // dC split by block; sums to dC
  std::array<double, 2> dJ0_j{};  // dJ0 split by block; sums to dJ0
};

// The beta used for the thermal reading throughout: the empirical
// energy/entropy proportionality constant of the optimized protocol.
inline constexpr double kBetaEffective = -1.0 / 0.446;

EntropyLedger entropy_ledger(const GroundStateSolution& gs,
                             const std::array<MeasurementOutcome, 2>& outcomes,
                             const Mat& rho_f);

// Requires rho34 full rank (eigenvalues above 1e-12) and the block ansatz to
// hold to 1e-9, else BlockViolation.
EffectiveHamiltonian effective_hamiltonian(const Mat& rho34, double beta);

BlockSpectrum block_spectrum(const EffectiveHamiltonian& eff);

EntropyDecomposition entropy_decomposition(const EffectiveHamiltonian& eff_g,
                                           const EffectiveHamiltonian& eff_f,
                                           const BlockSpectrum& spect_g,
                                           const BlockSpectrum& spect_f,
                                           const Mat& rho34_g,
                                           const Mat& rho34_f);

struct FitResult {
  double slope = 0.0;
  double max_rel_deviation = 0.0;
};

// Least-squares slope through the origin, slope = sum(xy)/sum(x^2), plus the
// worst relative deviation |y - slope*x|/|y| over points with |y| > 1e-6
// (both fitted quantities vanish together at the origin of the sweeps, where
// the ratio is noise). Throws AllZero when sum(x^2) < 1e-20.
FitResult proportionality_fit(const std::vector<double>& xs,
                              const std::vector<double>& ys);

}  // namespace qet
