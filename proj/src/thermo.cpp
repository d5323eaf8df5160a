#include "qet/thermo.hpp"

#include <cmath>
#include <string>

namespace qet {

namespace {

// Reduced two-site basis order is {uu, ud, du, dd} with site 3 the more
// significant qubit. Even-magnetization block: indices {0, 3}; odd block:
// indices {1, 2}.

}  // namespace

EntropyLedger entropy_ledger(const GroundStateSolution& gs,
                             const std::array<MeasurementOutcome, 2>& outcomes,
                             const Mat& rho_f) {
  const Mat rho_g = gs.rho();
  EntropyLedger led;
  led.S34_g = von_neumann_entropy(partial_trace(rho_g, {3, 4}));
  led.S34_f = von_neumann_entropy(partial_trace(rho_f, {3, 4}));
  led.S4_g = von_neumann_entropy(partial_trace(rho_g, {4}));
  led.S4_f = von_neumann_entropy(partial_trace(rho_f, {4}));

  double post = 0.0;
  for (const auto& o : outcomes) {
    post += o.probability *
            von_neumann_entropy(partial_trace(o.post_state, {3, 4}));
  }
  led.I_QC = led.S34_g - post;
  led.dS34 = led.S34_f - led.S34_g;
  led.dS4 = led.S4_f - led.S4_g;
  return led;
}

EffectiveHamiltonian effective_hamiltonian(const Mat& rho34, double beta) {
  if (rho34.rows() != 4 || rho34.cols() != 4) {
    throw ConfigError("effective_hamiltonian: expected a 4x4 state");
  }
  if (beta == 0.0) {
    throw DomainError("effective_hamiltonian: beta must be nonzero");
  }
  EffectiveHamiltonian eff;
  eff.beta = beta;
  eff.betaH = -matrix_log(rho34, 1e-12);

  const Mat& m = eff.betaH;
  const double m00 = m(0, 0).real(), m11 = m(1, 1).real();
  const double m22 = m(2, 2).real(), m33 = m(3, 3).real();
  eff.J2 = 0.5 * (m(0, 3) + m(3, 0)).real();
  eff.J1 = 0.5 * (m(1, 2) + m(2, 1)).real();
  eff.Bp = 0.5 * (m00 - m33);
  eff.Bm = 0.5 * (m11 - m22);
  eff.C = 0.25 * (m00 + m11 + m22 + m33);
  eff.J0 = (m00 + m33) - (m11 + m22);

  // Reassemble; anything the six coefficients cannot represent (couplings
  // between the even and odd blocks, asymmetries, imaginary parts) lands in
  // the residual.
  Mat rebuilt = Mat::Zero(4, 4);
  rebuilt(0, 0) = eff.C + eff.J0 / 4.0 + eff.Bp;
  rebuilt(3, 3) = eff.C + eff.J0 / 4.0 - eff.Bp;
  rebuilt(1, 1) = eff.C - eff.J0 / 4.0 + eff.Bm;
  rebuilt(2, 2) = eff.C - eff.J0 / 4.0 - eff.Bm;
  rebuilt(0, 3) = rebuilt(3, 0) = eff.J2;
  rebuilt(1, 2) = rebuilt(2, 1) = eff.J1;
  eff.offblock_residual = (m - rebuilt).cwiseAbs().maxCoeff();
  if (eff.offblock_residual >= 1e-9) {
    throw BlockViolation(
        "effective_hamiltonian: block structure violated, residual = " +
        std::to_string(eff.offblock_residual));
  }
  return eff;
}

BlockSpectrum block_spectrum(const EffectiveHamiltonian& eff) {
  BlockSpectrum sp;
  sp.delta1 << eff.C + eff.J0 / 4.0 + eff.Bp, eff.J2,
               eff.J2, eff.C + eff.J0 / 4.0 - eff.Bp;
  sp.delta0 << eff.C - eff.J0 / 4.0 + eff.Bm, eff.J1,
               eff.J1, eff.C - eff.J0 / 4.0 - eff.Bm;
  for (int block = 0; block < 2; ++block) {
    const Eigen::Matrix2d& d = (block == 1) ? sp.delta1 : sp.delta0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(d);
    sp.lambda[block][0] = solver.eigenvalues()[0];
    sp.lambda[block][1] = solver.eigenvalues()[1];
    sp.vecs[block] = solver.eigenvectors();
  }
  return sp;
}

EntropyDecomposition entropy_decomposition(const EffectiveHamiltonian& eff_g,
                                           const EffectiveHamiltonian& eff_f,
                                           const BlockSpectrum& spect_g,
                                           const BlockSpectrum& spect_f,
                                           const Mat& rho34_g,
                                           const Mat& rho34_f) {
  if (eff_g.beta != eff_f.beta) {
    throw DomainError(
        "entropy_decomposition: the two thermal readings must share beta");
  }

  EntropyDecomposition dec;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const double lf = spect_f.lambda[j][i];
      const double lg = spect_g.lambda[j][i];
      dec.ds[j][i] = std::exp(-lf) * lf - std::exp(-lg) * lg;
    }
  }

  // Operator pieces: each term is coefficient times expectation, evaluated
  // in the matching state, final minus initial.
  const auto expect = [](const Mat& rho, const Mat& op) {
    return (op * rho).trace().real();
  };
  Mat o_j0 = Mat::Zero(4, 4);  // S3^z S4^z
  o_j0.diagonal() << 0.25, -0.25, -0.25, 0.25;
  Mat o_j1 = Mat::Zero(4, 4);  // 2(S3^x S4^x + S3^y S4^y)
  o_j1(1, 2) = o_j1(2, 1) = 1.0;
  Mat o_j2 = Mat::Zero(4, 4);  // 2(S3^x S4^x - S3^y S4^y)
  o_j2(0, 3) = o_j2(3, 0) = 1.0;
  Mat o_bp = Mat::Zero(4, 4);  // S3^z + S4^z
  o_bp.diagonal() << 1.0, 0.0, 0.0, -1.0;
  Mat o_bm = Mat::Zero(4, 4);  // S3^z - S4^z
  o_bm.diagonal() << 0.0, 1.0, -1.0, 0.0;
  const Mat id = Mat::Identity(4, 4);

  const auto change = [&](double cg, double cf, const Mat& op) {
    return cf * expect(rho34_f, op) - cg * expect(rho34_g, op);
  };
  dec.dJ0 = change(eff_g.J0, eff_f.J0, o_j0);
  dec.dJ1 = change(eff_g.J1, eff_f.J1, o_j1);
  dec.dJ2 = change(eff_g.J2, eff_f.J2, o_j2);
  dec.dBp = change(eff_g.Bp, eff_f.Bp, o_bp);
  dec.dBm = change(eff_g.Bm, eff_f.Bm, o_bm);
  dec.dC = change(eff_g.C, eff_f.C, id);

  // Block-resolved splits. Within block j the operator S3^z S4^z acts as
  // +1/4 (even block) or -1/4 (odd block) times the identity, so the block
  // weights sum_i exp(-lambda) carry all the state dependence.
  for (int j = 0; j < 2; ++j) {
    const double wf =
        std::exp(-spect_f.lambda[j][0]) + std::exp(-spect_f.lambda[j][1]);
    const double wg =
        std::exp(-spect_g.lambda[j][0]) + std::exp(-spect_g.lambda[j][1]);
    const double zz = (j == 1) ? 0.25 : -0.25;
    dec.dC_j[j] = eff_f.C * wf - eff_g.C * wg;
    dec.dJ0_j[j] = zz * (eff_f.J0 * wf - eff_g.J0 * wg);
  }
  return dec;
}

FitResult proportionality_fit(const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw DomainError("proportionality_fit: need two same-length series");
  }
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  if (sxx < 1e-20) {
    throw AllZero("proportionality_fit: x series is identically zero");
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(ys[i]) <= 1e-6) continue;
    fit.max_rel_deviation =
        std::max(fit.max_rel_deviation,
                 std::abs(ys[i] - fit.slope * xs[i]) / std::abs(ys[i]));
  }
  return fit;
}

}  // namespace qet
