#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "qet/thermo.hpp"

using qet::Mat;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

double entropy_from_eigs(const std::vector<double>& vals) {
  double s = 0.0;
  for (double v : vals) {
    if (v > 1e-14) s -= v * std::log(v);
  }
  return s;
}

struct Setup {
  qet::GroundStateSolution gs;
  std::array<qet::MeasurementOutcome, 2> outs;
  Mat rho_f;
  Mat rho34_g, rho34_f;
};

Setup make_setup(double h) {
  Setup s{qet::solve_ground_state({h}), {}, {}, {}, {}};
  s.outs = qet::measure(s.gs);
  s.rho_f = qet::feedback(s.outs, qet::optimal_theta(s.gs).first);
  s.rho34_g = qet::partial_trace(s.gs.rho(), {3, 4});
  s.rho34_f = qet::partial_trace(s.rho_f, {3, 4});
  return s;
}

}  // namespace

TEST_CASE("entropy ledger against direct spectral computation") {
  for (double h : {0.2, 0.5, 0.9}) {
    CAPTURE(h);
    const Setup s = make_setup(h);
    const auto ledger = qet::entropy_ledger(s.gs, s.outs, s.rho_f);

    const double s34_g =
        entropy_from_eigs(oracle::eigvals(oracle::ptrace_bits(s.gs.rho(), {3, 4}, 4)));
    const double s34_f =
        entropy_from_eigs(oracle::eigvals(oracle::ptrace_bits(s.rho_f, {3, 4}, 4)));
    const double s4_g =
        entropy_from_eigs(oracle::eigvals(oracle::ptrace_bits(s.gs.rho(), {4}, 4)));
    const double s4_f =
        entropy_from_eigs(oracle::eigvals(oracle::ptrace_bits(s.rho_f, {4}, 4)));
    double mean_post = 0.0;
    for (const auto& o : s.outs) {
      mean_post += o.probability *
                   entropy_from_eigs(oracle::eigvals(
                       oracle::ptrace_bits(o.post_state, {3, 4}, 4)));
    }

    CHECK(std::abs(ledger.S34_g - s34_g) < 1e-10);
    CHECK(std::abs(ledger.S34_f - s34_f) < 1e-10);
    CHECK(std::abs(ledger.S4_g - s4_g) < 1e-10);
    CHECK(std::abs(ledger.S4_f - s4_f) < 1e-10);
    CHECK(std::abs(ledger.I_QC - (s34_g - mean_post)) < 1e-10);
    CHECK(std::abs(ledger.dS34 - (s34_f - s34_g)) < 1e-12);
    CHECK(std::abs(ledger.dS4 - (s4_f - s4_g)) < 1e-12);

    CHECK(ledger.I_QC >= 0.0);
    CHECK(ledger.I_QC <= ledger.S34_g + 1e-12);
    CHECK(-ledger.dS34 <= ledger.I_QC + 1e-12);
  }
}

TEST_CASE("effective hamiltonian reconstructs the reduced state") {
  for (double h : {0.1, 0.5, 0.85}) {
    CAPTURE(h);
    const Setup s = make_setup(h);
    for (const Mat* rho : {&s.rho34_g, &s.rho34_f}) {
      const auto eff = qet::effective_hamiltonian(*rho, qet::kBetaEffective);
      CHECK(max_abs(oracle::expm_taylor(-eff.betaH) - *rho) < 1e-10);
      CHECK(eff.offblock_residual < 1e-9);
      CHECK(eff.beta == qet::kBetaEffective);

      // the named coefficients really are the operator expansion
      const Mat sx = qet::pauli('x') / 2.0, sy = qet::pauli('y') / 2.0,
                sz = qet::pauli('z') / 2.0;
      const Mat id = Mat::Identity(2, 2);
      const auto kron2 = [](const Mat& a, const Mat& b) {
        Mat out(4, 4);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
          }
        }
        return out;
      };
      const Mat rebuilt =
          2.0 * eff.J2 * (kron2(sx, sx) - kron2(sy, sy)) +
          2.0 * eff.J1 * (kron2(sx, sx) + kron2(sy, sy)) +
          eff.J0 * kron2(sz, sz) +
          eff.Bp * (kron2(sz, id) + kron2(id, sz)) +
          eff.Bm * (kron2(sz, id) - kron2(id, sz)) +
          eff.C * Mat::Identity(4, 4);
      CHECK(max_abs(rebuilt - eff.betaH) < 1e-9);
    }

    // ground-state reading has no even-block mixing and no symmetric field
    const auto eff_g = qet::effective_hamiltonian(s.rho34_g, qet::kBetaEffective);
    CHECK(std::abs(eff_g.J2) < 1e-10);
    CHECK(std::abs(eff_g.Bp) < 1e-10);
  }
}

TEST_CASE("effective hamiltonian rejects bad input") {
  const Setup s = make_setup(0.5);
  CHECK_THROWS_AS(
      (void)qet::effective_hamiltonian(s.gs.rho(), qet::kBetaEffective),
      qet::ConfigError);
  CHECK_THROWS_AS((void)qet::effective_hamiltonian(s.rho34_g, 0.0),
                  qet::DomainError);

  // pure two-qubit state: no full-rank logarithm
  oracle::Rng rng(5);
  const qet::Vec psi = oracle::random_state(rng, 4);
  CHECK_THROWS_AS((void)qet::effective_hamiltonian(Mat(psi * psi.adjoint()),
                                                   qet::kBetaEffective),
                  qet::RankDeficient);

  // full rank but mixing the even and odd blocks
  Mat off = Mat::Identity(4, 4) * 0.25;
  off(0, 1) = off(1, 0) = 0.01;
  CHECK_THROWS_AS((void)qet::effective_hamiltonian(off, qet::kBetaEffective),
                  qet::BlockViolation);
}

TEST_CASE("block spectra carry the full spectrum and normalize") {
  const Setup s = make_setup(0.5);
  for (const Mat* rho : {&s.rho34_g, &s.rho34_f}) {
    const auto eff = qet::effective_hamiltonian(*rho, qet::kBetaEffective);
    const auto sp = qet::block_spectrum(eff);

    CHECK(sp.lambda[0][0] <= sp.lambda[0][1]);
    CHECK(sp.lambda[1][0] <= sp.lambda[1][1]);

    std::vector<double> collected = {sp.lambda[0][0], sp.lambda[0][1],
                                     sp.lambda[1][0], sp.lambda[1][1]};
    std::sort(collected.begin(), collected.end());
    const std::vector<double> ref = oracle::eigvals(eff.betaH);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(collected[k] - ref[k]) < 1e-10);
    }

    double z = 0.0;
    for (double lam : collected) z += std::exp(-lam);
    CHECK(std::abs(z - 1.0) < 1e-10);
  }
}

TEST_CASE("entropy decomposition obeys its sum rules") {
  for (double h : {0.3, 0.5, 0.9}) {
    CAPTURE(h);
    const Setup s = make_setup(h);
    const auto ledger = qet::entropy_ledger(s.gs, s.outs, s.rho_f);
    const auto eff_g = qet::effective_hamiltonian(s.rho34_g, qet::kBetaEffective);
    const auto eff_f = qet::effective_hamiltonian(s.rho34_f, qet::kBetaEffective);
    const auto sp_g = qet::block_spectrum(eff_g);
    const auto sp_f = qet::block_spectrum(eff_f);
    const auto dec = qet::entropy_decomposition(eff_g, eff_f, sp_g, sp_f,
                                                s.rho34_g, s.rho34_f);

    const double ds_sum =
        dec.ds[0][0] + dec.ds[0][1] + dec.ds[1][0] + dec.ds[1][1];
    const double coeff_sum =
        dec.dJ0 + dec.dJ1 + dec.dJ2 + dec.dBp + dec.dBm + dec.dC;
    CHECK(std::abs(ds_sum - ledger.dS34) < 1e-10);
    CHECK(std::abs(coeff_sum - ledger.dS34) < 1e-10);
    CHECK(std::abs(dec.dC_j[0] + dec.dC_j[1] - dec.dC) < 1e-10);
    CHECK(std::abs(dec.dJ0_j[0] + dec.dJ0_j[1] - dec.dJ0) < 1e-10);

    // tr(rho.betaH) is the entropy for states of this form, so the thermal
    // energy drop reads off the entropy change
    const double s_g = (eff_g.betaH * s.rho34_g).trace().real();
    const double s_f = (eff_f.betaH * s.rho34_f).trace().real();
    CHECK(std::abs(s_g - qet::von_neumann_entropy(s.rho34_g)) < 1e-10);
    CHECK(std::abs(s_f - qet::von_neumann_entropy(s.rho34_f)) < 1e-10);
    const double e_g = s_g / eff_g.beta;
    const double e_f = s_f / eff_f.beta;
    CHECK(std::abs((e_g - e_f) - (-ledger.dS34 / qet::kBetaEffective)) <
          1e-10);
  }

  SUBCASE("mixed betas are rejected") {
    const Setup s = make_setup(0.5);
    const auto eff_g = qet::effective_hamiltonian(s.rho34_g, qet::kBetaEffective);
    const auto eff_f = qet::effective_hamiltonian(s.rho34_f, -1.0);
    const auto sp_g = qet::block_spectrum(eff_g);
    const auto sp_f = qet::block_spectrum(eff_f);
    CHECK_THROWS_AS((void)qet::entropy_decomposition(eff_g, eff_f, sp_g, sp_f,
                                                     s.rho34_g, s.rho34_f),
                    qet::DomainError);
  }
}

TEST_CASE("regression goldens at h = 0.5") {
  const Setup s = make_setup(0.5);
  const auto ledger = qet::entropy_ledger(s.gs, s.outs, s.rho_f);
  CHECK(std::abs(ledger.S34_g - 0.2689493218299478) < 1e-9);
  CHECK(std::abs(ledger.I_QC - 0.11710230391463991) < 1e-9);
  CHECK(std::abs(ledger.dS34 - 0.005870183762029968) < 1e-9);
  CHECK(std::abs(ledger.dS4 - -0.007593933694746813) < 1e-9);

  const auto eff_g = qet::effective_hamiltonian(s.rho34_g, qet::kBetaEffective);
  const auto eff_f = qet::effective_hamiltonian(s.rho34_f, qet::kBetaEffective);
  CHECK(std::abs(eff_g.J0 - 3.760794391537) < 1e-8);
  CHECK(std::abs(eff_g.J1 - 1.95941061664) < 1e-8);
  CHECK(std::abs(eff_g.Bm - -0.547670456334) < 1e-8);
  CHECK(std::abs(eff_g.C - 3.030123818273) < 1e-8);
  CHECK(std::abs(eff_f.J0 - 3.793740910582) < 1e-8);
  CHECK(std::abs(eff_f.J1 - 1.9506465576) < 1e-8);
  CHECK(std::abs(eff_f.J2 - -0.167644956385) < 1e-8);
  CHECK(std::abs(eff_f.Bp - 0.368699974291) < 1e-8);
  CHECK(std::abs(eff_f.Bm - -0.579888363262) < 1e-8);
  CHECK(std::abs(eff_f.C - 3.041296737415) < 1e-8);

  const auto sp_g = qet::block_spectrum(eff_g);
  const auto sp_f = qet::block_spectrum(eff_f);
  const auto dec = qet::entropy_decomposition(eff_g, eff_f, sp_g, sp_f,
                                              s.rho34_g, s.rho34_f);
  CHECK(std::abs(dec.ds[0][0] - 0.002166344127) < 1e-8);
  CHECK(std::abs(dec.ds[0][1] - -0.000173741858) < 1e-8);
  CHECK(std::abs(dec.ds[1][0] - 0.02454744077) < 1e-8);
  CHECK(std::abs(dec.ds[1][1] - -0.020669859277) < 1e-8);
  CHECK(std::abs(dec.dC_j[0] - 0.003598292447) < 1e-8);
  CHECK(std::abs(dec.dC_j[1] - 0.007574626695) < 1e-8);
  CHECK(std::abs(dec.dJ0_j[0] - -0.005695137661) < 1e-8);
  CHECK(std::abs(dec.dJ0_j[1] - 0.0025414921) < 1e-8);
}

TEST_CASE("proportionality fit") {
  SUBCASE("recovers an exact proportionality") {
    std::vector<double> xs, ys;
    for (int i = 1; i <= 20; ++i) {
      xs.push_back(0.1 * i);
      ys.push_back(-0.73 * 0.1 * i);
    }
    const auto fit = qet::proportionality_fit(xs, ys);
    CHECK(std::abs(fit.slope - -0.73) < 1e-14);
    CHECK(fit.max_rel_deviation < 1e-12);
  }
  SUBCASE("reports the worst relative miss") {
    const auto fit = qet::proportionality_fit({1.0, 2.0}, {1.0, 2.2});
    CHECK(fit.slope == doctest::Approx((1.0 + 4.4) / 5.0));
    CHECK(fit.max_rel_deviation > 0.0);
  }
  SUBCASE("tiny responses are excluded from the deviation") {
    const auto fit = qet::proportionality_fit({0.0, 1.0}, {1e-9, 2.0});
    CHECK(std::abs(fit.slope - 2.0) < 1e-12);
    CHECK(fit.max_rel_deviation < 1e-12);
  }
  SUBCASE("degenerate inputs") {
    CHECK_THROWS_AS((void)qet::proportionality_fit({0.0, 0.0}, {1.0, 1.0}),
                    qet::AllZero);
    CHECK_THROWS_AS((void)qet::proportionality_fit({1.0}, {1.0}),
                    qet::DomainError);
    CHECK_THROWS_AS((void)qet::proportionality_fit({1.0, 2.0}, {1.0}),
                    qet::DomainError);
  }
}
