#include "qet/minimal.hpp"

#include <cmath>
#include <string>

namespace qet {

namespace {

void require_params(const MinimalParams& p) {
  if (!(p.k > 0.0)) {
    throw DomainError("minimal model: coupling k must be positive, got " +
                      std::to_string(p.k));
  }
  if (!(p.h >= 0.0)) {
    throw DomainError("minimal model: field h must be nonnegative, got " +
                      std::to_string(p.h));
  }
}

double binary_entropy(double p0, double p1) {
  double s = 0.0;
  if (p0 > 1e-14) s -= p0 * std::log(p0);
  if (p1 > 1e-14) s -= p1 * std::log(p1);
  return s;
}

}  // namespace

MinimalResult minimal_closed_forms(const MinimalParams& p) {
  require_params(p);
  const double h = p.h, k = p.k;
  const double R = std::hypot(h, k);
  const double P = h * h + 2.0 * k * k;
  const double amp = std::hypot(P, h * k);

  MinimalResult res;
  res.a = std::sqrt(0.5 * (1.0 - h / R));
  res.b = std::sqrt(0.5 * (1.0 + h / R));
  res.theta = 0.5 * std::atan2(h * k, P);
  res.EB_max = (amp - P) / R;

  res.rhoB_g.setZero();
  res.rhoB_g(0, 0) = res.a * res.a;
  res.rhoB_g(1, 1) = res.b * res.b;

  const double c2 = std::cos(res.theta) * std::cos(res.theta);
  const double s2 = std::sin(res.theta) * std::sin(res.theta);
  const double shift = res.a * res.b * h * k / amp;
  res.rhoB_f.setZero();
  res.rhoB_f(0, 0) = res.a * res.a * c2 + res.b * res.b * s2 + shift;
  res.rhoB_f(1, 1) = res.b * res.b * c2 + res.a * res.a * s2 - shift;

  const double pg0 = res.rhoB_g(0, 0), pg1 = res.rhoB_g(1, 1);
  const double pf0 = res.rhoB_f(0, 0), pf1 = res.rhoB_f(1, 1);
  const double Sg = binary_entropy(pg0, pg1);
  res.dSB = binary_entropy(pf0, pf1) - Sg;
  res.dSB_tilde = -(pf0 * std::log(pg0) + pf1 * std::log(pg1)) - Sg;
  return res;
}

MinimalCrosscheck minimal_numeric_crosscheck(const MinimalParams& p) {
  require_params(p);
  const double h = p.h, k = p.k;
  const double R = std::hypot(h, k);

  // Two-qubit register, qubit A more significant: basis {uu, ud, du, dd}.
  Mat sz_a = Mat::Zero(4, 4), sz_b = Mat::Zero(4, 4), sxsx = Mat::Zero(4, 4);
  sz_a.diagonal() << 1, 1, -1, -1;
  sz_b.diagonal() << 1, -1, 1, -1;
  sxsx(0, 3) = sxsx(1, 2) = sxsx(2, 1) = sxsx(3, 0) = 1.0;
  const Mat id = Mat::Identity(4, 4);
  const Mat H = h * (sz_a + sz_b) + 2.0 * k * sxsx + 2.0 * R * id;

  EigResult eig = eig_hermitian(H);
  Vec psi = eig.vectors.col(0);
  {
    Complex anchor = psi[0];
    if (std::abs(anchor) > 0.0) psi *= std::conj(anchor) / std::abs(anchor);
  }

  Mat sx_a = Mat::Zero(4, 4);
  sx_a(0, 2) = sx_a(2, 0) = sx_a(1, 3) = sx_a(3, 1) = 1.0;
  Mat sy_b = Mat::Zero(4, 4);
  sy_b(0, 1) = sy_b(2, 3) = Complex{0.0, -1.0};
  sy_b(1, 0) = sy_b(3, 2) = Complex{0.0, 1.0};

  const Mat rho_g = psi * psi.adjoint();
  std::array<Mat, 2> post;
  std::array<double, 2> prob{};
  for (int mu = 0; mu < 2; ++mu) {
    const double sign = (mu == 0) ? 1.0 : -1.0;
    const Mat proj = 0.5 * (id + sign * sx_a);
    const Mat unnorm = proj * rho_g * proj;
    prob[mu] = unnorm.trace().real();
    post[mu] = unnorm / prob[mu];
  }
  Mat rho_m = prob[0] * post[0] + prob[1] * post[1];

  const auto reduce_b = [](const Mat& rho) {
    Eigen::Matrix2cd out;
    out(0, 0) = rho(0, 0) + rho(2, 2);
    out(0, 1) = rho(0, 1) + rho(2, 3);
    out(1, 0) = rho(1, 0) + rho(3, 2);
    out(1, 1) = rho(1, 1) + rho(3, 3);
    return out;
  };

  const auto rho_f_at = [&](double theta) {
    Mat rho_f = Mat::Zero(4, 4);
    for (int mu = 0; mu < 2; ++mu) {
      const double sign = (mu == 0) ? -1.0 : 1.0;
      const Mat u = std::cos(theta) * id +
                    Complex{0.0, 1.0} * sign * std::sin(theta) * sy_b;
      rho_f += prob[mu] * u * post[mu] * u.adjoint();
    }
    return rho_f;
  };
  const auto eb_at = [&](double theta) {
    return ((rho_m - rho_f_at(theta)) * H).trace().real();
  };

  // Maximize over the rotation angle: dense grid, then parabolic refinement
  // of the best bracket.
  const int n = 4096;
  double best_theta = 0.0, best = -1e300;
  for (int i = 0; i < n; ++i) {
    const double theta = M_PI * i / n;
    const double v = eb_at(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  double step = M_PI / n;
  for (int round = 0; round < 3; ++round) {
    const double e_minus = eb_at(best_theta - step);
    const double e_plus = eb_at(best_theta + step);
    const double denom = e_minus - 2.0 * best + e_plus;
    if (std::abs(denom) < 1e-300) break;
    const double shift = 0.5 * step * (e_minus - e_plus) / denom;
    const double cand_theta = best_theta + shift;
    const double cand = eb_at(cand_theta);
    if (cand > best) {
      best = cand;
      best_theta = cand_theta;
    }
    step /= 8.0;
  }

  const MinimalResult closed = minimal_closed_forms(p);
  MinimalCrosscheck chk;
  chk.ground_energy = eig.values[0];
  chk.rhoBg_error =
      (reduce_b(rho_g) - closed.rhoB_g.cast<Complex>()).cwiseAbs().maxCoeff();
  chk.rhoBf_error = (reduce_b(rho_f_at(best_theta)) -
                     closed.rhoB_f.cast<Complex>())
                        .cwiseAbs()
                        .maxCoeff();
  chk.EB_closed = closed.EB_max;
  chk.EB_numeric = best;
  chk.difference = std::abs(chk.EB_closed - chk.EB_numeric);
  return chk;
}

MinimalFits minimal_fits(double k, const std::vector<double>& h_grid) {
  MinimalFits fits;
  std::vector<double> eb, ds, dst;
  for (double h : h_grid) {
    const MinimalResult r = minimal_closed_forms({h, k});
    fits.curve.push_back({h, r.EB_max, r.dSB, r.dSB_tilde});
    eb.push_back(r.EB_max);
    ds.push_back(r.dSB);
    dst.push_back(r.dSB_tilde);
  }
  fits.fit = proportionality_fit(ds, eb);
  fits.fit_tilde = proportionality_fit(dst, eb);
  fits.beta = -1.0 / fits.fit.slope;
  fits.beta_tilde = -1.0 / fits.fit_tilde.slope;
  return fits;
}

}  // namespace qet
