#include "qet/protocol.hpp"

#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qet {

namespace {

constexpr Eigen::Index kDim = 16;

void require_unit(const Eigen::Vector3d& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw ConfigError(std::string(name) + " must be a unit vector, |" + name +
                      "| = " + std::to_string(v.norm()));
  }
}

// r.sigma on the given site.
Mat axis_sigma(const Eigen::Vector3d& v, int site) {
  return v.x() * embed_site_operator('x', site, 4) +
         v.y() * embed_site_operator('y', site, 4) +
         v.z() * embed_site_operator('z', site, 4);
}

std::array<MeasurementOutcome, 2> project_site1(const GroundStateSolution& gs,
                                                const Eigen::Vector3d& axis) {
  const Mat id = Mat::Identity(kDim, kDim);
  const Mat sig = axis_sigma(axis, 1);
  const Mat rho_g = gs.rho();

  std::array<MeasurementOutcome, 2> out;
  double psum = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    const double sign = (mu == 0) ? 1.0 : -1.0;
    const Mat proj = 0.5 * (id + sign * sig);
    const Mat unnorm = proj * rho_g * proj;
    const double p = unnorm.trace().real();
    if (p < 1e-12) {
      throw ZeroProbability("measure: outcome " + std::to_string(mu) +
                            " has probability " + std::to_string(p));
    }
    out[mu] = {mu, p, unnorm / p};
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-12) {
    throw InvariantViolation("measure: probabilities sum to " +
                             std::to_string(psum));
  }
  return out;
}

// Scalars shared by the generalized closed forms.
struct ClosedFormContext {
  double a, b, c, d, h, eta;
  double G;  // 1 - 4b^2 - 2h(c^2 - d^2)
  double A;  // -4h(a^2+b^2) + (2h-1)c^2 + (2h+1)d^2 + 2a(c-d)
};

ClosedFormContext context_of(const GroundStateSolution& gs) {
  ClosedFormContext ctx{};
  ctx.a = gs.a;
  ctx.b = gs.b;
  ctx.c = gs.c;
  ctx.d = gs.d;
  ctx.h = gs.h;
  ctx.eta = gs.cal.eta;
  ctx.G = 1.0 - 4.0 * ctx.b * ctx.b - 2.0 * ctx.h * (ctx.c * ctx.c - ctx.d * ctx.d);
  ctx.A = -4.0 * ctx.h * (ctx.a * ctx.a + ctx.b * ctx.b) +
          (2.0 * ctx.h - 1.0) * ctx.c * ctx.c +
          (2.0 * ctx.h + 1.0) * ctx.d * ctx.d + 2.0 * ctx.a * (ctx.c - ctx.d);
  return ctx;
}

struct Quadrature {
  double x, y, z;
};

// The mu contribution to 16*E_B is x cos(2w) + y sin(2w) + z.
Quadrature general_xyz(const ClosedFormContext& ctx, const Eigen::Vector3d& r,
                       const Eigen::Vector3d& n, int mu) {
  const double m = (mu == 0) ? 1.0 : -1.0;
  const double a = ctx.a, b = ctx.b, c = ctx.c, d = ctx.d, h = ctx.h;
  const double nz2 = n.z() * n.z();
  const double cross =
      4.0 * b * n.z() * (r.x() * n.x() + r.y() * n.y()) * (c - d - 4.0 * h * a);
  const double rzx = 2.0 * r.z() * (nz2 * ctx.A - ctx.A + 4.0 * a * (c - d));
  const double rzz = 2.0 * r.z() * (-nz2 * ctx.A + 2.0 * a * (c - d) -
                                    4.0 * ctx.eta * (c * c - d * d));
  const double even = 2.0 * nz2 * (ctx.G - 2.0 * a * (c + d));
  Quadrature q;
  q.x = m * (rzx + cross) - even + ctx.G + 4.0 * ctx.eta;
  q.y = m * 4.0 * b * (r.x() * n.y() - r.y() * n.x()) * (4.0 * h * a + c - d);
  q.z = m * (rzz - cross) + even - ctx.G - 4.0 * ctx.eta;
  return q;
}

// Largest value of x cos(2w) + y sin(2w) + z over w.
double quadrature_max(const Quadrature& q) {
  return std::sqrt(q.x * q.x + q.y * q.y) + q.z;
}

Eigen::Vector3d sphere_point(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth),
          std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

}  // namespace

std::array<MeasurementOutcome, 2> measure(const GroundStateSolution& gs) {
  return project_site1(gs, {1.0, 0.0, 0.0});
}

double infused_energy(const GroundStateSolution& gs,
                      const std::array<MeasurementOutcome, 2>& outcomes) {
  const HamiltonianParts parts =
      build_hamiltonian({gs.h}, gs.cal.eta, gs.cal.xi);
  double e = 0.0;
  for (const auto& o : outcomes) {
    e += o.probability * (parts.H * o.post_state).trace().real();
  }
  return e;
}

double closed_form_EA(const GroundStateSolution& gs) {
  const double a = gs.a, b = gs.b, c = gs.c, d = gs.d, h = gs.h;
  return 0.25 * (1.0 - 4.0 * b * b - 2.0 * h * (c * c - d * d) +
                 2.0 * a * (c + d));
}

double measurement_interaction_energy(
    const GroundStateSolution& gs,
    const std::array<MeasurementOutcome, 2>& outcomes) {
  const Mat bond = heisenberg_bond(1, 2);
  double e = 0.0;
  for (const auto& o : outcomes) {
    e += o.probability * (bond * o.post_state).trace().real();
  }
  return e - (bond * gs.rho()).trace().real();
}

Mat feedback(const std::array<MeasurementOutcome, 2>& outcomes, double theta) {
  GeneralProtocolParams params;
  params.n0 = {0.0, 1.0, 0.0};
  params.n1 = {0.0, -1.0, 0.0};
  params.omega0 = theta;
  params.omega1 = theta;
  return general_feedback(outcomes, params);
}

double extracted_energy(const GroundStateSolution& gs, const Mat& rho_f) {
  const HamiltonianParts parts =
      build_hamiltonian({gs.h}, gs.cal.eta, gs.cal.xi);
  return -(parts.H_B * rho_f).trace().real();
}

std::pair<double, double> xy_coefficients(const GroundStateSolution& gs) {
  const double a = gs.a, b = gs.b, c = gs.c, d = gs.d, h = gs.h;
  const double X = 2.0 - 8.0 * b * b + 4.0 * a * (c + d) -
                   4.0 * h * (c * c - d * d);
  const double Y = 4.0 * b * (4.0 * h * a + c - d);
  return {X, Y};
}

double closed_form_EB(const GroundStateSolution& gs, double theta) {
  const auto [X, Y] = xy_coefficients(gs);
  return (X * std::cos(2.0 * theta) + Y * std::sin(2.0 * theta) - X) / 8.0;
}

std::pair<double, double> optimal_theta(const GroundStateSolution& gs) {
  const auto [X, Y] = xy_coefficients(gs);
  const double r2 = X * X + Y * Y;
  if (r2 < 1e-20) return {0.0, 0.0};  // flat objective, nothing to extract
  const double theta_star = 0.5 * std::atan2(Y, X);
  const double eb_max = (std::sqrt(r2) - X) / 8.0;
  return {theta_star, eb_max};
}

EnergyBreakdown extraction_breakdown(const GroundStateSolution& gs,
                                     const Mat& rho_f) {
  const Mat rho_g = gs.rho();
  const Mat bond12 = heisenberg_bond(1, 2);
  const Mat bond34 = heisenberg_bond(3, 4);
  const Mat s4z = spin_op('z', 4);
  const auto delta = [&](const Mat& op) {
    return ((op * rho_f).trace() - (op * rho_g).trace()).real();
  };
  EnergyBreakdown br;
  br.E12_int = delta(bond12);
  br.E4_h = -gs.h * delta(s4z);
  br.E34_int = -delta(bond34);
  return br;
}

std::array<MeasurementOutcome, 2> general_measure(const GroundStateSolution& gs,
                                                  const Eigen::Vector3d& r) {
  require_unit(r, "r");
  return project_site1(gs, r);
}

double general_EA(const GroundStateSolution& gs, const Eigen::Vector3d& r) {
  require_unit(r, "r");
  const double a = gs.a, b = gs.b, c = gs.c, d = gs.d, h = gs.h;
  const double G = 1.0 - 4.0 * b * b - 2.0 * h * (c * c - d * d);
  const double rz2 = r.z() * r.z();
  return 0.25 * (-rz2 * (G - 2.0 * a * (c + d)) + G + 2.0 * a * (c + d));
}

Mat general_feedback(const std::array<MeasurementOutcome, 2>& outcomes,
                     const GeneralProtocolParams& params) {
  require_unit(params.n0, "n0");
  require_unit(params.n1, "n1");
  const Mat id = Mat::Identity(kDim, kDim);
  Mat rho_f = Mat::Zero(kDim, kDim);
  for (int mu = 0; mu < 2; ++mu) {
    const Eigen::Vector3d& n = (mu == 0) ? params.n0 : params.n1;
    const double w = (mu == 0) ? params.omega0 : params.omega1;
    const Mat u = std::cos(w) * id +
                  Complex{0.0, 1.0} * std::sin(w) * axis_sigma(n, 4);
    rho_f += outcomes[mu].probability * u * outcomes[mu].post_state *
             u.adjoint();
  }
  return rho_f;
}

GeneralEB general_EB(const GroundStateSolution& gs,
                     const GeneralProtocolParams& params) {
  require_unit(params.r, "r");
  require_unit(params.n0, "n0");
  require_unit(params.n1, "n1");
  const ClosedFormContext ctx = context_of(gs);
  GeneralEB result;
  for (int mu = 0; mu < 2; ++mu) {
    const Eigen::Vector3d& n = (mu == 0) ? params.n0 : params.n1;
    const double w = (mu == 0) ? params.omega0 : params.omega1;
    const Quadrature q = general_xyz(ctx, params.r, n, mu);
    result.x[mu] = q.x;
    result.y[mu] = q.y;
    result.z[mu] = q.z;
    result.E_B +=
        (q.x * std::cos(2.0 * w) + q.y * std::sin(2.0 * w) + q.z) / 16.0;
  }
  return result;
}

ScanReport optimality_scan(const GroundStateSolution& gs, int resolution) {
  if (resolution < 2) {
    throw ConfigError("optimality_scan: resolution must be at least 2");
  }
  const ClosedFormContext ctx = context_of(gs);
  const int res = resolution;

  std::vector<Eigen::Vector3d> n_grid;
  n_grid.reserve(static_cast<size_t>(res) * res);
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      n_grid.push_back(sphere_point(M_PI * i / (res - 1),
                                    2.0 * M_PI * j / (res - 1)));
    }
  }

  // For a fixed measurement axis the two outcome branches decouple: each is
  // maximized over its own rotation axis and (exactly) over its angle.
  const auto best_branch = [&](const Eigen::Vector3d& r, int mu,
                               Eigen::Vector3d* arg_n) {
    double best = -1e300;
    for (const Eigen::Vector3d& n : n_grid) {
      const double v = quadrature_max(general_xyz(ctx, r, n, mu)) / 16.0;
      if (v > best) {
        best = v;
        if (arg_n) *arg_n = n;
      }
    }
    return best;
  };

  struct Cell {
    double value = -1e300;
    double polar = 0.0, az = 0.0;
    Eigen::Vector3d n0, n1;
  };
  std::vector<Cell> cells(static_cast<size_t>(res) * res);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int flat = 0; flat < res * res; ++flat) {
    const int i = flat / res;
    const int j = flat % res;
    Cell cell;
    cell.polar = M_PI * i / (res - 1);
    cell.az = 2.0 * M_PI * j / (res - 1);
    const Eigen::Vector3d r = sphere_point(cell.polar, cell.az);
    cell.value = best_branch(r, 0, &cell.n0) + best_branch(r, 1, &cell.n1);
    cells[flat] = cell;
  }

  Cell best;
  for (const Cell& c : cells) {
    if (c.value > best.value) best = c;
  }

  // One refinement pass: re-grid a window of one original cell around the
  // best r; rotation axes are re-searched over the full sphere at the same
  // resolution (their own optima move smoothly with r).
  const double dp = M_PI / (res - 1);
  const double da = 2.0 * M_PI / (res - 1);
  Cell refined = best;
  for (int i = 0; i < res; ++i) {
    const double polar = best.polar - dp + 2.0 * dp * i / (res - 1);
    for (int j = 0; j < res; ++j) {
      const double az = best.az - da + 2.0 * da * j / (res - 1);
      const Eigen::Vector3d r = sphere_point(polar, az);
      Eigen::Vector3d n0, n1;
      const double v = best_branch(r, 0, &n0) + best_branch(r, 1, &n1);
      if (v > refined.value) {
        refined = {v, polar, az, n0, n1};
      }
    }
  }

  ScanReport report;
  report.grid_max = refined.value;
  report.baseline_max = optimal_theta(gs).second;
  report.best.r = sphere_point(refined.polar, refined.az);
  report.best.n0 = refined.n0;
  report.best.n1 = refined.n1;
  for (int mu = 0; mu < 2; ++mu) {
    const Quadrature q = general_xyz(
        ctx, report.best.r, mu == 0 ? report.best.n0 : report.best.n1, mu);
    const double w = 0.5 * std::atan2(q.y, q.x);
    (mu == 0 ? report.best.omega0 : report.best.omega1) = w;
  }
  report.grid_within_tolerance = report.grid_max <= report.baseline_max + 1e-6;

  // Planar family: r in the xy-plane at angle t, rotation axes in-plane and
  // orthogonal to r, with alternating orientation between the two branches.
  double worst_gap = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double t = M_PI * k / 8.0;
    const Eigen::Vector3d r{std::cos(t), std::sin(t), 0.0};
    double value = 0.0;
    for (int mu = 0; mu < 2; ++mu) {
      const double sign = (mu == 0) ? 1.0 : -1.0;
      const Eigen::Vector3d n{sign * std::sin(t), -sign * std::cos(t), 0.0};
      value += quadrature_max(general_xyz(ctx, r, n, mu)) / 16.0;
    }
    report.family_t.push_back(t);
    report.family_value.push_back(value);
    worst_gap = std::max(worst_gap, std::abs(value - report.baseline_max));
  }
  report.family_attains = worst_gap <= 1e-8;
  return report;
}

}  // namespace qet
