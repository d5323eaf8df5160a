#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

RealEig jacobi_symmetric(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int x, int y) { return a[x][x] < a[y][y]; });
  RealEig out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    out.values[k] = a[idx[k]][idx[k]];
    for (int i = 0; i < n; ++i) out.vectors[k][i] = v[i][idx[k]];
  }
  return out;
}

std::vector<double> eigvals(const qet::Mat& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::vector<double>> m(2 * n, std::vector<double>(2 * n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const qet::Complex z = a(i, j);
      m[i][j] = z.real();
      m[i][j + n] = -z.imag();
      m[i + n][j] = z.imag();
      m[i + n][j + n] = z.real();
    }
  }
  const RealEig full = jacobi_symmetric(std::move(m));
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = full.values[2 * k];
  return out;
}

qet::Mat ptrace_bits(const qet::Mat& rho, std::vector<int> keep,
                     int n_sites) {
  std::sort(keep.begin(), keep.end());
  const int m = static_cast<int>(keep.size());
  const int dim = 1 << n_sites;
  const auto kept_index = [&](int full) {
    int r = 0;
    for (int k = 0; k < m; ++k) {
      r |= ((full >> (n_sites - keep[k])) & 1) << (m - 1 - k);
    }
    return r;
  };
  const auto env_bits = [&](int full) {
    int e = 0;
    for (int s = 1; s <= n_sites; ++s) {
      if (std::binary_search(keep.begin(), keep.end(), s)) continue;
      e = (e << 1) | ((full >> (n_sites - s)) & 1);
    }
    return e;
  };
  qet::Mat out = qet::Mat::Zero(1 << m, 1 << m);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (env_bits(i) == env_bits(j)) {
        out(kept_index(i), kept_index(j)) += rho(i, j);
      }
    }
  }
  return out;
}

qet::Mat expm_taylor(const qet::Mat& a) {
  const int n = static_cast<int>(a.rows());
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const qet::Mat b = a / std::pow(2.0, squarings);
  qet::Mat term = qet::Mat::Identity(n, n);
  qet::Mat sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

namespace {

// The six 4-bit basis states with two down spins, site 1 = leftmost bit.
constexpr int kBasis[6] = {3, 5, 6, 9, 10, 12};

int basis_pos(int state) {
  for (int k = 0; k < 6; ++k) {
    if (kBasis[k] == state) return k;
  }
  return -1;
}

int bitval(int state, int site) { return (state >> (4 - site)) & 1; }

using Mat6 = std::vector<std::vector<double>>;

Mat6 zeros6() { return Mat6(6, std::vector<double>(6, 0.0)); }

// S_i . S_j restricted to the sector: z-part on the diagonal, spin swap with
// weight 1/2 between states whose bits at i and j differ.
Mat6 bond6(int i, int j) {
  Mat6 m = zeros6();
  for (int q = 0; q < 6; ++q) {
    const int st = kBasis[q];
    const int bi = bitval(st, i), bj = bitval(st, j);
    m[q][q] += 0.25 * (1 - 2 * bi) * (1 - 2 * bj);
    if (bi != bj) {
      const int flipped = st ^ (1 << (4 - i)) ^ (1 << (4 - j));
      m[basis_pos(flipped)][q] += 0.5;
    }
  }
  return m;
}

double quad_form(const Mat6& m, const std::vector<double>& g) {
  double s = 0.0;
  for (int p = 0; p < 6; ++p) {
    for (int q = 0; q < 6; ++q) s += g[p] * m[p][q] * g[q];
  }
  return s;
}

}  // namespace

Sector6 sector6_ground(double h) {
  Mat6 ham = zeros6();
  for (const auto& [i, j] : {std::pair{1, 2}, {2, 3}, {3, 4}}) {
    const Mat6 b = bond6(i, j);
    for (int p = 0; p < 6; ++p) {
      for (int q = 0; q < 6; ++q) ham[p][q] += b[p][q];
    }
  }
  for (int q = 0; q < 6; ++q) {
    const double sz1 = 0.5 * (1 - 2 * bitval(kBasis[q], 1));
    const double sz4 = 0.5 * (1 - 2 * bitval(kBasis[q], 4));
    ham[q][q] += h * (sz1 + sz4);
  }

  const RealEig eig = jacobi_symmetric(ham);
  std::vector<double> g = eig.vectors[0];
  const int p5 = basis_pos(5), p6 = basis_pos(6);
  const double anchor = std::abs(g[p5]) > 1e-10 ? g[p5] : -g[p6];
  if (anchor < 0) {
    for (double& x : g) x = -x;
  }

  Sector6 out;
  out.a = g[p5];
  out.b = -g[basis_pos(3)];
  out.c = -g[p6];
  out.d = -g[basis_pos(9)];
  out.energy = eig.values[0];

  double sz1_exp = 0.0;
  for (int q = 0; q < 6; ++q) {
    sz1_exp += g[q] * g[q] * 0.5 * (1 - 2 * bitval(kBasis[q], 1));
  }
  out.eta = -(h * sz1_exp + quad_form(bond6(1, 2), g));
  out.xi = -quad_form(bond6(2, 3), g);
  return out;
}

GridMax theta_grid_max(const std::function<double(double)>& f, int n) {
  GridMax best;
  best.value = f(0.0);
  for (int i = 1; i < n; ++i) {
    const double t = M_PI * i / n;
    const double v = f(t);
    if (v > best.value) {
      best.value = v;
      best.arg = t;
    }
  }
  double step = M_PI / n;
  for (int round = 0; round < 6; ++round) {
    const double fm = f(best.arg - step), fp = f(best.arg + step);
    const double denom = fm - 2.0 * best.value + fp;
    if (std::abs(denom) > 1e-300) {
      const double vertex = best.arg + step * (fm - fp) / (2.0 * denom);
      const double fv = f(vertex);
      if (fv > best.value) {
        best.value = fv;
        best.arg = vertex;
      }
    }
    if (fm > best.value) {
      best.value = fm;
      best.arg -= step;
    }
    if (fp > best.value) {
      best.value = fp;
      best.arg += step;
    }
    step /= 8.0;
  }
  return best;
}

Eigen::Vector3d random_unit_vector(Rng& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Vector3d v{gauss(rng), gauss(rng), gauss(rng)};
  while (v.norm() < 1e-6) v = {gauss(rng), gauss(rng), gauss(rng)};
  return v / v.norm();
}

qet::Vec random_state(Rng& rng, int dim) {
  std::normal_distribution<double> gauss;
  qet::Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = qet::Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

qet::Mat random_density(Rng& rng, int dim) {
  std::normal_distribution<double> gauss;
  qet::Mat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = qet::Complex(gauss(rng), gauss(rng));
  }
  qet::Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

qet::Mat random_hermitian(Rng& rng, int dim) {
  std::normal_distribution<double> gauss;
  qet::Mat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = qet::Complex(gauss(rng), gauss(rng));
  }
  return (g + g.adjoint()) / 2.0;
}

}  // namespace oracle
