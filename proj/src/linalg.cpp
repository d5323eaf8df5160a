#include "qet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qet {

namespace {

constexpr Complex kI{0.0, 1.0};

int site_count_for_dim(Eigen::Index dim, const char* who) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) {
    throw ConfigError(std::string(who) + ": dimension " + std::to_string(dim) +
                      " is not a power of two");
  }
  return n;
}

}  // namespace

Mat pauli(char which) {
  Mat m = Mat::Zero(2, 2);
  switch (which) {
    case 'x':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'y':
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 'z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case '+':
      m(0, 1) = 1.0;  // maps down (bit 1) to up (bit 0)
      break;
    case '-':
      m(1, 0) = 1.0;
      break;
    default:
      throw ConfigError(std::string("pauli: unknown operator '") + which +
                        "'");
  }
  return m;
}

Mat embed_site_operator(char which, int site, int n_sites) {
  if (n_sites < 1) throw ConfigError("embed_site_operator: need n_sites >= 1");
  if (site < 1 || site > n_sites) {
    throw ConfigError("embed_site_operator: site " + std::to_string(site) +
                      " outside 1.." + std::to_string(n_sites));
  }
  const Mat op = pauli(which);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  // Site s occupies bit n_sites - s (site 1 is the most significant bit).
  const int bit = n_sites - site;
  Mat out = Mat::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int colbit = static_cast<int>((col >> bit) & 1);
    for (int rowbit = 0; rowbit < 2; ++rowbit) {
      const Complex v = op(rowbit, colbit);
      if (v == Complex{0.0, 0.0}) continue;
      const Eigen::Index row =
          (col & ~(Eigen::Index{1} << bit)) |
          (static_cast<Eigen::Index>(rowbit) << bit);
      out(row, col) = v;
    }
  }
  return out;
}

Mat partial_trace(const Mat& rho, const std::vector<int>& keep) {
  if (rho.rows() != rho.cols()) {
    throw ConfigError("partial_trace: matrix is not square");
  }
  const int n = site_count_for_dim(rho.rows(), "partial_trace");

  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("partial_trace: duplicate site in keep list");
  }
  for (int s : sorted) {
    if (s < 1 || s > n) {
      throw ConfigError("partial_trace: site " + std::to_string(s) +
                        " outside 1.." + std::to_string(n));
    }
  }
  if (sorted.empty()) {
    throw ConfigError("partial_trace: keep list is empty");
  }
  if (static_cast<int>(sorted.size()) == n) {
    throw ConfigError("partial_trace: keep list covers every site");
  }

  // Permute the register so the kept sites come first (in their original
  // order), then trace the trailing block index.
  std::vector<int> order = sorted;  // kept sites, ascending = original order
  for (int s = 1; s <= n; ++s) {
    if (!std::binary_search(sorted.begin(), sorted.end(), s)) {
      order.push_back(s);
    }
  }
  const Eigen::Index dim = rho.rows();
  std::vector<Eigen::Index> perm(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index target = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int src_bit = n - order[pos];
      const Eigen::Index b = (idx >> src_bit) & 1;
      target |= b << (n - 1 - pos);
    }
    perm[target] = idx;  // permuted basis state `target` is original `idx`
  }

  const int k = static_cast<int>(sorted.size());
  const Eigen::Index kept_dim = Eigen::Index{1} << k;
  const Eigen::Index traced_dim = Eigen::Index{1} << (n - k);
  Mat out = Mat::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        acc += rho(perm[i * traced_dim + t], perm[j * traced_dim + t]);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

EigResult eig_hermitian(const Mat& A) {
  if (A.rows() != A.cols()) {
    throw ConfigError("eig_hermitian: matrix is not square");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw NonHermitian("eig_hermitian: anti-Hermitian part " +
                       std::to_string(asym) + " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver((A + A.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eig_hermitian: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat matrix_log(const Mat& rho, double floor) {
  EigResult eig = eig_hermitian(rho);
  const Eigen::Index dim = eig.values.size();
  RVec logs(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double lambda = eig.values[i];
    if (lambda < floor) {
      throw RankDeficient("matrix_log: eigenvalue " + std::to_string(lambda) +
                          " below floor " + std::to_string(floor));
    }
    logs[i] = std::log(lambda);
  }
  return eig.vectors * logs.asDiagonal() * eig.vectors.adjoint();
}

double von_neumann_entropy(const Mat& rho) {
  EigResult eig = eig_hermitian(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values[i];
    if (lambda < -1e-10) {
      throw DomainError("von_neumann_entropy: eigenvalue " +
                        std::to_string(lambda) + " is negative");
    }
    if (lambda < 1e-14) continue;
    s -= lambda * std::log(lambda);
  }
  return s;
}

}  // namespace qet
