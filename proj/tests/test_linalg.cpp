#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/QR>

#include "doctest.h"
#include "oracle.hpp"
#include "qet/linalg.hpp"

using qet::Complex;
using qet::Mat;

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Mat random_unitary(oracle::Rng& rng, int dim) {
  std::normal_distribution<double> gauss;
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return Eigen::HouseholderQR<Mat>(g).householderQ();
}

}  // namespace

TEST_CASE("single-site operators satisfy the pauli algebra") {
  const Mat x = qet::pauli('x'), y = qet::pauli('y'), z = qet::pauli('z');
  const Mat id = Mat::Identity(2, 2);
  const Complex i_unit(0.0, 1.0);

  CHECK(max_abs(x * x - id) < 1e-15);
  CHECK(max_abs(y * y - id) < 1e-15);
  CHECK(max_abs(z * z - id) < 1e-15);
  CHECK(max_abs(x * y - i_unit * z) < 1e-15);
  CHECK(max_abs(y * z - i_unit * x) < 1e-15);
  CHECK(max_abs(z * x - i_unit * y) < 1e-15);
  CHECK(max_abs(qet::pauli('+') - (x + i_unit * y) / 2.0) < 1e-15);
  CHECK(max_abs(qet::pauli('-') - (x - i_unit * y) / 2.0) < 1e-15);
  CHECK_THROWS_AS((void)qet::pauli('q'), qet::ConfigError);
}

TEST_CASE("site embedding places site 1 on the most significant bit") {
  // index 5 = 0b0101: sites read up,down,up,down left to right
  const Mat z2 = qet::embed_site_operator('z', 2, 4);
  const Mat x4 = qet::embed_site_operator('x', 4, 4);
  qet::Vec basis5 = qet::Vec::Zero(16);
  basis5[5] = 1.0;

  CHECK((z2 * basis5 + basis5).cwiseAbs().maxCoeff() <
        1e-15);  // z on a down spin negates
  qet::Vec flipped = x4 * basis5;
  CHECK(std::abs(flipped[4] - 1.0) < 1e-15);  // x flips the last bit
  CHECK(flipped.cwiseAbs().sum() == doctest::Approx(1.0));

  SUBCASE("agrees with an explicit kronecker construction") {
    const Mat id = Mat::Identity(2, 2);
    const Mat want = kron(kron(id, qet::pauli('z')), kron(id, id));
    CHECK(max_abs(qet::embed_site_operator('z', 2, 4) - want) < 1e-15);
  }
  SUBCASE("rejects sites outside the register") {
    CHECK_THROWS_AS((void)qet::embed_site_operator('x', 0, 4),
                    qet::ConfigError);
    CHECK_THROWS_AS((void)qet::embed_site_operator('x', 5, 4),
                    qet::ConfigError);
  }
}

TEST_CASE("partial trace satisfies its defining property on random states") {
  oracle::Rng rng(20240811);
  std::normal_distribution<double> gauss;
  const Mat id = Mat::Identity(2, 2);

  for (int trial = 0; trial < 100; ++trial) {
    const Mat rho = oracle::random_density(rng, 16);

    // random keep set: non-empty strict subset of {1,2,3,4}
    std::vector<int> keep;
    while (keep.empty() || keep.size() == 4) {
      keep.clear();
      for (int s = 1; s <= 4; ++s) {
        if (rng() & 1) keep.push_back(s);
      }
    }

    std::array<Mat, 5> site_op;
    for (int s = 1; s <= 4; ++s) site_op[s] = oracle::random_hermitian(rng, 2);

    Mat full = Mat::Ones(1, 1);
    Mat kept = Mat::Ones(1, 1);
    for (int s = 1; s <= 4; ++s) {
      const bool is_kept =
          std::find(keep.begin(), keep.end(), s) != keep.end();
      full = kron(full, is_kept ? site_op[s] : id);
      if (is_kept) kept = kron(kept, site_op[s]);
    }

    const Mat reduced = qet::partial_trace(rho, keep);
    const Complex lhs = (reduced * kept).trace();
    const Complex rhs = (rho * full).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK(max_abs(reduced - oracle::ptrace_bits(rho, keep, 4)) < 1e-12);
    CHECK(std::abs(reduced.trace() - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("partial trace rejects malformed requests") {
  const Mat rho = Mat::Identity(16, 16) / 16.0;
  CHECK_THROWS_AS((void)qet::partial_trace(rho, {}), qet::ConfigError);
  CHECK_THROWS_AS((void)qet::partial_trace(rho, {1, 2, 3, 4}),
                  qet::ConfigError);
  CHECK_THROWS_AS((void)qet::partial_trace(rho, {2, 2}), qet::ConfigError);
  CHECK_THROWS_AS((void)qet::partial_trace(rho, {5}), qet::ConfigError);
  CHECK_THROWS_AS((void)qet::partial_trace(Mat::Identity(3, 3), {1}),
                  qet::ConfigError);
}

TEST_CASE("hermitian eigensolver matches the jacobi reference") {
  oracle::Rng rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    const Mat a = oracle::random_hermitian(rng, dim);
    const qet::EigResult res = qet::eig_hermitian(a);
    const std::vector<double> ref = oracle::eigvals(a);

    for (int k = 0; k < dim; ++k) {
      CHECK(res.values[k] == doctest::Approx(ref[k]).epsilon(1e-8));
      if (k) CHECK(res.values[k] >= res.values[k - 1]);
      const qet::Vec residual =
          a * res.vectors.col(k) - res.values[k] * res.vectors.col(k);
      CHECK(residual.cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK(max_abs(res.vectors.adjoint() * res.vectors -
                  Mat::Identity(dim, dim)) < 1e-10);
  }

  Mat skew = Mat::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS((void)qet::eig_hermitian(skew), qet::NonHermitian);
}

TEST_CASE("matrix log round-trips through the taylor exponential") {
  oracle::Rng rng(31415);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat rho = oracle::random_density(rng, 4);
    const Mat log_rho = qet::matrix_log(rho);
    CHECK(max_abs(oracle::expm_taylor(log_rho) - rho) < 1e-10);
  }

  SUBCASE("rank deficiency is rejected") {
    qet::Vec psi = oracle::random_state(rng, 4);
    const Mat pure = psi * psi.adjoint();
    CHECK_THROWS_AS((void)qet::matrix_log(pure), qet::RankDeficient);
  }
}

TEST_CASE("von neumann entropy: pure, mixed, unitary invariance") {
  oracle::Rng rng(999);

  qet::Vec psi = oracle::random_state(rng, 8);
  CHECK(qet::von_neumann_entropy(Mat(psi * psi.adjoint())) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(qet::von_neumann_entropy(Mat(Mat::Identity(8, 8) / 8.0)) ==
        doctest::Approx(std::log(8.0)));

  for (int trial = 0; trial < 100; ++trial) {
    const Mat rho = oracle::random_density(rng, 4);
    const Mat u = random_unitary(rng, 4);
    const double s = qet::von_neumann_entropy(rho);
    const double s_rotated =
        qet::von_neumann_entropy(Mat(u * rho * u.adjoint()));
    CHECK(s_rotated == doctest::Approx(s).epsilon(1e-9));
    CHECK(s >= 0.0);
    CHECK(s <= std::log(4.0) + 1e-12);
  }

  Mat not_a_state = Mat::Zero(2, 2);
  not_a_state(0, 0) = 1.5;
  not_a_state(1, 1) = -0.5;
  CHECK_THROWS_AS((void)qet::von_neumann_entropy(not_a_state),
                  qet::DomainError);
}
