#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qet/errors.hpp"

namespace qet {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Site convention used throughout: sites are numbered 1..n left to right and
// site 1 maps to the most significant qubit of the basis index; spin-up maps
// to bit value 0. So for n = 4 the basis state with index 5 = 0b0101 is
// up,down,up,down.

// 2x2 single-site operator: one of 'x', 'y', 'z' (Pauli matrices), '+', '-'
// (raising/lowering, sigma^± = (sigma^x ± i sigma^y)/2).
Mat pauli(char which);

// The given single-site operator acting on `site` of an n-site register,
// identity elsewhere. Dimension 2^n.
Mat embed_site_operator(char pauli, int site, int n_sites);

// Trace out every site not listed in `keep` (1-based site labels, any order;
// duplicates rejected). The kept sites preserve their relative order, so
// keep = {3,4} yields a matrix over the (site3, site4) register with site 3
// as the more significant qubit. Keeping nothing or everything is an error.
Mat partial_trace(const Mat& rho, const std::vector<int>& keep);

struct EigResult {
  RVec values;  // ascending
  Mat vectors;  // columns, orthonormal, aligned with `values`
};

// Spectral decomposition of a Hermitian matrix. Rejects inputs whose
// anti-Hermitian part exceeds 1e-10 relative to the matrix scale.
EigResult eig_hermitian(const Mat& A);

// log(rho) through the spectral decomposition. Every eigenvalue must exceed
// `floor`, otherwise the log is unbounded below and the call fails.
Mat matrix_log(const Mat& rho, double floor = 1e-12);

// -sum lambda log lambda in nats. Eigenvalues below 1e-14 contribute zero;
// eigenvalues below -1e-10 mean the input is not a state.
double von_neumann_entropy(const Mat& rho);

}  // namespace qet
