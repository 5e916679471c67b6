#pragma once

// Dense complex linear algebra for small chains of d-level sites (d = 2 or 3).
// Convention used throughout: site 1 is the most significant digit of the
// computational basis index, so for qubits the basis of a 2-site space is
// |00>, |01>, |10>, |11> with the first digit belonging to site 1.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfti {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kUnitarityTol = 1e-10;

inline long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Max absolute deviation of U†U from the identity.
inline double unitarity_defect(const Matrix& u) {
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Matrix& u, double tol = kUnitarityTol) {
  return u.rows() == u.cols() && unitarity_defect(u) < tol;
}

// Embeds `op` acting on the given sites (1-based, in the listed order) into
// the full n_sites space, identity elsewhere.
inline Matrix embed_local(const Matrix& op, const std::vector<int>& targets,
                          int n_sites, int site_dim = 2) {
  const int k = static_cast<int>(targets.size());
  if (k == 0) throw std::invalid_argument("embed_local: no target sites");
  if (op.rows() != op.cols() || op.rows() != ipow(site_dim, k))
    throw std::invalid_argument("embed_local: operator dimension mismatch");
  for (int i = 0; i < k; ++i) {
    if (targets[i] < 1 || targets[i] > n_sites)
      throw std::invalid_argument("embed_local: target index out of range");
    for (int j = i + 1; j < k; ++j)
      if (targets[i] == targets[j])
        throw std::invalid_argument("embed_local: repeated target index");
  }

  const long dim = ipow(site_dim, n_sites);
  Matrix full = Matrix::Zero(dim, dim);
  std::vector<int> digits(n_sites);
  std::vector<long> weight(n_sites);  // place value of each site's digit
  for (int s = 0; s < n_sites; ++s) weight[s] = ipow(site_dim, n_sites - 1 - s);

  for (long col = 0; col < dim; ++col) {
    long rest = col;
    for (int s = 0; s < n_sites; ++s) {
      digits[s] = static_cast<int>(rest / weight[s]);
      rest %= weight[s];
    }
    long sub_col = 0;
    for (int i = 0; i < k; ++i) sub_col = sub_col * site_dim + digits[targets[i] - 1];
    long base = col;
    for (int i = 0; i < k; ++i) base -= digits[targets[i] - 1] * weight[targets[i] - 1];
    for (long sub_row = 0; sub_row < op.rows(); ++sub_row) {
      const cxd v = op(sub_row, sub_col);
      if (v == cxd{0.0, 0.0}) continue;
      long row = base, sr = sub_row;
      for (int i = k - 1; i >= 0; --i) {
        row += (sr % site_dim) * weight[targets[i] - 1];
        sr /= site_dim;
      }
      full(row, col) += v;
    }
  }
  return full;
}

// 1 - |tr(U†V)|/dim: zero iff U and V agree up to a global phase.
inline double phase_invariant_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("phase_invariant_distance: dimension mismatch");
  return 1.0 - std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

}  // namespace qfti
