#pragma once

// Coupling tailoring for the parallel sequence: factorized J^(n)_kl =
// pi alpha a_k a_l solving the phase constraints J^(n)_nl = pi/2^{l-n+1}
// (mod 2 pi) with all residual couplings cancelling up to a global phase.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qfti/circuit.hpp"
#include "qfti/qft.hpp"

namespace qfti {

struct TailoredCoupling {
  int n_qubits = 0;
  int step = 0;              // n in 1..N-1
  double alpha = 1.0;        // overall physical scale
  std::vector<int> q;        // q_1..q_{N-1}; q_0 = 0 implied
  std::vector<int> c;        // c_k, used for k > step
  Eigen::VectorXd a;         // factorization coefficients, a_k = 0 for k < step
  Eigen::MatrixXd coupling;  // J_kl = pi alpha a_k a_l, zero diagonal
};

inline void validate_q(const std::vector<int>& q) {
  int prev = 0;  // q_0
  for (int qk : q) {
    if (2 * qk == prev) throw std::invalid_argument("tailor_couplings: 2 q_k == q_{k-1}");
    if (2 * qk < prev)
      throw std::invalid_argument("tailor_couplings: 2 q_k - q_{k-1} must be positive");
    prev = qk;
  }
}

inline TailoredCoupling tailor_couplings(int n_qubits, int step, const std::vector<int>& q,
                                         const std::vector<int>& c, double alpha = 1.0) {
  if (n_qubits < 2) throw std::invalid_argument("tailor_couplings: need at least 2 qubits");
  if (step < 1 || step > n_qubits - 1)
    throw std::invalid_argument("tailor_couplings: step must be in [1, N-1]");
  if (static_cast<int>(q.size()) != n_qubits - 1)
    throw std::invalid_argument("tailor_couplings: q must have N-1 entries");
  if (static_cast<int>(c.size()) != n_qubits)
    throw std::invalid_argument("tailor_couplings: c must have N entries");
  if (!(alpha > 0.0)) throw std::invalid_argument("tailor_couplings: alpha must be positive");
  validate_q(q);

  TailoredCoupling t;
  t.n_qubits = n_qubits, t.step = step, t.alpha = alpha, t.q = q, t.c = c;
  t.a = Eigen::VectorXd::Zero(n_qubits);
  const int qn = q[step - 1];
  const int qn_prev = step == 1 ? 0 : q[step - 2];
  t.a(step - 1) = 1.0 / std::sqrt((2.0 * qn - qn_prev) * std::pow(2.0, n_qubits - step + 3));
  for (int k = step + 1; k <= n_qubits; ++k)
    t.a(k - 1) = (std::pow(2.0, -k + step - 1) + 2.0 * c[k - 1]) / t.a(step - 1);
  t.coupling = kPi * alpha * t.a * t.a.transpose();
  t.coupling.diagonal().setZero();
  return t;
}

// The paper's simple example: q_k = 1, c = 0.
inline std::vector<TailoredCoupling> default_tailoring(int n_qubits, double alpha = 1.0) {
  std::vector<TailoredCoupling> steps;
  const std::vector<int> q(n_qubits - 1, 1);
  const std::vector<int> c(n_qubits, 0);
  for (int n = 1; n <= n_qubits - 1; ++n)
    steps.push_back(tailor_couplings(n_qubits, n, q, c, alpha));
  return steps;
}

// Distance of x to the nearest multiple of m.
inline double mod_residue(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0) r += m;
  return std::min(r, m - r);
}

// Largest violation of the required phases J^(n)_nl = pi/2^{l-n+1} (mod 2pi).
inline double required_phase_residue(const TailoredCoupling& t) {
  double worst = 0.0;
  for (int l = t.step + 1; l <= t.n_qubits; ++l) {
    const double want = kPi / std::pow(2.0, l - t.step + 1);
    worst = std::max(worst, mod_residue(t.coupling(t.step - 1, l - 1) - want, 2.0 * kPi));
  }
  return worst;
}

// Largest residue (mod 2pi) of the summed leftover couplings
// sum_{n<k} J^(n)_kl, which must amount to at most a global phase.
inline double leftover_coupling_residue(const std::vector<TailoredCoupling>& steps) {
  if (steps.empty()) return 0.0;
  const int n_qubits = steps.front().n_qubits;
  double worst = 0.0;
  for (int k = 2; k <= n_qubits; ++k)
    for (int l = k + 1; l <= n_qubits; ++l) {
      double sum = 0.0;
      for (int n = 1; n < k; ++n) sum += steps[n - 1].coupling(k - 1, l - 1);
      worst = std::max(worst, mod_residue(sum, 2.0 * kPi));
    }
  return worst;
}

// T_F H_N U(J^(N-1)) ... U(J^(1)) H_1 T_I in application order. Each U(J^(n))
// is one TailoredEvolution gate of unit duration over the dimensionless
// coupling matrix (acquired pair phase J_kl/2).
inline Circuit parallel_sequence(int n_qubits, const std::vector<TailoredCoupling>& tailoring,
                                 bool include_final_swaps = false,
                                 TiTfConvention conv = TiTfConvention::Prose) {
  check_qubit_count(n_qubits);
  if (static_cast<int>(tailoring.size()) != n_qubits - 1)
    throw std::invalid_argument("parallel_sequence: need one tailoring step per n in 1..N-1");
  for (int n = 1; n <= n_qubits - 1; ++n) {
    const TailoredCoupling& t = tailoring[n - 1];
    if (t.step != n || t.n_qubits != n_qubits)
      throw std::invalid_argument("parallel_sequence: tailoring steps inconsistent");
  }
  const ConsecutivePhases p = consecutive_phases(n_qubits, conv);
  Circuit c;
  c.n_sites = n_qubits;
  for (int k = 1; k <= n_qubits; ++k) c.append(Gate::phase(k, p.phi_initial[k - 1]));
  for (int n = 1; n <= n_qubits; ++n) {
    c.append(Gate::hadamard(n));
    // step duration 1/alpha, so the acquired phases J_kl/(2 alpha) are
    // independent of the physical scale
    if (n < n_qubits)
      c.append(Gate::tailored(tailoring[n - 1].coupling, 1.0 / tailoring[n - 1].alpha));
  }
  for (int k = 1; k <= n_qubits; ++k) c.append(Gate::phase(k, p.phi_final[k - 1]));
  if (include_final_swaps) c.append(bit_reversal_swaps(n_qubits));
  return c;
}

inline Circuit parallel_sequence(int n_qubits, bool include_final_swaps = false,
                                 double alpha = 1.0) {
  if (n_qubits == 1) return consecutive_sequence(1, include_final_swaps);
  return parallel_sequence(n_qubits, default_tailoring(n_qubits, alpha), include_final_swaps);
}

}  // namespace qfti
