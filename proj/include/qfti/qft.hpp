#pragma once

// The DFT oracle and the two Ising-friendly circuit constructions: the
// consecutive sequence (Hadamards alternating with free-evolution blocks P_n)
// and the Cooley-Tukey reference circuit it is derived from.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qfti/circuit.hpp"
#include "qfti/gates.hpp"

namespace qfti {

inline constexpr int kMaxQubits = 8;

inline void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 8]");
}

// F[k][m] = e^{2 pi i k m / 2^n} / 2^{n/2}
inline Matrix dft_matrix(int n_qubits) {
  check_qubit_count(n_qubits);
  const long dim = ipow(2, n_qubits);
  Matrix f(dim, dim);
  const double w = 2.0 * kPi / static_cast<double>(dim);
  for (long k = 0; k < dim; ++k)
    for (long m = 0; m < dim; ++m)
      f(k, m) = std::exp(cxd{0, w * static_cast<double>(k * m)}) / std::sqrt(static_cast<double>(dim));
  return f;
}

// H on qubit 1, C_1l(pi/2^{l-1}) for l = 2..n, H on qubit 2, ... and final
// swaps realizing the bit reversal when requested.
inline Circuit cooley_tukey_circuit(int n_qubits, bool include_final_swaps = true) {
  check_qubit_count(n_qubits);
  Circuit c;
  c.n_sites = n_qubits;
  for (int k = 1; k <= n_qubits; ++k) {
    c.append(Gate::hadamard(k));
    for (int l = k + 1; l <= n_qubits; ++l)
      c.append(Gate::cphase(k, l, kPi / std::pow(2.0, l - k)));
  }
  if (include_final_swaps) c.append(bit_reversal_swaps(n_qubits));
  return c;
}

// The initial/final phase-gate assignment. The two variants swap the
// exponents; Prose is the one that reproduces the DFT (kept as default),
// CompactSwapped is retained for comparison only.
enum class TiTfConvention { Prose, CompactSwapped };

struct ConsecutivePhases {
  double phi1 = 0.0;             // accumulated CPHASE angle on qubit 1
  std::vector<double> phi;       // phi[l-2] = pi/2^{l-1} for l = 2..N
  std::vector<double> phi_initial;  // per-qubit T_I angles
  std::vector<double> phi_final;    // per-qubit T_F angles
};

// Phase bookkeeping of the consecutive construction. phi1 equals the sum of
// the conditional phases exactly.
inline ConsecutivePhases consecutive_phases(int n_qubits,
                                            TiTfConvention conv = TiTfConvention::Prose) {
  if (n_qubits < 1) throw std::invalid_argument("consecutive_phases: n >= 1 required");
  ConsecutivePhases p;
  for (int l = 2; l <= n_qubits; ++l) p.phi.push_back(kPi / std::pow(2.0, l - 1));
  p.phi1 = kPi * (1.0 - std::pow(2.0, -n_qubits + 1));
  std::vector<double> prose_i, prose_f;
  for (int k = 1; k <= n_qubits; ++k) {
    prose_i.push_back(kPi / 4.0 * (1.0 - std::pow(2.0, -k + 1)));
    prose_f.push_back(kPi / 4.0 * (1.0 - std::pow(2.0, k - n_qubits)));
  }
  if (conv == TiTfConvention::Prose) {
    p.phi_initial = prose_i;
    p.phi_final = prose_f;
  } else {
    p.phi_initial = prose_f;
    p.phi_final = prose_i;
  }
  return p;
}

// Angle of the pair (n, l) inside block P_n: (pi/4) 2^{n-l}.
inline double p_block_angle(int n, int l) { return kPi / 4.0 * std::pow(2.0, n - l); }

// T_F H_N P_{N-1} H_{N-1} ... P_1 H_1 T_I, emitted in application order.
// Composing with bit-reversal swaps appended matches dft_matrix up to a
// global phase.
inline Circuit consecutive_sequence(int n_qubits, bool include_final_swaps = false,
                                    TiTfConvention conv = TiTfConvention::Prose) {
  check_qubit_count(n_qubits);
  const ConsecutivePhases p = consecutive_phases(n_qubits, conv);
  Circuit c;
  c.n_sites = n_qubits;
  for (int k = 1; k <= n_qubits; ++k) c.append(Gate::phase(k, p.phi_initial[k - 1]));
  for (int n = 1; n <= n_qubits; ++n) {
    c.append(Gate::hadamard(n));
    for (int l = n + 1; l <= n_qubits; ++l) c.append(Gate::ising(n, l, p_block_angle(n, l)));
  }
  for (int k = 1; k <= n_qubits; ++k) c.append(Gate::phase(k, p.phi_final[k - 1]));
  if (include_final_swaps) c.append(bit_reversal_swaps(n_qubits));
  return c;
}

}  // namespace qfti
