#pragma once

// Ordered gate lists over a chain of sites and their dense composition.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "qfti/gates.hpp"
#include "qfti/linalg.hpp"

namespace qfti {

inline constexpr const char* kOrderingNote =
    "site 1 is the most significant digit of the basis index";

struct Circuit {
  int n_sites = 1;
  int site_dim = 2;
  std::vector<Gate> gates;
  std::string ordering_note = kOrderingNote;

  void append(Gate g) { gates.push_back(std::move(g)); }
  void append(const std::vector<Gate>& gs) { gates.insert(gates.end(), gs.begin(), gs.end()); }
};

inline void validate_gate(const Gate& g, int n_sites, int site_dim) {
  auto in_range = [&](int q) { return q >= 1 && q <= n_sites; };
  if (!in_range(g.q1)) throw std::invalid_argument("circuit: gate site out of range");
  if (g.two_site()) {
    if (!in_range(g.q2)) throw std::invalid_argument("circuit: gate site out of range");
    if (g.q1 == g.q2) throw std::invalid_argument("circuit: two-site gate needs distinct sites");
  }
  if (!std::isfinite(g.theta) || !std::isfinite(g.phi))
    throw std::invalid_argument("circuit: non-finite gate angle");
  if (g.kind == GateKind::PiPulse && site_dim != 3)
    throw std::invalid_argument("circuit: pi-pulse requires qutrit sites");
  if (g.kind != GateKind::PiPulse && g.kind != GateKind::TailoredEvolution && site_dim != 2)
    throw std::invalid_argument("circuit: qubit gate on non-qubit sites");
  if (g.kind == GateKind::TailoredEvolution &&
      (g.coupling.rows() != n_sites || g.coupling.cols() != n_sites))
    throw std::invalid_argument("circuit: tailored coupling matrix size mismatch");
}

// Full-space diagonal of exp(i (t/2) sum_{k<l} J_kl sz_k sz_l).
inline Matrix tailored_evolution_matrix(const Eigen::MatrixXd& coupling, double t, int n_sites) {
  const long dim = ipow(2, n_sites);
  Vector diag(dim);
  std::vector<int> z(n_sites);
  for (long idx = 0; idx < dim; ++idx) {
    for (int s = 0; s < n_sites; ++s) z[s] = 1 - 2 * static_cast<int>((idx >> (n_sites - 1 - s)) & 1);
    double ph = 0.0;
    for (int k = 0; k < n_sites; ++k)
      for (int l = k + 1; l < n_sites; ++l) ph += 0.5 * t * coupling(k, l) * z[k] * z[l];
    diag(idx) = std::exp(cxd{0, ph});
  }
  return diag.asDiagonal();
}

inline Matrix embedded_gate(const Gate& g, int n_sites, int site_dim) {
  if (g.kind == GateKind::TailoredEvolution)
    return tailored_evolution_matrix(g.coupling, g.duration, n_sites);
  std::vector<int> targets = g.two_site() ? std::vector<int>{g.q1, g.q2} : std::vector<int>{g.q1};
  return embed_local(gate_matrix(g), targets, n_sites, site_dim);
}

// Product of the embedded gates, first-listed gate applied first to states.
inline Matrix compose(const Circuit& c) {
  const long dim = ipow(c.site_dim, c.n_sites);
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : c.gates) {
    validate_gate(g, c.n_sites, c.site_dim);
    u = embedded_gate(g, c.n_sites, c.site_dim) * u;
  }
  return u;
}

// Swap gates exchanging site k with site n+1-k (the bit-reversal permutation).
inline std::vector<Gate> bit_reversal_swaps(int n_qubits) {
  std::vector<Gate> swaps;
  for (int k = 1; k <= n_qubits / 2; ++k) swaps.push_back(Gate::swap(k, n_qubits + 1 - k));
  return swaps;
}

inline Matrix bit_reversal_matrix(int n_qubits) {
  Circuit c;
  c.n_sites = n_qubits;
  c.append(bit_reversal_swaps(n_qubits));
  return compose(c);
}

}  // namespace qfti
