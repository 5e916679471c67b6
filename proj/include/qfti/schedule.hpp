#pragma once

// Timed pulse schedules for the consecutive sequence on the ion chain, and a
// qutrit-chain simulator that verifies a schedule against the intended
// circuit on the qubit subspace.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qfti/circuit.hpp"
#include "qfti/qft.hpp"
#include "qfti/trap.hpp"

namespace qfti {

struct MicrowavePulse {
  int ion = 1;
  Transition transition = Transition::ZeroPrimePlusOne;
  double area = 0.0;   // theta = Omega t, rad
  double phase = 0.0;  // rad
};
struct FreeEvolution {
  std::vector<int> coupled;  // ions coupled during this window, ascending
};
struct CoupleIon {
  int ion = 1;
};
struct UncoupleIon {
  int ion = 1;
};
// Phase-gate bookkeeping: a shift of the driving-field reference, zero time.
struct PhaseShift {
  int ion = 1;
  double phi = 0.0;
};

using ScheduleAction =
    std::variant<MicrowavePulse, FreeEvolution, CoupleIon, UncoupleIon, PhaseShift>;

struct ScheduleEntry {
  double start_time = 0.0;  // s
  double duration = 0.0;    // s
  ScheduleAction action;
};

struct PulseSchedule {
  int n_ions = 1;
  std::vector<ScheduleEntry> entries;
  double total_time = 0.0;  // s

  double free_evolution_time() const {
    double t = 0.0;
    for (const auto& e : entries)
      if (std::holds_alternative<FreeEvolution>(e.action)) t += e.duration;
    return t;
  }
};

// Steps i)-iii): couple ion n, Hadamard it with two pulses, then for each
// l > n couple ion l, wait out the U_nl angle, uncouple ion l; finally
// uncouple ion n. T gates become zero-duration phase shifts at the ends.
// Pulse durations are (area/pi) * cfg.pi_pulse_duration; couple/uncouple
// cost three pi-pulses each.
inline PulseSchedule consecutive_schedule(int n_qubits, const CouplingMatrix& j,
                                          const TrapConfig& cfg = TrapConfig{}) {
  if (j.mode != CouplingMatrix::Mode::Physical)
    throw std::invalid_argument("consecutive_schedule: physical couplings required");
  if (j.j.rows() < n_qubits) throw std::invalid_argument("consecutive_schedule: J too small");
  const ConsecutivePhases phases = consecutive_phases(n_qubits);
  PulseSchedule s;
  s.n_ions = n_qubits;
  double t = 0.0;
  std::set<int> coupled;

  auto push = [&](double duration, ScheduleAction action) {
    s.entries.push_back({t, duration, std::move(action)});
    t += duration;
  };
  auto pulse = [&](int ion, Transition tr, double area, double phase) {
    push(area / kPi * cfg.pi_pulse_duration, MicrowavePulse{ion, tr, area, phase});
  };
  auto couple = [&](int ion) {
    if (!coupled.insert(ion).second)
      throw std::logic_error("consecutive_schedule: ion already coupled");
    push(3.0 * cfg.pi_pulse_duration, CoupleIon{ion});
  };
  auto uncouple = [&](int ion) {
    if (coupled.erase(ion) == 0)
      throw std::logic_error("consecutive_schedule: ion not coupled");
    push(3.0 * cfg.pi_pulse_duration, UncoupleIon{ion});
  };

  for (int k = 1; k <= n_qubits; ++k)
    push(0.0, PhaseShift{k, phases.phi_initial[k - 1]});
  // all ions start in the coupled basis; park them in the uncoupled one
  for (int k = 1; k <= n_qubits; ++k) coupled.insert(k);
  for (int k = 1; k <= n_qubits; ++k) uncouple(k);

  for (int n = 1; n <= n_qubits; ++n) {
    couple(n);
    pulse(n, Transition::ZeroPrimePlusOne, kPi, 0.0);             // H, first pulse
    pulse(n, Transition::ZeroPrimePlusOne, kPi / 2.0, -kPi / 2.0);  // H, second pulse
    for (int l = n + 1; l <= n_qubits; ++l) {
      couple(l);
      push(gate_duration(p_block_angle(n, l), j.j(n - 1, l - 1)),
           FreeEvolution{{std::min(n, l), std::max(n, l)}});
      uncouple(l);
    }
    uncouple(n);
  }
  // return all ions to the coupled basis so the final state is a qubit state
  for (int k = 1; k <= n_qubits; ++k) couple(k);
  for (int k = 1; k <= n_qubits; ++k)
    push(0.0, PhaseShift{k, phases.phi_final[k - 1]});

  s.total_time = t;
  return s;
}

// --------------------------------------------------------------------------
// Qutrit-chain simulation
// --------------------------------------------------------------------------

namespace detail {

// Digit values per site: 0 = |0'>, 1 = |+1>, 2 = |0>.
inline int qutrit_digit(long idx, int site, int n_sites) {
  return static_cast<int>((idx / ipow(3, n_sites - 1 - site)) % 3);
}

// Free-evolution phases: declared-coupled pairs evolve with the sz sz form
// (z = +1 for |0'>, -1 for |+1>, and |0> rides along at +1, which is exact
// for properly sequenced states); every other pair keeps the bare projector
// interaction 4 phi n_k n_l, which vanishes unless stray |+1> population is
// present and thus flags sequencing bugs instead of hiding them.
inline Matrix free_evolution_matrix(const Eigen::MatrixXd& j, double t,
                                    const std::vector<int>& coupled, int n_ions) {
  const long dim = ipow(3, n_ions);
  std::vector<bool> in_set(n_ions + 1, false);
  for (int ion : coupled) in_set[ion] = true;
  Vector diag(dim);
  for (long idx = 0; idx < dim; ++idx) {
    double ph = 0.0;
    for (int k = 1; k <= n_ions; ++k) {
      const int dk = qutrit_digit(idx, k - 1, n_ions);
      for (int l = k + 1; l <= n_ions; ++l) {
        const int dl = qutrit_digit(idx, l - 1, n_ions);
        const double phi = 0.5 * j(k - 1, l - 1) * t;
        if (in_set[k] && in_set[l]) {
          const int zk = dk == 1 ? -1 : 1;
          const int zl = dl == 1 ? -1 : 1;
          ph += phi * zk * zl;
        } else {
          ph += 4.0 * phi * (dk == 1 ? 1 : 0) * (dl == 1 ? 1 : 0);
        }
      }
    }
    diag(idx) = std::exp(cxd{0, ph});
  }
  return diag.asDiagonal();
}

inline Matrix microwave_matrix(const MicrowavePulse& p) {
  // R(theta, phi) embedded into the addressed two-level transition
  const Matrix r = rotation_matrix(p.area, p.phase);
  Matrix m = Matrix::Identity(3, 3);
  const int hi = p.transition == Transition::ZeroPrimePlusOne ? 1 : 2;
  m(0, 0) = r(0, 0), m(0, hi) = r(0, 1);
  m(hi, 0) = r(1, 0), m(hi, hi) = r(1, 1);
  return m;
}

inline Matrix basis_change_matrix(bool to_uncoupled) {
  const Matrix p0 = pi_pulse_matrix(Transition::ZeroPrimeZero);
  const Matrix p1 = pi_pulse_matrix(Transition::ZeroPrimePlusOne);
  Matrix m = p0 * p1 * p0;  // swap(|+1>, |0>), self-inverse
  (void)to_uncoupled;
  return m;
}

}  // namespace detail

struct ScheduleSimulation {
  Matrix full;            // 3^N x 3^N propagator of the whole schedule
  Matrix qubit_subspace;  // 2^N x 2^N restriction to coupled-basis states
  double leakage = 0.0;   // worst column norm outside the qubit subspace
};

// Composes the schedule on the qutrit chain and restricts to the qubit
// subspace (all ions in the coupled basis at start and end). Phase shifts
// are applied as T gates on the coupled transition.
inline ScheduleSimulation simulate_schedule(const PulseSchedule& s, const CouplingMatrix& j) {
  const int n = s.n_ions;
  if (n > 3) throw std::invalid_argument("simulate_schedule: at most 3 ions");
  const long dim = ipow(3, n);
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& e : s.entries) {
    if (const auto* p = std::get_if<MicrowavePulse>(&e.action)) {
      u = embed_local(detail::microwave_matrix(*p), {p->ion}, n, 3) * u;
    } else if (const auto* f = std::get_if<FreeEvolution>(&e.action)) {
      u = detail::free_evolution_matrix(j.j, e.duration, f->coupled, n) * u;
    } else if (const auto* c = std::get_if<CoupleIon>(&e.action)) {
      u = embed_local(detail::basis_change_matrix(false), {c->ion}, n, 3) * u;
    } else if (const auto* uc = std::get_if<UncoupleIon>(&e.action)) {
      u = embed_local(detail::basis_change_matrix(true), {uc->ion}, n, 3) * u;
    } else if (const auto* ph = std::get_if<PhaseShift>(&e.action)) {
      Matrix t = Matrix::Identity(3, 3);
      t(0, 0) = std::exp(cxd{0, -ph->phi});
      t(1, 1) = std::exp(cxd{0, ph->phi});
      u = embed_local(t, {ph->ion}, n, 3) * u;
    }
  }

  // qubit index -> qutrit index with digits restricted to {0, 1}
  const long qdim = ipow(2, n);
  std::vector<long> map(qdim);
  for (long q = 0; q < qdim; ++q) {
    long idx = 0;
    for (int site = 0; site < n; ++site)
      idx = idx * 3 + static_cast<int>((q >> (n - 1 - site)) & 1);
    map[q] = idx;
  }

  ScheduleSimulation out;
  out.full = u;
  out.qubit_subspace.resize(qdim, qdim);
  for (long r = 0; r < qdim; ++r)
    for (long c = 0; c < qdim; ++c) out.qubit_subspace(r, c) = u(map[r], map[c]);
  for (long c = 0; c < qdim; ++c) {
    const double inside = out.qubit_subspace.col(c).squaredNorm();
    out.leakage = std::max(out.leakage, 1.0 - inside);
  }
  if (out.leakage > 1e-9)
    throw std::runtime_error("simulate_schedule: population left the qubit subspace (" +
                             std::to_string(out.leakage) + ")");
  return out;
}

}  // namespace qfti
