#pragma once

// Primitive gate set: rotations R(theta,phi), phase gates T(phi), Ising pair
// evolutions U(phi) = exp(i phi sz sz), Hadamard, CPHASE, swaps, qutrit
// pi-pulses for the coupled/uncoupled basis change, and tailored multi-pair
// evolutions driven by a coupling matrix.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfti/linalg.hpp"

namespace qfti {

inline constexpr double kPi = std::numbers::pi;

enum class GateKind {
  Rotation,           // R_k(theta, phi)
  PhaseGate,          // T_k(phi) = diag(e^{-i phi}, e^{+i phi})
  IsingPair,          // U_kl(phi) = exp(i phi sz sz)
  Hadamard,           // H_k
  CPhase,             // C_kl(phi), phase on |11>
  Swap,               // exchange sites k, l
  PiPulse,            // qutrit pi-pulse on one of the two transitions
  TailoredEvolution,  // exp(i (t/2) sum J_kl sz sz) over all pairs
};

// Qutrit basis order is (|0'>, |+1>, |0>); the coupled basis is spanned by
// the first two states, the uncoupled basis by the first and the last.
enum class Transition { ZeroPrimeZero, ZeroPrimePlusOne };

struct Gate {
  GateKind kind = GateKind::Hadamard;
  int q1 = 1;          // first (or only) site, 1-based
  int q2 = 0;          // second site for two-site gates
  double theta = 0.0;  // rotation area
  double phi = 0.0;    // rotation/phase/Ising angle, or pi-pulse phase
  Transition transition = Transition::ZeroPrimeZero;
  Eigen::MatrixXd coupling;  // TailoredEvolution only
  double duration = 1.0;     // TailoredEvolution only

  static Gate rotation(int q, double theta, double phi = 0.0) {
    Gate g;
    g.kind = GateKind::Rotation, g.q1 = q, g.theta = theta, g.phi = phi;
    return g;
  }
  static Gate phase(int q, double phi) {
    Gate g;
    g.kind = GateKind::PhaseGate, g.q1 = q, g.phi = phi;
    return g;
  }
  static Gate ising(int k, int l, double phi) {
    Gate g;
    g.kind = GateKind::IsingPair, g.q1 = k, g.q2 = l, g.phi = phi;
    return g;
  }
  static Gate hadamard(int q) {
    Gate g;
    g.kind = GateKind::Hadamard, g.q1 = q;
    return g;
  }
  static Gate cphase(int k, int l, double phi) {
    Gate g;
    g.kind = GateKind::CPhase, g.q1 = k, g.q2 = l, g.phi = phi;
    return g;
  }
  static Gate swap(int k, int l) {
    Gate g;
    g.kind = GateKind::Swap, g.q1 = k, g.q2 = l;
    return g;
  }
  static Gate pi_pulse(int ion, Transition t, double phase = 0.0) {
    Gate g;
    g.kind = GateKind::PiPulse, g.q1 = ion, g.transition = t, g.phi = phase;
    return g;
  }
  static Gate tailored(Eigen::MatrixXd coupling, double duration = 1.0) {
    Gate g;
    g.kind = GateKind::TailoredEvolution;
    g.coupling = std::move(coupling);
    g.duration = duration;
    return g;
  }

  bool two_site() const {
    return kind == GateKind::IsingPair || kind == GateKind::CPhase || kind == GateKind::Swap;
  }
};

// --------------------------------------------------------------------------
// Matrix builders
// --------------------------------------------------------------------------

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cxd{0, -1}, cxd{0, 1}, 0;
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// R(theta, phi) = exp[-i (theta/2)(sx cos phi + sy sin phi)]
inline Matrix rotation_matrix(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix m(2, 2);
  m << c, cxd{0, -s} * std::exp(cxd{0, -phi}),  //
      cxd{0, -s} * std::exp(cxd{0, phi}), c;
  return m;
}

// T(phi) = exp(-i phi sz) = diag(e^{-i phi}, e^{+i phi})
inline Matrix phase_matrix(double phi) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(cxd{0, -phi});
  m(1, 1) = std::exp(cxd{0, phi});
  return m;
}

// U(phi) = exp(i phi sz sz) = diag(e^{i phi}, e^{-i phi}, e^{-i phi}, e^{i phi})
inline Matrix ising_pair_matrix(double phi) {
  Matrix m = Matrix::Zero(4, 4);
  const cxd p = std::exp(cxd{0, phi}), q = std::exp(cxd{0, -phi});
  m(0, 0) = p, m(1, 1) = q, m(2, 2) = q, m(3, 3) = p;
  return m;
}

inline Matrix hadamard_matrix() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

inline Matrix cphase_matrix(double phi) {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = std::exp(cxd{0, phi});
  return m;
}

inline Matrix swap_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1, m(1, 2) = 1, m(2, 1) = 1, m(3, 3) = 1;
  return m;
}

// Idealized qutrit pi-pulses in the basis (|0'>, |+1>, |0>). A phase of pi
// flips the sign of the exchanged amplitudes (the error-compensation variant
// of the second 0'<->0 pulse).
inline Matrix pi_pulse_matrix(Transition t, double phase = 0.0) {
  Matrix m = Matrix::Identity(3, 3);
  const double sign = std::cos(phase);  // only 0 and pi are meaningful
  if (std::abs(std::abs(sign) - 1.0) > 1e-12)
    throw std::invalid_argument("pi_pulse_matrix: phase must be 0 or pi");
  if (t == Transition::ZeroPrimeZero) {
    m(0, 0) = 0, m(2, 2) = 0;
    m(0, 2) = sign, m(2, 0) = sign;
  } else {
    m(0, 0) = 0, m(1, 1) = 0;
    m(0, 1) = sign, m(1, 0) = sign;
  }
  return m;
}

// Small-matrix form of a gate (TailoredEvolution is excluded: it acts on the
// whole chain and is expanded by compose()).
inline Matrix gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::Rotation: return rotation_matrix(g.theta, g.phi);
    case GateKind::PhaseGate: return phase_matrix(g.phi);
    case GateKind::IsingPair: return ising_pair_matrix(g.phi);
    case GateKind::Hadamard: return hadamard_matrix();
    case GateKind::CPhase: return cphase_matrix(g.phi);
    case GateKind::Swap: return swap_matrix();
    case GateKind::PiPulse: return pi_pulse_matrix(g.transition, g.phi);
    case GateKind::TailoredEvolution:
      throw std::invalid_argument("gate_matrix: tailored evolution has no local matrix");
  }
  throw std::logic_error("gate_matrix: unknown kind");
}

// --------------------------------------------------------------------------
// Algebraic identities
// --------------------------------------------------------------------------

// C_kl(phi) = e^{i phi/4} T_k(phi/4) T_l(phi/4) U_kl(phi/4); all parts commute.
// Returns the global phase and the three gates for sites (k, l).
inline std::pair<double, std::vector<Gate>> cphase_decompose(int k, int l, double phi) {
  return {phi / 4.0,
          {Gate::phase(k, phi / 4.0), Gate::phase(l, phi / 4.0), Gate::ising(k, l, phi / 4.0)}};
}

// Hadamard up to a global phase: R(pi, 0) followed by R(pi/2, -pi/2).
inline std::vector<Gate> hadamard_from_rotations(int q = 1) {
  return {Gate::rotation(q, kPi, 0.0), Gate::rotation(q, kPi / 2.0, -kPi / 2.0)};
}

// Pulse triple moving a coupled-basis state into the uncoupled basis,
// in application order. With compensate_second=true the trailing 0'<->0
// pulse is phased by pi to cancel pulse-length errors.
inline std::vector<Gate> uncouple_sequence(int ion = 1, bool compensate_second = false) {
  return {Gate::pi_pulse(ion, Transition::ZeroPrimeZero),
          Gate::pi_pulse(ion, Transition::ZeroPrimePlusOne),
          Gate::pi_pulse(ion, Transition::ZeroPrimeZero, compensate_second ? kPi : 0.0)};
}

inline std::vector<Gate> couple_sequence(int ion = 1, bool compensate_second = false) {
  auto seq = uncouple_sequence(ion, compensate_second);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace qfti
