#pragma once

// Tunable three-qubit rearranged sequence: closed-form timings T1, T2, the
// transcendental system fixing (T3, A1, A2), and the gate assembly.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qfti/circuit.hpp"
#include "qfti/trap.hpp"

namespace qfti {

struct ThreeQubitTimings {
  double t1 = 0.0, t2 = 0.0;  // s
};

// T1 = pi/8 (1/J12 + 1/(2 J13)), T2 = pi/8 (1/J12 - 1/(2 J13))
inline ThreeQubitTimings three_qubit_timings(const CouplingMatrix& j) {
  if (j.j.rows() < 3) throw std::invalid_argument("three_qubit_timings: need 3 ions");
  const double j12 = j.j(0, 1), j13 = j.j(0, 2);
  if (!(j12 > 0) || !(j13 > 0) || !(j.j(1, 2) > 0))
    throw std::invalid_argument("three_qubit_timings: couplings must be positive");
  return {kPi / 8.0 * (1.0 / j12 + 1.0 / (2.0 * j13)),
          kPi / 8.0 * (1.0 / j12 - 1.0 / (2.0 * j13))};
}

struct ThreeQubitSolution {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;  // s
  double a1 = 0.0, a2 = 0.0;            // pulse areas, rad, in (0, 2 pi)
  double alpha = 0.0;                   // J23/J13
  double residual = 0.0;                // max |component| of the 4-vector
};

namespace detail {

// Both complex residuals of the (T3, A1, A2) system stacked into four reals.
inline Eigen::Vector4d three_qubit_residual(double w, double a1h, double a2h, double alpha) {
  // w = J23 T3, a1h = A1/2, a2h = A2/2
  const cxd ew2 = std::exp(cxd{0, w / 2.0}), ew = std::exp(cxd{0, w});
  const cxd c1 = std::exp(cxd{0, kPi / 16.0 * (alpha + 2.0)}) / std::sqrt(2.0);
  const cxd c2 = std::exp(cxd{0, kPi / 16.0 * (alpha - 2.0)}) / std::sqrt(2.0);
  const double s1 = std::sin(a1h), k1 = std::cos(a1h);
  const double s2 = std::sin(a2h), k2 = std::cos(a2h);
  const cxd e1 = c1 * ew2 - s1 * s2 * ew + k1 * k2;
  const cxd e2 = c2 * ew2 - s1 * k2 * ew - k1 * s2;
  return {e1.real(), e1.imag(), e2.real(), e2.imag()};
}

inline Eigen::Matrix<double, 4, 3> three_qubit_jacobian(double w, double a1h, double a2h,
                                                        double alpha) {
  const cxd i{0, 1};
  const cxd ew2 = std::exp(cxd{0, w / 2.0}), ew = std::exp(cxd{0, w});
  const cxd c1 = std::exp(cxd{0, kPi / 16.0 * (alpha + 2.0)}) / std::sqrt(2.0);
  const cxd c2 = std::exp(cxd{0, kPi / 16.0 * (alpha - 2.0)}) / std::sqrt(2.0);
  const double s1 = std::sin(a1h), k1 = std::cos(a1h);
  const double s2 = std::sin(a2h), k2 = std::cos(a2h);
  // derivatives w.r.t. (w, a1h, a2h); the caller rescales to (T3, A1, A2)
  const cxd d1w = c1 * i * 0.5 * ew2 - s1 * s2 * i * ew;
  const cxd d1a1 = -k1 * s2 * ew - s1 * k2;
  const cxd d1a2 = -s1 * k2 * ew - k1 * s2;
  const cxd d2w = c2 * i * 0.5 * ew2 - s1 * k2 * i * ew;
  const cxd d2a1 = -k1 * k2 * ew + s1 * s2;
  const cxd d2a2 = s1 * s2 * ew - k1 * k2;
  Eigen::Matrix<double, 4, 3> jac;
  jac << d1w.real(), d1a1.real(), d1a2.real(),  //
      d1w.imag(), d1a1.imag(), d1a2.imag(),     //
      d2w.real(), d2a1.real(), d2a2.real(),     //
      d2w.imag(), d2a1.imag(), d2a2.imag();
  return jac;
}

// Levenberg-Marquardt on the 4-component residual in (w, A1/2, A2/2).
inline std::optional<Eigen::Vector3d> lm_solve(Eigen::Vector3d x, double alpha) {
  double lambda = 1e-3;
  Eigen::Vector4d r = three_qubit_residual(x(0), x(1), x(2), alpha);
  for (int iter = 0; iter < 200; ++iter) {
    if (r.cwiseAbs().maxCoeff() < 1e-14) return x;
    const auto jac = three_qubit_jacobian(x(0), x(1), x(2), alpha);
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d jtr = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 40; ++tries) {
      const Eigen::Vector3d dx =
          (jtj + lambda * Eigen::Matrix3d::Identity()).ldlt().solve(-jtr);
      const Eigen::Vector3d xn = x + dx;
      const Eigen::Vector4d rn = three_qubit_residual(xn(0), xn(1), xn(2), alpha);
      if (rn.squaredNorm() < r.squaredNorm()) {
        x = xn;
        r = rn;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (!stepped) break;
  }
  if (r.cwiseAbs().maxCoeff() < 1e-10) return x;
  return std::nullopt;
}

}  // namespace detail

// Single-start solve (used for continuation); seed = (T3, A1, A2).
inline std::optional<ThreeQubitSolution> solve_three_qubit_from(const CouplingMatrix& j,
                                                                const Eigen::Vector3d& seed) {
  const ThreeQubitTimings t = three_qubit_timings(j);
  const double j23 = j.j(1, 2), alpha = j.j(1, 2) / j.j(0, 2);
  auto root = detail::lm_solve({seed(0) * j23, seed(1) / 2.0, seed(2) / 2.0}, alpha);
  if (!root) return std::nullopt;
  double w = (*root)(0);
  double a1 = std::fmod(2.0 * (*root)(1), 2.0 * kPi);
  double a2 = std::fmod(2.0 * (*root)(2), 2.0 * kPi);
  if (a1 < 0) a1 += 2.0 * kPi;
  if (a2 < 0) a2 += 2.0 * kPi;
  if (!(w > 0)) return std::nullopt;
  ThreeQubitSolution s;
  s.t1 = t.t1, s.t2 = t.t2, s.t3 = w / j23;
  s.a1 = a1, s.a2 = a2, s.alpha = alpha;
  s.residual =
      detail::three_qubit_residual(w, a1 / 2.0, a2 / 2.0, alpha).cwiseAbs().maxCoeff();
  return s;
}

struct SolverDiagnostics {
  int roots_found = 0;
  double best_residual = 1e9;  // best over all grid starts, converged or not
};

// Grid of 8x8x8 starting points over T3 in (0, 4 pi/J23], A1, A2 in (0, 2 pi);
// returns the converged root with the smallest T3 (then smallest A1).
inline ThreeQubitSolution solve_three_qubit(const CouplingMatrix& j,
                                            SolverDiagnostics* diag = nullptr) {
  three_qubit_timings(j);  // validates couplings
  const double j23 = j.j(1, 2);
  std::optional<ThreeQubitSolution> best;
  SolverDiagnostics d;
  for (int it = 1; it <= 8; ++it)
    for (int ia1 = 0; ia1 < 8; ++ia1)
      for (int ia2 = 0; ia2 < 8; ++ia2) {
        const Eigen::Vector3d seed{it / 8.0 * 4.0 * kPi / j23, (ia1 + 0.5) / 8.0 * 2.0 * kPi,
                                   (ia2 + 0.5) / 8.0 * 2.0 * kPi};
        auto s = solve_three_qubit_from(j, seed);
        if (!s) continue;
        ++d.roots_found;
        d.best_residual = std::min(d.best_residual, s->residual);
        if (!best || s->t3 < best->t3 - 1e-12 ||
            (std::abs(s->t3 - best->t3) <= 1e-12 && s->a1 < best->a1 - 1e-12))
          best = *s;
      }
  if (diag) *diag = d;
  if (!best)
    throw std::runtime_error("solve_three_qubit: no root below tolerance (best residual " +
                             std::to_string(d.best_residual) + ")");
  return *best;
}

// Which pairs evolve during the U(T1), U(T2) windows of the rearranged
// sequence. AllPairs is the reading that reproduces the Fourier transform.
enum class FreeEvolutionPairs { AllPairs, Pairs12And13 };

// The rearranged sequence in application order:
// H1, R3(pi), R2(pi), R1(pi), U(T1), R3(pi), U(T2), R3(pi,-3pi/16),
// R2(A1,3pi/4), R1(pi,3pi/16), U23(T3), R3(pi/2,-pi/2), R2(A2,3pi/4).
inline Circuit assemble_three_qubit_sequence(
    const ThreeQubitSolution& s, const CouplingMatrix& j,
    FreeEvolutionPairs pairs = FreeEvolutionPairs::AllPairs) {
  Eigen::MatrixXd jw = j.j.topLeftCorner(3, 3);
  if (pairs == FreeEvolutionPairs::Pairs12And13) jw(1, 2) = jw(2, 1) = 0.0;
  Circuit c;
  c.n_sites = 3;
  c.append(Gate::hadamard(1));
  c.append(Gate::rotation(3, kPi));
  c.append(Gate::rotation(2, kPi));
  c.append(Gate::rotation(1, kPi));
  c.append(Gate::tailored(jw, s.t1));
  c.append(Gate::rotation(3, kPi));
  c.append(Gate::tailored(jw, s.t2));
  c.append(Gate::rotation(3, kPi, -3.0 * kPi / 16.0));
  c.append(Gate::rotation(2, s.a1, 3.0 * kPi / 4.0));
  c.append(Gate::rotation(1, kPi, 3.0 * kPi / 16.0));
  c.append(Gate::ising(2, 3, 0.5 * j.j(1, 2) * s.t3));
  c.append(Gate::rotation(3, kPi / 2.0, -kPi / 2.0));
  c.append(Gate::rotation(2, s.a2, 3.0 * kPi / 4.0));
  return c;
}

inline double three_qubit_total_time(const ThreeQubitSolution& s) { return s.t1 + s.t2 + s.t3; }

}  // namespace qfti
