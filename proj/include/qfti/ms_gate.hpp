#pragma once

// Bichromatic (Molmer-Sorensen style) realization of the tailored evolution:
// numeric time-ordered propagation of the spin-phonon Hamiltonian
//   H(t) = sum_k g_k sx_k (a+ e^{i(dt - p_k)} + a e^{-i(dt - p_k)})
// against the exact Magnus closed form
//   U = D(alpha) exp(i (dt - sin dt)/d^2 sum_{k<p} 2 g_k g_p sx_k sx_p),
// plus the drive solver for a factorized coupling target.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qfti/linalg.hpp"
#include "qfti/tailoring.hpp"

namespace qfti {

struct BichromaticDrive {
  std::vector<double> g;            // spin-phonon couplings, rad/s
  double delta = 1.0;               // detuning, rad/s
  std::vector<double> phase_minus;  // per-ion motional phases (empty = all 0)
  int fock_cutoff = 25;             // retained Fock levels 0..n_max-1

  int n_ions() const { return static_cast<int>(g.size()); }
  double phase(int k) const { return phase_minus.empty() ? 0.0 : phase_minus.at(k); }

  void validate() const {
    if (g.empty()) throw std::invalid_argument("drive: at least one ion");
    if (delta == 0.0) throw std::invalid_argument("drive: detuning must be nonzero");
    if (fock_cutoff < 10) throw std::invalid_argument("drive: fock cutoff >= 10 required");
    if (!phase_minus.empty() && phase_minus.size() != g.size())
      throw std::invalid_argument("drive: phase list size mismatch");
    for (double gk : g)
      if (std::abs(gk) / std::abs(delta) > 0.2)
        throw std::invalid_argument("drive: |g|/|delta| > 0.2 leaves the weak-drive regime");
  }
};

namespace detail {

// exp(-i H t) for Hermitian H
inline Matrix unitary_exp(const Matrix& h, double t = 1.0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& lam = es.eigenvalues();
  Vector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) phases(i) = std::exp(cxd{0, -lam(i) * t});
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix creation_op(int n_max) {
  Matrix ad = Matrix::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) ad(n, n - 1) = std::sqrt(static_cast<double>(n));
  return ad;
}

// sx on ion k (1-based) as a full spin-space operator
inline Matrix spin_x_full(int k, int n_ions) {
  return embed_local(pauli_x(), {k}, n_ions, 2);
}

// D(alpha) = exp(alpha a+ - alpha* a) on the truncated Fock space
inline Matrix displacement(cxd alpha, int n_max) {
  const Matrix ad = creation_op(n_max);
  const Matrix k = alpha * ad - std::conj(alpha) * ad.adjoint();
  return unitary_exp(cxd{0, 1} * k, 1.0);
}

}  // namespace detail

struct NumericPropagation {
  Matrix u;                  // (2^N n_max)-dim propagator, spin-major ordering
  int steps = 0;             // step count of the accepted run
  double step_delta = 0.0;   // max |U(steps) - U(2*steps)|
  double top_level_population = 0.0;
};

inline Matrix bichromatic_hamiltonian(const BichromaticDrive& d, double t) {
  const int n = d.n_ions(), n_max = d.fock_cutoff;
  const long dim = ipow(2, n) * n_max;
  const Matrix ad = detail::creation_op(n_max);
  Matrix h = Matrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const cxd e = std::exp(cxd{0, d.delta * t - d.phase(k)});
    Matrix motion = ad * e + ad.adjoint() * std::conj(e);
    h += d.g[k] * Eigen::kroneckerProduct(detail::spin_x_full(k + 1, n), motion).eval();
  }
  return h;
}

// Fourth-order commutator-free stepping; the step count doubles until
// halving changes the propagator by less than `tol`. Unitary by
// construction (each step is the exponential of a Hermitian matrix).
inline NumericPropagation propagate_numeric(const BichromaticDrive& d, double t,
                                            int initial_steps = 256, double tol = 1e-8) {
  d.validate();
  const double root3 = std::sqrt(3.0);
  const double c1 = 0.5 - root3 / 6.0, c2 = 0.5 + root3 / 6.0;
  const double a1 = (3.0 - 2.0 * root3) / 12.0, a2 = (3.0 + 2.0 * root3) / 12.0;
  const long dim = ipow(2, d.n_ions()) * d.fock_cutoff;

  auto run = [&](int steps) {
    const double dt = t / steps;
    Matrix u = Matrix::Identity(dim, dim);
    for (int i = 0; i < steps; ++i) {
      const double t0 = i * dt;
      const Matrix h1 = bichromatic_hamiltonian(d, t0 + c1 * dt);
      const Matrix h2 = bichromatic_hamiltonian(d, t0 + c2 * dt);
      u = detail::unitary_exp(a2 * h1 + a1 * h2, dt) * detail::unitary_exp(a1 * h1 + a2 * h2, dt) * u;
    }
    return u;
  };

  NumericPropagation out;
  Matrix u = run(initial_steps);
  int steps = initial_steps;
  for (int iter = 0; iter < 8; ++iter) {
    Matrix u2 = run(2 * steps);
    out.step_delta = (u - u2).cwiseAbs().maxCoeff();
    if (out.step_delta < tol) {
      out.u = u2;
      out.steps = 2 * steps;
      break;
    }
    u = u2;
    steps *= 2;
  }
  if (out.u.size() == 0)
    throw std::runtime_error("propagate_numeric: step halving did not converge");

  // truncation leakage: top Fock level reached from low-lying columns
  const int n_max = d.fock_cutoff;
  const long sdim = ipow(2, d.n_ions());
  for (long s = 0; s < sdim; ++s)
    for (int n0 = 0; n0 < std::min(6, n_max); ++n0) {
      const auto col = out.u.col(s * n_max + n0);
      double pop = 0.0;
      for (long sp = 0; sp < sdim; ++sp) pop += std::norm(col(sp * n_max + n_max - 1));
      out.top_level_population = std::max(out.top_level_population, pop);
    }
  if (out.top_level_population > 1e-6)
    throw std::runtime_error("propagate_numeric: Fock truncation leakage; increase fock_cutoff");
  return out;
}

struct MagnusPropagator {
  Matrix u;                        // truncated-space closed-form propagator
  std::vector<cxd> sector_alpha;   // displacement per sx sector
  Eigen::MatrixXd pair_phase;      // theta_kp = (dt - sin dt)/d^2 * 2 g_k g_p
  double global_phase = 0.0;       // (dt - sin dt)/d^2 * sum g_k^2
};

// Exact closed form (the Magnus series terminates at second order for this
// Hamiltonian). Requires equal per-ion motional phases.
inline MagnusPropagator magnus_propagator(const BichromaticDrive& d, double t) {
  d.validate();
  for (int k = 0; k < d.n_ions(); ++k)
    if (std::abs(d.phase(k) - d.phase(0)) > 1e-14)
      throw std::invalid_argument("magnus_propagator: per-ion phases must be equal");
  const int n = d.n_ions(), n_max = d.fock_cutoff;
  const long sdim = ipow(2, n);

  MagnusPropagator out;
  const double chi = (d.delta * t - std::sin(d.delta * t)) / (d.delta * d.delta);
  out.pair_phase = Eigen::MatrixXd::Zero(n, n);
  out.global_phase = 0.0;
  for (int k = 0; k < n; ++k) {
    out.global_phase += chi * d.g[k] * d.g[k];
    for (int p = k + 1; p < n; ++p) {
      out.pair_phase(k, p) = chi * 2.0 * d.g[k] * d.g[p];
      out.pair_phase(p, k) = out.pair_phase(k, p);
    }
  }

  // sector s: bit 0 of site k means sx eigenvalue +1 (site 1 = MSB)
  const cxd loop = (1.0 - std::exp(cxd{0, d.delta * t})) / d.delta * std::exp(cxd{0, -d.phase(0)});
  out.sector_alpha.resize(sdim);
  Matrix block = Matrix::Zero(sdim * n_max, sdim * n_max);
  for (long s = 0; s < sdim; ++s) {
    double gsum = 0.0, theta = 0.0;
    std::vector<int> sx(n);
    for (int k = 0; k < n; ++k) sx[k] = ((s >> (n - 1 - k)) & 1) ? -1 : 1;
    for (int k = 0; k < n; ++k) {
      gsum += d.g[k] * sx[k];
      for (int p = k + 1; p < n; ++p) theta += out.pair_phase(k, p) * sx[k] * sx[p];
    }
    out.sector_alpha[s] = loop * gsum;
    block.block(s * n_max, s * n_max, n_max, n_max) =
        std::exp(cxd{0, theta + out.global_phase}) *
        detail::displacement(out.sector_alpha[s], n_max);
  }

  // rotate the sector decomposition back to the computational basis
  Matrix w(2, 2);
  w << 1, 1, 1, -1;
  w /= std::sqrt(2.0);
  Matrix wfull = Matrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) wfull = Eigen::kroneckerProduct(wfull, w).eval();
  const Matrix wlift = Eigen::kroneckerProduct(wfull, Matrix::Identity(n_max, n_max)).eval();
  out.u = wlift * block * wlift.adjoint();
  return out;
}

// g_k = a_k delta sqrt(alpha)/2, so that the sector phases 4 pi g_k g_p/d^2
// at tau = 2 pi/delta reproduce the factorized target J_kl = pi alpha a_k a_l.
inline BichromaticDrive drive_for_target(const TailoredCoupling& target, double delta,
                                         int fock_cutoff = 25) {
  BichromaticDrive d;
  d.delta = delta;
  d.fock_cutoff = fock_cutoff;
  const double scale = std::abs(delta) * std::sqrt(target.alpha) / 2.0;
  for (int k = 0; k < target.n_qubits; ++k) d.g.push_back(target.a(k) * scale);
  for (double gk : d.g)
    if (std::abs(gk) / std::abs(delta) > 0.2)
      throw std::runtime_error(
          "drive_for_target: required |g|/|delta| exceeds 0.2; lower alpha or raise delta");
  return d;
}

// --------------------------------------------------------------------------
// Comparison metrics
// --------------------------------------------------------------------------

// Worst overlap |<u1 col|u2 col>| over columns starting in Fock levels
// 0..max_fock (every spin basis state).
inline double min_column_fidelity(const Matrix& u1, const Matrix& u2, int n_ions, int n_max,
                                  int max_fock = 5) {
  const long sdim = ipow(2, n_ions);
  double worst = 1.0;
  for (long s = 0; s < sdim; ++s)
    for (int f = 0; f <= std::min(max_fock, n_max - 1); ++f) {
      const long col = s * n_max + f;
      worst = std::min(worst, std::abs(u1.col(col).dot(u2.col(col))));
    }
  return worst;
}

// 1 - tr(rho_spin^2) for the evolved product state |spin s0> |fock n0>.
inline double spin_purity_deficit(const Matrix& u, int n_ions, int n_max, long s0, int n0) {
  const long sdim = ipow(2, n_ions);
  const auto psi = u.col(s0 * n_max + n0);
  Matrix rho = Matrix::Zero(sdim, sdim);
  for (long s = 0; s < sdim; ++s)
    for (long sp = 0; sp < sdim; ++sp)
      for (int f = 0; f < n_max; ++f) rho(s, sp) += psi(s * n_max + f) * std::conj(psi(sp * n_max + f));
  return std::abs(1.0 - (rho * rho).trace().real());
}

struct ExtractedSpinPhases {
  Eigen::MatrixXd pair_phase;  // theta_kp from the vacuum block
  double global_phase = 0.0;
};

// Reads the sx sx phases off the vacuum-to-vacuum spin block of a
// propagator. Valid when the motional factor closes (t = 2 pi z / delta).
inline ExtractedSpinPhases extract_spin_phases(const Matrix& u, int n_ions, int n_max) {
  const long sdim = ipow(2, n_ions);
  Matrix m(sdim, sdim);
  for (long r = 0; r < sdim; ++r)
    for (long c = 0; c < sdim; ++c) m(r, c) = u(r * n_max, c * n_max);
  Matrix w(2, 2);
  w << 1, 1, 1, -1;
  w /= std::sqrt(2.0);
  Matrix wfull = Matrix::Identity(1, 1);
  for (int k = 0; k < n_ions; ++k) wfull = Eigen::kroneckerProduct(wfull, w).eval();
  const Matrix diag = wfull.adjoint() * m * wfull;

  ExtractedSpinPhases out;
  out.pair_phase = Eigen::MatrixXd::Zero(n_ions, n_ions);
  std::vector<double> theta(sdim);
  for (long s = 0; s < sdim; ++s) theta[s] = std::arg(diag(s, s));
  for (long s = 0; s < sdim; ++s) out.global_phase += theta[s] / static_cast<double>(sdim);
  for (int k = 0; k < n_ions; ++k)
    for (int p = k + 1; p < n_ions; ++p) {
      double sum = 0.0;
      for (long s = 0; s < sdim; ++s) {
        const int sk = ((s >> (n_ions - 1 - k)) & 1) ? -1 : 1;
        const int sp = ((s >> (n_ions - 1 - p)) & 1) ? -1 : 1;
        sum += theta[s] * sk * sp;
      }
      out.pair_phase(k, p) = out.pair_phase(p, k) = sum / static_cast<double>(sdim);
    }
  return out;
}

}  // namespace qfti
