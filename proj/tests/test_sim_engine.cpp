#include <catch2/catch_amalgamated.hpp>

#include "qfti/circuit.hpp"
#include "qfti/gates.hpp"
#include "qfti/linalg.hpp"
#include "test_helpers.hpp"

using namespace qfti;
using test::max_abs_diff;
using test::uniform;

TEST_CASE("embed_local identity and single-site cases") {
  const Matrix eye2 = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(embed_local(eye2, {1}, 3), Matrix::Identity(8, 8)) == 0.0);

  // site 1 is the most significant digit, so sz on site 2 of two qubits
  // alternates with the fast digit
  const Matrix z2 = embed_local(pauli_z(), {2}, 2);
  Matrix want = Matrix::Zero(4, 4);
  want.diagonal() << 1, -1, 1, -1;
  CHECK(max_abs_diff(z2, want) == 0.0);

  const Matrix z1 = embed_local(pauli_z(), {1}, 2);
  want.diagonal() << 1, 1, -1, -1;
  CHECK(max_abs_diff(z1, want) == 0.0);
}

TEST_CASE("embed_local two-site gate on adjacent and reversed targets") {
  const Matrix cp = cphase_matrix(kPi / 2.0);
  Matrix want = Matrix::Identity(4, 4);
  want(3, 3) = cxd{0, 1};
  CHECK(max_abs_diff(embed_local(cp, {1, 2}, 2), want) < 1e-15);

  // CPHASE is symmetric, so reversing the target order changes nothing
  CHECK(max_abs_diff(embed_local(cp, {2, 1}, 2), want) < 1e-15);

  // a non-symmetric operator keeps track of the target order
  Matrix lower = Matrix::Zero(4, 4);
  lower(1, 0) = 1.0;  // |01><00| on (first, second) listed site
  const Matrix a = embed_local(lower, {1, 2}, 2);
  const Matrix b = embed_local(lower, {2, 1}, 2);
  CHECK(max_abs_diff(a, b) > 0.5);
  CHECK(std::abs(a(1, 0) - 1.0) < 1e-15);  // |01><00| in chain order
  CHECK(std::abs(b(2, 0) - 1.0) < 1e-15);  // |10><00| when site 2 is listed first
}

TEST_CASE("embed_local rejects bad input") {
  const Matrix eye2 = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(embed_local(eye2, {1, 2}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed_local(Matrix::Identity(4, 4), {1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed_local(eye2, {4}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed_local(eye2, {0}, 3), std::invalid_argument);
}

TEST_CASE("embed_local preserves unitarity") {
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix r = rotation_matrix(uniform(0, 2 * kPi), uniform(-kPi, kPi));
    const Matrix full = embed_local(r, {1 + rep % 4}, 4);
    CHECK(unitarity_defect(full) < 1e-12);
  }
  const Matrix u = embed_local(ising_pair_matrix(0.7), {2, 5}, 5);
  CHECK(unitarity_defect(u) < 1e-12);
}

TEST_CASE("compose basics") {
  Circuit empty;
  empty.n_sites = 2;
  CHECK(max_abs_diff(compose(empty), Matrix::Identity(4, 4)) == 0.0);

  Circuit h;
  h.n_sites = 1;
  h.append(Gate::hadamard(1));
  CHECK(max_abs_diff(compose(h), hadamard_matrix()) < 1e-15);

  Circuit inverse_pair;
  inverse_pair.n_sites = 1;
  inverse_pair.append(Gate::phase(1, kPi / 4.0));
  inverse_pair.append(Gate::phase(1, -kPi / 4.0));
  CHECK(max_abs_diff(compose(inverse_pair), Matrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("compose applies gates first-listed first") {
  // |0> -- H -- T(phi): amplitudes pick up the T phases after the Hadamard
  Circuit c;
  c.n_sites = 1;
  c.append(Gate::hadamard(1));
  c.append(Gate::phase(1, 0.3));
  const Matrix u = compose(c);
  const Matrix want = phase_matrix(0.3) * hadamard_matrix();
  CHECK(max_abs_diff(u, want) < 1e-15);
}

TEST_CASE("compose is associative over concatenation") {
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Gate> gs = {Gate::rotation(1, uniform(0, kPi), uniform(-kPi, kPi)),
                            Gate::ising(1, 3, uniform(-kPi, kPi)),
                            Gate::rotation(2, uniform(0, kPi), uniform(-kPi, kPi))};
    const Matrix whole = test::compose_gates(gs, 3);
    const Matrix head = test::compose_gates({gs[0]}, 3);
    const Matrix tail = test::compose_gates({gs[1], gs[2]}, 3);
    CHECK(max_abs_diff(whole, tail * head) < 1e-13);
  }
}

TEST_CASE("compose validates gate indices") {
  Circuit c;
  c.n_sites = 2;
  c.append(Gate::hadamard(3));
  CHECK_THROWS_AS(compose(c), std::invalid_argument);
  c.gates = {Gate::ising(1, 1, 0.1)};
  CHECK_THROWS_AS(compose(c), std::invalid_argument);
  c.gates = {Gate::rotation(1, std::nan(""), 0.0)};
  CHECK_THROWS_AS(compose(c), std::invalid_argument);
}

TEST_CASE("phase_invariant_distance") {
  const Matrix h = hadamard_matrix();
  CHECK(phase_invariant_distance(h, h) == 0.0);
  CHECK(phase_invariant_distance(h, std::exp(cxd{0, kPi / 7.0}) * h) < 1e-12);
  CHECK(std::abs(phase_invariant_distance(Matrix::Identity(2, 2), pauli_z()) - 1.0) < 1e-15);
  CHECK_THROWS_AS(phase_invariant_distance(h, Matrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("phase_invariant_distance symmetry and unitary invariance") {
  const Matrix u = test::compose_gates({Gate::rotation(1, 0.3, 0.1), Gate::ising(1, 2, 0.5)}, 2);
  const Matrix v = test::compose_gates({Gate::hadamard(2), Gate::cphase(1, 2, 0.9)}, 2);
  const Matrix w = test::compose_gates({Gate::rotation(2, 1.1, -0.4)}, 2);
  const double d = phase_invariant_distance(u, v);
  CHECK(std::abs(d - phase_invariant_distance(v, u)) < 1e-14);
  CHECK(std::abs(d - phase_invariant_distance(w * u, w * v)) < 1e-13);
  CHECK(std::abs(d - phase_invariant_distance(u * w, v * w)) < 1e-13);
}
