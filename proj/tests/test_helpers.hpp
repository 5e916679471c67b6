#pragma once

#include <random>

#include "qfti/circuit.hpp"
#include "qfti/linalg.hpp"

namespace qfti::test {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240811);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix compose_gates(const std::vector<Gate>& gates, int n_sites, int site_dim = 2) {
  Circuit c;
  c.n_sites = n_sites;
  c.site_dim = site_dim;
  c.gates = gates;
  return compose(c);
}

}  // namespace qfti::test
