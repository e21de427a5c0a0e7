#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "fqpw/statesim/state.hpp"

namespace fqpw {

/**
 * @brief Amplitudes proportional to 2^{r/2}, r in [0, n_p-2], from a controlled-Hadamard cascade.
 *
 * Simulated on n_p-1 qubits: H on q0, CH(q_{i-1} -> q_i), X on all, then the all-zero
 * branch is flagged and projected out. r is the number of ones minus one.
 */
inline StateVector exponential_state(int n_p) {
  if (n_p < 2) throw ValidationError("exponential_state needs n_p >= 2");
  if (n_p > 24) throw CapExceededError("exponential_state is capped at n_p = 24");
  const int k = n_p - 1;
  const std::size_t dim = std::size_t(1) << k;
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(Eigen::Index(dim));
  psi[0] = 1.0;
  const double h = std::sqrt(0.5);
  auto hadamard = [&](int target, int control) {
    const std::size_t t = std::size_t(1) << target;
    for (std::size_t b = 0; b < dim; ++b) {
      if (b & t) continue;
      if (control >= 0 && !(b & (std::size_t(1) << control))) continue;
      const double x0 = psi[Eigen::Index(b)], x1 = psi[Eigen::Index(b | t)];
      psi[Eigen::Index(b)] = h * (x0 + x1);
      psi[Eigen::Index(b | t)] = h * (x0 - x1);
    }
  };
  hadamard(0, -1);
  for (int i = 1; i < k; ++i) hadamard(i, i - 1);
  Eigen::VectorXd flipped(psi.size());
  for (std::size_t b = 0; b < dim; ++b) flipped[Eigen::Index(b ^ (dim - 1))] = psi[Eigen::Index(b)];

  StateVector out;
  out.layout = RegisterLayout({{"r", std::size_t(k)}});
  out.amplitudes = Eigen::VectorXcd::Zero(k);
  for (std::size_t b = 1; b < dim; ++b) {
    const double a = flipped[Eigen::Index(b)];
    if (a == 0.0) continue;
    const int ones = __builtin_popcountll(b);
    out.amplitudes[ones - 1] += a;
  }
  out.success_probability = 1.0 - flipped[0] * flipped[0];
  return out;
}

}  // namespace fqpw
