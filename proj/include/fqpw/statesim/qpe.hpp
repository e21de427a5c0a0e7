#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <vector>

#include "fqpw/errors.hpp"
#include "fqpw/statesim/state.hpp"
#include "fqpw/units.hpp"

namespace fqpw {

/// Ancilla count for n-bit accuracy with failure probability at most delta.
inline int qpe_aux_qubits(int n, double delta) {
  if (n < 1 || !(delta > 0.0) || delta >= 1.0) throw ValidationError("qpe_aux_qubits: need n >= 1, 0 < delta < 1");
  return n + int(std::ceil(std::log2(2.0 + 1.0 / (2.0 * delta))));
}

/// t-bit outcome y as a bit string, most significant bit first
inline std::string qpe_outcome_string(std::size_t y, int t) {
  std::string s(static_cast<std::size_t>(t), '0');
  for (int i = 0; i < t; ++i)
    if ((y >> (t - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

struct QpeResult {
  int t = 0;
  std::vector<double> probabilities;  // indexed by the integer outcome y
  std::vector<double> phases;         // eigenphases in [0, 1)
  std::vector<double> weights;        // |<v_k|psi>|^2

  double probability(const std::string& outcome) const {
    if (int(outcome.size()) != t) throw ValidationError("outcome length must equal t");
    return probabilities[std::stoul(outcome, nullptr, 2)];
  }
};

/// |(1/T) sum_x e^{2 pi i x d}|^2 for T = 2^t
inline double qpe_kernel(double d, int t) {
  const double T = std::ldexp(1.0, t);
  const double s = std::sin(units::kPi * d);
  if (std::abs(s) < 1e-14) return 1.0;
  const double r = std::sin(units::kPi * T * d) / (T * s);
  return r * r;
}

/**
 * @brief Textbook phase estimation with t ancilla qubits, evaluated through the eigen-decomposition
 * of U. Returns the exact outcome distribution.
 */
inline QpeResult qpe_simulate(const OperatorMatrix& U, const StateVector& input, int t) {
  if (t < 1 || t > 12) throw CapExceededError("qpe: t must lie in [1, 12]");
  const auto& M = U.matrix;
  if (M.rows() != M.cols() || M.rows() != input.amplitudes.size())
    throw ValidationError("qpe: operator and input dimensions differ");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(M);
  const Eigen::MatrixXcd& T = schur.matrixT();
  const Eigen::MatrixXcd& Z = schur.matrixU();
  const double off = T.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff();
  if (M.rows() > 1 && off > 1e-8) throw ValidationError("qpe: operator is not normal");
  QpeResult r;
  r.t = t;
  const Eigen::VectorXcd c = Z.adjoint() * input.amplitudes;
  const double nrm = c.squaredNorm();
  for (Eigen::Index k = 0; k < M.rows(); ++k) {
    const cplx ev = T(k, k);
    if (std::abs(std::abs(ev) - 1.0) > 1e-8) throw ValidationError("qpe: operator is not unitary");
    double ph = std::arg(ev) / (2.0 * units::kPi);
    if (ph < 0.0) ph += 1.0;
    r.phases.push_back(ph);
    r.weights.push_back(std::norm(c[k]) / nrm);
  }
  const std::size_t Tn = std::size_t(1) << t;
  r.probabilities.assign(Tn, 0.0);
  for (std::size_t y = 0; y < Tn; ++y) {
    const double yf = double(y) / double(Tn);
    for (std::size_t k = 0; k < r.phases.size(); ++k)
      if (r.weights[k] > 0.0) r.probabilities[y] += r.weights[k] * qpe_kernel(r.phases[k] - yf, t);
  }
  return r;
}

/// Probability that the outcome lies within eps (circular distance) of phase phi.
inline double qpe_probability_within(const QpeResult& r, double phi, double eps) {
  const double Tn = double(r.probabilities.size());
  double p = 0.0;
  for (std::size_t y = 0; y < r.probabilities.size(); ++y) {
    double d = std::abs(double(y) / Tn - phi);
    d = std::min(d, 1.0 - d);
    if (d < eps) p += r.probabilities[y];
  }
  return p;
}

}  // namespace fqpw
