#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "fqpw/errors.hpp"

namespace fqpw {

using cplx = std::complex<double>;

struct Register {
  std::string name;
  std::size_t dim = 1;
};

struct QubitSpan {
  std::size_t first = 0;
  std::size_t count = 0;
};

/** @brief Ordered registers; the first register is the most significant digit. */
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    for (const auto& r : regs_)
      if (r.dim == 0) throw ValidationError("register '" + r.name + "' has zero dimension");
  }

  const std::vector<Register>& registers() const { return regs_; }
  std::size_t size() const { return regs_.size(); }

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (const auto& r : regs_) d *= r.dim;
    return d;
  }

  std::size_t position(const std::string& name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i)
      if (regs_[i].name == name) return i;
    throw ValidationError("no register named '" + name + "'");
  }

  static std::size_t qubits_for(std::size_t dim) {
    std::size_t q = 0;
    while ((std::size_t(1) << q) < dim) ++q;
    return q;
  }

  /// qubit span of a register when every register is padded to whole qubits
  QubitSpan span(const std::string& name) const {
    std::size_t first = 0;
    for (const auto& r : regs_) {
      if (r.name == name) return {first, qubits_for(r.dim)};
      first += qubits_for(r.dim);
    }
    throw ValidationError("no register named '" + name + "'");
  }
  std::size_t total_qubits() const {
    std::size_t q = 0;
    for (const auto& r : regs_) q += qubits_for(r.dim);
    return q;
  }

  std::size_t index(const std::vector<std::size_t>& values) const {
    if (values.size() != regs_.size()) throw ValidationError("register value count mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
      if (values[i] >= regs_[i].dim) throw ValidationError("register value out of range");
      idx = idx * regs_[i].dim + values[i];
    }
    return idx;
  }

  std::vector<std::size_t> decode(std::size_t idx) const {
    std::vector<std::size_t> v(regs_.size());
    for (std::size_t i = regs_.size(); i-- > 0;) {
      v[i] = idx % regs_[i].dim;
      idx /= regs_[i].dim;
    }
    return v;
  }

 private:
  std::vector<Register> regs_;
};

struct StateVector {
  RegisterLayout layout;
  Eigen::VectorXcd amplitudes;
  double success_probability = 1.0;

  double norm() const { return amplitudes.norm(); }
};

struct OperatorMatrix {
  RegisterLayout layout;
  Eigen::MatrixXcd matrix;
  bool unitary = false;

  /// max |(M^dagger M - I)_{ij}|
  double unitarity_deviation() const {
    Eigen::MatrixXcd g = matrix.adjoint() * matrix;
    g -= Eigen::MatrixXcd::Identity(g.rows(), g.cols());
    return g.cwiseAbs().maxCoeff();
  }
};

/// |<a|b>| / (|a| |b|); global phase is ignored
inline double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

}  // namespace fqpw
