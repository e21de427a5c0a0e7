#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "fqpw/crystal.hpp"
#include "fqpw/statesim/antisym.hpp"
#include "fqpw/statesim/state.hpp"

namespace fqpw {

/**
 * @brief R_pq(theta) on first-quantized registers: |q> -> cos|q> - sin|p>, |p> -> cos|p> + sin|q>
 * on the single register holding p or q; identity when none or both are present.
 */
inline StateVector givens_rotation_fq(const StateVector& state, std::size_t p, std::size_t q, double theta) {
  if (p == q) throw ValidationError("givens rotation needs p != q");
  const double c = std::cos(theta), s = std::sin(theta);
  StateVector out = state;
  out.amplitudes.setZero();
  const auto& L = state.layout;
  for (std::size_t x = 0; x < L.total_dim(); ++x) {
    const cplx a = state.amplitudes[Eigen::Index(x)];
    if (a == cplx(0.0)) continue;
    auto v = L.decode(x);
    int holder = -1, hits = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == p || v[i] == q) {
        holder = int(i);
        ++hits;
      }
    if (hits != 1) {
      out.amplitudes[Eigen::Index(x)] += a;
      continue;
    }
    const bool at_q = v[std::size_t(holder)] == q;
    out.amplitudes[Eigen::Index(x)] += c * a;
    v[std::size_t(holder)] = at_q ? p : q;
    out.amplitudes[Eigen::Index(L.index(v))] += (at_q ? -s : s) * a;
  }
  return out;
}

inline StateVector givens_rotation_fq(const StateVector& state, const PlaneWaveGrid& grid, const IntVec3& p,
                                      const IntVec3& q, double theta) {
  if (p == q) throw ValidationError("givens rotation needs p != q");
  return givens_rotation_fq(state, std::size_t(grid.index_of(p)), std::size_t(grid.index_of(q)), theta);
}

/// exp(i phi) per register occupying orbital q
inline void apply_orbital_phase(StateVector& state, std::size_t q, double phi) {
  if (phi == 0.0) return;
  const auto& L = state.layout;
  for (std::size_t x = 0; x < L.total_dim(); ++x) {
    if (state.amplitudes[Eigen::Index(x)] == cplx(0.0)) continue;
    auto v = L.decode(x);
    int n = 0;
    for (auto o : v) n += (o == q);
    if (n) state.amplitudes[Eigen::Index(x)] *= std::polar(1.0, phi * n);
  }
}

/// g = diag(e^{ia}, e^{ib}) R(theta) diag(e^{ic}, e^{id}) on orbitals (p, q)
struct GivensStep {
  std::size_t p = 0, q = 0;
  double a = 0, b = 0, c = 0, d = 0, theta = 0;
};

inline GivensStep decompose_u2(const Eigen::Matrix2cd& g, std::size_t p, std::size_t q) {
  GivensStep st;
  st.p = p;
  st.q = q;
  const double r0 = std::abs(g(0, 0)), r1 = std::abs(g(1, 0));
  st.theta = std::atan2(r1, r0);
  constexpr double tiny = 1e-14;
  if (r1 < tiny) {
    st.a = std::arg(g(0, 0));
    st.d = std::arg(g(1, 1));
  } else if (r0 < tiny) {
    st.b = std::arg(g(1, 0));
    st.d = std::arg(-g(0, 1));
  } else {
    st.a = std::arg(g(0, 0));
    st.b = std::arg(g(1, 0));
    st.d = std::arg(g(1, 1)) - st.b;
  }
  return st;
}

inline Eigen::Matrix2cd givens_step_matrix(const GivensStep& st) {
  const double c = std::cos(st.theta), s = std::sin(st.theta);
  Eigen::Matrix2cd R;
  R << c, -s, s, c;
  Eigen::Matrix2cd L = Eigen::Matrix2cd::Zero(), Rt = Eigen::Matrix2cd::Zero();
  L(0, 0) = std::polar(1.0, st.a);
  L(1, 1) = std::polar(1.0, st.b);
  Rt(0, 0) = std::polar(1.0, st.c);
  Rt(1, 1) = std::polar(1.0, st.d);
  return L * R * Rt;
}

inline void apply_givens_step(StateVector& state, const GivensStep& st) {
  apply_orbital_phase(state, st.p, st.c);
  apply_orbital_phase(state, st.q, st.d);
  if (st.theta != 0.0) state = givens_rotation_fq(state, st.p, st.q, st.theta);
  apply_orbital_phase(state, st.p, st.a);
  apply_orbital_phase(state, st.q, st.b);
}

/// Haar unitary from the QR decomposition of a seeded complex Gaussian matrix, R-diagonal phases fixed.
inline Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = R(j, j);
    if (std::abs(d) > 0) Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

struct SlaterPreparation {
  StateVector state;
  std::vector<GivensStep> schedule;  // applied in order to the antisymmetrized reference state
  int rotation_count = 0;
  cplx prefactor = 1.0;  // product of diagonal phases over det(row transform)
};

/**
 * @brief Slater determinant of the first eta rows of u, built from Givens rotations
 * applied to the antisymmetrized reference state |0 .. eta-1>.
 */
inline SlaterPreparation prepare_slater(const Eigen::MatrixXcd& u, int eta) {
  const int n = int(u.rows());
  if (u.cols() != n || n < 1) throw ValidationError("u must be square");
  if (eta < 1 || eta > n) throw ValidationError("eta must lie in [1, N']");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("u is not unitary");
  std::size_t dim = 1;
  for (int i = 0; i < eta; ++i) dim *= std::size_t(n);
  if (dim > (std::size_t(1) << 22)) throw CapExceededError("Slater state too large");

  Eigen::MatrixXcd Q = u.topRows(eta);
  cplx detL = 1.0;
  // left row rotations to the staircase Q(i, j) = 0 for j > n - eta + i
  for (int j = n - 1; j > n - eta; --j) {
    const int t = j - (n - eta);
    for (int i = 0; i < t; ++i) {
      const cplx x = Q(t, j), y = Q(i, j);
      const double r = std::sqrt(std::norm(x) + std::norm(y));
      if (std::abs(y) < 1e-15) continue;
      Eigen::Matrix2cd G;
      G << x / r, -y / r, std::conj(y) / r, std::conj(x) / r;  // rows (i, t)
      Eigen::MatrixXcd rows(2, n);
      rows.row(0) = Q.row(i);
      rows.row(1) = Q.row(t);
      rows = G * rows;
      Q.row(i) = rows.row(0);
      Q.row(t) = rows.row(1);
      detL *= G.determinant();
    }
  }

  // column rotations zeroing row i from column n - eta + i down to i + 1
  std::vector<Eigen::Matrix2cd> blocks;
  std::vector<std::size_t> cols;
  for (int i = 0; i < eta; ++i)
    for (int j = n - eta + i; j > i; --j) {
      const cplx x = Q(i, j - 1), y = Q(i, j);
      const double r = std::sqrt(std::norm(x) + std::norm(y));
      Eigen::Matrix2cd M;
      if (r < 1e-300)
        M.setIdentity();
      else
        M << std::conj(x) / r, -y / r, std::conj(y) / r, x / r;
      Eigen::MatrixXcd c2(Q.rows(), 2);
      c2.col(0) = Q.col(j - 1);
      c2.col(1) = Q.col(j);
      c2 = c2 * M;
      Q.col(j - 1) = c2.col(0);
      Q.col(j) = c2.col(1);
      blocks.push_back(M);
      cols.push_back(std::size_t(j - 1));
    }

  SlaterPreparation out;
  cplx diag = 1.0;
  for (int i = 0; i < eta; ++i) diag *= Q(i, i);
  out.prefactor = diag / detL;
  std::vector<std::size_t> ref(static_cast<std::size_t>(eta));
  for (int i = 0; i < eta; ++i) ref[std::size_t(i)] = std::size_t(i);
  out.state = antisymmetrize_indices(ref, std::size_t(n));
  out.state.amplitudes *= out.prefactor;
  // orbital action of M^{-T} = conj(M); last block first
  for (std::size_t k = blocks.size(); k-- > 0;) {
    GivensStep st = decompose_u2(blocks[k].conjugate(), cols[k], cols[k] + 1);
    apply_givens_step(out.state, st);
    out.schedule.push_back(st);
  }
  out.rotation_count = int(out.schedule.size());
  return out;
}

/// Ordered-configuration amplitudes det(u[i, p_j]) / sqrt(eta!) over the first eta rows of u.
inline StateVector slater_reference(const Eigen::MatrixXcd& u, int eta) {
  const int n = int(u.rows());
  StateVector s;
  s.layout = particle_layout(eta, std::size_t(n));
  s.amplitudes = Eigen::VectorXcd(Eigen::Index(s.layout.total_dim()));
  double fact = 1.0;
  for (int k = 2; k <= eta; ++k) fact *= k;
  Eigen::MatrixXcd m(eta, eta);
  for (std::size_t x = 0; x < s.layout.total_dim(); ++x) {
    const auto cfg = s.layout.decode(x);
    for (int i = 0; i < eta; ++i)
      for (int j = 0; j < eta; ++j) m(i, j) = u(i, Eigen::Index(cfg[std::size_t(j)]));
    s.amplitudes[Eigen::Index(x)] = m.determinant() / std::sqrt(fact);
  }
  return s;
}

}  // namespace fqpw
