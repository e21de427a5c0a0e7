#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "fqpw/crystal.hpp"
#include "fqpw/hamiltonian.hpp"
#include "fqpw/statesim/state.hpp"

namespace fqpw {

/// One basis state of the PREP ancilla registers.
struct AncillaState {
  int a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, g = 0, h = 0, j = 0, k = 0, l = 0, m = 0;
  bool operator==(const AncillaState&) const = default;
};

struct QubitizationCaps {
  int max_eta = 3;
  int max_n_p = 3;
  std::int64_t max_system_dim = 4096;
};

/**
 * @brief Small-instance PREP / SEL model. Ancilla registers follow the order
 * a, b, c, d, e, f, g, h, j, k, l, m; k holds an index into G_0 plus one failure value.
 */
class Qubitization {
 public:
  Qubitization(const Material& mat, const PlaneWaveGrid& grid, const LcuOptions& opt = {},
               const QubitizationCaps& caps = {})
      : mat_(mat), grid_(grid) {
    eta_ = opt.eta_override.value_or(mat.eta);
    if (eta_ > caps.max_eta || grid.n_p() > caps.max_n_p)
      throw CapExceededError("qubitization instance exceeds the eta / n_p caps");
    if (grid.n_p() < 2) throw ValidationError("qubitization needs n_p >= 2");
    N_ = grid.N();
    sys_dim_ = 1;
    for (int i = 0; i < eta_; ++i) sys_dim_ *= N_;
    max_system_dim_ = caps.max_system_dim;
    norms_ = lcu_norms(mat, grid, opt);
    convention_ = opt.convention;
    pts_ = grid.points();
    g0_ = grid.nonzero_points();
    for (const auto& nu : g0_) {
      gnu_.push_back(mat.cell.wavevector(nu));
      neg_.push_back(index_in_g0(-nu));
    }
    build_amplitudes();
  }

  const LcuNorms& norms() const { return norms_; }
  const Material& material() const { return mat_; }
  const PlaneWaveGrid& grid() const { return grid_; }
  int eta() const { return eta_; }
  std::int64_t system_dim() const { return sys_dim_; }
  std::size_t g0_size() const { return g0_.size(); }
  double sin2_theta() const { return amp_a_[1] * amp_a_[1]; }
  const std::vector<double>& m_amplitudes() const { return amp_m_; }
  const std::vector<double>& l_amplitudes() const { return amp_l_; }

  RegisterLayout ancilla_layout() const {
    const std::size_t r = std::size_t(grid_.n_p() - 1);
    return RegisterLayout({{"a", 2}, {"b", 2}, {"c", 2}, {"d", std::size_t(eta_)}, {"e", std::size_t(eta_)},
                           {"f", 3}, {"g", r}, {"h", r}, {"j", 2}, {"k", g0_.size() + 1},
                           {"l", std::size_t(std::max(1, mat_.L()))}, {"m", 2}});
  }
  AncillaState decode_ancilla(std::size_t idx) const {
    auto v = ancilla_layout().decode(idx);
    AncillaState s;
    int* f[12] = {&s.a, &s.b, &s.c, &s.d, &s.e, &s.f, &s.g, &s.h, &s.j, &s.k, &s.l, &s.m};
    for (int i = 0; i < 12; ++i) *f[i] = int(v[std::size_t(i)]);
    return s;
  }
  std::size_t encode_ancilla(const AncillaState& s) const {
    return ancilla_layout().index({std::size_t(s.a), std::size_t(s.b), std::size_t(s.c), std::size_t(s.d),
                                   std::size_t(s.e), std::size_t(s.f), std::size_t(s.g), std::size_t(s.h),
                                   std::size_t(s.j), std::size_t(s.k), std::size_t(s.l), std::size_t(s.m)});
  }

  /// PREP|0> amplitude on an ancilla basis state
  double tau(const AncillaState& s) const {
    if (s.c != int(s.d == s.e)) return 0.0;
    double amp = amp_a_[std::size_t(s.a)] * std::sqrt(0.5) / double(eta_) * amp_w_[std::size_t(s.f)] *
                 amp_r_[std::size_t(s.g)] * amp_r_[std::size_t(s.h)] * amp_m_[std::size_t(s.m)] *
                 amp_l_[std::size_t(s.l)];
    const std::size_t pad = g0_.size();
    if (s.j == 0)
      amp *= std::size_t(s.k) < pad ? amp_k_[std::size_t(s.k)] : 0.0;
    else
      amp *= std::size_t(s.k) == pad ? amp_fail_ : 0.0;
    return amp;
  }

  /// Ancilla basis states with nonzero PREP amplitude, with the amplitude.
  std::vector<std::pair<AncillaState, double>> support() const {
    std::vector<std::pair<AncillaState, double>> out;
    const auto L = ancilla_layout();
    for (std::size_t i = 0; i < L.total_dim(); ++i) {
      AncillaState s = decode_ancilla(i);
      if (s.c != int(s.d == s.e)) continue;
      double t = tau(s);
      if (t != 0.0) out.emplace_back(s, t);
    }
    return out;
  }

  /// PREP|0> as a normalized vector over the ancilla layout
  StateVector target_state() const {
    StateVector st;
    st.layout = ancilla_layout();
    st.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(st.layout.total_dim()));
    for (const auto& [s, t] : support()) st.amplitudes[Eigen::Index(encode_ancilla(s))] = t;
    return st;
  }

  /// PREP restricted to its action on |0>, as a one-column isometry
  OperatorMatrix prep_operator() const {
    OperatorMatrix op;
    op.layout = ancilla_layout();
    op.matrix = target_state().amplitudes;
    op.unitary = false;
    return op;
  }

  /**
   * @brief SEL on a basis state. sys holds grid indices per particle, ovf the overflow flags
   * (bit i for particle i). Returns the phase; arguments are updated in place.
   */
  cplx apply_select(AncillaState& s, std::vector<std::int64_t>& sys, unsigned& ovf) const {
    const std::size_t pad = g0_.size();
    if (s.a == 0) return t_phase(s, sys);
    const bool branch_ok = s.j == 0 && std::size_t(s.k) < pad;
    if (branch_ok && s.m == 0 && mat_.L() > 0) return select_u(s, sys, ovf);
    if (branch_ok && s.m == 1 && s.c == 0 && s.d != s.e) return select_v(s, sys, ovf);
    return norms_.aa_rounds == 0 ? t_phase(s, sys) : cplx(1.0);
  }

  /// <G|SEL|G> on the system space (overflow flags zero on both sides)
  Eigen::MatrixXcd block_encoding() const {
    require_system_cap();
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(sys_dim_, sys_dim_);
    const auto supp = support();
    std::vector<std::int64_t> cfg(static_cast<std::size_t>(eta_));
    for (std::int64_t x = 0; x < sys_dim_; ++x)
      for (const auto& [s0, t0] : supp) {
        AncillaState s = s0;
        decode_system(x, cfg);
        unsigned ovf = 0;
        const cplx ph = apply_select(s, cfg, ovf);
        if (ovf) continue;
        const double t1 = tau(s);
        if (t1 == 0.0) continue;
        B(encode_system(cfg), x) += t1 * t0 * ph;
      }
    return B;
  }

  /// (H + shift I) / lambda assembled independently
  Eigen::MatrixXcd expected_block(double lambda_scale = 1.0) const {
    require_system_cap();
    auto H = build_dense_hamiltonian(mat_, grid_, eta_, sys_dim_);
    Eigen::MatrixXcd E = H.matrix;
    E.diagonal().array() += norms_.identity_shift;
    return E / (norms_.lambda_total * lambda_scale);
  }

  std::size_t select_space_dim() const {
    return ancilla_layout().total_dim() * std::size_t(sys_dim_) * (std::size_t(1) << eta_);
  }

  struct SelectCheck {
    std::size_t states = 0;
    std::size_t involution_failures = 0;
    double max_phase_deviation = 0.0;  // max | |phase| - 1 | and |phase * phase' - 1|
  };

  /// Exhaustive check that SEL is a unit-modulus phased involution (hence unitary and Hermitian).
  SelectCheck check_select() const {
    require_system_cap();
    SelectCheck out;
    const auto L = ancilla_layout();
    std::vector<std::int64_t> cfg(static_cast<std::size_t>(eta_)), orig;
    for (std::size_t ai = 0; ai < L.total_dim(); ++ai) {
      const AncillaState s0 = decode_ancilla(ai);
      for (std::int64_t x = 0; x < sys_dim_; ++x)
        for (unsigned o = 0; o < (1u << eta_); ++o) {
          ++out.states;
          AncillaState s = s0;
          decode_system(x, cfg);
          unsigned ovf = o;
          const cplx p1 = apply_select(s, cfg, ovf);
          const cplx p2 = apply_select(s, cfg, ovf);
          decode_system(x, orig);
          if (!(s == s0) || ovf != o || cfg != orig) ++out.involution_failures;
          out.max_phase_deviation = std::max({out.max_phase_deviation, std::abs(std::abs(p1) - 1.0),
                                              std::abs(p1 * p2 - 1.0)});
        }
    }
    return out;
  }

  /// SEL as a sparse matrix over (ancilla, system, overflow); only for small instances.
  Eigen::SparseMatrix<cplx> select_sparse() const {
    const std::size_t D = select_space_dim();
    if (D > (std::size_t(1) << 22)) throw CapExceededError("sparse SEL too large");
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(D);
    const auto L = ancilla_layout();
    std::vector<std::int64_t> cfg(static_cast<std::size_t>(eta_));
    const unsigned nov = 1u << eta_;
    for (std::size_t ai = 0; ai < L.total_dim(); ++ai)
      for (std::int64_t x = 0; x < sys_dim_; ++x)
        for (unsigned o = 0; o < nov; ++o) {
          AncillaState s = decode_ancilla(ai);
          decode_system(x, cfg);
          unsigned ovf = o;
          const cplx ph = apply_select(s, cfg, ovf);
          const std::size_t col = (ai * std::size_t(sys_dim_) + std::size_t(x)) * nov + o;
          const std::size_t row = (encode_ancilla(s) * std::size_t(sys_dim_) + std::size_t(encode_system(cfg))) * nov + ovf;
          trip.emplace_back(Eigen::Index(row), Eigen::Index(col), ph);
        }
    Eigen::SparseMatrix<cplx> M(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
  }

  void decode_system(std::int64_t x, std::vector<std::int64_t>& cfg) const {
    cfg.resize(static_cast<std::size_t>(eta_));
    for (int i = eta_ - 1; i >= 0; --i) {
      cfg[std::size_t(i)] = x % N_;
      x /= N_;
    }
  }
  std::int64_t encode_system(const std::vector<std::int64_t>& cfg) const {
    std::int64_t x = 0;
    for (auto c : cfg) x = x * N_ + c;
    return x;
  }

 private:
  void require_system_cap() const {
    if (sys_dim_ > max_system_dim_) throw CapExceededError("system dimension exceeds cap");
  }

  int index_in_g0(const IntVec3& nu) const {
    for (std::size_t i = 0; i < g0_.size(); ++i)
      if (g0_[i] == nu) return int(i);
    throw OutOfGridError("nu not in G_0");
  }

  void build_amplitudes() {
    const auto& n = norms_;
    const double lam = n.lambda_total;
    const double w = n.lambda_uv_prepared;
    const double P = n.p_amp;
    double s2 = (w > 0.0) ? w / (P * lam) : 0.0;
    if (s2 > 1.0 + 1e-12) throw ValidationError("PREP rotation angle infeasible for these norms");
    s2 = std::min(s2, 1.0);
    amp_a_ = {std::sqrt(1.0 - s2), std::sqrt(s2)};

    double inv = 0.0;
    for (int k = 0; k < 3; ++k) inv += 1.0 / (mat_.cell.a(k) * mat_.cell.a(k));
    for (int k = 0; k < 3; ++k) amp_w_.push_back(std::sqrt(1.0 / (mat_.cell.a(k) * mat_.cell.a(k)) / inv));

    const double rn = std::ldexp(1.0, grid_.n_p() - 1) - 1.0;
    for (int r = 0; r <= grid_.n_p() - 2; ++r) amp_r_.push_back(std::sqrt(std::ldexp(1.0, r) / rn));

    if (w > 0.0) {
      const double c2 = n.lambda_U / w;
      amp_m_ = {std::sqrt(c2), std::sqrt(std::max(0.0, 1.0 - c2))};
    } else {
      amp_m_ = {1.0, 0.0};
    }
    if (mat_.L() > 0)
      for (const auto& at : mat_.atoms) amp_l_.push_back(std::sqrt(double(at.Z) / double(mat_.lambda_Z)));
    else
      amp_l_ = {1.0};

    const double cr = std::cbrt(mat_.cell.omega());
    const bool gen = convention_ == LambdaNuConvention::generalized && !mat_.cell.is_cubic();
    for (const auto& nu : g0_) {
      double q2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double t = gen ? nu[k] * cr / mat_.cell.a(k) : nu[k];
        q2 += t * t;
      }
      amp_k_.push_back(std::sqrt(P / (n.lambda_nu * q2)));
    }
    amp_fail_ = std::sqrt(std::max(0.0, 1.0 - P));
  }

  cplx t_phase(const AncillaState& s, const std::vector<std::int64_t>& sys) const {
    const IntVec3& p = pts_[std::size_t(sys[std::size_t(s.e)])];
    const int mag = std::abs(p[std::size_t(s.f)]);
    const int x = ((mag >> s.g) & 1) & ((mag >> s.h) & 1);
    return (s.b && !x) ? -1.0 : 1.0;
  }

  cplx select_u(AncillaState& s, std::vector<std::int64_t>& sys, unsigned& ovf) const {
    const unsigned bit = 1u << s.e;
    const cplx sign_b = s.b ? -1.0 : 1.0;
    const IntVec3 q = pts_[std::size_t(sys[std::size_t(s.e)])];
    if (!(ovf & bit)) {
      const IntVec3& nu = g0_[std::size_t(s.k)];
      const IntVec3 p = q - nu;
      if (grid_.contains(p)) {
        const cplx ph = -std::polar(1.0, gnu_[std::size_t(s.k)].dot(mat_.atoms[std::size_t(s.l)].R));
        sys[std::size_t(s.e)] = grid_.index_of(p);
        s.k = neg_[std::size_t(s.k)];
        return ph;
      }
      ovf ^= bit;
      s.k = neg_[std::size_t(s.k)];
      return sign_b;
    }
    const IntVec3& orig = g0_[std::size_t(neg_[std::size_t(s.k)])];
    if (grid_.contains(q - orig)) return 1.0;
    ovf ^= bit;
    s.k = neg_[std::size_t(s.k)];
    return sign_b;
  }

  cplx select_v(AncillaState& s, std::vector<std::int64_t>& sys, unsigned& ovf) const {
    const unsigned bit = 1u << s.e;
    const cplx sign_b = s.b ? -1.0 : 1.0;
    const IntVec3 si = pts_[std::size_t(sys[std::size_t(s.d)])];
    const IntVec3 rj = pts_[std::size_t(sys[std::size_t(s.e)])];
    if (!(ovf & bit)) {
      const IntVec3& nu = g0_[std::size_t(s.k)];
      const IntVec3 p = si + nu, q = rj - nu;
      if (grid_.contains(p) && grid_.contains(q)) {
        sys[std::size_t(s.d)] = grid_.index_of(p);
        sys[std::size_t(s.e)] = grid_.index_of(q);
        s.k = neg_[std::size_t(s.k)];
        return 1.0;
      }
      ovf ^= bit;
      s.k = neg_[std::size_t(s.k)];
      return sign_b;
    }
    const IntVec3& orig = g0_[std::size_t(neg_[std::size_t(s.k)])];
    if (grid_.contains(si + orig) && grid_.contains(rj - orig)) return 1.0;
    ovf ^= bit;
    s.k = neg_[std::size_t(s.k)];
    return sign_b;
  }

  Material mat_;
  PlaneWaveGrid grid_;
  LcuNorms norms_;
  LambdaNuConvention convention_ = LambdaNuConvention::generalized;
  int eta_ = 1;
  std::int64_t N_ = 1, sys_dim_ = 1, max_system_dim_ = 4096;
  std::vector<IntVec3> pts_, g0_;
  std::vector<Vec3> gnu_;
  std::vector<int> neg_;
  std::array<double, 2> amp_a_{1.0, 0.0};
  std::vector<double> amp_w_, amp_r_, amp_m_, amp_l_, amp_k_;
  double amp_fail_ = 0.0;
};

struct WalkBlock {
  double beta = 0.0;
  Eigen::MatrixXcd Q, R;  // 1x1 or 2x2
};

struct WalkOperator {
  OperatorMatrix Q;                // dense, on an orthonormal basis of the invariant subspace
  OperatorMatrix R;                // 2 Pi_G - I on the same basis
  std::vector<WalkBlock> blocks;   // spectral form: one block per eigenvector of B
  Eigen::MatrixXcd block;          // <G|SEL|G>
  double lambda = 0.0, shift = 0.0;
  bool dense() const { return Q.matrix.size() > 0; }
};

namespace detail {

/// Orthonormalize a spanning set with Gram matrix S and return E with E^dagger S E = I.
inline Eigen::MatrixXcd gram_basis(const Eigen::MatrixXcd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < S.rows(); ++i)
    if (es.eigenvalues()[i] > 1e-10) keep.push_back(i);
  Eigen::MatrixXcd E(S.rows(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    E.col(Eigen::Index(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()[keep[c]]);
  return E;
}

}  // namespace detail

enum class WalkMethod { automatic, gram, spectral };

/**
 * @brief Walk operator (2 Pi_G - I) SEL on span{|G,x>, SEL|G,x>}. Uses SEL^2 = I: on that span
 * Q|G,x> = 2 B|G,x> - SEL|G,x> and Q SEL|G,x> = |G,x>, with Gram matrix [[I, B], [B, I]].
 * The gram form works on the whole span; the spectral form splits it along eigenvectors of B.
 */
inline WalkOperator walk_operator(const Eigen::MatrixXcd& B, double lambda, double shift,
                                  WalkMethod method = WalkMethod::automatic) {
  const Eigen::Index n = B.rows();
  if (method == WalkMethod::automatic) method = n > 128 ? WalkMethod::spectral : WalkMethod::gram;
  WalkOperator w;
  w.block = B;
  w.lambda = lambda;
  w.shift = shift;
  if (method == WalkMethod::gram) {
    Eigen::MatrixXcd S(2 * n, 2 * n), C(2 * n, 2 * n), CR(2 * n, 2 * n);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n), Z = Eigen::MatrixXcd::Zero(n, n);
    S << I, B, B.adjoint(), I;
    C << 2.0 * B, I, -I, Z;
    CR << I, 2.0 * B, Z, -I;
    const Eigen::MatrixXcd E = detail::gram_basis(S);
    w.Q.layout = RegisterLayout({{"walk_subspace", std::size_t(E.cols())}});
    w.Q.matrix = E.adjoint() * S * C * E;
    w.Q.unitary = true;
    w.R.layout = w.Q.layout;
    w.R.matrix = E.adjoint() * S * CR * E;
    w.R.unitary = true;
    return w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (B + B.adjoint()), Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double beta = es.eigenvalues()[k];
    Eigen::Matrix2cd S, C, CR;
    S << 1.0, beta, beta, 1.0;
    C << 2.0 * beta, 1.0, -1.0, 0.0;
    CR << 1.0, 2.0 * beta, 0.0, -1.0;
    const Eigen::MatrixXcd E = detail::gram_basis(S);
    WalkBlock blk;
    blk.beta = beta;
    blk.Q = E.adjoint() * S * C * E;
    blk.R = E.adjoint() * S * CR * E;
    w.blocks.push_back(std::move(blk));
  }
  return w;
}

inline WalkOperator walk_operator(const Qubitization& q, WalkMethod method = WalkMethod::automatic) {
  return walk_operator(q.block_encoding(), q.norms().lambda_total, q.norms().identity_shift, method);
}

/// Spectral form assembled into one block-diagonal matrix.
inline OperatorMatrix assemble_walk(const WalkOperator& w) {
  if (w.dense()) return w.Q;
  Eigen::Index dim = 0;
  for (const auto& b : w.blocks) dim += b.Q.rows();
  OperatorMatrix Q;
  Q.layout = RegisterLayout({{"walk_subspace", std::size_t(dim)}});
  Q.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::Index o = 0;
  for (const auto& b : w.blocks) {
    Q.matrix.block(o, o, b.Q.rows(), b.Q.cols()) = b.Q;
    o += b.Q.rows();
  }
  Q.unitary = true;
  return Q;
}

struct WalkSpectrumCheck {
  double max_eigen_deviation = 0.0;  // max |lambda cos(theta) - shift - E_k| / lambda
  double unitarity_deviation = 0.0;
  double reflection_deviation_1 = 0.0;  // |R Q R - Q^dagger|
  double reflection_deviation_2 = 0.0;  // |R Q^2 R - (Q^dagger)^2|
  std::size_t dimension = 0;
};

namespace detail {

inline void walk_piece(const Eigen::MatrixXcd& Q, const Eigen::MatrixXcd& R, WalkSpectrumCheck& out,
                       std::vector<double>& cosines) {
  const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(Q.rows(), Q.cols());
  out.dimension += std::size_t(Q.rows());
  out.unitarity_deviation = std::max(out.unitarity_deviation, (Q.adjoint() * Q - Id).cwiseAbs().maxCoeff());
  out.reflection_deviation_1 =
      std::max(out.reflection_deviation_1, (R * Q * R - Q.adjoint()).cwiseAbs().maxCoeff());
  const Eigen::MatrixXcd Q2 = Q * Q;
  out.reflection_deviation_2 =
      std::max(out.reflection_deviation_2, (R * Q2 * R - Q2.adjoint()).cwiseAbs().maxCoeff());
  // Q is normal, so its Hermitian part carries cos(theta) of every eigenvalue
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (Q + Q.adjoint()), Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) cosines.push_back(es.eigenvalues()[i]);
}

}  // namespace detail

/// energies: an independently computed spectrum of H
inline WalkSpectrumCheck check_walk(const WalkOperator& w, const Eigen::VectorXd& energies) {
  WalkSpectrumCheck out;
  std::vector<double> cosines;
  if (w.dense())
    detail::walk_piece(w.Q.matrix, w.R.matrix, out, cosines);
  else
    for (const auto& b : w.blocks) detail::walk_piece(b.Q, b.R, out, cosines);

  std::vector<double> got, want;
  for (double c : cosines) got.push_back(w.lambda * c - w.shift);
  // each energy strictly inside (-lambda, lambda) appears for e^{+i theta} and e^{-i theta}
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    const double beta = (energies[i] + w.shift) / w.lambda;
    want.push_back(energies[i]);
    if (std::abs(beta) < 1.0 - 1e-9) want.push_back(energies[i]);
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got.size() != want.size()) {
    out.max_eigen_deviation = 1.0;
    return out;
  }
  for (std::size_t i = 0; i < got.size(); ++i)
    out.max_eigen_deviation = std::max(out.max_eigen_deviation, std::abs(got[i] - want[i]) / w.lambda);
  return out;
}

}  // namespace fqpw
