#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fqpw/crystal.hpp"
#include "fqpw/statesim/momentum.hpp"

namespace fqpw {

inline double kinetic_element(const UnitCell& cell, const PlaneWaveGrid& grid, const IntVec3& p,
                              const IntVec3& q) {
  if (!grid.contains(p) || !grid.contains(q)) throw OutOfGridError("kinetic_element: index outside G");
  if (p != q) return 0.0;
  return 0.5 * cell.wavevector(p).squaredNorm();
}

/**
 * @brief <p|U|q>. Zero when nu = q - p falls outside G (the translation is not in the operator).
 */
inline std::complex<double> nuclear_element(const UnitCell& cell, const PlaneWaveGrid& grid,
                                            const Material& mat, const IntVec3& p, const IntVec3& q) {
  if (!grid.contains(p) || !grid.contains(q)) throw OutOfGridError("nuclear_element: index outside G");
  if (p == q) throw ExcludedTermError("nuclear_element: nu = 0 term is excluded");
  const IntVec3 nu = q - p;
  if (!grid.contains(nu)) return 0.0;
  const Vec3 g = cell.wavevector(nu);
  std::complex<double> s = 0.0;
  for (const auto& at : mat.atoms) s += double(at.Z) * std::polar(1.0, g.dot(at.R));
  return -(4.0 * units::kPi / cell.omega()) * s / g.squaredNorm();
}

inline double coulomb_element(const UnitCell& cell, const PlaneWaveGrid& grid, const IntVec3& p,
                              const IntVec3& q, const IntVec3& r, const IntVec3& s) {
  for (const auto* v : {&p, &q, &r, &s})
    if (!grid.contains(*v)) throw OutOfGridError("coulomb_element: index outside G");
  const IntVec3 nu = p - s;
  if (nu != r - q) return 0.0;
  if (is_zero(nu)) throw ExcludedTermError("coulomb_element: nu = 0 term is excluded");
  if (!grid.contains(nu)) return 0.0;
  return (4.0 * units::kPi / cell.omega()) / cell.wavevector(nu).squaredNorm();
}

struct DenseHamiltonian {
  Eigen::MatrixXcd matrix;
  int n_p = 0;
  int eta = 0;
  std::int64_t N = 0;

  /// basis index of the ordered configuration (grid indices, particle 0 most significant)
  std::int64_t index(const std::vector<std::int64_t>& config) const {
    std::int64_t idx = 0;
    for (auto c : config) idx = idx * N + c;
    return idx;
  }
};

inline constexpr std::int64_t kDefaultDenseCap = 4096;

inline DenseHamiltonian build_dense_hamiltonian(const Material& mat, const PlaneWaveGrid& grid,
                                                std::optional<int> eta_override = std::nullopt,
                                                std::int64_t cap = kDefaultDenseCap) {
  const int eta = eta_override.value_or(mat.eta);
  if (eta < 1) throw ValidationError("eta must be positive");
  const std::int64_t N = grid.N();
  std::int64_t dim = 1;
  for (int i = 0; i < eta; ++i) {
    dim *= N;
    if (dim > cap) throw CapExceededError("dense Hamiltonian dimension exceeds cap");
  }
  const UnitCell& cell = mat.cell;
  DenseHamiltonian H;
  H.n_p = grid.n_p();
  H.eta = eta;
  H.N = N;
  H.matrix = Eigen::MatrixXcd::Zero(dim, dim);

  const auto pts = grid.points();
  const auto g0 = grid.nonzero_points();
  std::vector<double> kin(static_cast<std::size_t>(N));
  for (std::int64_t a = 0; a < N; ++a) kin[std::size_t(a)] = kinetic_element(cell, grid, pts[std::size_t(a)], pts[std::size_t(a)]);

  std::vector<std::int64_t> cfg(static_cast<std::size_t>(eta));
  for (std::int64_t x = 0; x < dim; ++x) {
    std::int64_t rem = x;
    for (int i = eta - 1; i >= 0; --i) {
      cfg[std::size_t(i)] = rem % N;
      rem /= N;
    }
    for (int i = 0; i < eta; ++i) H.matrix(x, x) += kin[std::size_t(cfg[std::size_t(i)])];

    // U: particle i moves q -> q - nu
    for (int i = 0; i < eta; ++i) {
      const IntVec3 q = pts[std::size_t(cfg[std::size_t(i)])];
      for (const auto& nu : g0) {
        const IntVec3 p = q - nu;
        if (!grid.contains(p)) continue;
        auto c2 = cfg;
        c2[std::size_t(i)] = grid.index_of(p);
        H.matrix(H.index(c2), x) += nuclear_element(cell, grid, mat, p, q);
      }
    }
    // 1/2 sum_{i != j} V_ij: particle i moves s -> s + nu, particle j moves r -> r - nu
    for (int i = 0; i < eta; ++i)
      for (int j = 0; j < eta; ++j) {
        if (i == j) continue;
        const IntVec3 s = pts[std::size_t(cfg[std::size_t(i)])];
        const IntVec3 r = pts[std::size_t(cfg[std::size_t(j)])];
        for (const auto& nu : g0) {
          const IntVec3 p = s + nu, q = r - nu;
          if (!grid.contains(p) || !grid.contains(q)) continue;
          auto c2 = cfg;
          c2[std::size_t(i)] = grid.index_of(p);
          c2[std::size_t(j)] = grid.index_of(q);
          H.matrix(H.index(c2), x) += 0.5 * coulomb_element(cell, grid, p, q, r, s);
        }
      }
  }
  return H;
}

enum class LambdaNuConvention { cubic, generalized };

namespace detail {

/// sum over the box 2^{mu-2} <= |nu|_inf <= 2^{mu-1}-1 of 1/(w . nu^2)
inline double inverse_square_box_sum(int mu, const std::array<double, 3>& w) {
  const int lo = 1 << (mu - 2), hi = (1 << (mu - 1)) - 1;
  long double total = 0.0L;
  for (int x = 0; x <= hi; ++x) {
    const int mx = x ? 2 : 1;
    const double wx = w[0] * double(x) * x;
    for (int y = 0; y <= hi; ++y) {
      const int mxy = mx * (y ? 2 : 1);
      const double wxy = wx + w[1] * double(y) * y;
      const bool outer = x >= lo || y >= lo;
      long double row = 0.0L;
      for (int z = outer ? 0 : lo; z <= hi; ++z)
        row += (long double)((z ? 2 : 1)) / (wxy + w[2] * double(z) * z);
      total += row * mxy;
    }
  }
  return double(total);
}

inline double lambda_nu_from_boxes(int n_p, const std::array<double, 3>& w) {
  using Key = std::tuple<int, double, double, double>;
  static std::mutex mtx;
  static std::map<Key, double> cache;
  Key key{n_p, w[0], w[1], w[2]};
  {
    std::lock_guard<std::mutex> lock(mtx);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<double> L(std::size_t(std::max(n_p, 2) + 1), 0.0);
  double total = 0.0;
  for (int mu = 2; mu <= n_p; ++mu) {
    if (mu <= kExactBoxLimit) {
      L[std::size_t(mu)] = inverse_square_box_sum(mu, w);
    } else {
      // two-term fit L_mu = c 2^mu + d from the last exact boxes
      const double l9 = L[std::size_t(kExactBoxLimit - 1)], l10 = L[std::size_t(kExactBoxLimit)];
      const double c = (l10 - l9) / std::ldexp(1.0, kExactBoxLimit - 1);
      const double d = 2.0 * l9 - l10;
      L[std::size_t(mu)] = c * std::ldexp(1.0, mu) + d;
    }
    total += L[std::size_t(mu)];
  }
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, total);
  return total;
}

}  // namespace detail

/** @brief Sum of 1/|nu|^2 over G_0; the generalized form uses a_i / Omega^{1/3} rescaled axes. */
inline double lambda_nu_sum(const UnitCell& cell, const PlaneWaveGrid& grid,
                            LambdaNuConvention convention = LambdaNuConvention::generalized) {
  std::array<double, 3> w{1.0, 1.0, 1.0};
  if (convention == LambdaNuConvention::generalized && !cell.is_cubic()) {
    const double c = std::cbrt(cell.omega());
    for (int i = 0; i < 3; ++i) w[i] = (c / cell.a(i)) * (c / cell.a(i));
  }
  if (grid.n_p() < 2) return 0.0;
  return detail::lambda_nu_from_boxes(grid.n_p(), w);
}

enum class AmplificationMode { automatic, off, on };

struct LcuOptions {
  LambdaNuConvention convention = LambdaNuConvention::generalized;
  AmplificationMode aa = AmplificationMode::automatic;
  int momentum_bits = 12;              // M = 2^momentum_bits in the inequality test
  std::optional<double> p_nu_override;  // replaces the computed momentum success probability
  std::optional<int> eta_override;
};

struct LcuNorms {
  double lambda_T = 0, lambda_U = 0, lambda_V = 0, lambda_nu = 0;
  double lambda_total = 0;
  int aa_rounds = 0;
  double p_nu = 1;     // momentum-state success probability before amplification
  double p_amp = 1;    // success probability seen by PREP (after optional amplification)
  double lambda_uv_prepared = 0;  // lambda_U + lambda_V eta/(eta-1)
  double identity_shift = 0;      // encoded operator is (H + shift I)/lambda_total
  int eta = 0;
  std::string model;
};

inline double lambda_T_closed_form(const UnitCell& cell, int n_p, int eta) {
  const double m = std::ldexp(1.0, n_p - 1) - 1.0;
  double inv = 0.0;
  for (int w = 0; w < 3; ++w) inv += 1.0 / (cell.a(w) * cell.a(w));
  return 2.0 * eta * m * m * units::kPi * units::kPi * inv;
}

/// True when the rotated-qubit construction (no amplification) can encode these norms:
/// sin^2(theta) = w / (p (lambda_T + lambda_U + lambda_V)) must not exceed 1.
inline bool rotated_qubit_feasible(double lambda_base, double w, double p) {
  return w == 0.0 || w <= p * lambda_base * (1.0 + 1e-14);
}

inline LcuNorms lcu_norms(const Material& mat, const PlaneWaveGrid& grid, const LcuOptions& opt = {}) {
  const UnitCell& cell = mat.cell;
  const int eta = opt.eta_override.value_or(mat.eta);
  if (eta < 1) throw ValidationError("eta must be positive");
  LcuNorms n;
  n.eta = eta;
  const double cr = std::cbrt(cell.omega());
  n.lambda_nu = lambda_nu_sum(cell, grid, opt.convention);
  n.lambda_T = lambda_T_closed_form(cell, grid.n_p(), eta);
  n.lambda_U = eta * double(mat.lambda_Z) * n.lambda_nu / (units::kPi * cr);
  n.lambda_V = eta * (eta - 1.0) * n.lambda_nu / (2.0 * units::kPi * cr);
  n.lambda_uv_prepared = n.lambda_U + (eta > 1 ? n.lambda_V * eta / (eta - 1.0) : 0.0);

  if (opt.p_nu_override) {
    n.p_nu = *opt.p_nu_override;
    if (!(n.p_nu > 0.0) || n.p_nu > 1.0) throw ValidationError("p_nu must lie in (0,1]");
  } else if (grid.n_p() >= 2) {
    const int bits = std::clamp(opt.momentum_bits, 2, 62);
    n.p_nu = momentum_success_probability(grid.n_p(), std::uint64_t(1) << std::min(bits, 40),
                                          inequality_weights(cell));
  }

  const double uv = n.lambda_U + n.lambda_V;
  const double w = n.lambda_uv_prepared;
  const bool small_ratio = uv > 0 && n.lambda_T < 3.0 * uv;
  const bool feasible0 = rotated_qubit_feasible(n.lambda_T + uv, w, n.p_nu);
  switch (opt.aa) {
    case AmplificationMode::automatic: n.aa_rounds = (small_ratio || !feasible0) ? 1 : 0; break;
    case AmplificationMode::off:
      if (!feasible0) throw ValidationError("rotated-qubit PREP infeasible without amplification");
      n.aa_rounds = 0;
      break;
    case AmplificationMode::on:
      if (uv == 0) throw ValidationError("amplification requested without U or V terms");
      n.aa_rounds = 1;
      break;
  }
  if (n.aa_rounds == 1 && n.p_nu >= 1.0) throw ValidationError("amplification needs p_nu < 1");
  n.p_amp = n.aa_rounds ? amplified_success(n.p_nu, 1) : n.p_nu;
  if (n.aa_rounds == 0) {
    n.lambda_total = n.lambda_T + uv;
    n.identity_shift = 0.0;
    n.model = "rotated qubit: lambda_T + lambda_U + lambda_V";
  } else {
    n.lambda_total = n.lambda_T + w / n.p_amp;
    n.identity_shift = w / n.p_amp - uv;
    n.model = "one amplification round: lambda_T + (lambda_U + lambda_V eta/(eta-1))/p_amp";
  }
  return n;
}

}  // namespace fqpw
