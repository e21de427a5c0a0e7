#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fqpw/crystal.hpp"
#include "fqpw/statesim/state.hpp"

namespace fqpw {

/// Coefficients of the squared norm used by the inequality test.
using InequalityWeights = std::array<double, 3>;

inline constexpr InequalityWeights kCubicWeights{1.0, 1.0, 1.0};

/** @brief Rescaled comparison weights for orthorhombic cells, (a_max / a_i)^2. */
inline InequalityWeights inequality_weights(const UnitCell& cell) {
  if (cell.is_cubic()) return kCubicWeights;
  double amax = std::max({cell.a(0), cell.a(1), cell.a(2)});
  InequalityWeights w;
  for (int i = 0; i < 3; ++i) w[i] = (amax / cell.a(i)) * (amax / cell.a(i));
  return w;
}

inline bool is_cubic_weights(const InequalityWeights& w) {
  return w[0] == 1.0 && w[1] == 1.0 && w[2] == 1.0;
}

/// Largest M evaluated exactly; the ceiling's effect beyond this is below 1e-12 relative.
inline constexpr std::uint64_t kMaxMomentumM = std::uint64_t(1) << 40;
/// Boxes up to this index are enumerated point by point.
inline constexpr int kExactBoxLimit = 10;

/// box index mu with 2^{mu-2} <= |nu|_inf < 2^{mu-1}
inline int momentum_box(const IntVec3& nu) {
  int m = std::max({std::abs(nu[0]), std::abs(nu[1]), std::abs(nu[2])});
  if (m == 0) throw ValidationError("nu = 0 has no momentum box");
  int mu = 2;
  while ((1 << (mu - 1)) <= m) ++mu;
  return mu;
}

/// number of m values in [0, M) passing the inequality test for nu in box mu
inline std::uint64_t inequality_success_count(const IntVec3& nu, int mu, std::uint64_t M,
                                              const InequalityWeights& w = kCubicWeights) {
  std::uint64_t scale = M << (2 * (mu - 2));
  if (is_cubic_weights(w)) {
    std::uint64_t n2 = std::uint64_t(norm2(nu));
    return std::min<std::uint64_t>((scale + n2 - 1) / n2, M);
  }
  double n2 = w[0] * nu[0] * nu[0] + w[1] * nu[1] * nu[1] + w[2] * nu[2] * nu[2];
  double c = std::ceil(double(scale) / n2);
  return c >= double(M) ? M : std::uint64_t(c);
}

namespace detail {

/// sum over nu in B_mu of count / (M 4^mu)
inline double exact_box_sum(int mu, std::uint64_t M, const InequalityWeights& w) {
  const int lo = 1 << (mu - 2), hi = (1 << (mu - 1)) - 1;
  const double norm = 1.0 / (double(M) * std::ldexp(1.0, 2 * mu));
  long double total = 0.0L;
  for (int x = 0; x <= hi; ++x) {
    long double slice = 0.0L;
    const int mx = x ? 2 : 1;
    for (int y = 0; y <= hi; ++y) {
      const int mxy = mx * (y ? 2 : 1);
      const bool outer = x >= lo || y >= lo;
      for (int z = outer ? 0 : lo; z <= hi; ++z) {
        const IntVec3 nu{x, y, z};
        slice += (long double)(mxy * (z ? 2 : 1)) * (long double)inequality_success_count(nu, mu, M, w);
      }
    }
    total += slice;
  }
  return double(total * norm);
}

inline std::vector<double> box_sums(int mu_max, std::uint64_t M, const InequalityWeights& w) {
  using Key = std::tuple<int, std::uint64_t, double, double, double>;
  static std::mutex mtx;
  static std::map<Key, std::vector<double>> cache;
  Key key{mu_max, M, w[0], w[1], w[2]};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<double> s(std::size_t(mu_max + 1), 0.0);
  for (int mu = 2; mu <= mu_max; ++mu)
    s[std::size_t(mu)] = mu <= kExactBoxLimit ? exact_box_sum(mu, M, w) : 2.0 * s[std::size_t(mu - 1)];
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, s);
  return s;
}

}  // namespace detail

/**
 * @brief Total success probability of the box / inequality-test momentum state.
 *
 * Boxes above kExactBoxLimit are extrapolated with the self-similar doubling of the
 * box sums, so results for n_p >= 10 are approximate at the 1e-4 level.
 */
inline double momentum_success_probability(int n_p, std::uint64_t M,
                                           const InequalityWeights& w = kCubicWeights) {
  if (n_p < 2) throw ValidationError("momentum state needs n_p >= 2");
  if (M < 4 || (M & (M - 1))) throw ValidationError("M must be a power of two >= 4");
  M = std::min(M, kMaxMomentumM);
  auto s = detail::box_sums(n_p + 1, M, w);
  double p = 0.0;
  for (int mu = 2; mu <= n_p + 1; ++mu) p += s[std::size_t(mu)];
  return p / std::ldexp(1.0, n_p + 2);
}

inline double amplified_success(double p, int rounds) {
  if (!(p > 0.0) || !(p < 1.0)) throw ValidationError("success probability must lie in (0,1)");
  if (rounds < 0) throw ValidationError("rounds must be non-negative");
  double s = std::sin((2.0 * rounds + 1.0) * std::asin(std::sqrt(p)));
  return s * s;
}

struct MomentumState {
  StateVector state;  // success branch over (mu, nu_x, nu_y, nu_z)
  double p_nu = 0.0;
};

/// success amplitude of nu (m register marginalized)
inline double momentum_amplitude(const IntVec3& nu, int n_p, std::uint64_t M,
                                 const InequalityWeights& w = kCubicWeights) {
  int mu = momentum_box(nu);
  if (mu > n_p + 1) return 0.0;
  double c = double(inequality_success_count(nu, mu, M, w));
  return std::sqrt(c / (double(M) * std::ldexp(1.0, 2 * mu) * std::ldexp(1.0, n_p + 2)));
}

/**
 * @brief Success branch of the momentum state on the signed (n_p+1)-bit difference domain.
 *
 * nu registers hold values in [-(2^{n_p}-1), 2^{n_p}-1]; register value v encodes v - (2^{n_p}-1).
 */
inline MomentumState momentum_state(int n_p, std::uint64_t M,
                                    const InequalityWeights& w = kCubicWeights) {
  if (n_p < 2) throw ValidationError("momentum state needs n_p >= 2");
  if (n_p > 5) throw CapExceededError("momentum_state is capped at n_p = 5");
  if (M < 4 || (M & (M - 1))) throw ValidationError("M must be a power of two >= 4");
  const int off = (1 << n_p) - 1;
  const std::size_t side = std::size_t(2 * off + 1);
  MomentumState out;
  out.state.layout = RegisterLayout({{"mu", std::size_t(n_p)},
                                     {"nu_x", side},
                                     {"nu_y", side},
                                     {"nu_z", side}});
  out.state.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(out.state.layout.total_dim()));
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y)
      for (std::size_t z = 0; z < side; ++z) {
        IntVec3 nu{int(x) - off, int(y) - off, int(z) - off};
        if (is_zero(nu)) continue;
        int mu = momentum_box(nu);
        std::size_t idx = out.state.layout.index({std::size_t(mu - 2), x, y, z});
        out.state.amplitudes[Eigen::Index(idx)] = momentum_amplitude(nu, n_p, M, w);
      }
  out.p_nu = out.state.amplitudes.squaredNorm();
  out.state.success_probability = out.p_nu;
  return out;
}

}  // namespace fqpw
