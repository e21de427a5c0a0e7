#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqpw/crystal.hpp"
#include "fqpw/statesim/state.hpp"

namespace fqpw {

/// eta registers p0..p{eta-1}, each of dimension dim
inline RegisterLayout particle_layout(int eta, std::size_t dim) {
  std::vector<Register> regs;
  for (int i = 0; i < eta; ++i) regs.push_back({"p" + std::to_string(i), dim});
  return RegisterLayout(regs);
}

inline int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = std::size_t(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/** @brief (1/sqrt(eta!)) sum_sigma sgn(sigma) |x_sigma(1) ... x_sigma(eta)> over orbital indices. */
inline StateVector antisymmetrize_indices(const std::vector<std::size_t>& orbitals, std::size_t dim) {
  const int eta = int(orbitals.size());
  if (eta < 1) throw ValidationError("antisymmetrize needs at least one particle");
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    if (orbitals[i] >= dim) throw ValidationError("orbital index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (orbitals[i] == orbitals[j]) throw ValidationError("repeated orbital: antisymmetrized state vanishes");
  }
  StateVector out;
  out.layout = particle_layout(eta, dim);
  out.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(out.layout.total_dim()));
  std::vector<int> perm(static_cast<std::size_t>(eta));
  std::iota(perm.begin(), perm.end(), 0);
  double fact = 1.0;
  for (int k = 2; k <= eta; ++k) fact *= k;
  const double c = 1.0 / std::sqrt(fact);
  std::vector<std::size_t> cfg(static_cast<std::size_t>(eta));
  do {
    for (int i = 0; i < eta; ++i) cfg[std::size_t(i)] = orbitals[std::size_t(perm[std::size_t(i)])];
    out.amplitudes[Eigen::Index(out.layout.index(cfg))] += c * double(permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline StateVector antisymmetrize(const std::vector<IntVec3>& product_state, int n_p) {
  if (product_state.size() < 2) throw ValidationError("antisymmetrize needs eta >= 2");
  PlaneWaveGrid grid(n_p);
  std::vector<std::size_t> idx;
  for (const auto& p : product_state) idx.push_back(std::size_t(grid.index_of(p)));
  return antisymmetrize_indices(idx, std::size_t(grid.N()));
}

/// Bubble-sort comparator network on eta wires.
inline std::vector<std::pair<int, int>> sorting_network(int eta) {
  std::vector<std::pair<int, int>> net;
  for (int i = 0; i + 1 < eta; ++i)
    for (int j = 0; j + 1 < eta - i; ++j) net.emplace_back(j, j + 1);
  return net;
}

/// Sort in place along the network; returns the comparator record (bit k set when comparator k swapped).
template <class T>
std::uint64_t sort_with_record(std::vector<T>& v, const std::vector<std::pair<int, int>>& net) {
  std::uint64_t rec = 0;
  for (std::size_t k = 0; k < net.size(); ++k) {
    auto [a, b] = net[k];
    if (v[std::size_t(b)] < v[std::size_t(a)]) {
      std::swap(v[std::size_t(a)], v[std::size_t(b)]);
      rec |= std::uint64_t(1) << k;
    }
  }
  return rec;
}

struct SortingAntisymResult {
  StateVector state;
  double success_probability = 0.0;
  double seed_factorization_residual = 0.0;  // max deviation of the seed register from a product factor
  bool record_cleared = true;
};

/**
 * @brief Sorting-network antisymmetrization: seed superposition, sort with record,
 * collision-free projection, record-controlled inverse sort with signs, record uncompute.
 *
 * The input must be a strictly ascending list of grid points; by default the first eta
 * points of the lexicographic grid order.
 */
inline SortingAntisymResult simulate_sorting_antisymmetrization(
    int eta, int n_p, int seed_bits, std::optional<std::vector<IntVec3>> input = std::nullopt) {
  if (eta < 2 || eta > 4) throw CapExceededError("sorting simulation supports 2 <= eta <= 4");
  int need = 0;
  while ((1 << need) < eta * eta) ++need;
  if (seed_bits < need) throw ValidationError("seed_bits must be at least ceil(log2(eta^2))");
  if (seed_bits > 8) throw CapExceededError("seed_bits capped at 8");
  PlaneWaveGrid grid(n_p);
  std::vector<std::size_t> sys;
  if (input) {
    if (int(input->size()) != eta) throw ValidationError("input length must equal eta");
    for (const auto& p : *input) sys.push_back(std::size_t(grid.index_of(p)));
  } else {
    for (int i = 0; i < eta; ++i) sys.push_back(std::size_t(i));
  }
  for (std::size_t i = 1; i < sys.size(); ++i)
    if (!(sys[i - 1] < sys[i])) throw ValidationError("input must be strictly ascending");
  if (std::int64_t(sys.back()) >= grid.N()) throw ValidationError("input outside grid");

  const auto net = sorting_network(eta);
  const std::uint64_t f = std::uint64_t(1) << seed_bits;
  std::uint64_t total = 1;
  for (int i = 0; i < eta; ++i) total *= f;
  const double amp0 = 1.0 / std::sqrt(double(total));

  // seed tuples -> (record, sorted tuple) amplitudes, collisions projected out
  std::map<std::uint64_t, std::map<std::vector<std::uint64_t>, double>> branches;
  std::uint64_t distinct = 0;
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(eta));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < eta; ++i) {
      seeds[std::size_t(i)] = c % f;
      c /= f;
    }
    auto sorted = seeds;
    const std::uint64_t rec = sort_with_record(sorted, net);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    ++distinct;
    branches[rec][sorted] += amp0;
  }
  SortingAntisymResult res;
  res.success_probability = double(distinct) / double(total);

  // the seed register must factor out; compare each record's seed branch to the first
  const auto& ref = branches.begin()->second;
  for (const auto& [rec, m] : branches) {
    if (m.size() != ref.size()) {
      res.seed_factorization_residual = 1.0;
      continue;
    }
    for (const auto& [s, a] : m) {
      auto it = ref.find(s);
      double d = it == ref.end() ? 1.0 : std::fabs(a - it->second);
      res.seed_factorization_residual = std::max(res.seed_factorization_residual, d);
    }
  }
  const double norm = std::sqrt(res.success_probability);

  res.state.layout = particle_layout(eta, std::size_t(grid.N()));
  res.state.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(res.state.layout.total_dim()));
  for (const auto& [rec, m] : branches) {
    double w = 0.0;
    for (const auto& kv : m) w += kv.second * kv.second;
    const double amp = std::sqrt(w) / norm;
    auto cfg = sys;
    double sign = 1.0;
    for (std::size_t k = net.size(); k-- > 0;)
      if (rec & (std::uint64_t(1) << k)) {
        std::swap(cfg[std::size_t(net[k].first)], cfg[std::size_t(net[k].second)]);
        sign = -sign;
      }
    auto check = cfg;
    if (sort_with_record(check, net) != rec) res.record_cleared = false;
    res.state.amplitudes[Eigen::Index(res.state.layout.index(cfg))] += sign * amp;
  }
  res.state.success_probability = res.success_probability;
  return res;
}

/// Apply the permutation swapping registers i and j to every basis state.
inline Eigen::VectorXcd swap_registers(const StateVector& s, std::size_t i, std::size_t j) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.amplitudes.size());
  for (std::size_t x = 0; x < s.layout.total_dim(); ++x) {
    auto v = s.layout.decode(x);
    std::swap(v[i], v[j]);
    out[Eigen::Index(s.layout.index(v))] = s.amplitudes[Eigen::Index(x)];
  }
  return out;
}

}  // namespace fqpw
