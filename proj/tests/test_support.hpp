#pragma once

#include <random>

#include "fqpw/crystal.hpp"

namespace fqpw::testing {

inline Material cubic_material(double a, std::vector<Atom> atoms, int eta) {
  return make_material("test", UnitCell::from_bohr(a, a, a), std::move(atoms), eta);
}

inline Material ortho_material(double a1, double a2, double a3, std::vector<Atom> atoms, int eta) {
  return make_material("test", UnitCell::from_bohr(a1, a2, a3), std::move(atoms), eta);
}

inline std::vector<Atom> random_atoms(const UnitCell& cell, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) {
    Atom a;
    a.symbol = "X";
    a.Z = 1 + i;
    for (int k = 0; k < 3; ++k) a.R[k] = u(rng) * cell.a(k);
    atoms.push_back(a);
  }
  return atoms;
}

}  // namespace fqpw::testing
