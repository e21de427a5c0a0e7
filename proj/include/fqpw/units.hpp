#pragma once

#include <numbers>

namespace fqpw::units {

inline constexpr double kBohrAngstrom = 0.52917721067;
inline constexpr double kAngstromToBohr = 1.0 / kBohrAngstrom;
inline constexpr double kHartreeEv = 27.211386245988;
inline constexpr double kBoltzmannEv = 8.617333e-5;  // eV/K
inline constexpr double kAvogadro = 6.02214076e23;
inline constexpr double kElementaryCharge = 1.602176634e-19;  // J per eV
inline constexpr double kPi = std::numbers::pi;

inline constexpr double ev_to_hartree(double ev) { return ev / kHartreeEv; }
inline constexpr double hartree_to_ev(double ha) { return ha * kHartreeEv; }

/// J/(mol K) -> eV/K per molecule
inline constexpr double molar_entropy_to_ev(double j_per_mol_k) {
  return j_per_mol_k / (kAvogadro * kElementaryCharge);
}

}  // namespace fqpw::units
