#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "fqpw/errors.hpp"
#include "fqpw/units.hpp"

namespace fqpw {

/// Total energies in hartree; n Li (and electrons) transferred per formula unit.
struct EnergySet {
  std::optional<double> lithiated;
  std::optional<double> delithiated;
  std::optional<double> lithium;  // per-atom reference
  int n = 1;
};

inline double cell_voltage(const EnergySet& e) {
  if (!e.lithiated) throw ValidationError("missing lithiated energy");
  if (!e.delithiated) throw ValidationError("missing delithiated energy");
  if (!e.lithium) throw ValidationError("missing lithium reference energy");
  if (e.n < 1) throw ValidationError("n must be >= 1");
  if (!std::isfinite(*e.lithiated) || !std::isfinite(*e.delithiated) || !std::isfinite(*e.lithium))
    throw ValidationError("energies must be finite");
  const double dE = *e.lithiated - *e.delithiated - e.n * *e.lithium;
  return -units::hartree_to_ev(dE) / e.n;
}

struct DiffusionInputs {
  double hop_distance = 0.0;       // m
  double attempt_frequency = 0.0;  // Hz
  double E_T = 0.0, E_I = 0.0;     // eV
  double temperature = 0.0;        // K
};

inline double diffusivity(const DiffusionInputs& d) {
  if (!(d.hop_distance > 0.0) || !(d.attempt_frequency > 0.0) || !(d.temperature > 0.0))
    throw ValidationError("hop distance, attempt frequency and temperature must be positive");
  if (d.E_T < d.E_I) throw ValidationError("transition-state energy below the initial energy");
  return d.hop_distance * d.hop_distance * d.attempt_frequency *
         std::exp(-(d.E_T - d.E_I) / (units::kBoltzmannEv * d.temperature));
}

inline constexpr double kDefaultO2EntropyJPerMolK = 205.152;

struct StabilityInputs {
  double E_rich = 0.0, E_poor = 0.0, E_O2 = 0.0;  // hartree
  double z_prime = 0.0;
  double S_O2 = units::molar_entropy_to_ev(kDefaultO2EntropyJPerMolK);  // eV/K per molecule
};

inline double stability_temperature(const StabilityInputs& s) {
  if (!(s.z_prime > 0.0)) throw ValidationError("z_prime must be positive");
  const double den = 0.5 * s.z_prime * s.S_O2;
  if (!(den > 0.0)) throw ValidationError("non-positive denominator");
  const double num = units::hartree_to_ev(-s.E_rich + s.E_poor + 0.5 * s.z_prime * s.E_O2);
  return num / den;
}

inline nlohmann::json energy_set_to_json(const EnergySet& e) {
  nlohmann::json j;
  if (e.lithiated) j["lithiated"] = *e.lithiated;
  if (e.delithiated) j["delithiated"] = *e.delithiated;
  if (e.lithium) j["lithium"] = *e.lithium;
  j["n"] = e.n;
  return j;
}

/// {"lithiated": .., "delithiated": .., "lithium": .., "n": ..}, energies in hartree
inline EnergySet energy_set_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("$", "energy document must be an object");
  EnergySet e;
  auto num = [&](const char* k) -> std::optional<double> {
    if (!j.contains(k)) return std::nullopt;
    if (!j[k].is_number()) throw SchemaError(std::string("$.") + k, "expected a number");
    return j[k].get<double>();
  };
  e.lithiated = num("lithiated");
  e.delithiated = num("delithiated");
  e.lithium = num("lithium");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw SchemaError("$.n", "expected an integer");
    e.n = j["n"].get<int>();
  }
  return e;
}

}  // namespace fqpw
