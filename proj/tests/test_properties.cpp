#include <gtest/gtest.h>

#include "fqpw/properties.hpp"

using namespace fqpw;

namespace {
EnergySet energies(double lith_ev, double delith_ev, double li_ev, int n) {
  EnergySet e;
  e.lithiated = lith_ev / 27.211386245988;
  e.delithiated = delith_ev / 27.211386245988;
  e.lithium = li_ev / 27.211386245988;
  e.n = n;
  return e;
}
}  // namespace

TEST(Voltage, Examples) {
  EXPECT_DOUBLE_EQ(cell_voltage(energies(-5.0, -3.0, -2.0, 1)), 0.0);
  EXPECT_NEAR(cell_voltage(energies(-6.0, -3.0, -2.0, 1)), 1.0, 1e-12);
  EXPECT_NEAR(cell_voltage(energies(-8.10, -3.0, -2.0, 1)), 3.10, 1e-12);
  EXPECT_NEAR(cell_voltage(energies(-20.2, -10.0, -2.0, 2)), 3.10, 1e-12);
}

TEST(Voltage, LinearInEachEnergy) {
  const auto base = energies(-100.0, -90.0, -2.5, 2);
  const double v0 = cell_voltage(base);
  for (int which = 0; which < 3; ++which) {
    auto e = base;
    const double d = 0.01;
    if (which == 0) *e.lithiated += d;
    if (which == 1) *e.delithiated += d;
    if (which == 2) *e.lithium += d;
    const double dv = cell_voltage(e) - v0;
    const double expect = (which == 0 ? -1.0 : which == 1 ? 1.0 : 2.0) * d * 27.211386245988 / 2;
    EXPECT_NEAR(dv, expect, 1e-10) << which;
  }
}

TEST(Voltage, MissingReference) {
  EnergySet e = energies(-1, -1, -1, 1);
  e.lithium.reset();
  EXPECT_THROW(cell_voltage(e), ValidationError);
}

TEST(Diffusivity, ZeroBarrierAndExample) {
  DiffusionInputs d{3e-10, 1e13, 0.7, 0.7, 300.0};
  EXPECT_DOUBLE_EQ(diffusivity(d), 9e-20 * 1e13);
  d.E_T = 1.2;
  // independent scalar: 9e-7 * exp(-0.5 / 0.025851999)
  const double kT = 8.617333e-5 * 300.0;
  EXPECT_NEAR(diffusivity(d), 9e-7 * std::exp(-0.5 / kT), 1e-25);
  EXPECT_NEAR(diffusivity(d) / 3.6e-15, 1.0, 0.02);
}

TEST(Diffusivity, MonotoneAndHighTemperatureLimit) {
  DiffusionInputs d{2e-10, 5e12, 0.4, 0.0, 200.0};
  double prev = 0;
  for (double T = 200; T <= 2000; T += 100) {
    d.temperature = T;
    const double v = diffusivity(d);
    EXPECT_GT(v, prev);
    prev = v;
  }
  d.temperature = 1e12;
  EXPECT_NEAR(diffusivity(d) / (4e-20 * 5e12), 1.0, 1e-6);
  d.E_T = -1.0;
  EXPECT_THROW(diffusivity(d), ValidationError);
}

TEST(Stability, Examples) {
  StabilityInputs s;
  s.z_prime = 1.0;
  s.S_O2 = 2.124e-3;
  s.E_rich = 0.0;
  s.E_O2 = 0.0;
  s.E_poor = 0.0;
  EXPECT_DOUBLE_EQ(stability_temperature(s), 0.0);
  s.E_poor = 1.025 / 27.211386245988;
  EXPECT_NEAR(stability_temperature(s), 1.025 / (0.5 * 2.124e-3), 1e-9);
  EXPECT_NEAR(stability_temperature(s), 965.16, 0.01);
  const double t1 = stability_temperature(s);
  s.S_O2 *= 2;
  EXPECT_NEAR(stability_temperature(s), t1 / 2, 1e-12);
}

TEST(Stability, HomogeneityAndDefaults) {
  StabilityInputs s;
  s.z_prime = 2.0;
  s.E_rich = -10.0;
  s.E_poor = -9.9;
  s.E_O2 = -0.05;
  EXPECT_NEAR(s.S_O2, 205.152 / 96485.33212, 1e-9);
  const double t = stability_temperature(s);
  StabilityInputs s2 = s;
  s2.E_rich *= 3;
  s2.E_poor *= 3;
  s2.E_O2 *= 3;
  EXPECT_NEAR(stability_temperature(s2), 3 * t, 1e-9 * std::abs(t));
  s.S_O2 = 0.0;
  EXPECT_THROW(stability_temperature(s), ValidationError);
  s.S_O2 = 1e-3;
  s.z_prime = 0;
  EXPECT_THROW(stability_temperature(s), ValidationError);
}

TEST(EnergyJson, RoundTripAndSchema) {
  auto e = energies(-8.1, -3.0, -2.0, 1);
  auto back = energy_set_from_json(energy_set_to_json(e));
  EXPECT_DOUBLE_EQ(*back.lithiated, *e.lithiated);
  EXPECT_THROW(energy_set_from_json(nlohmann::json{{"lithiated", "x"}}), SchemaError);
}
