#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "fqpw/crystal.hpp"
#include "fqpw/statesim/exponential.hpp"
#include "fqpw/statesim/momentum.hpp"

using namespace fqpw;

namespace {

// Register-level enumeration of (mu, sign/magnitude bits, m): success mass per nu.
std::map<IntVec3, double> enumerate_momentum_registers(int n_p, std::uint64_t M) {
  std::map<IntVec3, double> mass;
  for (int mu = 2; mu <= n_p + 1; ++mu) {
    const double p_mu = std::ldexp(1.0, mu) / std::ldexp(1.0, n_p + 2);
    const int codes = 1 << mu;
    for (int cx = 0; cx < codes; ++cx)
      for (int cy = 0; cy < codes; ++cy)
        for (int cz = 0; cz < codes; ++cz) {
          int comp[3], big = 0;
          bool minus_zero = false;
          const int cs[3] = {cx, cy, cz};
          for (int k = 0; k < 3; ++k) {
            const int sign = cs[k] >> (mu - 1), mag = cs[k] & ((1 << (mu - 1)) - 1);
            if (sign && mag == 0) minus_zero = true;
            comp[k] = sign ? -mag : mag;
            big = std::max(big, mag);
          }
          if (minus_zero || big < (1 << (mu - 2))) continue;
          const IntVec3 nu{comp[0], comp[1], comp[2]};
          const std::uint64_t lhs = std::uint64_t(1) << (2 * (mu - 2));
          std::uint64_t ok = 0;
          for (std::uint64_t m = 0; m < M; ++m)
            if (lhs * M > m * std::uint64_t(norm2(nu))) ++ok;
          mass[nu] += p_mu * std::ldexp(1.0, -3 * mu) * double(ok) / double(M);
        }
  }
  return mass;
}

}  // namespace

TEST(ExponentialState, Examples) {
  auto s2 = exponential_state(2);
  ASSERT_EQ(s2.amplitudes.size(), 1);
  EXPECT_NEAR(s2.amplitudes[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s2.success_probability, 0.5, 1e-15);
  auto s3 = exponential_state(3);
  EXPECT_NEAR(s3.amplitudes[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(s3.amplitudes[1].real(), std::sqrt(2.0) / 2, 1e-15);
  EXPECT_NEAR(s3.success_probability, 0.75, 1e-15);
  auto s6 = exponential_state(6);
  for (int r = 1; r < 5; ++r) EXPECT_NEAR((s6.amplitudes[r] / s6.amplitudes[r - 1]).real(), std::sqrt(2.0), 1e-13);
  for (int n_p = 2; n_p <= 10; ++n_p) {
    auto s = exponential_state(n_p);
    EXPECT_NEAR(s.success_probability, (std::ldexp(1.0, n_p - 1) - 1) / std::ldexp(1.0, n_p - 1), 1e-14);
    EXPECT_NEAR(s.amplitudes.squaredNorm(), s.success_probability, 1e-14);
    for (int r = 0; r <= n_p - 2; ++r)
      EXPECT_NEAR(s.amplitudes[r].real(), std::ldexp(1.0, r - (n_p - 1)) > 0 ? std::sqrt(std::ldexp(1.0, r - (n_p - 1))) : 0, 1e-14);
  }
  EXPECT_THROW(exponential_state(1), ValidationError);
}

TEST(MomentumState, SmallestAmplitude) {
  auto ms = momentum_state(2, 64);
  const int off = 3;
  auto idx = ms.state.layout.index({0, std::size_t(1 + off), std::size_t(off), std::size_t(off)});
  EXPECT_NEAR(ms.state.amplitudes[Eigen::Index(idx)].real(), 1.0 / 16.0, 1e-15);
  EXPECT_NEAR(momentum_amplitude({1, 0, 0}, 2, 64), 1.0 / 16.0, 1e-15);
}

TEST(MomentumState, MatchesRegisterEnumeration) {
  for (auto [n_p, M] : {std::pair{2, std::uint64_t(64)}, std::pair{3, std::uint64_t(1024)}}) {
    auto ms = momentum_state(n_p, M);
    auto mass = enumerate_momentum_registers(n_p, M);
    const int off = (1 << n_p) - 1;
    double total = 0.0;
    for (const auto& [nu, p] : mass) {
      auto idx = ms.state.layout.index({std::size_t(momentum_box(nu) - 2), std::size_t(nu[0] + off),
                                        std::size_t(nu[1] + off), std::size_t(nu[2] + off)});
      EXPECT_NEAR(std::norm(ms.state.amplitudes[Eigen::Index(idx)]), p, 1e-15);
      total += p;
    }
    EXPECT_NEAR(ms.p_nu, total, 1e-13);
    EXPECT_NEAR(momentum_success_probability(n_p, M), total, 1e-13);
  }
}

TEST(MomentumState, CeilingBound) {
  const int n_p = 3;
  const std::uint64_t M = 1024;
  const int off = (1 << n_p) - 1;
  const double c = 1.0 / std::sqrt(16.0 * std::ldexp(1.0, n_p + 2));
  for (int x = -off; x <= off; ++x)
    for (int y = -off; y <= off; ++y)
      for (int z = -off; z <= off; ++z) {
        IntVec3 nu{x, y, z};
        if (is_zero(nu)) continue;
        const double n = std::sqrt(double(norm2(nu)));
        const double ratio = momentum_amplitude(nu, n_p, M) / (c / n);
        const int mu = momentum_box(nu);
        const double xm = std::ldexp(1.0, 2 * (mu - 2)) / (n * n);
        EXPECT_GE(ratio, 1.0 - 1e-15);
        EXPECT_LE(ratio - 1.0, 1.0 / (2.0 * M * xm) + 1e-15);
        EXPECT_EQ(momentum_amplitude(nu, n_p, M), momentum_amplitude(-nu, n_p, M));
      }
}

TEST(MomentumState, ConvergedSuccessProbability) {
  const double p8 = momentum_success_probability(8, 1 << 12);
  EXPECT_NEAR(p8, 0.2398, 0.005);
  const double fail = 1.0 - amplified_success(p8, 1);
  EXPECT_GE(fail, 0.0005);
  EXPECT_LE(fail, 0.002);
  EXPECT_NEAR(momentum_success_probability(9, 1 << 12), p8, 3e-3);
}

TEST(MomentumState, OrthorhombicRescalingFailure) {
  auto cell = unit_cell_from_angstrom(5.02, 5.40, 6.26);
  const double p = momentum_success_probability(8, 1 << 12, inequality_weights(cell));
  const double fail = 1.0 - amplified_success(p, 1);
  EXPECT_GE(fail, 0.04);
  EXPECT_LE(fail, 0.07);
}

TEST(MomentumState, Extrapolation) {
  const double p9 = momentum_success_probability(9, 1 << 20);
  const double p10 = momentum_success_probability(10, 1 << 20);
  const double p11 = momentum_success_probability(11, 1 << 20);
  EXPECT_NEAR(p10, p9, 2e-3);
  EXPECT_NEAR(p11, p10, 1e-3);
}

TEST(AmplifiedSuccess, Examples) {
  EXPECT_DOUBLE_EQ(amplified_success(0.3, 0), 0.3);
  EXPECT_NEAR(amplified_success(0.25, 1), 1.0, 1e-15);
  EXPECT_NEAR(amplified_success(0.2398, 1), 0.9987, 2e-4);
  EXPECT_THROW(amplified_success(0.0, 1), ValidationError);
}
