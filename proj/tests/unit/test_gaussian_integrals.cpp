#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tmdyn/error.hpp"
#include "tmdyn/gaussian_integrals.hpp"

using namespace tmdyn;

TEST(GaussianIntegrals, CenteredSignMomentIsArcsineFree) {
  // mu = 0, c = 0: < (a.x) sign(b.x) > = a.b sqrt(2 delta / (pi b.b)).
  LinearSignMoment m;
  m.a_dot_b = 0.7;
  m.b_dot_b = 2.0;
  m.delta = 0.5;
  EXPECT_NEAR(expect_linear_times_sign(m), 0.7 * std::sqrt(2 * 0.5 / (std::numbers::pi * 2.0)), 1e-15);
}

TEST(GaussianIntegrals, LargeOffsetSaturatesSign) {
  LinearSignMoment m;
  m.a_dot_mu = 1.3;
  m.c = 50.0;
  m.a_dot_b = 0.4;
  EXPECT_NEAR(expect_linear_times_sign(m), 1.3, 1e-12);
  m.c = -50.0;
  EXPECT_NEAR(expect_linear_times_sign(m), -1.3, 1e-12);
}

TEST(GaussianIntegrals, MatchesMonteCarlo) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t n = 4;
    const auto a = oracle::gaussian_vector(gen, n);
    const auto b = oracle::gaussian_vector(gen, n);
    const auto mu = oracle::gaussian_vector(gen, n, 0.5);
    const double delta = 0.2 + u(gen);
    const double c = u(gen) - 0.5;
    LinearSignMoment m{oracle::dot(a, mu), oracle::dot(b, mu), c, oracle::dot(a, b),
                       oracle::dot(a, a), oracle::dot(b, b), delta};
    std::normal_distribution<double> nd(0.0, std::sqrt(delta));
    std::vector<double> x(n);
    const auto est = oracle::monte_carlo(200000, [&] {
      for (std::size_t i = 0; i < n; ++i) x[i] = mu[i] + nd(gen);
      return oracle::dot(a, x) * (oracle::dot(b, x) + c >= 0 ? 1.0 : -1.0);
    });
    EXPECT_NEAR(expect_linear_times_sign(m), est.mean, 4 * est.se) << rep;
  }
}

TEST(GaussianIntegrals, BilinearIsExact) {
  EXPECT_DOUBLE_EQ(expect_bilinear(0.5, -2.0, 0.3, 4.0), -1.0 + 1.2);
}

TEST(GaussianIntegrals, RejectsDegenerateArguments) {
  LinearSignMoment m;
  m.b_dot_b = 0.0;
  EXPECT_THROW(expect_linear_times_sign(m), Error);
  m.b_dot_b = 1.0;
  m.delta = 0.0;
  EXPECT_THROW(expect_linear_times_sign(m), Error);
}
