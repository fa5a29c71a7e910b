#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tmdyn/error.hpp"
#include "tmdyn/normal.hpp"

using namespace tmdyn;

TEST(Normal, CdfMatchesErfcOracle) {
  for (double x = -8.0; x <= 8.0; x += 0.25) EXPECT_NEAR(normal_cdf(x), oracle::phi(x), 1e-15) << x;
}

TEST(Normal, CdfTailIsRelativelyAccurate) {
  // erfc keeps the far left tail; 1 - Phi(8) would be zero in the naive form.
  EXPECT_NEAR(normal_cdf(-8.0) / 6.220960574271785e-16, 1.0, 1e-12);
}

TEST(Normal, QuantileMatchesBisection) {
  for (double p : {1e-12, 1e-6, 0.001, 0.05, 0.3, 0.5, 0.7, 0.9, 0.999, 1 - 1e-9}) {
    // the bisection cannot resolve x beyond one ulp of phi(x) near 1
    const double x = oracle::quantile(p);
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(normal_quantile(p), x, 1e-9 * std::max(1.0, std::abs(x)) + 4e-16 / pdf) << p;
  }
  EXPECT_EQ(normal_quantile(0.5), 0.0);
}

TEST(Normal, QuantileInvertsCdf) {
  // Above the median p = Phi(x) is stored with an absolute error of one ulp of 1,
  // which the inverse amplifies by 1 / pdf(x).
  for (double x = -6.0; x <= 6.0; x += 0.5) {
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(normal_quantile(normal_cdf(x)), x, 1e-9 + 4e-16 / pdf) << x;
  }
}

TEST(Normal, QuantileRejectsBoundary) {
  for (double p : {0.0, 1.0, -0.1, 1.5}) {
    try {
      normal_quantile(p);
      FAIL() << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomainError);
    }
  }
}

TEST(Normal, DispatchAgreesWithDirectCalls) {
  EXPECT_EQ(std_normal(NormalMode::kCdf, 0.3), normal_cdf(0.3));
  EXPECT_EQ(std_normal(NormalMode::kQuantile, 0.3), normal_quantile(0.3));
}
