#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tmdyn/error.hpp"
#include "tmdyn/ode.hpp"

using namespace tmdyn;

namespace {

double max_abs_dev(const Trajectory& a, const Trajectory& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const OrderState d = a.states[i] - b.states[i];
    m = std::max({m, std::abs(d.m), std::abs(d.r_plus), std::abs(d.r_minus), std::abs(d.q)});
  }
  return m;
}

}  // namespace

TEST(Rk4, FixedPointStaysPut) {
  TMConfig c = oracle::double_crossing();
  const AsymptoticConstants k = asymptotic_constants(c);
  c.init = {k.m_inf, k.r_plus_inf, k.r_minus_inf, k.q_inf};
  const Trajectory t = integrate(c);
  for (const auto& s : t.states) {
    EXPECT_NEAR(s.m, c.init.m, 1e-10);
    EXPECT_NEAR(s.r_plus, c.init.r_plus, 1e-10);
    EXPECT_NEAR(s.r_minus, c.init.r_minus, 1e-10);
    EXPECT_NEAR(s.q, c.init.q, 1e-10);
  }
}

TEST(Rk4, AgreesWithClosedForm) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 5; ++i) {
    const TMConfig c = oracle::random_config(gen);
    const auto grid = default_grid(c, 100);
    const Trajectory cf = closed_form_trajectory(c, grid);
    const Trajectory rk = integrate(c, {}, grid);
    double scale = 0.0;
    for (const auto& s : cf.states) scale = std::max({scale, std::abs(s.q), std::abs(s.r_plus), std::abs(s.m)});
    EXPECT_LT(max_abs_dev(cf, rk), 1e-6 * scale) << i;
    EXPECT_EQ(rk.source, TrajectorySource::kRk4);
  }
}

TEST(Rk4, FourthOrderConvergence) {
  const TMConfig c = oracle::double_crossing();
  const std::vector<double> grid{0.0, 5.0, 20.0, 60.0};
  const Trajectory cf = closed_form_trajectory(c, grid);
  const double h = max_default_step(c);
  const double e1 = max_abs_dev(cf, integrate(c, {h}, grid));
  const double e2 = max_abs_dev(cf, integrate(c, {h / 2}, grid));
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 3.7);
  EXPECT_LT(order, 4.3);
}

TEST(Rk4, StepBound) {
  const TMConfig c = oracle::single_crossing();
  const double big = 2 * max_default_step(c);
  try {
    integrate(c, {big, 10.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStepTooLarge);
  }
  EXPECT_NO_THROW(integrate(c, {big, 10.0, true}));
}

TEST(Rk4, DetectsBlowUp) {
  TMConfig c = oracle::single_crossing();
  c.eta = 3.0 * derived_constants(c).eta_crit;
  try {
    integrate(c, {0.0, 1e6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergenceDetected);
  }
}

TEST(Solve, FallsBackAtDegenerateRate) {
  TMConfig c = oracle::single_crossing();
  const DerivedConstants d = derived_constants(c);
  c.eta = d.delta_mix / d.delta_2mix;
  const SolveResult r = solve(c, default_grid(c, 60));
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.trajectory.source, TrajectorySource::kRk4);

  // The singularity is removable: nearby closed forms bracket the result.
  TMConfig lo = c, hi = c;
  lo.eta *= 1 - 1e-6;
  hi.eta *= 1 + 1e-6;
  const auto tl = solve(lo, r.trajectory.grid).trajectory;
  const auto th = solve(hi, r.trajectory.grid).trajectory;
  EXPECT_LT(max_abs_dev(tl, r.trajectory), 1e-5);
  EXPECT_LT(max_abs_dev(th, r.trajectory), 1e-5);
}

TEST(Solve, DivergentClosedFormRaises) {
  TMConfig c = oracle::single_crossing();
  c.eta = 2.0 * derived_constants(c).eta_crit;
  try {
    solve(c, {0.0, 1.0, 1e5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergenceDetected);
  }
}

TEST(StateEvaluator, RkPathMatchesClosedFormNearby) {
  TMConfig c = oracle::single_crossing();
  const DerivedConstants d = derived_constants(c);
  c.eta = d.delta_mix / d.delta_2mix;
  const StateEvaluator eval(c, 100.0);
  EXPECT_FALSE(eval.uses_closed_form());
  TMConfig near = c;
  near.eta *= 1 + 1e-7;
  const ClosedFormSolution sol(near);
  for (double t : {0.0, 0.3, 7.7, 55.0, 99.0}) {
    EXPECT_NEAR(eval(t).q, sol.state(t).q, 1e-6) << t;
  }
}
