#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tmdyn/analytic.hpp"
#include "tmdyn/error.hpp"

using namespace tmdyn;

namespace {

const double kRoot2OverPi = std::sqrt(2.0 / std::numbers::pi);

}  // namespace

TEST(Asymptotics, ZeroShiftClosedExpressions) {
  const TMConfig c = oracle::single_crossing();
  const AsymptoticConstants k = asymptotic_constants(c);
  const double dmix = 0.8 * 0.1 + 0.2 * 1.0;
  EXPECT_EQ(k.m_inf, 0.0);
  EXPECT_EQ(k.k1_plus, 0.0);
  EXPECT_EQ(k.k1_minus, 0.0);
  EXPECT_EQ(k.k3, 0.0);
  EXPECT_EQ(k.k4, 0.0);
  EXPECT_NEAR(k.r_plus_inf, kRoot2OverPi * (0.8 * std::sqrt(0.1) + 0.9 * 0.2 * 1.0) / dmix, 1e-14);
  EXPECT_NEAR(k.r_minus_inf, kRoot2OverPi * (0.9 * 0.8 * std::sqrt(0.1) + 0.2 * 1.0) / dmix, 1e-14);
  EXPECT_EQ(k.degenerate, Degeneracy::kNone);
  ASSERT_TRUE(k.q_trans.has_value());
  EXPECT_NEAR(*k.q_trans, k.k2, 1e-13);
}

TEST(Asymptotics, AlignmentOrderingFollowsRepresentationTimesSpread) {
  const AsymptoticConstants k = asymptotic_constants(oracle::single_crossing());
  EXPECT_GT(0.8 * std::sqrt(0.1), 0.2 * std::sqrt(1.0));
  EXPECT_GT(k.r_plus_inf, k.r_minus_inf);
}

TEST(Asymptotics, SmallLearningRateQLimit) {
  TMConfig c = oracle::double_crossing();
  c.eta = 1e-9;
  const AsymptoticConstants k = asymptotic_constants(c);
  const DerivedConstants d = derived_constants(c);
  const double rho = c.rho;
  const double expected =
      (2 * rho * d.beta_plus * k.r_plus_inf + 2 * (1 - rho) * d.beta_minus * k.r_minus_inf +
       2 * k.m_inf * (rho * d.alpha_plus - (1 - rho) * d.alpha_minus) - 2 * k.m_inf * k.m_inf) /
      (2 * d.delta_mix);
  EXPECT_NEAR(k.q_inf, expected, 1e-7);
}

TEST(Asymptotics, FixedPointOfTheFlow) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 30; ++i) {
    const TMConfig c = oracle::random_config(gen);
    const AsymptoticConstants k = asymptotic_constants(c);
    const OrderState f = ode_rhs({k.m_inf, k.r_plus_inf, k.r_minus_inf, k.q_inf}, c);
    EXPECT_NEAR(f.m, 0.0, 1e-10);
    EXPECT_NEAR(f.r_plus, 0.0, 1e-10);
    EXPECT_NEAR(f.r_minus, 0.0, 1e-10);
    EXPECT_NEAR(f.q, 0.0, 1e-10);
  }
}

TEST(Asymptotics, DegenerateAlignmentRateIsFlagged) {
  TMConfig c = oracle::single_crossing();
  const DerivedConstants d = derived_constants(c);
  c.eta = d.delta_mix / d.delta_2mix;
  const AsymptoticConstants k = asymptotic_constants(c);
  EXPECT_TRUE(any(k.degenerate, Degeneracy::kAlignmentRate));
  EXPECT_FALSE(ClosedFormSolution::supported(c));
  try {
    ClosedFormSolution sol(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateConstants);
  }
}

TEST(Asymptotics, DegenerateShiftRateIsFlagged) {
  TMConfig c = oracle::double_crossing();
  // Put v exactly on the k3 resonance Delta_mix - eta Delta_2mix - v = 0.
  const DerivedConstants d = derived_constants(c);
  c.eta = 0.2 * d.delta_mix / d.delta_2mix;
  c.v_norm = d.delta_mix - c.eta * d.delta_2mix;
  c.m_star_plus = 0.5 * std::sqrt(c.v_norm);
  c.m_star_minus = 0.3 * std::sqrt(c.v_norm);
  ASSERT_NO_THROW(validate_config(c));
  EXPECT_TRUE(any(asymptotic_constants(c).degenerate, Degeneracy::kShiftRate));
}

TEST(Asymptotics, CriticalLearningRateIsDivergent) {
  TMConfig c = oracle::single_crossing();
  c.eta = derived_constants(c).eta_crit;
  const AsymptoticConstants k = asymptotic_constants(c);
  EXPECT_TRUE(k.divergent);
  EXPECT_TRUE(any(k.degenerate, Degeneracy::kCritical));
  c.eta *= 1.5;
  EXPECT_TRUE(asymptotic_constants(c).divergent);
}

TEST(Ode, ZeroStateHandSubstitution) {
  const TMConfig c = oracle::single_crossing();
  const DerivedConstants d = derived_constants(c);
  const OrderState f = ode_rhs({}, c);
  EXPECT_EQ(f.m, 0.0);
  EXPECT_NEAR(f.r_plus, c.eta * (c.rho * d.beta_plus + (1 - c.rho) * c.t_pm * d.beta_minus), 1e-15);
  EXPECT_NEAR(f.r_minus, c.eta * (c.rho * c.t_pm * d.beta_plus + (1 - c.rho) * d.beta_minus), 1e-15);
  EXPECT_NEAR(f.q, c.eta * c.eta * d.delta_mix, 1e-15);
}

TEST(Ode, OneStepDriftOfTheQuadraticTermUsesOwnClusterOverlap) {
  // With cluster - carrying all its alignment in R-, perturbing R+ must not
  // move the eta^2 contribution of cluster -.
  TMConfig c = oracle::single_crossing();
  c.eta = 0.5;
  OrderState s{0.0, 0.1, 0.2, 0.3};
  OrderState s2 = s;
  s2.r_plus += 1e-3;
  const DerivedConstants d = derived_constants(c);
  const double df_q = (ode_rhs(s2, c).q - ode_rhs(s, c).q) / 1e-3;
  const double expected = 2 * c.eta * c.rho * d.beta_plus - 2 * c.eta * c.eta * c.rho * c.delta_plus * d.beta_plus;
  EXPECT_NEAR(df_q, expected, 1e-9);
}

TEST(ClosedForm, InitialStateIsExact) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 20; ++i) {
    const TMConfig c = oracle::random_config(gen);
    EXPECT_EQ(closed_form_state(c, 0.0), c.init);
  }
}

TEST(ClosedForm, ApproachesFixedPoint) {
  const TMConfig c = oracle::double_crossing();
  const AsymptoticConstants k = asymptotic_constants(c);
  const OrderState s = closed_form_state(c, 10 * max_timescale(c));
  EXPECT_NEAR(s.m, k.m_inf, 1e-3);
  EXPECT_NEAR(s.r_plus, k.r_plus_inf, 1e-3);
  EXPECT_NEAR(s.r_minus, k.r_minus_inf, 1e-3);
  EXPECT_NEAR(s.q, k.q_inf, 1e-3);
}

TEST(ClosedForm, DerivativeMatchesRhs) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const TMConfig c = oracle::random_config(gen);
    const ClosedFormSolution sol(c);
    const double t = (0.05 + 2.0 * u(gen)) * max_timescale(c) * 0.3;
    const double h = 1e-5 * std::max(1.0, t);
    const OrderState f = ode_rhs(sol.state(t), c);
    const auto fd = [&](auto get) {
      return oracle::central_diff([&](double x) { return get(sol.state(x)); }, t, h);
    };
    const double scale_m = std::max(1e-3, std::abs(f.m));
    EXPECT_NEAR(fd([](const OrderState& s) { return s.m; }), f.m, 1e-6 * std::max(1.0, scale_m));
    EXPECT_NEAR(fd([](const OrderState& s) { return s.r_plus; }), f.r_plus, 1e-6 * std::max(1.0, std::abs(f.r_plus)));
    EXPECT_NEAR(fd([](const OrderState& s) { return s.r_minus; }), f.r_minus, 1e-6 * std::max(1.0, std::abs(f.r_minus)));
    EXPECT_NEAR(fd([](const OrderState& s) { return s.q; }), f.q, 1e-6 * std::max(1.0, std::abs(f.q)));
  }
}

TEST(ClosedForm, SharedTeacherKeepsAlignmentsEqual) {
  const TMConfig c = oracle::spurious_shift();
  const ClosedFormSolution sol(c);
  for (double t = 0.0; t < 200.0; t += 0.7) {
    const OrderState s = sol.state(t);
    EXPECT_LT(std::abs(s.r_plus - s.r_minus), 1e-12) << t;
  }
}

TEST(Errors, ZeroStateHasUnitError) {
  const ClusterErrors e = generalisation_error({}, oracle::double_crossing());
  EXPECT_EQ(e.eps_plus, 1.0);
  EXPECT_EQ(e.eps_minus, 1.0);
  EXPECT_EQ(e.eps_total, 1.0);
}

TEST(Errors, SingleClusterOptimum) {
  TMConfig c;
  c.rho = 1.0 - 1e-12;
  c.delta_plus = 0.7;
  const double q = 2.0 / (std::numbers::pi * c.delta_plus);
  const ClusterErrors e = generalisation_error({0.0, std::sqrt(q), 0.0, q}, c);
  EXPECT_NEAR(e.eps_plus, 1.0 - 2.0 / std::numbers::pi, 1e-14);
}

TEST(Errors, TwoClusterFormMatchesPerClusterForm) {
  // Cluster - seen in its own frame: its mean is -v, so the shift overlap
  // enters as -M.
  std::mt19937_64 gen(4);
  for (int i = 0; i < 20; ++i) {
    const TMConfig c = oracle::random_config(gen);
    const DerivedConstants d = derived_constants(c);
    const OrderState s{0.3, 0.2, -0.1, 0.5};
    const ClusterErrors e = generalisation_error(s, c);
    EXPECT_NEAR(e.eps_plus, cluster_error(d.alpha_plus, d.beta_plus, s.m, s.r_plus, s.q, c.delta_plus), 1e-14);
    EXPECT_NEAR(e.eps_minus, cluster_error(d.alpha_minus, d.beta_minus, -s.m, s.r_minus, s.q, c.delta_minus),
                1e-14);
    EXPECT_NEAR(e.eps_total, c.rho * e.eps_plus + (1 - c.rho) * e.eps_minus, 1e-15);
  }
}

TEST(Errors, RatesAreTimeDerivatives) {
  const TMConfig c = oracle::double_crossing();
  const ClosedFormSolution sol(c);
  for (double t : {0.01, 1.0, 50.0, 400.0}) {
    const ClusterErrors r = error_rates(sol.state(t), c);
    const double h = 1e-5 * std::max(1.0, t);
    const double fd = oracle::central_diff(
        [&](double x) { return generalisation_error(sol.state(x), c).eps_plus; }, t, h);
    EXPECT_NEAR(r.eps_plus, fd, 1e-7 * std::max(1.0, std::abs(fd))) << t;
  }
}

TEST(InitialRates, SymmetricProblemHasUnitRatio) {
  TMConfig c;
  c.delta_plus = c.delta_minus = 0.6;
  c.rho = 0.3;
  const InitialRates r = initial_rates(c);
  EXPECT_DOUBLE_EQ(r.ratio, 1.0);
}

TEST(InitialRates, RatioInsideBracketAcrossSweep) {
  TMConfig c;
  c.delta_plus = 1.0;
  c.t_pm = 0.9;
  for (double rho : {0.2, 0.5, 0.8}) {
    c.rho = rho;
    for (double dm = 0.05; dm < 20.0; dm *= 1.3) {
      c.delta_minus = dm;
      c.eta = 1e-3;  // the bracket is a small-rate statement
      if (derived_constants(c).q_divergent) continue;
      const InitialRates r = initial_rates(c);
      if (r.deps_plus_dt >= 0 || r.deps_minus_dt >= 0) continue;
      EXPECT_GE(r.ratio, r.ratio_lower * (1 - 1e-9)) << rho << " " << dm;
      EXPECT_LE(r.ratio, r.ratio_upper * (1 + 1e-9)) << rho << " " << dm;
    }
  }
}

TEST(InitialRates, ClosedExpressionWithExactFactor) {
  // d eps/dt at zero init: -eta^2 Dmix D (2 sqrt(2/(pi D)) R_inf / eta - 1).
  const TMConfig c = oracle::single_crossing();
  const InitialRates r = initial_rates(c);
  const AsymptoticConstants k = asymptotic_constants(c);
  const DerivedConstants d = derived_constants(c);
  const auto expected = [&](double delta, double r_inf) {
    return -c.eta * c.eta * d.delta_mix * delta *
           (2 * std::sqrt(2 / (std::numbers::pi * delta)) * r_inf / c.eta - 1);
  };
  EXPECT_NEAR(r.deps_plus_dt, expected(c.delta_plus, k.r_plus_inf), 1e-14);
  EXPECT_NEAR(r.deps_minus_dt, expected(c.delta_minus, k.r_minus_inf), 1e-14);
}

TEST(InitialRates, ShiftUnsupported) {
  try {
    initial_rates(oracle::double_crossing());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedSetting);
  }
}

TEST(InitialRates, PreferenceFlipsAcrossEqualSpread) {
  TMConfig c;
  c.delta_plus = 1.0;
  c.t_pm = 0.999;
  c.rho = 0.6;
  c.eta = 0.05;
  c.delta_minus = 0.8;
  const auto below = preference_rules(c).initial;
  c.delta_minus = 1.25;
  const auto above = preference_rules(c).initial;
  EXPECT_NE(below, above);
  EXPECT_NE(below, Preference::kTie);
}

TEST(Preferences, FullSymmetryTies) {
  TMConfig c;
  c.rho = 0.5;
  c.delta_plus = c.delta_minus = 0.4;
  const PreferenceRules p = preference_rules(c);
  EXPECT_EQ(p.initial, Preference::kTie);
  EXPECT_EQ(p.asymptotic_small_lr, Preference::kTie);
  EXPECT_EQ(p.asymptotic_alignment, Preference::kTie);
  EXPECT_EQ(p.asymptotic_finite, Preference::kTie);
  EXPECT_FALSE(p.extrapolated);
}

TEST(Preferences, SingleCrossingCase) {
  const PreferenceRules p = preference_rules(oracle::single_crossing());
  EXPECT_EQ(p.initial, Preference::kMinus);
  EXPECT_EQ(p.asymptotic_small_lr, Preference::kPlus);
  EXPECT_EQ(p.asymptotic_finite, Preference::kPlus);
  EXPECT_EQ(p.asymptotic_alignment, Preference::kPlus);
}

TEST(Preferences, AboveCriticalRateIsDivergent) {
  TMConfig c = oracle::single_crossing();
  c.eta = 1.01 * derived_constants(c).eta_crit;
  EXPECT_EQ(preference_rules(c).asymptotic_finite, Preference::kDivergent);
}

TEST(Preferences, ExtrapolationFlag) {
  TMConfig c = oracle::single_crossing();
  c.t_pm = -0.2;
  EXPECT_TRUE(preference_rules(c).extrapolated);
  EXPECT_TRUE(preference_rules(oracle::double_crossing()).extrapolated);
}

TEST(SingleCluster, Constants) {
  const auto a = single_cluster_asymptotics(1.0, 0.1);
  EXPECT_NEAR(a.q_opt, 2 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(a.eps_min, 0.36338, 1e-5);
  EXPECT_EQ(a.eta_crit, 2.0);
  ASSERT_TRUE(a.eps_inf.has_value());
  EXPECT_NEAR(*a.eps_inf, 0.38251, 1e-5);
  EXPECT_NEAR(*single_cluster_asymptotics(1.0, 1e-12).eps_inf, 1 - 2 / std::numbers::pi, 1e-12);
  EXPECT_TRUE(single_cluster_asymptotics(1.0, 2.0).divergent());
  EXPECT_FALSE(single_cluster_asymptotics(1.0, std::nextafter(2.0, 0.0)).divergent());
  EXPECT_THROW(single_cluster_asymptotics(0.0, 0.1), Error);
}

TEST(Grid, DefaultGridShape) {
  const TMConfig c = oracle::double_crossing();
  const auto g = default_grid(c);
  ASSERT_EQ(g.size(), 400u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 10 * max_timescale(c), 1e-9);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_LT(g[1], derived_constants(c).tau_m);
}
