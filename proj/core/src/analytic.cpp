#include "tmdyn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tmdyn/error.hpp"

namespace tmdyn {

std::string to_string(Degeneracy flags) {
  if (flags == Degeneracy::kNone) return "none";
  std::string out;
  const auto add = [&](Degeneracy f, const char* name) {
    if (!any(flags, f)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(Degeneracy::kShift, "shift");
  add(Degeneracy::kAlignmentRate, "alignment_rate");
  add(Degeneracy::kShiftRate, "shift_rate");
  add(Degeneracy::kCritical, "critical");
  return out;
}

namespace {

// num / den, unless den vanishes relative to its scale. A vanishing numerator
// then means the corresponding mode is absent (coefficient 0); otherwise the
// coefficient is flagged.
double guarded_ratio(double num, double num_scale, double den, double den_scale,
                     Degeneracy flag, Degeneracy& flags) {
  if (std::abs(den) > kDegeneracyTolerance * den_scale) return num / den;
  if (std::abs(num) <= kDegeneracyTolerance * std::max(num_scale, 1e-300)) return 0.0;
  flags = flags | flag;
  return std::numeric_limits<double>::quiet_NaN();
}

// e^{-a t} - e^{-b t}, accurate when a and b are close.
double exp_gap(double a, double b, double t) { return -std::exp(-a * t) * std::expm1(-(b - a) * t); }

}  // namespace

AsymptoticConstants asymptotic_constants(const TMConfig& cfg) {
  const DerivedConstants k = derived_constants(cfg);
  const double rho = cfg.rho, rho_m = 1.0 - cfg.rho;
  const double v = cfg.v_norm, eta = cfg.eta;
  const double dp = cfg.delta_plus, dm = cfg.delta_minus;
  const double mp = cfg.m_star_plus, mm = cfg.m_star_minus;
  const double D = k.delta_mix, D2 = k.delta_2mix;
  const OrderState& s0 = cfg.init;

  AsymptoticConstants c;
  c.divergent = k.q_divergent;

  // Net label imbalance seen along the shift.
  const double imbalance = rho * k.alpha_plus - rho_m * k.alpha_minus;
  c.m_inf = ((rho * mp * k.beta_plus + rho_m * mm * k.beta_minus) + v * imbalance) / (v + D);
  c.r_plus_inf =
      ((rho * k.beta_plus + cfg.t_pm * rho_m * k.beta_minus) + mp * (imbalance - c.m_inf)) / D;
  c.r_minus_inf =
      ((cfg.t_pm * rho * k.beta_plus + rho_m * k.beta_minus) + mm * (imbalance - c.m_inf)) / D;

  const double m_gap = c.m_inf - s0.m;
  const double v_scale = v + D;
  c.k1_plus = guarded_ratio(mp * m_gap, std::abs(mp) * (std::abs(c.m_inf) + std::abs(s0.m)), v,
                            v_scale, Degeneracy::kShift, c.degenerate);
  c.k1_minus = guarded_ratio(mm * m_gap, std::abs(mm) * (std::abs(c.m_inf) + std::abs(s0.m)), v,
                             v_scale, Degeneracy::kShift, c.degenerate);
  const double k1p = std::isnan(c.k1_plus) ? 0.0 : c.k1_plus;
  const double k1m = std::isnan(c.k1_minus) ? 0.0 : c.k1_minus;

  // Source weights of R+, R- and M in dQ/dt (divided by eta).
  const double wp = 2.0 * rho * k.beta_plus * (1.0 - eta * dp);
  const double wm = 2.0 * rho_m * k.beta_minus * (1.0 - eta * dm);
  const double wm_lin = 2.0 * rho * k.alpha_plus * (1.0 - eta * dp) -
                        2.0 * rho_m * k.alpha_minus * (1.0 - eta * dm);
  const double wm_quad = eta * D - 2.0;

  const double q_den = 2.0 * D - eta * D2;
  const double q_num = eta * D + wp * c.r_plus_inf + wm * c.r_minus_inf +
                       c.m_inf * (c.m_inf * wm_quad + wm_lin);
  const double q_num_scale = eta * D + std::abs(wp * c.r_plus_inf) + std::abs(wm * c.r_minus_inf) +
                             std::abs(c.m_inf) * (std::abs(c.m_inf * wm_quad) + std::abs(wm_lin));
  c.q_inf = guarded_ratio(q_num, q_num_scale, q_den, std::max(2.0 * D, eta * D2),
                          Degeneracy::kCritical, c.degenerate);

  const double gp = c.r_plus_inf - s0.r_plus - k1p;
  const double gm = c.r_minus_inf - s0.r_minus - k1m;
  c.k2 = guarded_ratio(wp * gp + wm * gm, std::abs(wp * gp) + std::abs(wm * gm), D - eta * D2,
                       std::max(D, eta * D2), Degeneracy::kAlignmentRate, c.degenerate);

  const double k3_num = wp * k1p + wm * k1m + m_gap * (2.0 * c.m_inf * wm_quad + wm_lin);
  const double k3_scale = std::abs(wp * k1p) + std::abs(wm * k1m) +
                          std::abs(m_gap) * (std::abs(2.0 * c.m_inf * wm_quad) + std::abs(wm_lin));
  c.k3 = guarded_ratio(k3_num, k3_scale, D - eta * D2 - v, std::max({D, eta * D2, v}),
                       Degeneracy::kShiftRate, c.degenerate);

  c.k4 = wm_quad * m_gap * m_gap / (eta * D2 + 2.0 * v);

  if (v == 0.0) {
    // Dedicated zero-shift expressions; M*+- vanish with v.
    const double root = std::sqrt(2.0 / std::numbers::pi);
    const double sp = std::sqrt(dp), sm = std::sqrt(dm);
    const double rp = root * (rho * sp + cfg.t_pm * rho_m * sm) / D;
    const double rm = root * (cfg.t_pm * rho * sp + rho_m * sm) / D;
    const double den = D - eta * D2;
    if (std::abs(den) > kDegeneracyTolerance * std::max(D, eta * D2)) {
      c.q_trans = root *
                  (2.0 * rho * sp * (1.0 - eta * dp) * (rp - s0.r_plus) +
                   2.0 * rho_m * sm * (1.0 - eta * dm) * (rm - s0.r_minus)) /
                  den;
    }
  }
  return c;
}

OrderParameterOde::OrderParameterOde(const TMConfig& cfg) : cfg_(cfg), k_(derived_constants(cfg)) {}

OrderState OrderParameterOde::operator()(const OrderState& s) const {
  const TMConfig& c = cfg_;
  const double rho = c.rho, rho_m = 1.0 - c.rho, eta = c.eta, v = c.v_norm;
  const double ap = k_.alpha_plus, am = k_.alpha_minus, bp = k_.beta_plus, bm = k_.beta_minus;
  const double D = k_.delta_mix, D2 = k_.delta_2mix;

  OrderState f;
  f.m = eta * (rho * v * ap + rho * c.m_star_plus * bp - rho_m * v * am +
               rho_m * c.m_star_minus * bm - s.m * (v + D));
  f.r_plus = eta * (rho * (c.m_star_plus * ap + bp) + rho_m * (-c.m_star_plus * am + c.t_pm * bm) -
                    rho * (s.m * c.m_star_plus + s.r_plus * c.delta_plus) -
                    rho_m * (s.m * c.m_star_plus + s.r_plus * c.delta_minus));
  f.r_minus = eta * (rho * (c.m_star_minus * ap + c.t_pm * bp) + rho_m * (-c.m_star_minus * am + bm) -
                     rho * (s.m * c.m_star_minus + s.r_minus * c.delta_plus) -
                     rho_m * (s.m * c.m_star_minus + s.r_minus * c.delta_minus));
  // <y yhat> within each cluster.
  const double corr_p = ap * s.m + bp * s.r_plus;
  const double corr_m = -am * s.m + bm * s.r_minus;
  f.q = 2.0 * eta * (rho * corr_p + rho_m * corr_m - s.m * s.m - s.q * D) +
        eta * eta *
            (D + s.q * D2 + s.m * s.m * D -
             2.0 * (rho * c.delta_plus * corr_p + rho_m * c.delta_minus * corr_m));
  return f;
}

OrderState ode_rhs(const OrderState& state, const TMConfig& cfg) {
  return OrderParameterOde(cfg)(state);
}

ClosedFormSolution::ClosedFormSolution(const TMConfig& cfg)
    : cfg_(cfg), c_(asymptotic_constants(cfg)) {
  if (c_.degenerate != Degeneracy::kNone) {
    throw Error(ErrorCode::kDegenerateConstants, "",
                "closed form has a vanishing denominator (" + to_string(c_.degenerate) + ")");
  }
  const DerivedConstants k = derived_constants(cfg);
  rate_m_ = cfg.eta * (cfg.v_norm + k.delta_mix);
  rate_r_ = cfg.eta * k.delta_mix;
  rate_q_ = cfg.eta * (2.0 * k.delta_mix - cfg.eta * k.delta_2mix);
}

bool ClosedFormSolution::supported(const TMConfig& cfg) {
  return asymptotic_constants(cfg).degenerate == Degeneracy::kNone;
}

OrderState ClosedFormSolution::state(double t) const {
  const OrderState& s0 = cfg_.init;
  const double em = std::exp(-rate_m_ * t);
  const double er = std::exp(-rate_r_ * t);
  const double eq = std::exp(-rate_q_ * t);
  const double rise_m = -std::expm1(-rate_m_ * t);
  const double rise_r = -std::expm1(-rate_r_ * t);
  const double rise_q = -std::expm1(-rate_q_ * t);
  const double gap_rm = exp_gap(rate_r_, rate_m_, t);

  OrderState s;
  s.m = s0.m * em + c_.m_inf * rise_m;
  s.r_plus = s0.r_plus * er + c_.r_plus_inf * rise_r + c_.k1_plus * gap_rm;
  s.r_minus = s0.r_minus * er + c_.r_minus_inf * rise_r + c_.k1_minus * gap_rm;
  s.q = s0.q * eq + c_.q_inf * rise_q + c_.k2 * exp_gap(rate_q_, rate_r_, t) +
        c_.k3 * exp_gap(rate_q_, rate_m_, t) + c_.k4 * exp_gap(rate_q_, 2.0 * rate_m_, t);
  return s;
}

OrderState closed_form_state(const TMConfig& cfg, double t) {
  return ClosedFormSolution(cfg).state(t);
}

double cluster_error(double alpha, double beta, double m, double r, double q, double delta) {
  return 1.0 - 2.0 * alpha * m + m * m - 2.0 * beta * r + q * delta;
}

ClusterErrors generalisation_error(const OrderState& s, const TMConfig& cfg) {
  const DerivedConstants k = derived_constants(cfg);
  ClusterErrors e;
  e.eps_plus = 1.0 - 2.0 * k.alpha_plus * s.m + s.m * s.m - 2.0 * k.beta_plus * s.r_plus +
               s.q * cfg.delta_plus;
  e.eps_minus = 1.0 + 2.0 * k.alpha_minus * s.m + s.m * s.m - 2.0 * k.beta_minus * s.r_minus +
                s.q * cfg.delta_minus;
  e.eps_total = cfg.rho * e.eps_plus + (1.0 - cfg.rho) * e.eps_minus;
  return e;
}

ClusterErrors error_rates(const OrderState& s, const TMConfig& cfg) {
  const OrderParameterOde ode(cfg);
  const DerivedConstants& k = ode.constants();
  const OrderState f = ode(s);
  ClusterErrors r;
  r.eps_plus = -2.0 * k.alpha_plus * f.m + 2.0 * s.m * f.m - 2.0 * k.beta_plus * f.r_plus +
               cfg.delta_plus * f.q;
  r.eps_minus = 2.0 * k.alpha_minus * f.m + 2.0 * s.m * f.m - 2.0 * k.beta_minus * f.r_minus +
                cfg.delta_minus * f.q;
  r.eps_total = cfg.rho * r.eps_plus + (1.0 - cfg.rho) * r.eps_minus;
  return r;
}

InitialRates initial_rates(const TMConfig& cfg) {
  if (cfg.v_norm != 0.0) {
    throw Error(ErrorCode::kUnsupportedSetting, "v_norm",
                "initial-rate ratio is only defined without a shift");
  }
  const ClusterErrors r = error_rates(cfg.init, cfg);
  InitialRates out;
  out.deps_plus_dt = r.eps_plus;
  out.deps_minus_dt = r.eps_minus;
  out.ratio = r.eps_plus / r.eps_minus;
  const double s = std::sqrt(cfg.delta_plus / cfg.delta_minus);
  out.ratio_lower = cfg.t_pm * s;
  out.ratio_upper = s / cfg.t_pm;
  return out;
}

std::string_view to_string(Preference p) {
  switch (p) {
    case Preference::kPlus: return "plus";
    case Preference::kMinus: return "minus";
    case Preference::kTie: return "tie";
    case Preference::kDivergent: return "divergent";
  }
  return "unknown";
}

std::string_view to_symbol(Preference p) {
  switch (p) {
    case Preference::kPlus: return "+";
    case Preference::kMinus: return "-";
    case Preference::kTie: return "tie";
    case Preference::kDivergent: return "divergent";
  }
  return "?";
}

namespace {

// Smaller value wins; `larger_wins` flips the comparison.
Preference compare(double plus, double minus, bool larger_wins) {
  const double scale = std::max({std::abs(plus), std::abs(minus), 1e-300});
  if (std::abs(plus - minus) <= kTieTolerance * scale) return Preference::kTie;
  const bool plus_wins = larger_wins ? plus > minus : plus < minus;
  return plus_wins ? Preference::kPlus : Preference::kMinus;
}

}  // namespace

PreferenceRules preference_rules(const TMConfig& cfg) {
  PreferenceRules p;
  const ClusterErrors r = error_rates(cfg.init, cfg);
  p.initial = compare(r.eps_plus, r.eps_minus, false);
  p.asymptotic_small_lr = compare(cfg.rho * std::sqrt(cfg.delta_plus),
                                  (1.0 - cfg.rho) * std::sqrt(cfg.delta_minus), true);
  const AsymptoticConstants c = asymptotic_constants(cfg);
  p.asymptotic_alignment = compare(c.r_plus_inf, c.r_minus_inf, true);
  if (c.divergent || std::isnan(c.q_inf)) {
    p.asymptotic_finite = Preference::kDivergent;
  } else {
    const ClusterErrors e =
        generalisation_error(OrderState{c.m_inf, c.r_plus_inf, c.r_minus_inf, c.q_inf}, cfg);
    p.asymptotic_finite = compare(e.eps_plus, e.eps_minus, false);
  }
  p.extrapolated = cfg.t_pm <= 0.0 || cfg.v_norm != 0.0;
  return p;
}

SingleClusterAsymptotics single_cluster_asymptotics(double delta, double eta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::kOutOfRange, "delta", "must be positive");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kOutOfRange, "eta", "must be positive");
  }
  SingleClusterAsymptotics a;
  a.q_opt = 2.0 / (std::numbers::pi * delta);
  a.eps_min = 1.0 - 2.0 / std::numbers::pi;
  a.eta_crit = 2.0 / delta;
  if (eta < a.eta_crit) a.eps_inf = a.eps_min / (1.0 - eta * delta / 2.0);
  return a;
}

double max_timescale(const TMConfig& cfg) {
  const DerivedConstants k = derived_constants(cfg);
  return std::max({k.tau_m, k.tau_r, k.tau_q});
}

std::vector<double> default_grid(const TMConfig& cfg, std::size_t points, double horizon) {
  if (points < 2) throw Error(ErrorCode::kOutOfRange, "points", "grid needs at least 2 points");
  const DerivedConstants k = derived_constants(cfg);
  if (horizon <= 0.0) {
    const double slow = k.q_divergent ? std::max(k.tau_m, k.tau_r) : max_timescale(cfg);
    horizon = 10.0 * slow;
  }
  if (!std::isfinite(horizon)) throw Error(ErrorCode::kOutOfRange, "horizon", "must be finite");
  const double fast = std::min({k.tau_m, k.tau_r, k.tau_q});

  std::vector<double> grid;
  grid.reserve(points);
  grid.push_back(0.0);
  std::size_t n_geo = (points - 1) / 4;
  if (fast >= horizon || n_geo < 2) n_geo = 0;
  if (n_geo > 0) {
    const double lo = std::log(1e-3 * fast), hi = std::log(fast);
    for (std::size_t i = 0; i < n_geo; ++i) {
      grid.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_geo - 1)));
    }
    grid.back() = fast;
  }
  const std::size_t n_lin = points - 1 - n_geo;
  const double start = n_geo > 0 ? fast : 0.0;
  for (std::size_t i = 1; i <= n_lin; ++i) {
    grid.push_back(start + (horizon - start) * static_cast<double>(i) / static_cast<double>(n_lin));
  }
  grid.back() = horizon;
  return grid;
}

}  // namespace tmdyn
