#include "tmdyn/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tmdyn/error.hpp"

namespace tmdyn {

double fastest_timescale(const TMConfig& cfg) {
  const DerivedConstants k = derived_constants(cfg);
  double tau_q = k.tau_q;
  if (k.q_divergent) {
    // Growth rate of Q past eta_crit; still bounds the usable step.
    const double rate = std::abs(cfg.eta * (2.0 * k.delta_mix - cfg.eta * k.delta_2mix));
    tau_q = rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  }
  return std::min({k.tau_m, k.tau_r, tau_q});
}

double max_default_step(const TMConfig& cfg) { return fastest_timescale(cfg) / 20.0; }

double default_step(const TMConfig& cfg) { return fastest_timescale(cfg) / 100.0; }

OrderState rk4_step(const OrderParameterOde& f, const OrderState& s, double h) {
  const OrderState k1 = f(s);
  const OrderState k2 = f(s + (0.5 * h) * k1);
  const OrderState k3 = f(s + (0.5 * h) * k2);
  const OrderState k4 = f(s + h * k3);
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

double resolve_step(const TMConfig& cfg, const IntegratorSpec& spec) {
  const double h = spec.step > 0.0 ? spec.step : default_step(cfg);
  if (!std::isfinite(h)) throw Error(ErrorCode::kOutOfRange, "step", "must be finite");
  if (!spec.allow_large_step && h > max_default_step(cfg) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kStepTooLarge, "step",
                "step " + format_double(h) + " exceeds " + format_double(max_default_step(cfg)) +
                    " (min timescale / 20)");
  }
  return h;
}

void check_finite(const OrderState& s, double t) {
  const bool ok = std::isfinite(s.m) && std::isfinite(s.r_plus) && std::isfinite(s.r_minus) &&
                  std::isfinite(s.q);
  if (!ok || s.q > kDivergenceThreshold) {
    throw Error(ErrorCode::kDivergenceDetected, "q", "Q blew up at t=" + format_double(t));
  }
}

// Advances s from t0 to t1 in equal steps no longer than h.
OrderState advance(const OrderParameterOde& f, OrderState s, double t0, double t1, double h) {
  const double span = t1 - t0;
  if (span <= 0.0) return s;
  const auto n = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
  const double sub = span / static_cast<double>(std::max<std::size_t>(n, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
    s = rk4_step(f, s, sub);
    check_finite(s, t0 + sub * static_cast<double>(i + 1));
  }
  return s;
}

}  // namespace

Trajectory integrate(const TMConfig& cfg, const IntegratorSpec& spec, const std::vector<double>& grid) {
  validate_config(cfg);
  check_grid(grid);
  const double h = resolve_step(cfg, spec);
  const OrderParameterOde f(cfg);
  std::vector<OrderState> states;
  states.reserve(grid.size());
  OrderState s = cfg.init;
  states.push_back(s);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    s = advance(f, s, grid[i - 1], grid[i], h);
    states.push_back(s);
  }
  return make_trajectory(cfg, grid, std::move(states), TrajectorySource::kRk4);
}

Trajectory integrate(const TMConfig& cfg, const IntegratorSpec& spec) {
  validate_config(cfg);
  return integrate(cfg, spec, default_grid(cfg, 400, spec.horizon));
}

SolveResult solve(const TMConfig& cfg, const std::vector<double>& grid) {
  validate_config(cfg);
  SolveResult out;
  out.degenerate = asymptotic_constants(cfg).degenerate;
  if (out.degenerate == Degeneracy::kNone) {
    out.trajectory = closed_form_trajectory(cfg, grid);
    for (std::size_t i = 0; i < out.trajectory.size(); ++i) {
      check_finite(out.trajectory.states[i], out.trajectory.grid[i]);
    }
  } else {
    out.fallback = true;
    out.trajectory = integrate(cfg, IntegratorSpec{}, grid);
  }
  return out;
}

StateEvaluator::StateEvaluator(const TMConfig& cfg, double horizon)
    : cfg_(validate_config(cfg)), ode_(cfg) {
  if (ClosedFormSolution::supported(cfg_)) {
    closed_.emplace(cfg_);
    return;
  }
  step_ = default_step(cfg_);
  spacing_ = 50.0 * step_;
  const auto n = static_cast<std::size_t>(std::ceil(horizon / spacing_)) + 1;
  checkpoints_.reserve(n + 1);
  OrderState s = cfg_.init;
  checkpoints_.push_back(s);
  for (std::size_t i = 1; i <= n; ++i) {
    s = advance(ode_, s, spacing_ * static_cast<double>(i - 1), spacing_ * static_cast<double>(i), step_);
    checkpoints_.push_back(s);
  }
}

OrderState StateEvaluator::operator()(double t) const {
  if (closed_) return closed_->state(t);
  if (t < 0.0) throw Error(ErrorCode::kOutOfRange, "t", "time must be nonnegative");
  auto i = static_cast<std::size_t>(t / spacing_);
  i = std::min(i, checkpoints_.size() - 1);
  const double t0 = spacing_ * static_cast<double>(i);
  return advance(ode_, checkpoints_[i], t0, t, step_);
}

}  // namespace tmdyn
