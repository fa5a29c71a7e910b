#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tmdyn/analytic.hpp"
#include "tmdyn/config.hpp"
#include "tmdyn/trajectory.hpp"

namespace tmdyn {

/// Fixed-step classic Runge-Kutta settings. step == 0 selects default_step().
struct IntegratorSpec {
  double step = 0.0;
  double horizon = 0.0;  // 0 selects 10 * max_timescale
  bool allow_large_step = false;
};

/// Q above this is treated as a blow-up.
inline constexpr double kDivergenceThreshold = 1e12;

/// min(tau_m, tau_r, tau_q); the largest step accepted without an override is
/// a twentieth of it.
double fastest_timescale(const TMConfig& cfg);
double max_default_step(const TMConfig& cfg);
/// fastest_timescale / 100.
double default_step(const TMConfig& cfg);

OrderState rk4_step(const OrderParameterOde& f, const OrderState& s, double h);

/// Integrates from cfg.init, reporting states on `grid`. Each grid interval is
/// split into equal substeps no longer than spec.step. Throws
/// Error(kStepTooLarge) and Error(kDivergenceDetected).
Trajectory integrate(const TMConfig& cfg, const IntegratorSpec& spec, const std::vector<double>& grid);

/// Same, on default_grid(cfg, 400, spec.horizon).
Trajectory integrate(const TMConfig& cfg, const IntegratorSpec& spec = {});

struct SolveResult {
  Trajectory trajectory;
  bool fallback = false;  // closed form was degenerate, RK4 used instead
  Degeneracy degenerate = Degeneracy::kNone;
};

/// Closed form where available, otherwise the RK4 oracle at its default step.
/// Either way Error(kDivergenceDetected) is raised once Q passes 1e12.
SolveResult solve(const TMConfig& cfg, const std::vector<double>& grid);

/// State at arbitrary times: the closed form when available, otherwise RK4
/// restarted from stored checkpoints.
class StateEvaluator {
 public:
  StateEvaluator(const TMConfig& cfg, double horizon);

  OrderState operator()(double t) const;
  bool uses_closed_form() const { return closed_.has_value(); }
  const TMConfig& config() const { return cfg_; }

 private:
  TMConfig cfg_;
  std::optional<ClosedFormSolution> closed_;
  OrderParameterOde ode_;
  double step_ = 0.0;
  double spacing_ = 0.0;
  std::vector<OrderState> checkpoints_;
};

}  // namespace tmdyn
