#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmdyn/config.hpp"

namespace tmdyn {

enum class TrajectorySource { kClosedForm, kRk4, kSimulation };

std::string_view to_string(TrajectorySource s);
/// Parses "closed_form", "rk4" or "simulation"; throws Error(kConfigError).
TrajectorySource parse_source(std::string_view s);

/// Order parameters and per-cluster errors sampled on a time grid.
struct Trajectory {
  std::vector<double> grid;
  std::vector<OrderState> states;
  std::vector<double> eps_plus;
  std::vector<double> eps_minus;
  std::vector<double> eps_total;
  TrajectorySource source = TrajectorySource::kClosedForm;
  // Set for simulated runs only; written as extra `seed,d` columns.
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> dim;

  std::size_t size() const { return grid.size(); }
};

/// Builds a trajectory from states, filling the error columns analytically.
Trajectory make_trajectory(const TMConfig& cfg, std::vector<double> grid,
                           std::vector<OrderState> states, TrajectorySource source);

/// Throws Error(kOutOfRange) unless the grid starts at 0 and strictly increases.
void check_grid(const std::vector<double>& grid);

/// Exact trajectory on `grid`; throws Error(kDegenerateConstants) when the
/// closed form is unavailable (see solve() for the rerouting variant).
Trajectory closed_form_trajectory(const TMConfig& cfg, const std::vector<double>& grid);

inline constexpr std::string_view kTrajectoryHeader =
    "t,M,R_plus,R_minus,Q,eps_plus,eps_minus,eps_total,source";

/// CSV with kTrajectoryHeader (plus `seed,d` for simulations); values are
/// written with 17 significant digits so reading back is lossless.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::string& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace tmdyn
