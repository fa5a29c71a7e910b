#include "tmdyn/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tmdyn/analytic.hpp"
#include "tmdyn/error.hpp"

namespace tmdyn {

std::string_view to_string(TrajectorySource s) {
  switch (s) {
    case TrajectorySource::kClosedForm: return "closed_form";
    case TrajectorySource::kRk4: return "rk4";
    case TrajectorySource::kSimulation: return "simulation";
  }
  return "unknown";
}

TrajectorySource parse_source(std::string_view s) {
  if (s == "closed_form") return TrajectorySource::kClosedForm;
  if (s == "rk4") return TrajectorySource::kRk4;
  if (s == "simulation") return TrajectorySource::kSimulation;
  throw Error(ErrorCode::kConfigError, "source", "unknown trajectory source '" + std::string(s) + "'");
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 0.0) {
    throw Error(ErrorCode::kOutOfRange, "grid", "time grid must start at 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i])) {
      throw Error(ErrorCode::kOutOfRange, "grid", "time grid must be strictly increasing");
    }
  }
}

Trajectory make_trajectory(const TMConfig& cfg, std::vector<double> grid,
                           std::vector<OrderState> states, TrajectorySource source) {
  if (grid.size() != states.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "grid", "grid and states differ in length");
  }
  Trajectory traj;
  traj.source = source;
  traj.eps_plus.reserve(states.size());
  traj.eps_minus.reserve(states.size());
  traj.eps_total.reserve(states.size());
  for (const OrderState& s : states) {
    const ClusterErrors e = generalisation_error(s, cfg);
    traj.eps_plus.push_back(e.eps_plus);
    traj.eps_minus.push_back(e.eps_minus);
    traj.eps_total.push_back(e.eps_total);
  }
  traj.grid = std::move(grid);
  traj.states = std::move(states);
  return traj;
}

Trajectory closed_form_trajectory(const TMConfig& cfg, const std::vector<double>& grid) {
  check_grid(grid);
  const ClosedFormSolution sol(validate_config(cfg));
  std::vector<OrderState> states;
  states.reserve(grid.size());
  for (double t : grid) states.push_back(sol.state(t));
  return make_trajectory(cfg, grid, std::move(states), TrajectorySource::kClosedForm);
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const bool sim = traj.seed.has_value() || traj.dim.has_value();
  out << kTrajectoryHeader;
  if (sim) out << ",seed,d";
  out << '\n';
  const std::string_view src = to_string(traj.source);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const OrderState& s = traj.states[i];
    out << format_double(traj.grid[i]) << ',' << format_double(s.m) << ','
        << format_double(s.r_plus) << ',' << format_double(s.r_minus) << ','
        << format_double(s.q) << ',' << format_double(traj.eps_plus[i]) << ','
        << format_double(traj.eps_minus[i]) << ',' << format_double(traj.eps_total[i]) << ','
        << src;
    if (sim) out << ',' << traj.seed.value_or(0) << ',' << traj.dim.value_or(0);
    out << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kConfigError, "out", "cannot open '" + path + "' for writing");
  write_trajectory_csv(out, traj);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, std::size_t row) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kConfigError, "csv",
                "bad number '" + s + "' on data row " + std::to_string(row));
  }
  return x;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kConfigError, "csv", "empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool sim = false;
  if (line == std::string(kTrajectoryHeader) + ",seed,d") {
    sim = true;
  } else if (line != kTrajectoryHeader) {
    throw Error(ErrorCode::kConfigError, "csv", "unexpected trajectory header '" + line + "'");
  }
  const std::size_t ncol = sim ? 11 : 9;

  Trajectory traj;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const auto c = split(line);
    if (c.size() != ncol) {
      throw Error(ErrorCode::kConfigError, "csv", "wrong column count on data row " + std::to_string(row));
    }
    traj.grid.push_back(parse_double(c[0], row));
    traj.states.push_back({parse_double(c[1], row), parse_double(c[2], row),
                           parse_double(c[3], row), parse_double(c[4], row)});
    traj.eps_plus.push_back(parse_double(c[5], row));
    traj.eps_minus.push_back(parse_double(c[6], row));
    traj.eps_total.push_back(parse_double(c[7], row));
    traj.source = parse_source(c[8]);
    if (sim) {
      traj.seed = std::stoull(c[9]);
      traj.dim = static_cast<std::size_t>(std::stoull(c[10]));
    }
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "path", "cannot open '" + path + "'");
  return read_trajectory_csv(in);
}

}  // namespace tmdyn
