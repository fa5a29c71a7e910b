#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tmdyn/analytic.hpp"
#include "tmdyn/config.hpp"
#include "tmdyn/simulator.hpp"

namespace tmdyn {

/// eps_plus - eps_minus at a state.
double error_gap(const OrderState& s, const TMConfig& cfg);

/// 20 * max_timescale; beyond it the gap sits within ~1e-6 of its limit.
double default_crossing_horizon(const TMConfig& cfg);

inline constexpr std::size_t kDefaultResolution = 2000;

/// Strict sign changes of eps_plus(t) - eps_minus(t) on
/// [1e-6 tau_m, horizon] (horizon 0 selects the default), located on a
/// geometric grid of `resolution` points and refined by bisection. Grid points
/// with |gap| <= kTieTolerance carry no sign. Throws Error(kDivergentConfig).
std::vector<double> detect_crossings(const TMConfig& cfg, double horizon = 0.0,
                                     std::size_t resolution = kDefaultResolution);

struct PhaseSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  Preference advantaged = Preference::kTie;  // cluster with the lower error
};

struct PhaseAnnotation {
  std::vector<PhaseSegment> segments;
  std::vector<double> crossings;
  double tau_m = 0.0;
  double tau_r = 0.0;
  double tau_q = 0.0;
  double horizon = 0.0;
};

/// Splits [0, horizon] at the crossings and labels each piece by the sign of
/// the gap. Throws Error(kDivergentConfig).
PhaseAnnotation annotate_phases(const TMConfig& cfg, double horizon = 0.0,
                                std::size_t resolution = kDefaultResolution);

std::string annotation_to_json(const PhaseAnnotation& ann, const TMConfig& cfg, int indent = 2);

/// "field:lo:hi:n" or "field:log:lo:hi:n" over any scalar config field.
struct SweepAxis {
  std::string field;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;
  bool log = false;

  std::vector<double> values() const;
};

SweepAxis parse_axis(std::string_view text);
std::string to_string(const SweepAxis& axis);

struct PhaseCell {
  double x1 = 0.0;
  double x2 = 0.0;
  Preference initial_pref = Preference::kTie;
  Preference asymptotic_pref = Preference::kTie;  // eps+(inf) vs eps-(inf)
  Preference alignment_pref = Preference::kTie;   // R+_inf vs R-_inf
  std::size_t crossing_count = 0;
  bool divergent = false;
  std::vector<double> crossing_times;
  std::string error;  // non-empty when the cell's config is invalid
};

struct PhaseOptions {
  double horizon = 0.0;  // per-cell default when 0
  std::size_t resolution = kDefaultResolution;
  std::size_t threads = 1;
  // Simulation-backed cells: crossings counted on the simulated error gap.
  bool simulate = false;
  SimSpec sim;
};

struct PhaseDiagram {
  SweepAxis axis1;
  SweepAxis axis2;
  TMConfig base;
  std::vector<PhaseCell> cells;  // axis1 outer, axis2 inner

  const PhaseCell& at(std::size_t i, std::size_t j) const { return cells[i * axis2.n + j]; }
};

/// Evaluates one cell of a sweep; never throws for an invalid config.
PhaseCell evaluate_cell(const TMConfig& cfg, const PhaseOptions& opts);

PhaseDiagram phase_diagram(const SweepAxis& axis1, const SweepAxis& axis2, const TMConfig& base,
                           const PhaseOptions& opts = {});

inline constexpr std::string_view kPhaseHeader =
    "axis1,axis2,initial_pref,asymptotic_pref,crossing_count,divergent,alignment_pref,error";

void write_phase_csv(std::ostream& out, const PhaseDiagram& diagram);
/// Axes and base config, written next to the CSV.
std::string phase_sidecar_json(const PhaseDiagram& diagram, int indent = 2);

/// Cosine similarities of the student with teacher + and with the shift.
struct AlignmentSeries {
  std::vector<double> grid;
  std::vector<double> cos_teacher;
  std::vector<double> cos_shift;
};

/// Q below this counts as an exactly-zero student; both cosines are then 0.
inline constexpr double kZeroNormQ = 1e-14;

/// Throws Error(kDomainError) when v_norm == 0.
AlignmentSeries spurious_alignment_series(const TMConfig& cfg, const std::vector<double>& grid);

}  // namespace tmdyn
