#include "tmdyn/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <ostream>

#include "tmdyn/config_json.hpp"
#include "tmdyn/error.hpp"
#include "tmdyn/ode.hpp"
#include "tmdyn/parallel.hpp"
#include "tmdyn/rng.hpp"

namespace tmdyn {

using nlohmann::json;

double error_gap(const OrderState& s, const TMConfig& cfg) {
  const ClusterErrors e = generalisation_error(s, cfg);
  return e.eps_plus - e.eps_minus;
}

double default_crossing_horizon(const TMConfig& cfg) { return 20.0 * max_timescale(cfg); }

namespace {

int gap_sign(double g) {
  if (std::abs(g) <= kTieTolerance) return 0;
  return g > 0.0 ? 1 : -1;
}

struct GapScan {
  std::vector<double> t;
  std::vector<double> g;
  std::vector<double> crossings;
};

void require_finite_q(const TMConfig& cfg) {
  if (derived_constants(cfg).q_divergent) {
    throw Error(ErrorCode::kDivergentConfig, "eta", "learning rate at or above eta_crit; Q diverges");
  }
}

GapScan scan_gap(const TMConfig& cfg, double horizon, std::size_t resolution) {
  validate_config(cfg);
  require_finite_q(cfg);
  if (horizon <= 0.0) horizon = default_crossing_horizon(cfg);
  if (resolution < 2) throw Error(ErrorCode::kOutOfRange, "resolution", "need at least 2 points");
  const double t_min = 1e-6 * derived_constants(cfg).tau_m;
  if (!(horizon > t_min)) throw Error(ErrorCode::kOutOfRange, "horizon", "horizon below 1e-6 tau_m");

  const StateEvaluator eval(cfg, horizon);
  const auto gap = [&](double t) { return error_gap(eval(t), cfg); };

  GapScan scan;
  scan.t.resize(resolution);
  scan.g.resize(resolution);
  const double lo = std::log(t_min), hi = std::log(horizon);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(resolution - 1);
    scan.t[i] = i + 1 == resolution ? horizon : std::exp(lo + (hi - lo) * x);
    scan.g[i] = gap(scan.t[i]);
  }

  std::size_t last = resolution;  // index of the last point carrying a sign
  for (std::size_t i = 0; i < resolution; ++i) {
    const int s = gap_sign(scan.g[i]);
    if (s == 0) continue;
    if (last != resolution && s != gap_sign(scan.g[last])) {
      // Keep a on the old sign; tie-band values count as "not old sign".
      double a = scan.t[last], b = scan.t[i];
      const int sa = gap_sign(scan.g[last]);
      while (b - a > 1e-12 * b) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (gap_sign(gap(mid)) == sa) {
          a = mid;
        } else {
          b = mid;
        }
      }
      scan.crossings.push_back(0.5 * (a + b));
    }
    last = i;
  }
  return scan;
}

}  // namespace

std::vector<double> detect_crossings(const TMConfig& cfg, double horizon, std::size_t resolution) {
  return scan_gap(cfg, horizon, resolution).crossings;
}

PhaseAnnotation annotate_phases(const TMConfig& cfg, double horizon, std::size_t resolution) {
  validate_config(cfg);
  require_finite_q(cfg);
  if (horizon <= 0.0) horizon = default_crossing_horizon(cfg);
  const GapScan scan = scan_gap(cfg, horizon, resolution);
  const DerivedConstants k = derived_constants(cfg);

  PhaseAnnotation ann;
  ann.crossings = scan.crossings;
  ann.tau_m = k.tau_m;
  ann.tau_r = k.tau_r;
  ann.tau_q = k.tau_q;
  ann.horizon = horizon;

  std::vector<double> cuts{0.0};
  cuts.insert(cuts.end(), scan.crossings.begin(), scan.crossings.end());
  cuts.push_back(horizon);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    PhaseSegment seg{cuts[s], cuts[s + 1], Preference::kTie};
    double best = 0.0;
    for (std::size_t i = 0; i < scan.t.size(); ++i) {
      if (scan.t[i] < seg.t_begin || scan.t[i] > seg.t_end) continue;
      if (std::abs(scan.g[i]) > std::abs(best)) best = scan.g[i];
    }
    const int sign = gap_sign(best);
    // Positive gap: cluster + has the larger error, so - is advantaged.
    if (sign > 0) seg.advantaged = Preference::kMinus;
    if (sign < 0) seg.advantaged = Preference::kPlus;
    ann.segments.push_back(seg);
  }
  return ann;
}

namespace {

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string annotation_to_json(const PhaseAnnotation& ann, const TMConfig& cfg, int indent) {
  json doc;
  doc["config"] = json::parse(config_to_json(cfg));
  doc["horizon"] = ann.horizon;
  doc["timescales"] = {{"tau_m", nullable(ann.tau_m)},
                       {"tau_r", nullable(ann.tau_r)},
                       {"tau_q", nullable(ann.tau_q)}};
  doc["crossings"] = ann.crossings;
  doc["crossing_count"] = ann.crossings.size();
  json segs = json::array();
  for (const PhaseSegment& s : ann.segments) {
    segs.push_back({{"t_begin", s.t_begin},
                    {"t_end", s.t_end},
                    {"advantaged", std::string(to_symbol(s.advantaged))}});
  }
  doc["segments"] = segs;
  const PreferenceRules p = preference_rules(cfg);
  doc["preferences"] = {{"initial", std::string(to_symbol(p.initial))},
                        {"asymptotic_small_lr", std::string(to_symbol(p.asymptotic_small_lr))},
                        {"asymptotic_alignment", std::string(to_symbol(p.asymptotic_alignment))},
                        {"asymptotic_finite", std::string(to_symbol(p.asymptotic_finite))},
                        {"extrapolated", p.extrapolated}};
  const AsymptoticConstants c = asymptotic_constants(cfg);
  doc["asymptotics"] = {{"m_inf", nullable(c.m_inf)},
                        {"r_plus_inf", nullable(c.r_plus_inf)},
                        {"r_minus_inf", nullable(c.r_minus_inf)},
                        {"q_inf", nullable(c.q_inf)},
                        {"degenerate", to_string(c.degenerate)}};
  return doc.dump(indent);
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = log ? std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * x) : lo + (hi - lo) * x;
  }
  out.back() = hi;
  return out;
}

namespace {

double axis_number(std::string_view s, std::string_view text) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kConfigError, "axis", "bad number in axis '" + std::string(text) + "'");
  }
  return x;
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  SweepAxis axis;
  std::size_t i = 1;
  if (parts.size() == 5 && parts[1] == "log") {
    axis.log = true;
    i = 2;
  } else if (parts.size() != 4) {
    throw Error(ErrorCode::kConfigError, "axis",
                "expected field:lo:hi:n or field:log:lo:hi:n, got '" + std::string(text) + "'");
  }
  axis.field = std::string(parts[0]);
  const auto& names = config_field_names();
  if (std::find(names.begin(), names.end(), axis.field) == names.end()) {
    throw Error(ErrorCode::kConfigError, "axis", "unknown config field '" + axis.field + "'");
  }
  axis.lo = axis_number(parts[i], text);
  axis.hi = axis_number(parts[i + 1], text);
  const double n = axis_number(parts[i + 2], text);
  if (!(n >= 1.0) || n != std::floor(n)) {
    throw Error(ErrorCode::kConfigError, "axis", "point count must be a positive integer");
  }
  axis.n = static_cast<std::size_t>(n);
  if (axis.log && !(axis.lo > 0.0 && axis.hi > 0.0)) {
    throw Error(ErrorCode::kConfigError, "axis", "log axis needs positive bounds");
  }
  return axis;
}

std::string to_string(const SweepAxis& axis) {
  std::string s = axis.field + ':';
  if (axis.log) s += "log:";
  return s + format_double(axis.lo) + ':' + format_double(axis.hi) + ':' + std::to_string(axis.n);
}

namespace {

PhaseCell evaluate_cell_impl(const TMConfig& cfg, const PhaseOptions& opts, std::uint64_t sim_seed) {
  PhaseCell cell;
  try {
    validate_config(cfg);
    const PreferenceRules rules = preference_rules(cfg);
    cell.initial_pref = rules.initial;
    cell.alignment_pref = rules.asymptotic_alignment;
    cell.asymptotic_pref = rules.asymptotic_finite;
    cell.divergent = derived_constants(cfg).q_divergent;
    if (cell.divergent) return cell;
    if (opts.simulate) {
      SimSpec spec = opts.sim;
      spec.seed = sim_seed;
      const Trajectory traj = run_sgd(cfg, spec);
      int last = 0;
      for (std::size_t i = 1; i < traj.size(); ++i) {
        const int s = gap_sign(traj.eps_plus[i] - traj.eps_minus[i]);
        if (s == 0) continue;
        if (last != 0 && s != last) cell.crossing_times.push_back(traj.grid[i]);
        last = s;
      }
    } else {
      cell.crossing_times = detect_crossings(cfg, opts.horizon, opts.resolution);
    }
    cell.crossing_count = cell.crossing_times.size();
  } catch (const Error& e) {
    cell.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return cell;
}

}  // namespace

PhaseCell evaluate_cell(const TMConfig& cfg, const PhaseOptions& opts) {
  return evaluate_cell_impl(cfg, opts, opts.sim.seed);
}

PhaseDiagram phase_diagram(const SweepAxis& axis1, const SweepAxis& axis2, const TMConfig& base,
                           const PhaseOptions& opts) {
  validate_config(base);
  PhaseDiagram pd{axis1, axis2, base, {}};
  const std::vector<double> v1 = axis1.values(), v2 = axis2.values();
  pd.cells.resize(v1.size() * v2.size());
  parallel_for(pd.cells.size(), opts.threads, [&](std::size_t idx) {
    const std::size_t i = idx / v2.size(), j = idx % v2.size();
    TMConfig cfg = base;
    set_config_field(cfg, axis1.field, v1[i]);
    set_config_field(cfg, axis2.field, v2[j]);
    PhaseCell cell = evaluate_cell_impl(cfg, opts, derive_seed(opts.sim.seed, i, j));
    cell.x1 = v1[i];
    cell.x2 = v2[j];
    pd.cells[idx] = std::move(cell);
  });
  return pd;
}

void write_phase_csv(std::ostream& out, const PhaseDiagram& pd) {
  out << kPhaseHeader << '\n';
  for (const PhaseCell& c : pd.cells) {
    std::string err = c.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << format_double(c.x1) << ',' << format_double(c.x2) << ',' << to_symbol(c.initial_pref) << ','
        << to_symbol(c.asymptotic_pref) << ',' << c.crossing_count << ',' << (c.divergent ? 1 : 0)
        << ',' << to_symbol(c.alignment_pref) << ',' << err << '\n';
  }
}

std::string phase_sidecar_json(const PhaseDiagram& pd, int indent) {
  json doc;
  doc["axis1"] = {{"field", pd.axis1.field},
                  {"lo", pd.axis1.lo},
                  {"hi", pd.axis1.hi},
                  {"n", pd.axis1.n},
                  {"log", pd.axis1.log}};
  doc["axis2"] = {{"field", pd.axis2.field},
                  {"lo", pd.axis2.lo},
                  {"hi", pd.axis2.hi},
                  {"n", pd.axis2.n},
                  {"log", pd.axis2.log}};
  doc["base"] = json::parse(config_to_json(pd.base));
  return doc.dump(indent);
}

AlignmentSeries spurious_alignment_series(const TMConfig& cfg, const std::vector<double>& grid) {
  validate_config(cfg);
  if (cfg.v_norm == 0.0) {
    throw Error(ErrorCode::kDomainError, "v_norm", "shift cosine undefined without a shift");
  }
  check_grid(grid);
  const StateEvaluator eval(cfg, grid.back());
  AlignmentSeries out;
  out.grid = grid;
  for (double t : grid) {
    const OrderState s = eval(t);
    if (s.q < kZeroNormQ) {
      out.cos_teacher.push_back(0.0);
      out.cos_shift.push_back(0.0);
      continue;
    }
    const double norm = std::sqrt(s.q);
    out.cos_teacher.push_back(s.r_plus / norm);
    out.cos_shift.push_back(s.m / (norm * std::sqrt(cfg.v_norm)));
  }
  return out;
}

}  // namespace tmdyn
