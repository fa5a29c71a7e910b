#include "tmdyn_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "tmdyn/analysis.hpp"
#include "tmdyn/analytic.hpp"
#include "tmdyn/config_json.hpp"
#include "tmdyn/error.hpp"
#include "tmdyn/ode.hpp"
#include "tmdyn/parallel.hpp"
#include "tmdyn/simulator.hpp"
#include "tmdyn/trajectory.hpp"
#include "tmdyn_cli/long_form.hpp"
#include "tmdyn_cli/manifest.hpp"

namespace tmdyn::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::system_clock;

std::string quote(std::string_view msg) {
  std::string s = "\"";
  for (char c : msg) {
    if (c == '"' || c == '\\') s += '\\';
    s += c == '\n' ? ' ' : c;
  }
  return s + '"';
}

void diag(std::ostream& err, std::string_view level, std::string_view code, std::string_view msg,
          std::string_view field = {}) {
  err << "level=" << level << " code=" << code;
  if (!field.empty()) err << " field=" << field;
  err << " msg=" << quote(msg) << '\n';
}

// Flags shared by every command that takes a problem config.
struct ConfigFlags {
  std::string file;
  bool lenient = false;
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> options;
  double alpha_plus = 0.0, alpha_minus = 0.0;
  CLI::Option* alpha_plus_opt = nullptr;
  CLI::Option* alpha_minus_opt = nullptr;
};

std::string flag_name(std::string field) {
  std::replace(field.begin(), field.end(), '_', '-');
  std::replace(field.begin(), field.end(), '.', '-');
  return "--" + field;
}

void add_config_flags(CLI::App* app, ConfigFlags& f) {
  app->add_option("--config", f.file, "JSON config file")->check(CLI::ExistingFile);
  app->add_flag("--lenient", f.lenient, "warn instead of failing on unknown config keys");
  for (const std::string& name : config_field_names()) {
    f.options[name] = app->add_option(flag_name(name), f.values[name], "override " + name);
  }
  f.alpha_plus_opt = app->add_option("--alpha-plus", f.alpha_plus,
                                     "set m_star_plus from the label imbalance of cluster +");
  f.alpha_minus_opt = app->add_option("--alpha-minus", f.alpha_minus,
                                      "set m_star_minus from the label imbalance of cluster -");
  f.alpha_plus_opt->excludes(f.options["m_star_plus"]);
  f.alpha_minus_opt->excludes(f.options["m_star_minus"]);
}

TMConfig resolve_config(const ConfigFlags& f, std::ostream& err) {
  TMConfig cfg;
  if (!f.file.empty()) {
    std::ifstream in(f.file);
    if (!in) throw Error(ErrorCode::kConfigError, "config", "cannot open '" + f.file + "'");
    std::vector<std::string> warnings;
    cfg = read_config_json(in, f.lenient ? UnknownKeys::kWarn : UnknownKeys::kError, &warnings);
    for (const auto& w : warnings) diag(err, "warn", "UnknownKey", "ignored unknown config key", w);
  }
  for (const auto& [name, opt] : f.options) {
    if (opt->count() > 0) set_config_field(cfg, name, f.values.at(name));
  }
  if (f.alpha_plus_opt->count() > 0) cfg.m_star_plus = m_star_plus_for_alpha(f.alpha_plus, cfg.delta_plus);
  if (f.alpha_minus_opt->count() > 0) {
    cfg.m_star_minus = m_star_minus_for_alpha(f.alpha_minus, cfg.delta_minus);
  }
  return validate_config(cfg);
}

std::string out_dir_of(const std::string& path) {
  const fs::path p(path);
  return p.has_parent_path() ? p.parent_path().string() : ".";
}

std::vector<double> grid_from_file(const std::string& path) {
  return read_trajectory_csv(path).grid;
}

std::string trajectory_text(const Trajectory& traj) {
  std::ostringstream ss;
  write_trajectory_csv(ss, traj);
  return ss.str();
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;
  Clock::time_point started = Clock::now();
};

void emit(Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    ctx.out << text;
  } else {
    write_file_atomic(path, text);
  }
}

void record(Context& ctx, const std::string& command, const std::string& dir, const TMConfig& cfg,
            std::vector<std::string> outputs, std::vector<std::uint64_t> seeds = {},
            const json& details = json::object()) {
  RunManifest m;
  m.command = command;
  m.argv = ctx.argv;
  m.config = cfg;
  m.seeds = std::move(seeds);
  m.outputs = std::move(outputs);
  m.extra_json = details.dump();
  m.started = ctx.started;
  m.finished = Clock::now();
  append_manifest(dir, m);
}

// --- solve / integrate -------------------------------------------------------

struct TrajectoryFlags {
  double horizon = 0.0;
  std::size_t points = 400;
  std::string out;
  std::string grid_from;
};

void add_trajectory_flags(CLI::App* app, TrajectoryFlags& f) {
  app->add_option("--horizon", f.horizon, "end time (default 10 x slowest timescale)");
  app->add_option("--points", f.points, "number of grid points")->check(CLI::Range(2, 100000000));
  app->add_option("--grid-from", f.grid_from, "reuse the time column of a trajectory CSV")
      ->check(CLI::ExistingFile);
  app->add_option("--out", f.out, "output CSV (default stdout)");
}

std::vector<double> resolve_grid(const TMConfig& cfg, const TrajectoryFlags& f) {
  if (!f.grid_from.empty()) return grid_from_file(f.grid_from);
  return default_grid(cfg, f.points, f.horizon);
}

int cmd_solve(Context& ctx, const ConfigFlags& cf, const TrajectoryFlags& tf) {
  const TMConfig cfg = resolve_config(cf, ctx.err);
  const SolveResult res = solve(cfg, resolve_grid(cfg, tf));
  if (res.fallback) {
    diag(ctx.err, "info", "Fallback",
         "closed form degenerate (" + to_string(res.degenerate) + "); integrated with RK4");
  }
  emit(ctx, tf.out, trajectory_text(res.trajectory));
  if (!tf.out.empty() && tf.out != "-") {
    record(ctx, "solve", out_dir_of(tf.out), cfg, {tf.out}, {},
           {{"source", std::string(to_string(res.trajectory.source))},
            {"fallback", res.fallback},
            {"degenerate", to_string(res.degenerate)}});
  }
  return kOk;
}

int cmd_integrate(Context& ctx, const ConfigFlags& cf, const TrajectoryFlags& tf, double step,
                  bool allow_large) {
  const TMConfig cfg = resolve_config(cf, ctx.err);
  IntegratorSpec spec{step, tf.horizon, allow_large};
  const Trajectory traj = integrate(cfg, spec, resolve_grid(cfg, tf));
  emit(ctx, tf.out, trajectory_text(traj));
  if (!tf.out.empty() && tf.out != "-") {
    record(ctx, "integrate", out_dir_of(tf.out), cfg, {tf.out}, {},
           {{"step", step > 0.0 ? step : default_step(cfg)}, {"method", "rk4"}});
  }
  return kOk;
}

// --- simulate ------------------------------------------------------------------

struct SimulateFlags {
  std::size_t d = 1000;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  double horizon = 0.0;
  std::size_t record_every = 0;
  std::string frame = "leading";
  std::string init = "exact";
  double init_q = 0.0;
  std::size_t threads = 0;
  std::string out;
};

SimSpec sim_spec(const TMConfig& cfg, const SimulateFlags& f) {
  SimSpec spec;
  spec.d = f.d;
  spec.seed = f.seed;
  spec.steps = f.steps;
  if (spec.steps == 0) {
    const double horizon = f.horizon > 0.0 ? f.horizon : 10.0 * max_timescale(cfg);
    if (!std::isfinite(horizon)) throw Error(ErrorCode::kDivergentConfig, "horizon", "pass --steps");
    spec.steps = static_cast<std::size_t>(std::ceil(horizon * static_cast<double>(f.d)));
  }
  spec.record_every = f.record_every > 0 ? f.record_every : std::max<std::size_t>(1, f.d / 10);
  if (f.frame == "leading") {
    spec.frame = EmbeddingFrame::kLeadingCoordinates;
  } else if (f.frame == "random") {
    spec.frame = EmbeddingFrame::kRandomRotation;
  } else {
    throw Error(ErrorCode::kConfigError, "frame", "expected leading or random");
  }
  if (f.init == "exact") {
    spec.init = StudentInit::kExact;
  } else if (f.init == "isotropic") {
    spec.init = StudentInit::kIsotropic;
    spec.init_q = f.init_q;
  } else {
    throw Error(ErrorCode::kConfigError, "init", "expected exact or isotropic");
  }
  return spec;
}

std::string aggregate_text(const TrajectoryStats& st, std::size_t runs) {
  std::ostringstream ss;
  ss << "t,M_mean,M_std,R_plus_mean,R_plus_std,R_minus_mean,R_minus_std,Q_mean,Q_std,runs\n";
  for (std::size_t i = 0; i < st.grid.size(); ++i) {
    const OrderState& m = st.mean[i];
    const OrderState& s = st.stddev[i];
    ss << format_double(st.grid[i]) << ',' << format_double(m.m) << ',' << format_double(s.m) << ','
       << format_double(m.r_plus) << ',' << format_double(s.r_plus) << ','
       << format_double(m.r_minus) << ',' << format_double(s.r_minus) << ','
       << format_double(m.q) << ',' << format_double(s.q) << ',' << runs << '\n';
  }
  return ss.str();
}

int cmd_simulate(Context& ctx, const ConfigFlags& cf, const SimulateFlags& f) {
  const TMConfig cfg = resolve_config(cf, ctx.err);
  const SimSpec spec = sim_spec(cfg, f);
  if (f.seeds < 1) throw Error(ErrorCode::kOutOfRange, "seeds", "need at least one seed");
  std::vector<std::uint64_t> seeds(f.seeds);
  for (std::size_t i = 0; i < f.seeds; ++i) seeds[i] = f.seed + i;
  const std::string dir = f.out.empty() ? "." : f.out;
  fs::create_directories(dir);

  std::vector<Trajectory> runs(seeds.size());
  std::vector<std::string> outputs(seeds.size());
  const std::size_t threads = f.threads > 0 ? f.threads : default_thread_count();
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    SimSpec s = spec;
    s.seed = seeds[i];
    runs[i] = run_sgd(cfg, s);
    outputs[i] = (fs::path(dir) / ("sim_seed" + std::to_string(seeds[i]) + ".csv")).string();
    write_file_atomic(outputs[i], trajectory_text(runs[i]));
  });
  const std::string agg = (fs::path(dir) / "aggregate.csv").string();
  write_file_atomic(agg, aggregate_text(aggregate(runs), runs.size()));
  outputs.push_back(agg);

  json measured = json::array();
  for (const Trajectory& r : runs) {
    const OrderState& s = r.states.front();
    measured.push_back({{"m", s.m}, {"r_plus", s.r_plus}, {"r_minus", s.r_minus}, {"q", s.q}});
  }
  record(ctx, "simulate", dir, cfg, outputs, seeds,
         {{"d", spec.d},
          {"steps", spec.steps},
          {"record_every", spec.record_every},
          {"frame", f.frame},
          {"init", f.init},
          {"init_q", spec.init_q},
          {"measured_init", measured},
          {"rng", "xoshiro256** + Box-Muller"}});
  ctx.out << agg << '\n';
  return kOk;
}

// --- compare -------------------------------------------------------------------

struct CompareFlags {
  std::string reference;
  std::string candidate;
  double tol = 0.05;
  std::string out;
};

OrderState interpolate(const Trajectory& ref, double t, bool& interpolated) {
  const auto it = std::lower_bound(ref.grid.begin(), ref.grid.end(), t);
  if (it != ref.grid.end() && *it == t) return ref.states[static_cast<std::size_t>(it - ref.grid.begin())];
  if (it == ref.grid.begin() || it == ref.grid.end()) {
    throw Error(ErrorCode::kOutOfRange, "candidate", "time " + format_double(t) + " outside the reference grid");
  }
  interpolated = true;
  const auto j = static_cast<std::size_t>(it - ref.grid.begin());
  const double w = (t - ref.grid[j - 1]) / (ref.grid[j] - ref.grid[j - 1]);
  return (1.0 - w) * ref.states[j - 1] + w * ref.states[j];
}

int cmd_compare(Context& ctx, const CompareFlags& f) {
  const Trajectory ref = read_trajectory_csv(f.reference);
  const Trajectory cand = read_trajectory_csv(f.candidate);
  if (cand.size() == 0) throw Error(ErrorCode::kConfigError, "candidate", "empty trajectory");
  bool interpolated = false;
  std::array<double, 4> max_abs{}, sum_abs{};
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const OrderState r = interpolate(ref, cand.grid[i], interpolated);
    const OrderState& c = cand.states[i];
    const std::array<double, 4> dev{std::abs(c.m - r.m), std::abs(c.r_plus - r.r_plus),
                                    std::abs(c.r_minus - r.r_minus), std::abs(c.q - r.q)};
    for (std::size_t k = 0; k < 4; ++k) {
      max_abs[k] = std::max(max_abs[k], dev[k]);
      sum_abs[k] += dev[k];
    }
  }
  static constexpr const char* kNames[] = {"M", "R_plus", "R_minus", "Q"};
  json report;
  report["reference"] = f.reference;
  report["candidate"] = f.candidate;
  report["tol"] = f.tol;
  report["points"] = cand.size();
  report["interpolated"] = interpolated;
  bool pass = true;
  for (std::size_t k = 0; k < 4; ++k) {
    const double mean = sum_abs[k] / static_cast<double>(cand.size());
    report["deviation"][kNames[k]] = {{"max_abs", max_abs[k]}, {"mean_abs", mean}};
    pass = pass && max_abs[k] <= f.tol;
  }
  report["pass"] = pass;
  emit(ctx, f.out, report.dump(2) + "\n");
  if (!pass) diag(ctx.err, "error", "CompareFailed", "max deviation exceeds tolerance");
  return pass ? kOk : kCompareFailed;
}

// --- sweep / analyze -------------------------------------------------------------

struct SweepFlags {
  std::string axis1;
  std::string axis2;
  double horizon = 0.0;
  std::size_t resolution = kDefaultResolution;
  std::size_t threads = 0;
  bool simulate = false;
  std::size_t d = 500;
  std::size_t steps = 0;
  std::size_t record_every = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_sweep(Context& ctx, const ConfigFlags& cf, const SweepFlags& f) {
  const TMConfig base = resolve_config(cf, ctx.err);
  PhaseOptions opts;
  opts.horizon = f.horizon;
  opts.resolution = f.resolution;
  opts.threads = f.threads > 0 ? f.threads : default_thread_count();
  opts.simulate = f.simulate;
  if (f.simulate) {
    opts.sim.d = f.d;
    opts.sim.seed = f.seed;
    opts.sim.steps = f.steps > 0 ? f.steps : 100 * f.d;
    opts.sim.record_every = f.record_every > 0 ? f.record_every : std::max<std::size_t>(1, f.d / 10);
  }
  const PhaseDiagram pd = phase_diagram(parse_axis(f.axis1), parse_axis(f.axis2), base, opts);
  std::ostringstream csv;
  write_phase_csv(csv, pd);
  emit(ctx, f.out, csv.str());
  std::size_t bad = 0;
  for (const PhaseCell& c : pd.cells) bad += c.error.empty() ? 0 : 1;
  if (bad > 0) diag(ctx.err, "warn", "InvalidCells", std::to_string(bad) + " cells have invalid configs");
  if (!f.out.empty() && f.out != "-") {
    const std::string sidecar = f.out + ".base.json";
    write_file_atomic(sidecar, phase_sidecar_json(pd) + "\n");
    record(ctx, "sweep", out_dir_of(f.out), base, {f.out, sidecar},
           f.simulate ? std::vector<std::uint64_t>{f.seed} : std::vector<std::uint64_t>{},
           {{"axis1", to_string(pd.axis1)},
            {"axis2", to_string(pd.axis2)},
            {"mode", f.simulate ? "simulation" : "analytic"},
            {"invalid_cells", bad}});
  }
  return kOk;
}

int cmd_analyze(Context& ctx, const ConfigFlags& cf, double horizon, std::size_t resolution,
                const std::string& out) {
  const TMConfig cfg = resolve_config(cf, ctx.err);
  const PhaseAnnotation ann = annotate_phases(cfg, horizon, resolution);
  emit(ctx, out, annotation_to_json(ann, cfg) + "\n");
  if (!out.empty() && out != "-") record(ctx, "analyze", out_dir_of(out), cfg, {out});
  return kOk;
}

int cmd_plotdata(Context& ctx, const std::string& in_path, const std::string& out, bool reverse) {
  std::ifstream in(in_path);
  if (!in) throw Error(ErrorCode::kConfigError, "in", "cannot open '" + in_path + "'");
  const Table t = read_table(in);
  std::ostringstream ss;
  write_table(ss, reverse ? from_long_form(t) : to_long_form(t));
  emit(ctx, out, ss.str());
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivergenceDetected:
    case ErrorCode::kDivergentConfig: return kDivergence;
    default: return kValidationError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, std::vector<std::string>(argv, argv + argc)};

  CLI::App app{"Learning dynamics of a linear student on a two-cluster teacher mixture", "tmdyn"};
  app.set_version_flag("--version", TMDYN_VERSION);
  app.require_subcommand(1);

  ConfigFlags cf_solve, cf_integrate, cf_simulate, cf_sweep, cf_analyze;
  TrajectoryFlags tf_solve, tf_integrate;
  double step = 0.0;
  bool allow_large = false;
  SimulateFlags sim;
  CompareFlags cmp;
  SweepFlags sw;
  double an_horizon = 0.0;
  std::size_t an_resolution = kDefaultResolution;
  std::string an_out, pd_in, pd_out;
  bool pd_reverse = false;

  auto* solve_cmd = app.add_subcommand("solve", "closed-form trajectory (RK4 when degenerate)");
  add_config_flags(solve_cmd, cf_solve);
  add_trajectory_flags(solve_cmd, tf_solve);

  auto* integrate_cmd = app.add_subcommand("integrate", "fixed-step RK4 trajectory");
  add_config_flags(integrate_cmd, cf_integrate);
  add_trajectory_flags(integrate_cmd, tf_integrate);
  integrate_cmd->add_option("--step", step, "RK4 step (default fastest timescale / 100)");
  integrate_cmd->add_flag("--allow-large-step", allow_large, "accept steps above timescale / 20");

  auto* simulate_cmd = app.add_subcommand("simulate", "online SGD in d dimensions");
  add_config_flags(simulate_cmd, cf_simulate);
  simulate_cmd->add_option("--d", sim.d, "input dimension")->check(CLI::Range(3, 100000000));
  simulate_cmd->add_option("--seeds", sim.seeds, "number of independent runs");
  simulate_cmd->add_option("--seed", sim.seed, "first seed; run i uses seed + i");
  simulate_cmd->add_option("--steps", sim.steps, "SGD steps (default horizon * d)");
  simulate_cmd->add_option("--horizon", sim.horizon, "continuous-time horizon when --steps is absent");
  simulate_cmd->add_option("--record-every", sim.record_every, "recording stride in steps (default d/10)");
  simulate_cmd->add_option("--frame", sim.frame, "leading | random");
  simulate_cmd->add_option("--init", sim.init, "exact | isotropic");
  simulate_cmd->add_option("--init-q-iso", sim.init_q, "Q0 for isotropic init");
  simulate_cmd->add_option("--threads", sim.threads, "worker threads (default TM_THREADS)");
  simulate_cmd->add_option("--out", sim.out, "output directory");

  auto* compare_cmd = app.add_subcommand("compare", "deviation between two trajectory CSVs");
  compare_cmd->add_option("--reference", cmp.reference, "reference trajectory (e.g. solve output)")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--candidate", cmp.candidate, "candidate trajectory (e.g. simulate output)")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--tol", cmp.tol, "max absolute deviation allowed");
  compare_cmd->add_option("--out", cmp.out, "report JSON (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "phase diagram over two config fields");
  add_config_flags(sweep_cmd, cf_sweep);
  sweep_cmd->add_option("--axis1", sw.axis1, "field:lo:hi:n or field:log:lo:hi:n")->required();
  sweep_cmd->add_option("--axis2", sw.axis2, "field:lo:hi:n or field:log:lo:hi:n")->required();
  sweep_cmd->add_option("--horizon", sw.horizon, "crossing horizon (default 20 x slowest timescale)");
  sweep_cmd->add_option("--resolution", sw.resolution, "crossing scan points");
  sweep_cmd->add_option("--threads", sw.threads, "worker threads (default TM_THREADS)");
  sweep_cmd->add_flag("--simulate", sw.simulate, "count crossings on simulated runs");
  sweep_cmd->add_option("--d", sw.d, "dimension for --simulate");
  sweep_cmd->add_option("--steps", sw.steps, "steps for --simulate (default 100 d)");
  sweep_cmd->add_option("--record-every", sw.record_every, "stride for --simulate");
  sweep_cmd->add_option("--seed", sw.seed, "base seed for --simulate");
  sweep_cmd->add_option("--out", sw.out, "phase CSV (default stdout)");

  auto* analyze_cmd = app.add_subcommand("analyze", "crossings, phases and timescales as JSON");
  add_config_flags(analyze_cmd, cf_analyze);
  analyze_cmd->add_option("--horizon", an_horizon, "horizon (default 20 x slowest timescale)");
  analyze_cmd->add_option("--resolution", an_resolution, "crossing scan points");
  analyze_cmd->add_option("--out", an_out, "output JSON (default stdout)");

  auto* plot_cmd = app.add_subcommand("plotdata", "reshape a CSV into long form");
  plot_cmd->add_option("--in", pd_in, "trajectory or phase CSV")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--out", pd_out, "output CSV (default stdout)");
  plot_cmd->add_flag("--reverse", pd_reverse, "long form back to wide");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << TMDYN_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    const bool unknown_command =
        app.get_subcommands().empty() && argc > 1 && argv[1][0] != '-';
    diag(err, "error", unknown_command ? "UnknownCommand" : "BadFlag", e.what());
    return kValidationError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(ctx, cf_solve, tf_solve);
    if (integrate_cmd->parsed()) return cmd_integrate(ctx, cf_integrate, tf_integrate, step, allow_large);
    if (simulate_cmd->parsed()) return cmd_simulate(ctx, cf_simulate, sim);
    if (compare_cmd->parsed()) return cmd_compare(ctx, cmp);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx, cf_sweep, sw);
    if (analyze_cmd->parsed()) return cmd_analyze(ctx, cf_analyze, an_horizon, an_resolution, an_out);
    if (plot_cmd->parsed()) return cmd_plotdata(ctx, pd_in, pd_out, pd_reverse);
  } catch (const Error& e) {
    diag(err, "error", to_string(e.code()), e.what(), e.field());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    diag(err, "error", "Internal", e.what());
    return kValidationError;
  }
  diag(err, "error", "UnknownCommand", "no subcommand given");
  return kValidationError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tmdyn::cli
