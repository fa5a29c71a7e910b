#include "tmdyn/simulator.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "tmdyn/analytic.hpp"
#include "tmdyn/error.hpp"
#include "tmdyn/ode.hpp"
#include "tmdyn/parallel.hpp"

namespace tmdyn {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

void validate_mixture(const Mixture& mix) {
  if (mix.dim < 3) throw Error(ErrorCode::kOutOfRange, "d", "dimension must be at least 3");
  if (mix.clusters.empty()) throw Error(ErrorCode::kOutOfRange, "clusters", "need at least one cluster");
  double total = 0.0;
  for (const ClusterSpec& c : mix.clusters) {
    if (!(c.weight > 0.0)) throw Error(ErrorCode::kOutOfRange, "weight", "cluster weights must be positive");
    if (!(c.delta >= 0.0)) throw Error(ErrorCode::kOutOfRange, "delta", "cluster variance must be nonnegative");
    if (c.mean.size() != mix.dim || c.teacher.size() != mix.dim) {
      throw Error(ErrorCode::kDimensionMismatch, "clusters", "cluster vectors must have length d");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kOutOfRange, "weight", "cluster weights must sum to 1");
  }
}

Mixture two_cluster_mixture(const TMConfig& cfg, const Embedding& emb) {
  Mixture mix;
  mix.dim = emb.dim;
  const double inv = 1.0 / std::sqrt(static_cast<double>(emb.dim));
  ClusterSpec plus{cfg.rho, cfg.delta_plus, emb.shift, emb.teacher_plus};
  ClusterSpec minus{1.0 - cfg.rho, cfg.delta_minus, emb.shift, emb.teacher_minus};
  for (double& x : plus.mean) x *= inv;
  for (double& x : minus.mean) x *= -inv;
  mix.clusters = {std::move(plus), std::move(minus)};
  return mix;
}

void sample_example(const Mixture& mix, Xoshiro256& rng, NormalSampler& normal, Example& out) {
  const std::size_t m = mix.clusters.size();
  std::size_t j = m - 1;
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    acc += mix.clusters[i].weight;
    if (u < acc) {
      j = i;
      break;
    }
  }
  const ClusterSpec& c = mix.clusters[j];
  const double sd = std::sqrt(c.delta);
  out.x.resize(mix.dim);
  double proj = 0.0;
  for (std::size_t i = 0; i < mix.dim; ++i) {
    out.x[i] = c.mean[i] + sd * normal(rng);
    proj += c.teacher[i] * out.x[i];
  }
  out.y = proj >= 0.0 ? 1.0 : -1.0;
  out.cluster = j;
}

Example sample_example(const Mixture& mix, Xoshiro256& rng, NormalSampler& normal) {
  Example ex;
  sample_example(mix, rng, normal, ex);
  return ex;
}

void sgd_step(StudentState& state, const Example& ex, double eta) {
  if (state.w.size() != ex.x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "w", "student and example dimensions differ");
  }
  const double inv = 1.0 / std::sqrt(static_cast<double>(state.w.size()));
  const double yhat = dot(state.w, ex.x) * inv;
  const double g = eta * inv * (ex.y - yhat);
  for (std::size_t i = 0; i < state.w.size(); ++i) state.w[i] += g * ex.x[i];
  ++state.k;
}

OrderState measure_order_params(const StudentState& state, const Embedding& emb) {
  if (state.w.size() != emb.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "w", "student and embedding dimensions differ");
  }
  return {overlap(state.w, emb.shift), overlap(state.w, emb.teacher_plus),
          overlap(state.w, emb.teacher_minus), overlap(state.w, state.w)};
}

MixtureOverlaps measure_order_params(const StudentState& state, const Mixture& mix) {
  if (state.w.size() != mix.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "w", "student and mixture dimensions differ");
  }
  const double d = static_cast<double>(mix.dim);
  MixtureOverlaps o;
  for (const ClusterSpec& c : mix.clusters) {
    o.r.push_back(dot(state.w, c.teacher) / d);
    o.m.push_back(dot(state.w, c.mean) / std::sqrt(d));
  }
  o.q = dot(state.w, state.w) / d;
  return o;
}

StudentState initial_student(const TMConfig& cfg, const SimSpec& spec, const Embedding& emb) {
  StudentState s;
  if (spec.init == StudentInit::kExact) {
    s.w = emb.student;
    return s;
  }
  if (!(spec.init_q >= 0.0)) throw Error(ErrorCode::kOutOfRange, "init_q", "must be nonnegative");
  (void)cfg;
  // Separate stream so the data sequence is the same for both init modes.
  Xoshiro256 rng(derive_seed(spec.seed, 0x1a17, 1));
  NormalSampler normal;
  s.w.resize(spec.d);
  const double sd = std::sqrt(spec.init_q);
  for (double& x : s.w) x = sd * normal(rng);
  return s;
}

Trajectory run_sgd(const TMConfig& cfg, const SimSpec& spec) {
  // The SGD process itself is fine at eta = 0 (a frozen student), so accept
  // it here even though the analytic side needs eta > 0.
  TMConfig checked = cfg;
  if (checked.eta == 0.0) checked.eta = 1.0;
  validate_config(checked);
  if (spec.steps < 1) throw Error(ErrorCode::kOutOfRange, "steps", "must be at least 1");
  if (spec.record_every < 1) throw Error(ErrorCode::kOutOfRange, "record_every", "must be at least 1");
  const Embedding emb = construct_embedding(checked, spec.d, spec.frame, derive_seed(spec.seed, 0xe3b, 2));
  const Mixture mix = two_cluster_mixture(cfg, emb);
  StudentState student = initial_student(cfg, spec, emb);

  Xoshiro256 rng(spec.seed);
  NormalSampler normal;
  Example ex;
  const double d = static_cast<double>(spec.d);

  std::vector<double> grid{0.0};
  std::vector<OrderState> states{measure_order_params(student, emb)};
  for (std::size_t k = 1; k <= spec.steps; ++k) {
    sample_example(mix, rng, normal, ex);
    sgd_step(student, ex, cfg.eta);
    if (k % spec.record_every == 0 || k == spec.steps) {
      const OrderState s = measure_order_params(student, emb);
      if (!std::isfinite(s.q) || s.q > kDivergenceThreshold) {
        throw Error(ErrorCode::kDivergenceDetected, "q",
                    "Q blew up at step " + std::to_string(k));
      }
      grid.push_back(static_cast<double>(k) / d);
      states.push_back(s);
    }
  }
  Trajectory traj = make_trajectory(cfg, std::move(grid), std::move(states), TrajectorySource::kSimulation);
  traj.seed = spec.seed;
  traj.dim = spec.d;
  return traj;
}

std::vector<Trajectory> run_sgd_batch(const TMConfig& cfg, const SimSpec& spec,
                                      const std::vector<std::uint64_t>& seeds, std::size_t threads) {
  std::vector<Trajectory> out(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    SimSpec s = spec;
    s.seed = seeds[i];
    out[i] = run_sgd(cfg, s);
  });
  return out;
}

TrajectoryStats aggregate(const std::vector<Trajectory>& runs) {
  TrajectoryStats st;
  if (runs.empty()) return st;
  st.grid = runs.front().grid;
  for (const Trajectory& r : runs) {
    if (r.grid != st.grid) throw Error(ErrorCode::kDimensionMismatch, "grid", "runs use different grids");
  }
  const double n = static_cast<double>(runs.size());
  st.mean.assign(st.grid.size(), OrderState{});
  st.stddev.assign(st.grid.size(), OrderState{});
  for (std::size_t i = 0; i < st.grid.size(); ++i) {
    OrderState sum{}, sq{};
    for (const Trajectory& r : runs) {
      const OrderState& s = r.states[i];
      sum = sum + s;
      sq = sq + OrderState{s.m * s.m, s.r_plus * s.r_plus, s.r_minus * s.r_minus, s.q * s.q};
    }
    const OrderState mean = (1.0 / n) * sum;
    const auto sdev = [&](double s2, double mu) {
      if (runs.size() < 2) return 0.0;
      return std::sqrt(std::max(0.0, (s2 - n * mu * mu) / (n - 1.0)));
    };
    st.mean[i] = mean;
    st.stddev[i] = {sdev(sq.m, mean.m), sdev(sq.r_plus, mean.r_plus), sdev(sq.r_minus, mean.r_minus),
                    sdev(sq.q, mean.q)};
  }
  return st;
}

McErrorEstimate estimate_error_mc(const std::vector<double>& w, const Mixture& mix,
                                  std::size_t n_samples, std::uint64_t seed) {
  validate_mixture(mix);
  if (n_samples < 1) throw Error(ErrorCode::kOutOfRange, "n_samples", "must be at least 1");
  if (w.size() != mix.dim) throw Error(ErrorCode::kDimensionMismatch, "w", "student and mixture dimensions differ");
  const double inv = 1.0 / std::sqrt(static_cast<double>(mix.dim));
  const double n = static_cast<double>(n_samples);
  McErrorEstimate est;
  Xoshiro256 rng(seed);
  NormalSampler normal;
  for (const ClusterSpec& c : mix.clusters) {
    const double sd = std::sqrt(c.delta);
    // Only the projections on w and on the teacher matter.
    double sum = 0.0, sum2 = 0.0, hits = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
      double yhat = 0.0, proj = 0.0;
      for (std::size_t i = 0; i < mix.dim; ++i) {
        const double x = c.mean[i] + sd * normal(rng);
        yhat += w[i] * x;
        proj += c.teacher[i] * x;
      }
      yhat *= inv;
      const double y = proj >= 0.0 ? 1.0 : -1.0;
      const double loss = (y - yhat) * (y - yhat);
      sum += loss;
      sum2 += loss * loss;
      if ((yhat >= 0.0 ? 1.0 : -1.0) == y) hits += 1.0;
    }
    const double mean = sum / n;
    const double var = n > 1.0 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0)) : 0.0;
    const double acc = hits / n;
    est.eps.push_back(mean);
    est.eps_se.push_back(std::sqrt(var / n));
    est.accuracy.push_back(acc);
    est.accuracy_se.push_back(std::sqrt(acc * (1.0 - acc) / n));
  }
  return est;
}

}  // namespace tmdyn
