#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tmdyn/config.hpp"
#include "tmdyn/embedding.hpp"
#include "tmdyn/rng.hpp"
#include "tmdyn/trajectory.hpp"

namespace tmdyn {

/// One Gaussian cluster with its own teacher. Inputs are
/// x ~ N(mean, delta I) and labelled y = sign(teacher . x / sqrt(d)).
struct ClusterSpec {
  double weight = 1.0;
  double delta = 1.0;
  std::vector<double> mean;     // already scaled, e.g. shift / sqrt(d)
  std::vector<double> teacher;  // |teacher|^2 = d
};

struct Mixture {
  std::size_t dim = 0;
  std::vector<ClusterSpec> clusters;
};

/// Throws Error(kOutOfRange) unless weights are positive and sum to 1 within
/// 1e-12, d >= 3, and every vector has length d.
void validate_mixture(const Mixture& mix);

/// Cluster + at +shift/sqrt(d) with weight rho, cluster - at -shift/sqrt(d).
Mixture two_cluster_mixture(const TMConfig& cfg, const Embedding& emb);

enum class StudentInit {
  kExact,      // realize cfg.init exactly through the embedding (w = 0 for zero init)
  kIsotropic,  // i.i.d. N(0, init_q) entries; R0, M0 are then only ~0
};

struct SimSpec {
  std::size_t d = 1000;
  std::uint64_t seed = 0;
  std::size_t steps = 1000;
  std::size_t record_every = 1;
  EmbeddingFrame frame = EmbeddingFrame::kLeadingCoordinates;
  StudentInit init = StudentInit::kExact;
  double init_q = 0.0;  // used by kIsotropic
};

struct StudentState {
  std::vector<double> w;
  std::uint64_t k = 0;
};

struct Example {
  std::vector<double> x;
  double y = 1.0;
  std::size_t cluster = 0;
};

/// Draws into `out` (reusing its storage). sign(0) is +1.
void sample_example(const Mixture& mix, Xoshiro256& rng, NormalSampler& normal, Example& out);
Example sample_example(const Mixture& mix, Xoshiro256& rng, NormalSampler& normal);

/// w += (eta / sqrt(d)) (y - w.x / sqrt(d)) x, in place.
void sgd_step(StudentState& state, const Example& ex, double eta);

/// (M, R+, R-, Q) of the student against a two-cluster embedding.
OrderState measure_order_params(const StudentState& state, const Embedding& emb);

/// General mixture: per-cluster teacher overlaps R_j, mean overlaps
/// M_j = w . (sqrt(d) mean_j) / d, and Q.
struct MixtureOverlaps {
  std::vector<double> r;
  std::vector<double> m;
  double q = 0.0;
};
MixtureOverlaps measure_order_params(const StudentState& state, const Mixture& mix);

/// Initial student for a run.
StudentState initial_student(const TMConfig& cfg, const SimSpec& spec, const Embedding& emb);

/// Online SGD from the config's initial condition (eta = 0 is accepted and
/// leaves the student frozen). Records every
/// spec.record_every steps (and the final step) at t = k / d; error columns use
/// the analytic cluster errors at the measured state. Throws
/// Error(kDivergenceDetected) when Q exceeds 1e12.
Trajectory run_sgd(const TMConfig& cfg, const SimSpec& spec);

/// Runs one simulation per seed (spec.seed is ignored) on up to `threads`
/// workers; results are in seed order.
std::vector<Trajectory> run_sgd_batch(const TMConfig& cfg, const SimSpec& spec,
                                      const std::vector<std::uint64_t>& seeds, std::size_t threads);

/// Pointwise mean and (sample) standard deviation across runs on the same grid.
struct TrajectoryStats {
  std::vector<double> grid;
  std::vector<OrderState> mean;
  std::vector<OrderState> stddev;
};
TrajectoryStats aggregate(const std::vector<Trajectory>& runs);

/// Per-cluster Monte Carlo estimates with standard errors. Each cluster is
/// sampled n_samples times conditionally on its identity.
struct McErrorEstimate {
  std::vector<double> eps;       // mean of (y - yhat)^2
  std::vector<double> eps_se;
  std::vector<double> accuracy;  // mean of 1{sign(yhat) = y}
  std::vector<double> accuracy_se;
};
McErrorEstimate estimate_error_mc(const std::vector<double>& w, const Mixture& mix,
                                  std::size_t n_samples, std::uint64_t seed);

}  // namespace tmdyn
