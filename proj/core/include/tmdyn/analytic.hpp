#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmdyn/config.hpp"

namespace tmdyn {

/// Which closed-form coefficients hit a vanishing denominator.
enum class Degeneracy : std::uint8_t {
  kNone = 0,
  kShift = 1 << 0,           // v -> 0 with a nonzero k1 numerator
  kAlignmentRate = 1 << 1,   // Delta_mix - eta Delta_2mix -> 0 (k2)
  kShiftRate = 1 << 2,       // Delta_mix - eta Delta_2mix - v -> 0 (k3)
  kCritical = 1 << 3,        // 2 Delta_mix - eta Delta_2mix -> 0 (Q_inf)
};

constexpr Degeneracy operator|(Degeneracy a, Degeneracy b) {
  return static_cast<Degeneracy>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
constexpr bool any(Degeneracy flags, Degeneracy mask) {
  return (static_cast<std::uint8_t>(flags) & static_cast<std::uint8_t>(mask)) != 0;
}
std::string to_string(Degeneracy flags);

/// Relative tolerance for declaring a closed-form denominator degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Fixed point and transient coefficients of the order-parameter dynamics.
struct AsymptoticConstants {
  double m_inf = 0.0;
  double r_plus_inf = 0.0;
  double r_minus_inf = 0.0;
  double k1_plus = 0.0;
  double k1_minus = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
  double q_inf = 0.0;
  /// Zero-shift transient amplitude, evaluated from the dedicated v = 0
  /// formula; empty when v_norm != 0.
  std::optional<double> q_trans;
  Degeneracy degenerate = Degeneracy::kNone;
  /// eta >= eta_crit: Q grows without bound and q_inf is not an attractor
  /// (it remains the algebraic fixed point used by the closed form).
  bool divergent = false;
};

AsymptoticConstants asymptotic_constants(const TMConfig& cfg);

/// Right-hand side of the order-parameter ODEs with the data constants cached.
class OrderParameterOde {
 public:
  explicit OrderParameterOde(const TMConfig& cfg);

  OrderState operator()(const OrderState& s) const;

  const TMConfig& config() const { return cfg_; }
  const DerivedConstants& constants() const { return k_; }

 private:
  TMConfig cfg_;
  DerivedConstants k_;
};

/// (f_M, f_R+, f_R-, f_Q) at `state`.
OrderState ode_rhs(const OrderState& state, const TMConfig& cfg);

/// Exact solution of the order-parameter ODEs. Construction throws
/// Error(kDegenerateConstants) when a coefficient it needs is flagged; callers
/// then fall back to numerical integration.
class ClosedFormSolution {
 public:
  explicit ClosedFormSolution(const TMConfig& cfg);

  OrderState state(double t) const;
  const AsymptoticConstants& constants() const { return c_; }
  const TMConfig& config() const { return cfg_; }

  /// True when the config admits an exact evaluation.
  static bool supported(const TMConfig& cfg);

 private:
  TMConfig cfg_;
  AsymptoticConstants c_;
  double rate_m_ = 0.0;  // eta (v + Delta_mix)
  double rate_r_ = 0.0;  // eta Delta_mix
  double rate_q_ = 0.0;  // eta (2 Delta_mix - eta Delta_2mix)
};

OrderState closed_form_state(const TMConfig& cfg, double t);

struct ClusterErrors {
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  double eps_total = 0.0;
};

/// Per-cluster squared-loss generalisation error at a state.
ClusterErrors generalisation_error(const OrderState& state, const TMConfig& cfg);

/// Cluster error in the m-cluster form 1 - 2 alpha M + M^2 - 2 beta R + Q Delta,
/// with every quantity expressed in that cluster's own frame.
double cluster_error(double alpha, double beta, double m, double r, double q, double delta);

/// Time derivatives of (eps_plus, eps_minus, eps_total) along the ODE flow.
ClusterErrors error_rates(const OrderState& state, const TMConfig& cfg);

struct InitialRates {
  double deps_plus_dt = 0.0;
  double deps_minus_dt = 0.0;
  double ratio = 0.0;        // deps_plus_dt / deps_minus_dt
  double ratio_lower = 0.0;  // t_pm sqrt(Delta+/Delta-)
  double ratio_upper = 0.0;  // sqrt(Delta+/Delta-) / t_pm
};

/// Error rates at t = 0 in the zero-shift setting. Throws
/// Error(kUnsupportedSetting) when v_norm != 0.
InitialRates initial_rates(const TMConfig& cfg);

enum class Preference { kPlus, kMinus, kTie, kDivergent };
std::string_view to_string(Preference p);
/// '+', '-', 'tie', 'divergent' as used on the CLI and in CSV files.
std::string_view to_symbol(Preference p);

/// Threshold below which a gap or rate difference counts as a tie.
inline constexpr double kTieTolerance = 1e-10;

struct PreferenceRules {
  Preference initial = Preference::kTie;
  Preference asymptotic_small_lr = Preference::kTie;  // rho sqrt(D+) vs (1-rho) sqrt(D-)
  Preference asymptotic_alignment = Preference::kTie;  // R+_inf vs R-_inf
  Preference asymptotic_finite = Preference::kTie;     // eps+(inf) vs eps-(inf)
  /// The small-learning-rate rule is derived for v = 0 and t_pm > 0.
  bool extrapolated = false;
};

PreferenceRules preference_rules(const TMConfig& cfg);

struct SingleClusterAsymptotics {
  double q_opt = 0.0;
  double eps_min = 0.0;
  std::optional<double> eps_inf;  // empty when eta >= eta_crit
  double eta_crit = 0.0;
  bool divergent() const { return !eps_inf.has_value(); }
};

SingleClusterAsymptotics single_cluster_asymptotics(double delta, double eta);

/// max(tau_m, tau_r, tau_q); +inf when Q diverges.
double max_timescale(const TMConfig& cfg);

/// 0, then geometric spacing up to the fastest timescale, then linear to
/// `horizon` (default 10 * max_timescale). Strictly increasing.
std::vector<double> default_grid(const TMConfig& cfg, std::size_t points = 400,
                                 double horizon = 0.0);

}  // namespace tmdyn
