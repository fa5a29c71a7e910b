#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace tmdyn {

/// Order parameters of the student: overlap with the shift (m), with each
/// teacher (r_plus, r_minus) and its self-overlap (q). All are inner products
/// scaled by 1/d. The same struct carries time derivatives.
struct OrderState {
  double m = 0.0;
  double r_plus = 0.0;
  double r_minus = 0.0;
  double q = 0.0;

  friend bool operator==(const OrderState&, const OrderState&) = default;
};

OrderState operator+(const OrderState& a, const OrderState& b);
OrderState operator-(const OrderState& a, const OrderState& b);
OrderState operator*(double s, const OrderState& a);

/// Two-cluster teacher-mixture problem. Cluster + has weight rho and mean
/// +v/sqrt(d); cluster - has weight 1-rho and mean -v/sqrt(d). Teachers have
/// unit self-overlap, so t_pm is their cosine similarity.
struct TMConfig {
  double rho = 0.5;
  double delta_plus = 1.0;
  double delta_minus = 1.0;
  double v_norm = 0.0;
  double t_pm = 1.0;
  double m_star_plus = 0.0;
  double m_star_minus = 0.0;
  double eta = 0.1;  // twice the SGD learning rate
  OrderState init{};
};

/// Smallest eigenvalue accepted for the overlap Gram matrices.
inline constexpr double kPsdTolerance = 1e-10;

/// 3x3 Gram matrix of (teacher+, teacher-, shift), row-major.
std::array<double, 9> geometry_gram(const TMConfig& cfg);

/// 4x4 Gram matrix extended with the student row, row-major.
std::array<double, 16> extended_gram(const TMConfig& cfg);

/// Smallest eigenvalue of a symmetric matrix given row-major.
double min_eigenvalue(const std::vector<double>& sym, std::size_t n);

/// Returns cfg unchanged when every invariant holds; otherwise throws
/// Error(kOutOfRange | kNonPSDGeometry) naming the field.
TMConfig validate_config(const TMConfig& cfg);

struct DerivedConstants {
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  double delta_mix = 0.0;
  double delta_2mix = 0.0;
  double tau_m = 0.0;
  double tau_r = 0.0;
  double tau_q = 0.0;  // +inf when eta >= eta_crit
  double eta_crit = 0.0;
  bool q_divergent = false;
};

DerivedConstants derived_constants(const TMConfig& cfg);

/// Shift overlap that produces the requested label imbalance in a cluster.
double m_star_plus_for_alpha(double alpha_plus, double delta_plus);
double m_star_minus_for_alpha(double alpha_minus, double delta_minus);

/// Names of the scalar config fields, in the order of the JSON schema.
const std::vector<std::string>& config_field_names();

/// Read/write a scalar field by name ("rho", ..., "init.q"). Throws
/// Error(kConfigError) for unknown names.
double get_config_field(const TMConfig& cfg, std::string_view name);
void set_config_field(TMConfig& cfg, std::string_view name, double value);

}  // namespace tmdyn
