#include "tmdyn/config.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tmdyn/error.hpp"
#include "tmdyn/normal.hpp"

namespace tmdyn {

OrderState operator+(const OrderState& a, const OrderState& b) {
  return {a.m + b.m, a.r_plus + b.r_plus, a.r_minus + b.r_minus, a.q + b.q};
}

OrderState operator-(const OrderState& a, const OrderState& b) {
  return {a.m - b.m, a.r_plus - b.r_plus, a.r_minus - b.r_minus, a.q - b.q};
}

OrderState operator*(double s, const OrderState& a) {
  return {s * a.m, s * a.r_plus, s * a.r_minus, s * a.q};
}

std::array<double, 9> geometry_gram(const TMConfig& c) {
  return {1.0,           c.t_pm,         c.m_star_plus,   //
          c.t_pm,        1.0,            c.m_star_minus,  //
          c.m_star_plus, c.m_star_minus, c.v_norm};
}

std::array<double, 16> extended_gram(const TMConfig& c) {
  const OrderState& s = c.init;
  return {1.0,           c.t_pm,         c.m_star_plus,  s.r_plus,   //
          c.t_pm,        1.0,            c.m_star_minus, s.r_minus,  //
          c.m_star_plus, c.m_star_minus, c.v_norm,       s.m,        //
          s.r_plus,      s.r_minus,      s.m,            s.q};
}

double min_eigenvalue(const std::vector<double>& sym, std::size_t n) {
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = sym[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

void require(bool ok, ErrorCode code, const char* field, const std::string& what) {
  if (!ok) throw Error(code, field, what);
}

std::string describe(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

TMConfig validate_config(const TMConfig& cfg) {
  const auto range = [](bool ok, const char* field, const std::string& what) {
    require(ok, ErrorCode::kOutOfRange, field, what);
  };
  for (const auto& name : config_field_names()) {
    const double value = get_config_field(cfg, name);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kOutOfRange, name, "value must be finite");
    }
  }
  range(cfg.rho > 0.0 && cfg.rho < 1.0, "rho", "must lie in (0,1), got " + describe(cfg.rho));
  range(cfg.delta_plus > 0.0, "delta_plus", "must be positive, got " + describe(cfg.delta_plus));
  range(cfg.delta_minus > 0.0, "delta_minus",
        "must be positive, got " + describe(cfg.delta_minus));
  range(cfg.eta > 0.0, "eta", "must be positive, got " + describe(cfg.eta));
  range(cfg.v_norm >= 0.0, "v_norm", "must be nonnegative, got " + describe(cfg.v_norm));
  range(std::abs(cfg.t_pm) <= 1.0, "t_pm", "must lie in [-1,1], got " + describe(cfg.t_pm));

  const double slack = kPsdTolerance;
  require(cfg.m_star_plus * cfg.m_star_plus <= cfg.v_norm + slack, ErrorCode::kNonPSDGeometry,
          "m_star_plus", "|m_star_plus| exceeds sqrt(v_norm)");
  require(cfg.m_star_minus * cfg.m_star_minus <= cfg.v_norm + slack,
          ErrorCode::kNonPSDGeometry, "m_star_minus", "|m_star_minus| exceeds sqrt(v_norm)");

  const auto g = geometry_gram(cfg);
  const double lambda = min_eigenvalue({g.begin(), g.end()}, 3);
  require(lambda >= -kPsdTolerance, ErrorCode::kNonPSDGeometry, "geometry",
          "overlap Gram matrix is indefinite (min eigenvalue " + describe(lambda) + ")");

  range(cfg.init.q >= 0.0, "init.q", "must be nonnegative, got " + describe(cfg.init.q));
  const auto ge = extended_gram(cfg);
  const double lambda_init = min_eigenvalue({ge.begin(), ge.end()}, 4);
  require(lambda_init >= -kPsdTolerance, ErrorCode::kNonPSDGeometry, "init",
          "initial order parameters are not realizable (min eigenvalue " +
              describe(lambda_init) + ")");
  return cfg;
}

DerivedConstants derived_constants(const TMConfig& cfg) {
  DerivedConstants k;
  const double sp = std::sqrt(cfg.delta_plus);
  const double sm = std::sqrt(cfg.delta_minus);
  k.alpha_plus = 1.0 - 2.0 * normal_cdf(-cfg.m_star_plus / sp);
  k.alpha_minus = 1.0 - 2.0 * normal_cdf(cfg.m_star_minus / sm);
  k.beta_plus = std::sqrt(2.0 * cfg.delta_plus / std::numbers::pi) *
                std::exp(-cfg.m_star_plus * cfg.m_star_plus / (2.0 * cfg.delta_plus));
  k.beta_minus = std::sqrt(2.0 * cfg.delta_minus / std::numbers::pi) *
                 std::exp(-cfg.m_star_minus * cfg.m_star_minus / (2.0 * cfg.delta_minus));
  k.delta_mix = cfg.rho * cfg.delta_plus + (1.0 - cfg.rho) * cfg.delta_minus;
  k.delta_2mix = cfg.rho * cfg.delta_plus * cfg.delta_plus +
                 (1.0 - cfg.rho) * cfg.delta_minus * cfg.delta_minus;
  k.tau_m = 1.0 / (cfg.eta * (cfg.v_norm + k.delta_mix));
  k.tau_r = 1.0 / (cfg.eta * k.delta_mix);
  k.eta_crit = 2.0 * k.delta_mix / k.delta_2mix;
  k.q_divergent = cfg.eta >= k.eta_crit;
  k.tau_q = k.q_divergent
                ? std::numeric_limits<double>::infinity()
                : 1.0 / (cfg.eta * (2.0 * k.delta_mix - cfg.eta * k.delta_2mix));
  return k;
}

double m_star_plus_for_alpha(double alpha_plus, double delta_plus) {
  // alpha+ = 1 - 2 Phi(-M*/sqrt(D))  =>  M* = sqrt(D) Phi^-1((1 + alpha)/2)
  return std::sqrt(delta_plus) * normal_quantile(0.5 * (1.0 + alpha_plus));
}

double m_star_minus_for_alpha(double alpha_minus, double delta_minus) {
  // alpha- = 1 - 2 Phi(M*/sqrt(D))  =>  M* = sqrt(D) Phi^-1((1 - alpha)/2)
  return std::sqrt(delta_minus) * normal_quantile(0.5 * (1.0 - alpha_minus));
}

const std::vector<std::string>& config_field_names() {
  static const std::vector<std::string> names = {
      "rho",          "delta_plus", "delta_minus",  "v_norm",       "t_pm",
      "m_star_plus",  "m_star_minus", "eta",        "init.m",       "init.r_plus",
      "init.r_minus", "init.q"};
  return names;
}

namespace {

double* field_ptr(TMConfig& c, std::string_view name) {
  if (name == "rho") return &c.rho;
  if (name == "delta_plus") return &c.delta_plus;
  if (name == "delta_minus") return &c.delta_minus;
  if (name == "v_norm") return &c.v_norm;
  if (name == "t_pm") return &c.t_pm;
  if (name == "m_star_plus") return &c.m_star_plus;
  if (name == "m_star_minus") return &c.m_star_minus;
  if (name == "eta") return &c.eta;
  if (name == "init.m") return &c.init.m;
  if (name == "init.r_plus") return &c.init.r_plus;
  if (name == "init.r_minus") return &c.init.r_minus;
  if (name == "init.q") return &c.init.q;
  throw Error(ErrorCode::kConfigError, std::string(name), "unknown config field");
}

}  // namespace

double get_config_field(const TMConfig& cfg, std::string_view name) {
  return *field_ptr(const_cast<TMConfig&>(cfg), name);
}

void set_config_field(TMConfig& cfg, std::string_view name, double value) {
  *field_ptr(cfg, name) = value;
}

}  // namespace tmdyn
