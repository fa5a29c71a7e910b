#include "tmdyn/gaussian_integrals.hpp"

#include <cmath>
#include <numbers>

#include "tmdyn/error.hpp"
#include "tmdyn/normal.hpp"

namespace tmdyn {

double expect_linear_times_sign(const LinearSignMoment& p) {
  if (!(p.b_dot_b > 0.0)) throw Error(ErrorCode::kDomainError, "b_dot_b", "must be positive");
  if (!(p.delta > 0.0)) throw Error(ErrorCode::kDomainError, "delta", "must be positive");
  const double shift = p.b_dot_mu + p.c;
  const double var = p.delta * p.b_dot_b;
  const double sign_mean = 1.0 - 2.0 * normal_cdf(-shift / std::sqrt(var));
  return p.a_dot_mu * sign_mean + p.a_dot_b * std::sqrt(2.0 * p.delta / (std::numbers::pi * p.b_dot_b)) *
                                      std::exp(-shift * shift / (2.0 * var));
}

double expect_bilinear(double a_dot_mu, double b_dot_mu, double a_dot_b, double delta) {
  return a_dot_mu * b_dot_mu + delta * a_dot_b;
}

}  // namespace tmdyn
