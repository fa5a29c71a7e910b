#include "tmdyn/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "tmdyn/error.hpp"

namespace tmdyn {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kDomainError, "p",
                "normal quantile requires p in (0,1), got " + std::to_string(p));
  }
  double x = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  // One Newton step against our own cdf keeps cdf(quantile(p)) == p tight
  // even if erfc and erfc_inv round differently.
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (pdf > 0.0) x -= (normal_cdf(x) - p) / pdf;
  return x;
}

double std_normal(NormalMode mode, double x) {
  return mode == NormalMode::kCdf ? normal_cdf(x) : normal_quantile(x);
}

}  // namespace tmdyn
