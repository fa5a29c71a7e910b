#pragma once

namespace tmdyn {

// Closed-form Gaussian averages for x ~ N(mu, delta * I). Vectors enter only
// through their inner products.

struct LinearSignMoment {
  double a_dot_mu = 0.0;
  double b_dot_mu = 0.0;
  double c = 0.0;
  double a_dot_b = 0.0;
  double a_dot_a = 0.0;  // not needed by the closed form; kept for MC oracles
  double b_dot_b = 1.0;
  double delta = 1.0;
};

/// < (a.x) sign(b.x + c) >. Throws Error(kDomainError) unless b_dot_b > 0 and
/// delta > 0.
double expect_linear_times_sign(const LinearSignMoment& args);

/// < (a.x)(b.x) > = (a.mu)(b.mu) + delta (a.b).
double expect_bilinear(double a_dot_mu, double b_dot_mu, double a_dot_b, double delta);

}  // namespace tmdyn
