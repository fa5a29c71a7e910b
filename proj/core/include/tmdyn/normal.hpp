#pragma once

namespace tmdyn {

/// Standard normal cumulative distribution function Phi(x).
double normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1). Throws Error(kDomainError) outside.
double normal_quantile(double p);

enum class NormalMode { kCdf, kQuantile };

/// Single entry point dispatching on `mode`.
double std_normal(NormalMode mode, double x);

}  // namespace tmdyn
