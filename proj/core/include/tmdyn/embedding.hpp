#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tmdyn/config.hpp"

namespace tmdyn {

enum class EmbeddingFrame {
  kLeadingCoordinates,  // vectors live in the first few coordinates
  kRandomRotation,      // seeded random orthonormal frame
};

/// Explicit d-dimensional vectors realizing a config's overlap geometry:
/// |teacher|^2 = d, teacher+ . teacher- / d = t_pm, teacher . shift / d = m_star,
/// |shift|^2 / d = v_norm, and a student whose overlaps equal cfg.init.
struct Embedding {
  std::size_t dim = 0;
  std::vector<double> teacher_plus;
  std::vector<double> teacher_minus;
  std::vector<double> shift;
  std::vector<double> student;
};

/// Factorizes the (extended) Gram matrix with a semidefinite Cholesky and
/// places the rows on orthonormal directions. Requires d >= 3, and d >= 4 when
/// the init has a component outside the span of teachers and shift. Throws
/// Error(kNonPSDGeometry) via validate_config and Error(kDimensionMismatch)
/// for too small d.
Embedding construct_embedding(const TMConfig& cfg, std::size_t d,
                              EmbeddingFrame frame = EmbeddingFrame::kLeadingCoordinates,
                              std::uint64_t seed = 0);

/// Overlap a.b / d.
double overlap(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tmdyn
