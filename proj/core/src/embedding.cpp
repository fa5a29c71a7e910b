#include "tmdyn/embedding.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "tmdyn/error.hpp"
#include "tmdyn/rng.hpp"

namespace tmdyn {

namespace {

constexpr std::size_t kRank = 4;
using Factor = std::array<std::array<double, kRank>, kRank>;

// Lower-triangular L with L L^T = G for a positive semidefinite G. Pivots
// that vanish (relative to the diagonal scale) produce a zero column, which
// keeps exactly dependent rows bitwise identical.
Factor semidefinite_cholesky(const std::array<double, 16>& g) {
  Factor l{};
  for (std::size_t j = 0; j < kRank; ++j) {
    double pivot = g[j * kRank + j];
    for (std::size_t k = 0; k < j; ++k) pivot -= l[j][k] * l[j][k];
    const double scale = std::max(1.0, std::abs(g[j * kRank + j]));
    if (pivot <= 1e-12 * scale) {
      l[j][j] = 0.0;
      continue;
    }
    l[j][j] = std::sqrt(pivot);
    for (std::size_t i = j + 1; i < kRank; ++i) {
      double sum = g[i * kRank + j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
      l[i][j] = sum / l[j][j];
    }
  }
  return l;
}

// kRank orthonormal directions in R^d, each of length d.
std::vector<std::vector<double>> frame_directions(std::size_t d, EmbeddingFrame frame,
                                                  std::uint64_t seed) {
  std::vector<std::vector<double>> dirs(kRank, std::vector<double>(d, 0.0));
  if (frame == EmbeddingFrame::kLeadingCoordinates) {
    for (std::size_t k = 0; k < kRank && k < d; ++k) dirs[k][k] = 1.0;
    return dirs;
  }
  Xoshiro256 rng(seed);
  NormalSampler normal;
  for (std::size_t k = 0; k < kRank && k < d; ++k) {
    auto& u = dirs[k];
    for (auto& x : u) x = normal(rng);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        const double proj = std::inner_product(u.begin(), u.end(), dirs[j].begin(), 0.0);
        for (std::size_t i = 0; i < d; ++i) u[i] -= proj * dirs[j][i];
      }
    }
    const double norm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    for (auto& x : u) x /= norm;
  }
  return dirs;
}

}  // namespace

Embedding construct_embedding(const TMConfig& cfg, std::size_t d, EmbeddingFrame frame,
                              std::uint64_t seed) {
  validate_config(cfg);
  if (d < 3) throw Error(ErrorCode::kDimensionMismatch, "d", "embedding needs d >= 3");

  const Factor l = semidefinite_cholesky(extended_gram(cfg));
  if (d < kRank && l[3][3] != 0.0) {
    throw Error(ErrorCode::kDimensionMismatch, "d",
                "initial student is outside the teacher/shift span; needs d >= 4");
  }
  const auto dirs = frame_directions(d, frame, seed);
  const double root_d = std::sqrt(static_cast<double>(d));

  Embedding e;
  e.dim = d;
  std::array<std::vector<double>*, kRank> rows = {&e.teacher_plus, &e.teacher_minus, &e.shift,
                                                  &e.student};
  for (std::size_t r = 0; r < kRank; ++r) {
    auto& out = *rows[r];
    out.assign(d, 0.0);
    for (std::size_t k = 0; k <= r; ++k) {
      const double coef = l[r][k] * root_d;
      if (coef == 0.0 || k >= d) continue;
      for (std::size_t i = 0; i < d; ++i) out[i] += coef * dirs[k][i];
    }
  }
  return e;
}

double overlap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "overlap of unequal sizes");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / static_cast<double>(a.size());
}

}  // namespace tmdyn
