#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tmdyn/embedding.hpp"
#include "tmdyn/error.hpp"

using namespace tmdyn;

namespace {

void expect_realizes(const TMConfig& c, const Embedding& e, double tol) {
  EXPECT_NEAR(overlap(e.teacher_plus, e.teacher_plus), 1.0, tol);
  EXPECT_NEAR(overlap(e.teacher_minus, e.teacher_minus), 1.0, tol);
  EXPECT_NEAR(overlap(e.teacher_plus, e.teacher_minus), c.t_pm, tol);
  EXPECT_NEAR(overlap(e.shift, e.shift), c.v_norm, tol);
  EXPECT_NEAR(overlap(e.teacher_plus, e.shift), c.m_star_plus, tol);
  EXPECT_NEAR(overlap(e.teacher_minus, e.shift), c.m_star_minus, tol);
  EXPECT_NEAR(overlap(e.student, e.shift), c.init.m, tol);
  EXPECT_NEAR(overlap(e.student, e.teacher_plus), c.init.r_plus, tol);
  EXPECT_NEAR(overlap(e.student, e.teacher_minus), c.init.r_minus, tol);
  EXPECT_NEAR(overlap(e.student, e.student), c.init.q, tol);
}

}  // namespace

TEST(Embedding, RealizesRandomGeometries) {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 20; ++i) {
    const TMConfig c = oracle::random_config(gen);
    expect_realizes(c, construct_embedding(c, 64), 1e-12);
    expect_realizes(c, construct_embedding(c, 64, EmbeddingFrame::kRandomRotation, 99), 1e-10);
  }
}

TEST(Embedding, IdenticalTeachersAreBitwiseEqual) {
  const TMConfig c = oracle::spurious_shift();
  const Embedding e = construct_embedding(c, 10);
  EXPECT_EQ(e.teacher_plus, e.teacher_minus);
}

TEST(Embedding, ZeroInitGivesZeroStudent) {
  const Embedding e = construct_embedding(oracle::single_crossing(), 8);
  for (double x : e.student) EXPECT_EQ(x, 0.0);
  for (double x : e.shift) EXPECT_EQ(x, 0.0);
}

TEST(Embedding, DimensionChecks) {
  EXPECT_THROW(construct_embedding(TMConfig{}, 2), Error);
  TMConfig c = oracle::double_crossing();
  c.init.q = 0.5;  // component outside the span of teachers and shift
  try {
    construct_embedding(c, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  EXPECT_NO_THROW(construct_embedding(c, 4));
  EXPECT_THROW(overlap(std::vector<double>(3), std::vector<double>(4)), Error);
}

TEST(Embedding, RandomFrameIsSeeded) {
  const TMConfig c = oracle::double_crossing();
  const auto a = construct_embedding(c, 32, EmbeddingFrame::kRandomRotation, 5);
  const auto b = construct_embedding(c, 32, EmbeddingFrame::kRandomRotation, 5);
  const auto d = construct_embedding(c, 32, EmbeddingFrame::kRandomRotation, 6);
  EXPECT_EQ(a.shift, b.shift);
  EXPECT_NE(a.shift, d.shift);
}
