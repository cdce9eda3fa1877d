#include "landscape/construct.hpp"
#include "landscape/error.hpp"
#include "landscape/stationarity.hpp"
#include "landscape/train.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace landscape;
using testing_helpers::gaussian;
using testing_helpers::gaussian_vector;

namespace {

Matrix sub_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(static_cast<Eigen::Index>(cols[j]));
  return out;
}

bool violates(const Matrix& A, const Matrix& X, const std::vector<std::size_t>& s) {
  return s.size() > linalg::numerical_rank(sub_columns(A, s)) * static_cast<std::size_t>(X.rows());
}

}  // namespace

TEST(DlmCondition, ZeroErrorConstructionHasZeroResidual) {
  const Dataset d = train::gen_gaussian_dataset(5, 40, 1);
  const Construction c = build_global_minimum(d);
  const StationarityReport r = dlm_condition(c.params, d);
  EXPECT_LE(r.residual_norm, 1e-10);
  EXPECT_GT(r.min_neural_input, 0.0);
  EXPECT_EQ(r.boundary_hits, 0u);
}

TEST(DlmCondition, ZeroOutputWeightsGiveResidualOfLabels) {
  const Dataset d = train::gen_gaussian_dataset(3, 11, 2);
  NetParams p{gaussian(4, 3, 3), Vector::Zero(4), 0.2};
  const StationarityReport r = dlm_condition(p, d);
  // Direct evaluation of sum_n y_n (a_n kron x_n).
  Vector direct = Vector::Zero(12);
  for (Eigen::Index n = 0; n < d.size(); ++n) {
    for (Eigen::Index i = 0; i < 4; ++i) {
      const double pre = p.W.row(i).dot(d.X.col(n));
      const double slope = pre >= 0.0 ? 1.0 : 0.2;
      direct.segment(i * 3, 3) += d.y(n) * slope * d.X.col(n);
    }
  }
  EXPECT_NEAR(r.residual_norm, direct.norm(), 1e-12 * (1.0 + direct.norm()));
}

TEST(DlmCondition, ZeroResidualForAnyWeightsWhenErrorIsZero) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    NetParams p{gaussian(3, 4, 10 + t), gaussian_vector(3, 20 + t), 0.1};
    Dataset d;
    d.X = gaussian(4, 8, 30 + t);
    d.y = forward(p, d.X);
    EXPECT_EQ(dlm_condition(p, d).residual_norm, 0.0);
  }
}

TEST(DlmCondition, ConvergedTrainingRunIsNearStationary) {
  const Dataset d = train::gen_gaussian_dataset(10, 20, 4);
  train::TrainConfig cfg;
  cfg.epochs = 1500;
  cfg.lr = 0.003;
  cfg.lr_decay_epochs = 500;
  cfg.stop_on_zero_mce = false;
  cfg.seed = 5;
  const NetParams init = train::he_init(10, 10, 6);
  const double e0 = evaluate(init, d).residual.norm();
  const train::TrainResult r = train::adam_train(init, d, cfg);
  EXPECT_EQ(r.final_mce, 0.0);
  EXPECT_LE(dlm_condition(r.params, d).residual_norm, 1e-4 * e0);
}

TEST(RegionMembership, OwnPatternContainsWeights) {
  const Matrix W = gaussian(3, 2, 40);
  const Matrix X = gaussian(2, 6, 41);
  const auto pattern = activation_pattern(W, X, 0.1);
  ASSERT_EQ(pattern.boundary_hits(), 0u);
  EXPECT_TRUE(region_membership(W, X, pattern, 0.1));
}

TEST(RegionMembership, FlippedEntryExcludes) {
  const Matrix W = gaussian(3, 2, 42);
  const Matrix X = gaussian(2, 6, 43);
  auto pattern = activation_pattern(W, X, 0.1);
  pattern.A(1, 4) = pattern.A(1, 4) == 1.0 ? 0.1 : 1.0;
  EXPECT_FALSE(region_membership(W, X, pattern, 0.1));
}

TEST(RegionMembership, BoundaryPointExcluded) {
  const Matrix X{{1.0, 2.0}, {1.0, -1.0}};
  const Matrix W{{1.0, -1.0}};  // w . x_0 = 0
  auto pattern = activation_pattern(W, X, 0.0);
  EXPECT_FALSE(region_membership(W, X, pattern, 0.0));
  pattern.A(0, 0) = 0.0;
  EXPECT_FALSE(region_membership(W, X, pattern, 0.0));
}

TEST(RegionMembership, InvariantUnderPositiveRowScaling) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Matrix W = gaussian(4, 3, 50 + t);
    const Matrix X = gaussian(3, 10, 60 + t);
    const auto pattern = activation_pattern(W, X, 0.3);
    Matrix scaled = W;
    auto s = rng::make_stream(70 + t, rng::StreamId::Weights);
    for (Eigen::Index i = 0; i < 4; ++i) scaled.row(i) *= std::exp(s.uniform(-4.0, 4.0));
    EXPECT_EQ(region_membership(W, X, pattern, 0.3), region_membership(scaled, X, pattern, 0.3));
    const auto other = activation_pattern(gaussian(4, 3, 80 + t), X, 0.3);
    EXPECT_EQ(region_membership(W, X, other, 0.3), region_membership(scaled, X, other, 0.3));
  }
}

TEST(GradientWrtScaledWeights, ZeroOutputWeightThrows) {
  NetParams p{Matrix::Ones(2, 2), Vector{{1.0, 0.0}}, 0.0};
  Gradient g{Matrix::Ones(2, 2), Vector::Ones(2)};
  EXPECT_THROW(gradient_wrt_scaled_weights(p, g), Error);
}

TEST(RankOracle, AllOnesPatternWithTooManySamples) {
  const Matrix X = gaussian(3, 6, 90);
  const Matrix A = Matrix::Ones(1, 6);
  const auto r = rank_condition_oracle(A, X);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->size(), 4u);
  EXPECT_EQ(*r.witness, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(linalg::numerical_rank(khatri_rao(A, X)), 3u);
}

TEST(RankOracle, AllOnesPatternWithFewSamples) {
  const Matrix X = gaussian(4, 3, 91);
  const Matrix A = Matrix::Ones(2, 3);
  const auto r = rank_condition_oracle(A, X);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(linalg::numerical_rank(khatri_rao(A, X)), 3u);
}

TEST(RankOracle, SingleSample) {
  const auto r = rank_condition_oracle(Matrix{{0.5}, {1.0}}, Matrix{{2.0}, {-1.0}});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(linalg::numerical_rank(khatri_rao(Matrix{{0.5}, {1.0}}, Matrix{{2.0}, {-1.0}})), 1u);
}

TEST(RankOracle, TooManySamplesThrows) {
  try {
    rank_condition_oracle(Matrix::Ones(1, 23), gaussian(2, 23, 92));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InstanceTooLarge);
  }
}

TEST(RankOracle, WitnessIsMinimalAndLexicographicallyFirst) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const Eigen::Index n = 7;
    Matrix A(2, n);
    auto s = rng::make_stream(100 + t, rng::StreamId::Weights);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < 2; ++i) A(i, j) = (s.next_u64() % 4 == 0) ? 0.5 : 1.0;
    const Matrix X = gaussian(2, n, 200 + t);
    const auto r = rank_condition_oracle(A, X);

    // Independent enumeration over bitmasks ordered by (size, lexicographic index list).
    std::vector<std::vector<std::size_t>> subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
        if (mask & (1u << j)) sub.push_back(j);
      subsets.push_back(sub);
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::optional<std::vector<std::size_t>> first;
    for (const auto& sub : subsets) {
      if (violates(A, X, sub)) {
        first = sub;
        break;
      }
    }
    EXPECT_EQ(r.holds, !first.has_value());
    EXPECT_EQ(r.witness, first);
  }
}

TEST(RankOracle, EquivalentToFullKhatriRaoRankOnSmallInstances) {
  const double rho = 0.5;
  std::size_t mismatches = 0;
  for (Eigen::Index n = 2; n <= 4; ++n) {
    const unsigned patterns = 1u << (2 * n);
    for (unsigned code = 0; code < patterns; ++code) {
      Matrix A(2, n);
      for (Eigen::Index k = 0; k < 2 * n; ++k) A(k % 2, k / 2) = (code >> k) & 1u ? 1.0 : rho;
      for (std::uint64_t draw = 0; draw < 20; ++draw) {
        const Matrix X = gaussian(2, n, 1000 + static_cast<std::uint64_t>(n), code * 20 + draw);
        const bool holds = rank_condition_oracle(A, X).holds;
        const bool full = linalg::numerical_rank(khatri_rao(A, X), 1e-8) == static_cast<std::size_t>(n);
        if (holds != full) ++mismatches;
      }
    }
  }
  EXPECT_EQ(mismatches, 0u);
}
