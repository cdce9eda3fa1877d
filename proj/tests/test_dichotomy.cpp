#include "landscape/bounds.hpp"
#include "landscape/dichotomy.hpp"
#include "landscape/error.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace landscape;
using namespace landscape::dichotomy;
using testing_helpers::gaussian;

TEST(IsRealizable, OneDimensionalPair) {
  const Matrix X{{1.0, -1.0}};
  EXPECT_FALSE(is_realizable(X, {1, 1}));
  EXPECT_FALSE(is_realizable(X, {-1, -1}));
  EXPECT_TRUE(is_realizable(X, {1, -1}));
  EXPECT_TRUE(is_realizable(X, {-1, 1}));
}

TEST(IsRealizable, AgreesWithDenseDirectionSearchInPlane) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Matrix X = gaussian(2, 5, 10, t);
    for (unsigned code = 0; code < 32; ++code) {
      SignVector s(5);
      for (int n = 0; n < 5; ++n) s[static_cast<std::size_t>(n)] = (code >> n) & 1u ? 1 : -1;
      bool found = false;
      for (int k = 0; k < 20000 && !found; ++k) {
        const double a = 2 * std::numbers::pi * k / 20000.0;
        bool ok = true;
        for (int n = 0; n < 5 && ok; ++n) {
          const double v = std::cos(a) * X(0, n) + std::sin(a) * X(1, n);
          ok = (v > 0) == (s[static_cast<std::size_t>(n)] > 0);
        }
        found = ok;
      }
      EXPECT_EQ(is_realizable(X, s), found) << "draw " << t << " code " << code;
    }
  }
}

TEST(CountByFeasibility, GenericDrawsMeetSchlafliCount) {
  for (std::size_t d0 : {2u, 3u}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const Matrix X = gaussian(static_cast<Eigen::Index>(d0), static_cast<Eigen::Index>(n), 20 + d0, n);
      EXPECT_EQ(count_by_feasibility(X), bounds::dichotomy_count_bound(n, d0).schlafli)
          << "d0 " << d0 << " n " << n;
    }
  }
}

TEST(CountByAngularSweep, MatchesFeasibilityInPlane) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + t % 8);
    const Matrix X = gaussian(2, n, 30, t);
    EXPECT_EQ(count_by_angular_sweep(X), count_by_feasibility(X));
    EXPECT_EQ(count_by_angular_sweep(X), 2 * static_cast<std::size_t>(n));
  }
}

TEST(CountByAngularSweep, AntipodalPointsCollapseDichotomies) {
  // x and -x always take opposite signs, so they act as one point.
  const Matrix X{{1.0, -1.0, 0.3}, {0.5, -0.5, 1.0}};
  EXPECT_EQ(count_by_angular_sweep(X), 4u);
  EXPECT_EQ(count_by_feasibility(X), 4u);
}

TEST(CountByAngularSweep, RejectsOtherDimensions) { EXPECT_THROW(count_by_angular_sweep(gaussian(3, 4, 40)), Error); }
