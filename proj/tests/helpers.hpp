#pragma once

#include "landscape/rng.hpp"
#include "landscape/linalg.hpp"

#include <cstdint>

namespace testing_helpers {

using landscape::Matrix;
using landscape::Vector;

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, std::uint64_t index = 0) {
  auto s = landscape::rng::make_stream(seed, landscape::rng::StreamId::Data, index);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = s.normal();
  return m;
}

inline Vector gaussian_vector(Eigen::Index n, std::uint64_t seed, std::uint64_t index = 0) {
  return gaussian(n, 1, seed, index).col(0);
}

}  // namespace testing_helpers
