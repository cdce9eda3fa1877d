#pragma once

#include "landscape/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace landscape::dichotomy {

using SignVector = std::vector<std::int8_t>;

/// Gordan test: true iff some w gives sign(w^T x(n)) = signs[n] for all n.
/// Infeasible exactly when the origin lies in the convex hull of the
/// sign-flipped samples, which by Caratheodory is decided by affinely
/// independent subsets of at most d0 + 1 of them.
bool is_realizable(const Matrix& X, const SignVector& signs);

/// Counts realizable sign vectors by testing all 2^N of them. N <= 20.
std::size_t count_by_feasibility(const Matrix& X);

/// Exact count for d0 = 2 by sweeping the normal direction around the
/// circle and collecting the distinct sign vectors of every arc.
std::size_t count_by_angular_sweep(const Matrix& X);

}  // namespace landscape::dichotomy
