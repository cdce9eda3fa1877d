#pragma once

#include "landscape/network.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace landscape {

/// First-order diagnostics of a parameter point.
struct StationarityReport {
  double residual_norm = 0.0;     // ||(A o X) e||
  double gradient_norm = 0.0;     // ||(dW, dz)||
  double min_neural_input = 0.0;  // min_{i,n} |w_i^T x(n)|
  std::size_t boundary_hits = 0;  // entries with |w_i^T x(n)| <= tau
};

StationarityReport dlm_condition(const NetParams& params, const Dataset& data,
                                 double tau = kDefaultBoundaryTol);

/// True iff W lies in the open differentiable region of `pattern`:
/// a(WX) equals pattern.A entrywise and no pre-activation is within tau of 0.
bool region_membership(const Matrix& W, const Matrix& X, const ActivationPattern& pattern,
                       double rho, double tau = kDefaultBoundaryTol);

/// Gradient of the MSE with respect to w_tilde = vec((diag(z) W)^T), i.e.
/// the stacked rows z_i w_i, recovered from (dW, dz) by the chain rule.
/// Requires every z_i != 0.
Vector gradient_wrt_scaled_weights(const NetParams& params, const Gradient& g);

inline constexpr std::size_t kMaxOracleSamples = 22;

struct RankConditionResult {
  bool holds = true;
  /// Smallest violating subset, lexicographically first among that size.
  std::optional<std::vector<std::size_t>> witness;
};

/// Exhaustive check that |S| <= rank(A_S) * d0 for every nonempty S of the
/// sample indices. Throws InstanceTooLarge for more than 22 samples.
RankConditionResult rank_condition_oracle(const Matrix& A, const Matrix& X,
                                          double tol = 1e-10);

}  // namespace landscape
