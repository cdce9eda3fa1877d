#include "landscape/stationarity.hpp"

#include "landscape/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace landscape {

StationarityReport dlm_condition(const NetParams& params, const Dataset& data, double tau) {
  const ActivationPattern pattern = activation_pattern(params.W, data.X, params.rho, tau);
  const LossEval loss = evaluate(params, data);
  const Gradient g = gradient(params, data);

  StationarityReport report;
  report.residual_norm = (khatri_rao(pattern.A, data.X) * loss.residual).norm();
  report.gradient_norm = std::sqrt(g.dW.squaredNorm() + g.dz.squaredNorm());
  report.min_neural_input = min_neural_input(params.W, data.X);
  report.boundary_hits = pattern.boundary_hits();
  return report;
}

bool region_membership(const Matrix& W, const Matrix& X, const ActivationPattern& pattern,
                       double rho, double tau) {
  const ActivationPattern here = activation_pattern(W, X, rho, tau);
  if (here.A.rows() != pattern.A.rows() || here.A.cols() != pattern.A.cols()) return false;
  if (here.nondiff_mask.any()) return false;
  return (here.A.array() == pattern.A.array()).all();
}

Vector gradient_wrt_scaled_weights(const NetParams& params, const Gradient& g) {
  // MSE depends on (w_i, z_i) through u_i = z_i w_i on a fixed region
  // (f(w.x) z = a (z w).x), so dMSE/dw_i = z_i dMSE/du_i.
  const Eigen::Index d1 = params.W.rows();
  const Eigen::Index d0 = params.W.cols();
  Vector out(d1 * d0);
  for (Eigen::Index i = 0; i < d1; ++i) {
    if (params.z(i) == 0.0) {
      throw Error(ErrorKind::DomainError,
                  "gradient_wrt_scaled_weights: z_" + std::to_string(i) + " is zero");
    }
    out.segment(i * d0, d0) = g.dW.row(i).transpose() / params.z(i);
  }
  return out;
}

namespace {

// Visits subsets of {0..n-1} of size k in lexicographic order until
// visit returns true. Returns whether it stopped early.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

RankConditionResult rank_condition_oracle(const Matrix& A, const Matrix& X, double tol) {
  if (A.cols() != X.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "rank_condition_oracle: column counts differ");
  }
  const auto n = static_cast<std::size_t>(A.cols());
  if (n > kMaxOracleSamples) {
    throw Error(ErrorKind::InstanceTooLarge,
                "rank_condition_oracle: " + std::to_string(n) + " samples exceeds the limit of " +
                    std::to_string(kMaxOracleSamples));
  }
  const auto d0 = static_cast<std::size_t>(X.rows());

  RankConditionResult result;
  Matrix sub(A.rows(), 0);
  for (std::size_t k = 1; k <= n; ++k) {
    const bool found = for_each_combination(n, k, [&](const std::vector<std::size_t>& s) {
      sub.resize(A.rows(), static_cast<Eigen::Index>(k));
      for (std::size_t j = 0; j < k; ++j) sub.col(static_cast<Eigen::Index>(j)) = A.col(static_cast<Eigen::Index>(s[j]));
      // A nonzero column gives rank >= 1, which settles every |S| <= d0.
      if (k <= d0 && sub.cwiseAbs().maxCoeff() > 0.0) return false;
      const std::size_t r = linalg::numerical_rank(sub, tol);
      if (k > r * d0) {
        result.holds = false;
        result.witness = s;
        return true;
      }
      return false;
    });
    if (found) break;
  }
  return result;
}

}  // namespace landscape
