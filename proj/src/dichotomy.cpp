#include "landscape/dichotomy.hpp"

#include "landscape/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace landscape::dichotomy {

namespace {

// Visits each k-subset of {0..n-1}; stops when visit returns true.
template <typename Visit>
bool any_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
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

bool is_realizable(const Matrix& X, const SignVector& signs) {
  if (static_cast<Eigen::Index>(signs.size()) != X.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "is_realizable: one sign per sample required");
  }
  const auto d0 = static_cast<std::size_t>(X.rows());
  const auto n = static_cast<std::size_t>(X.cols());
  const Eigen::Index rows = X.rows() + 1;
  Vector rhs = Vector::Zero(rows);
  rhs(X.rows()) = 1.0;

  // Solve [P; 1^T] lambda = [0; 1] for each affinely independent subset P of
  // at most d0+1 flipped points; a nonnegative exact solution puts the
  // origin inside their hull.
  bool origin_inside = false;
  for (std::size_t size = 1; size <= std::min(d0 + 1, n) && !origin_inside; ++size) {
    const auto k = static_cast<Eigen::Index>(size);
    origin_inside = any_combination(n, size, [&](const std::vector<std::size_t>& s) {
      Matrix system(rows, k);
      for (Eigen::Index j = 0; j < k; ++j) {
        const std::size_t col = s[static_cast<std::size_t>(j)];
        system.block(0, j, X.rows(), 1) = static_cast<double>(signs[col]) * X.col(static_cast<Eigen::Index>(col));
        system(X.rows(), j) = 1.0;
      }
      Eigen::ColPivHouseholderQR<Matrix> qr(system);
      qr.setThreshold(1e-12);
      if (qr.rank() < k) return false;
      const Vector lambda = qr.solve(rhs);
      if ((system * lambda - rhs).norm() > 1e-10 * (1.0 + system.norm() * lambda.norm())) return false;
      return (lambda.array() >= -1e-12).all();
    });
  }
  return !origin_inside;
}

std::size_t count_by_feasibility(const Matrix& X) {
  const auto n = static_cast<std::size_t>(X.cols());
  if (n > 20) throw Error(ErrorKind::InstanceTooLarge, "count_by_feasibility: N must be <= 20");
  std::size_t count = 0;
  SignVector signs(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) signs[i] = (mask >> i) & 1U ? 1 : -1;
    if (is_realizable(X, signs)) ++count;
  }
  return count;
}

std::size_t count_by_angular_sweep(const Matrix& X) {
  if (X.rows() != 2) throw Error(ErrorKind::ShapeMismatch, "angular sweep needs d0 = 2");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> cuts;
  for (Eigen::Index n = 0; n < X.cols(); ++n) {
    const double theta = std::atan2(X(1, n), X(0, n));
    for (double c : {theta + std::numbers::pi / 2.0, theta - std::numbers::pi / 2.0}) {
      cuts.push_back(std::fmod(std::fmod(c, two_pi) + two_pi, two_pi));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::set<SignVector> seen;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double next = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + two_pi;
    const double phi = 0.5 * (cuts[i] + next);
    const double wx = std::cos(phi);
    const double wy = std::sin(phi);
    SignVector s(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index n = 0; n < X.cols(); ++n) {
      s[static_cast<std::size_t>(n)] = wx * X(0, n) + wy * X(1, n) > 0.0 ? 1 : -1;
    }
    seen.insert(std::move(s));
  }
  return seen.size();
}

}  // namespace landscape::dichotomy
