#include "landscape/volume.hpp"

#include "landscape/construct.hpp"
#include "landscape/error.hpp"
#include "landscape/parallel.hpp"
#include "landscape/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace landscape::volume {

namespace {

constexpr double kZ95 = 1.959963984540054;

bool sign_match(const Matrix& W, const Matrix& Wstar, const Matrix& X) {
  const Eigen::Index rows = Wstar.rows();
  const Matrix ours = W.topRows(rows) * X;
  const Matrix target = Wstar * X;
  for (Eigen::Index j = 0; j < ours.cols(); ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double a = ours(i, j);
      const double b = target(i, j);
      if (a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

double MCEstimate::std_error() const { return std_error_at(estimate); }

double MCEstimate::std_error_at(double p) const {
  if (trials == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

MCEstimate make_estimate(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed) {
  MCEstimate e;
  e.hits = hits;
  e.trials = trials;
  e.seed = seed;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  e.estimate = p;
  e.ci_low = std::min(p, std::max(0.0, center - half));
  e.ci_high = std::max(p, std::min(1.0, center + half));
  return e;
}

bool RegionSpec::contains(const Matrix& W) const {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ActivationRegion>) {
          return region_membership(W, r.X, r.pattern, r.rho);
        } else if constexpr (std::is_same_v<T, SignMatchRegion>) {
          return sign_match(W, r.Wstar, r.X);
        } else {
          return r.predicate(W);
        }
      },
      kind);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, rng::Stream& stream) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = stream.normal();
  }
  return m;
}

MCEstimate run_trials(std::uint64_t trials, std::uint64_t seed, std::size_t threads,
                      const std::function<bool(rng::Stream&)>& trial) {
  if (trials == 0) throw Error(ErrorKind::DomainError, "Monte Carlo needs at least one trial");
  if (threads == 0) threads = default_thread_count();
  std::vector<std::uint64_t> hits(threads, 0);
  parallel_for_ranges(static_cast<std::size_t>(trials), threads,
                      [&](std::size_t begin, std::size_t end, std::size_t worker) {
                        std::uint64_t local = 0;
                        for (std::size_t t = begin; t < end; ++t) {
                          auto stream = rng::make_stream(seed, rng::StreamId::Trial, t);
                          if (trial(stream)) ++local;
                        }
                        hits[worker] = local;
                      });
  return make_estimate(std::accumulate(hits.begin(), hits.end(), std::uint64_t{0}), trials, seed);
}

MCEstimate estimate_angular_volume(const RegionSpec& region, std::uint64_t trials,
                                   std::uint64_t seed, std::size_t threads) {
  return run_trials(trials, seed, threads, [&](rng::Stream& s) {
    return region.contains(gaussian_matrix(region.d1, region.d0, s));
  });
}

MCEstimate estimate_global_region_volume(const Matrix& X, const Matrix& Wstar, Eigen::Index d1,
                                         std::uint64_t trials, std::uint64_t seed,
                                         std::size_t threads) {
  if (d1 < Wstar.rows()) {
    throw Error(ErrorKind::DomainError, "global region volume: d1 must be >= rows(W*)");
  }
  if (X.rows() != Wstar.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "global region volume: X and W* dimensions differ");
  }
  const Eigen::Index d0 = X.rows();
  const Eigen::Index rows = Wstar.rows();
  return run_trials(trials, seed, threads, [&](rng::Stream& s) {
    // Rows past rows(W*) are unconstrained; they are drawn after the
    // constrained rows, so leaving them undrawn does not change any hit.
    Matrix W(rows, d0);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index c = 0; c < d0; ++c) W(i, c) = s.normal();
    }
    return sign_match(W, Wstar, X);
  });
}

MCEstimate estimate_orthant_probability(std::size_t n, std::size_t m, std::size_t l,
                                        std::uint64_t trials, std::uint64_t seed,
                                        std::size_t threads) {
  const auto N = static_cast<Eigen::Index>(n);
  const auto M = static_cast<Eigen::Index>(m);
  const auto L = static_cast<Eigen::Index>(l);
  return run_trials(trials, seed, threads, [&](rng::Stream& s) {
    const Matrix C = gaussian_matrix(N, M, s);
    const Matrix B = gaussian_matrix(M, L, s);
    return ((C * B).array() > 0.0).all();
  });
}

double coherence(const Matrix& A) {
  if (A.cols() < 2) throw Error(ErrorKind::DomainError, "coherence needs at least two columns");
  const Vector norms = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < norms.size(); ++j) {
    if (norms(j) == 0.0) throw Error(ErrorKind::ZeroColumn, "coherence: column " + std::to_string(j) + " is zero");
  }
  const Matrix gram = A.transpose() * A;
  double best = 0.0;
  for (Eigen::Index j = 0; j < gram.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      best = std::max(best, std::abs(gram(i, j)) / (norms(i) * norms(j)));
    }
  }
  return best;
}

MCEstimate estimate_coherence_tail(std::size_t m, std::size_t n, double eps,
                                   std::uint64_t trials, std::uint64_t seed,
                                   std::size_t threads) {
  const auto M = static_cast<Eigen::Index>(m);
  const auto N = static_cast<Eigen::Index>(n);
  return run_trials(trials, seed, threads, [&](rng::Stream& s) {
    return coherence(gaussian_matrix(M, N, s)) > eps;
  });
}

MCEstimate estimate_margin_probability(const Matrix& Wstar, std::size_t n, double sin_alpha,
                                       std::uint64_t trials, std::uint64_t seed,
                                       std::size_t threads) {
  const Eigen::Index d0 = Wstar.cols();
  const auto N = static_cast<Eigen::Index>(n);
  return run_trials(trials, seed, threads, [&](rng::Stream& s) {
    return angular_margin(gaussian_matrix(d0, N, s), Wstar).sin_alpha > sin_alpha;
  });
}

}  // namespace landscape::volume
