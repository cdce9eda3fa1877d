#pragma once

#include "landscape/network.hpp"
#include "landscape/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>

namespace landscape::volume {

/// Monte Carlo hit-rate estimate with a 95% Wilson score interval.
struct MCEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;

  /// Binomial standard error sqrt(p (1 - p) / trials) at p = estimate.
  double std_error() const;
  /// Standard error at a reference probability p.
  double std_error_at(double p) const;

  bool operator==(const MCEstimate&) const = default;
};

MCEstimate make_estimate(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed);

/// W lies in the open region where a(WX) equals the pattern.
struct ActivationRegion {
  ActivationPattern pattern;
  Matrix X;
  double rho = 0.0;
};

/// The first rows(Wstar) rows of W induce the same signs on X as Wstar;
/// a zero pre-activation on either side is a miss.
struct SignMatchRegion {
  Matrix X;
  Matrix Wstar;
};

struct CustomRegion {
  std::function<bool(const Matrix&)> predicate;
};

struct RegionSpec {
  std::variant<ActivationRegion, SignMatchRegion, CustomRegion> kind;
  Eigen::Index d1 = 1;
  Eigen::Index d0 = 1;

  bool contains(const Matrix& W) const;
};

/// Fraction of standard-Gaussian W (d1 x d0) that fall in the region.
/// Trial t draws from its own counter-based stream, so the result is
/// bit-identical for any `threads` (0 = default worker count).
MCEstimate estimate_angular_volume(const RegionSpec& region, std::uint64_t trials,
                                   std::uint64_t seed, std::size_t threads = 0);

/// Volume of the sign-matching region around W* in d1-row weight space.
MCEstimate estimate_global_region_volume(const Matrix& X, const Matrix& Wstar, Eigen::Index d1,
                                         std::uint64_t trials, std::uint64_t seed,
                                         std::size_t threads = 0);

/// P(every entry of C B > 0) for Gaussian C (N x M), B (M x L).
MCEstimate estimate_orthant_probability(std::size_t n, std::size_t m, std::size_t l,
                                        std::uint64_t trials, std::uint64_t seed,
                                        std::size_t threads = 0);

/// Largest |cos| between distinct columns. Throws ZeroColumn, DomainError
/// for fewer than two columns.
double coherence(const Matrix& A);

/// P(coherence(A) > eps) for Gaussian A (M x N).
MCEstimate estimate_coherence_tail(std::size_t m, std::size_t n, double eps,
                                   std::uint64_t trials, std::uint64_t seed,
                                   std::size_t threads = 0);

/// P(X has angular margin sin_alpha from Wstar) for Gaussian X (d0 x N).
MCEstimate estimate_margin_probability(const Matrix& Wstar, std::size_t n, double sin_alpha,
                                       std::uint64_t trials, std::uint64_t seed,
                                       std::size_t threads = 0);

/// Generic engine: trial(t, stream) returns whether trial t is a hit.
MCEstimate run_trials(std::uint64_t trials, std::uint64_t seed, std::size_t threads,
                      const std::function<bool(rng::Stream&)>& trial);

/// Fills a matrix column-major with standard normals.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, rng::Stream& stream);

}  // namespace landscape::volume
