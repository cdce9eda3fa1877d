#pragma once

#include "landscape/network.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace landscape {

/// One trapezoid group of four hidden units that outputs 1 exactly on the
/// samples of `subset` and 0 on every other sample.
struct ConstructionBlock {
  std::vector<std::size_t> subset;
  Vector w_tilde;  // normal of a hyperplane through the subset
  Vector w_hat;    // w_hat^T [X_S, w_tilde] = (1, ..., 1, 0), ||w_hat|| = ||w_tilde||
  double eps1 = 0.0;
  double eps2 = 0.0;
  double output_scale = 0.0;  // 1 / ((eps1 - eps2)(1 - rho))
};

struct Construction {
  NetParams params;
  std::vector<ConstructionBlock> blocks;
  std::size_t d1_star = 0;  // hidden units in params (4 per block plus padding)
};

struct MarginCertificate {
  double sin_alpha = 0.0;
  std::size_t neuron = 0;
  std::size_t sample = 0;
};

struct ConstructOptions {
  double rho = 0.0;
  double beta = 0.5;
  double gamma = 0.5;
  /// Width to pad to with inert random units. When unset the network is
  /// padded up to the guaranteed width 4 * ceil(N / (2 d0 - 2)).
  std::optional<std::size_t> target_d1;
  std::uint64_t seed = 0;
};

/// 4 * ceil(N / (2 d0 - 2)): hidden units sufficient for zero error.
std::size_t zero_error_width(std::size_t n, std::size_t d0);

/// Splits {n : y_n = 1} into consecutive groups of at most d0 - 1 indices.
std::vector<std::vector<std::size_t>> partition_positive(const Vector& y, std::size_t d0);

/// Four-unit leaky-ReLU trapezoid: 1 on |x| <= eps2, 0 on |x| >= eps1,
/// linear in between.
double trapezoid(double x, double eps1, double eps2, double rho);

/// Builds a network with MSE = MCE = 0 on `data` and no pre-activation at
/// zero. Throws BadLeak, DegenerateData (the data are not in generic
/// position; perturbing X slightly fixes it), TargetTooSmall,
/// DomainError (beta/gamma outside (0,1), d0 < 2).
Construction build_global_minimum(const Dataset& data, const ConstructOptions& options = {});

/// Smallest |cos| between a sample and a row of W*. Throws ZeroVector.
MarginCertificate angular_margin(const Matrix& X, const Matrix& Wstar);

}  // namespace landscape
