#pragma once

#include "landscape/linalg.hpp"

#include <cstddef>

namespace landscape {

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// One-hidden-layer leaky-ReLU network without biases: y_hat = z^T f(W X).
struct NetParams {
  Matrix W;  // d1 x d0
  Vector z;  // d1
  double rho = 0.0;

  Eigen::Index d0() const { return W.cols(); }
  Eigen::Index d1() const { return W.rows(); }
};

/// Samples are columns of X; labels are 0 or 1.
struct Dataset {
  Matrix X;  // d0 x N
  Vector y;  // N

  Eigen::Index d0() const { return X.rows(); }
  Eigen::Index size() const { return X.cols(); }
};

/// Activation slopes a(WX) in {rho, 1} together with the entries whose
/// pre-activation is within tau of zero (where the slope is undefined).
struct ActivationPattern {
  Matrix A;
  BoolMatrix nondiff_mask;

  std::size_t boundary_hits() const { return static_cast<std::size_t>(nondiff_mask.count()); }
};

inline constexpr double kDefaultBoundaryTol = 1e-9;

/// Throws BadLeak for rho == 1, ShapeMismatch for inconsistent shapes and
/// NonFinite for non-finite entries.
void validate(const NetParams& params);
/// Throws ShapeMismatch / LabelDomain / NonFinite.
void validate(const Dataset& data);

double lrelu(double u, double rho);
Matrix lrelu(const Matrix& u, double rho);

ActivationPattern activation_pattern(const Matrix& W, const Matrix& X, double rho,
                                     double tau = kDefaultBoundaryTol);

/// Network output; pre-activations and the output sum are accumulated in
/// extended precision so tiny residuals of exact constructions are resolved.
Vector forward(const NetParams& params, const Matrix& X);
/// Same in plain double arithmetic (BLAS-style products), for training loops.
Vector forward_fast(const NetParams& params, const Matrix& X);

/// MSE together with the residual e = y - y_hat it was computed from.
struct LossEval {
  double mse = 0.0;
  Vector residual;
  Vector output;
};

LossEval evaluate(const NetParams& params, const Dataset& data);
LossEval evaluate_fast(const NetParams& params, const Dataset& data);
double mse(const NetParams& params, const Dataset& data);

/// Fraction of samples where (y_hat >= 0.5) disagrees with y == 1.
double mce(const NetParams& params, const Dataset& data);
double mce_from_output(const Vector& output, const Vector& y);

/// Column-wise Kronecker product: column n is a_n (x) x_n, stacked as
/// [a_1n x_n; a_2n x_n; ...]. Throws ShapeMismatch on column count mismatch.
Matrix khatri_rao(const Matrix& A, const Matrix& X);

struct Gradient {
  Matrix dW;
  Vector dz;
};

/// Analytic MSE gradient with the subgradient convention a(0) = 1.
Gradient gradient(const NetParams& params, const Dataset& data);

/// Gradient over a subset of columns (mini-batch); normalization uses the
/// batch size.
Gradient gradient(const NetParams& params, const Matrix& X, const Vector& y);
/// Same with the residual from forward_fast, for training loops.
Gradient gradient_fast(const NetParams& params, const Matrix& X, const Vector& y);

/// min over i, n of |w_i^T x(n)|.
double min_neural_input(const Matrix& W, const Matrix& X);

/// Total number of trainable parameters, d1*d0 + d1.
inline std::size_t parameter_count(Eigen::Index d0, Eigen::Index d1) {
  return static_cast<std::size_t>(d0 * d1 + d1);
}

}  // namespace landscape
