#include "landscape/network.hpp"

#include "landscape/error.hpp"

#include <cmath>
#include <vector>
#include <string>

namespace landscape {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_compatible(const Matrix& W, const Matrix& X) {
  if (W.cols() != X.rows()) {
    throw Error(ErrorKind::ShapeMismatch,
                "weights " + dims(W) + " incompatible with inputs " + dims(X));
  }
}

void require_compatible(const NetParams& p, const Matrix& X) {
  require_compatible(p.W, X);
  if (p.z.size() != p.W.rows()) {
    throw Error(ErrorKind::ShapeMismatch,
                "output weights have " + std::to_string(p.z.size()) +
                    " entries for " + std::to_string(p.W.rows()) + " hidden units");
  }
}

}  // namespace

void validate(const NetParams& params) {
  if (params.rho == 1.0) {
    throw Error(ErrorKind::BadLeak, "leak parameter rho must differ from 1");
  }
  if (params.z.size() != params.W.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "z length must equal the number of rows of W");
  }
  if (!params.W.allFinite() || !params.z.allFinite() || !std::isfinite(params.rho)) {
    throw Error(ErrorKind::NonFinite, "network parameters contain non-finite values");
  }
}

void validate(const Dataset& data) {
  if (data.X.cols() != data.y.size()) {
    throw Error(ErrorKind::ShapeMismatch, "dataset has " + std::to_string(data.X.cols()) +
                                              " samples but " + std::to_string(data.y.size()) +
                                              " labels");
  }
  if (data.X.cols() < 1) throw Error(ErrorKind::ShapeMismatch, "dataset is empty");
  if (!data.X.allFinite()) throw Error(ErrorKind::NonFinite, "dataset contains non-finite inputs");
  for (Eigen::Index n = 0; n < data.y.size(); ++n) {
    if (data.y(n) != 0.0 && data.y(n) != 1.0) {
      throw Error(ErrorKind::LabelDomain,
                  "label " + std::to_string(n) + " is not 0 or 1");
    }
  }
}

double lrelu(double u, double rho) { return u > 0.0 ? u : rho * u; }

Matrix lrelu(const Matrix& u, double rho) {
  return u.unaryExpr([rho](double v) { return lrelu(v, rho); });
}

ActivationPattern activation_pattern(const Matrix& W, const Matrix& X, double rho,
                                     double tau) {
  require_compatible(W, X);
  const Matrix pre = W * X;
  ActivationPattern out;
  // a(0) is undefined; assign 1 and flag it.
  out.A = pre.unaryExpr([rho](double v) { return v >= 0.0 ? 1.0 : rho; });
  out.nondiff_mask = pre.array().abs() <= tau;
  return out;
}

namespace {

// Output of every sample with pre-activations and the output sum carried in
// extended precision.
std::vector<long double> forward_extended(const NetParams& params, const Matrix& X) {
  require_compatible(params, X);
  const long double rho = params.rho;
  std::vector<long double> out(static_cast<std::size_t>(X.cols()), 0.0L);
  for (Eigen::Index n = 0; n < X.cols(); ++n) {
    long double sum = 0.0L;
    for (Eigen::Index i = 0; i < params.W.rows(); ++i) {
      if (params.z(i) == 0.0) continue;
      long double pre = 0.0L;
      for (Eigen::Index j = 0; j < params.W.cols(); ++j) {
        pre += static_cast<long double>(params.W(i, j)) * X(j, n);
      }
      sum += static_cast<long double>(params.z(i)) * (pre >= 0.0L ? pre : rho * pre);
    }
    out[static_cast<std::size_t>(n)] = sum;
  }
  return out;
}

}  // namespace

Vector forward(const NetParams& params, const Matrix& X) {
  const auto ext = forward_extended(params, X);
  Vector out(X.cols());
  for (Eigen::Index n = 0; n < out.size(); ++n) out(n) = static_cast<double>(ext[static_cast<std::size_t>(n)]);
  return out;
}

Vector forward_fast(const NetParams& params, const Matrix& X) {
  require_compatible(params, X);
  return lrelu(params.W * X, params.rho).transpose() * params.z;
}

LossEval evaluate(const NetParams& params, const Dataset& data) {
  LossEval out;
  out.output = forward(params, data.X);
  out.residual = data.y - out.output;
  long double sq = 0.0L;
  for (Eigen::Index n = 0; n < data.size(); ++n) {
    sq += static_cast<long double>(out.residual(n)) * out.residual(n);
  }
  out.mse = static_cast<double>(sq / static_cast<long double>(data.size()));
  return out;
}

LossEval evaluate_fast(const NetParams& params, const Dataset& data) {
  LossEval out;
  out.output = forward_fast(params, data.X);
  out.residual = data.y - out.output;
  out.mse = out.residual.squaredNorm() / static_cast<double>(data.size());
  return out;
}

double mse(const NetParams& params, const Dataset& data) { return evaluate(params, data).mse; }

double mce_from_output(const Vector& output, const Vector& y) {
  if (output.size() != y.size()) {
    throw Error(ErrorKind::ShapeMismatch, "output and labels differ in length");
  }
  if (y.size() == 0) return 0.0;
  Eigen::Index wrong = 0;
  for (Eigen::Index n = 0; n < y.size(); ++n) {
    const bool predicted_one = output(n) >= 0.5;
    const bool is_one = y(n) == 1.0;
    if (predicted_one != is_one) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(y.size());
}

double mce(const NetParams& params, const Dataset& data) {
  return mce_from_output(forward(params, data.X), data.y);
}

Matrix khatri_rao(const Matrix& A, const Matrix& X) {
  if (A.cols() != X.cols()) {
    throw Error(ErrorKind::ShapeMismatch,
                "khatri_rao: column counts differ (" + dims(A) + " vs " + dims(X) + ")");
  }
  const Eigen::Index d0 = X.rows();
  Matrix out(A.rows() * d0, A.cols());
  for (Eigen::Index n = 0; n < A.cols(); ++n) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      out.block(i * d0, n, d0, 1) = A(i, n) * X.col(n);
    }
  }
  return out;
}

namespace {

Gradient gradient_from_residual(const NetParams& params, const Matrix& X, const Vector& e) {
  const double scale = -2.0 / static_cast<double>(X.cols());
  const Matrix pre = params.W * X;
  const Matrix slopes = pre.unaryExpr([&](double v) { return v >= 0.0 ? 1.0 : params.rho; });
  const Matrix act = pre.cwiseProduct(slopes);

  Gradient g;
  g.dz = scale * (act * e);
  // dW_i = scale * z_i * sum_n a_in e_n x(n)
  const Matrix weighted = slopes.array().rowwise() * e.transpose().array();
  g.dW = scale * (params.z.asDiagonal() * weighted) * X.transpose();
  return g;
}

}  // namespace

Gradient gradient(const NetParams& params, const Matrix& X, const Vector& y) {
  require_compatible(params, X);
  return gradient_from_residual(params, X, y - forward(params, X));
}

Gradient gradient(const NetParams& params, const Dataset& data) {
  return gradient(params, data.X, data.y);
}

Gradient gradient_fast(const NetParams& params, const Matrix& X, const Vector& y) {
  require_compatible(params, X);
  return gradient_from_residual(params, X, y - forward_fast(params, X));
}

double min_neural_input(const Matrix& W, const Matrix& X) {
  require_compatible(W, X);
  if (W.rows() == 0 || X.cols() == 0) return 0.0;
  return (W * X).cwiseAbs().minCoeff();
}

}  // namespace landscape
