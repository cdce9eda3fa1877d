#include "landscape/construct.hpp"

#include "landscape/error.hpp"
#include "landscape/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace landscape {

namespace {

constexpr int kRedrawAttempts = 16;

// |w . x| treated as zero below this fraction of ||w|| ||x||.
constexpr double kGenericTol = 1e-12;

bool separates_outside(const Vector& w, const Matrix& X, const std::vector<bool>& inside) {
  for (Eigen::Index n = 0; n < X.cols(); ++n) {
    if (inside[static_cast<std::size_t>(n)]) continue;
    if (std::abs(w.dot(X.col(n))) <= kGenericTol * w.norm() * X.col(n).norm()) return false;
  }
  return true;
}

std::string subset_label(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

ConstructionBlock build_block(const Matrix& X, const std::vector<std::size_t>& subset,
                              std::size_t block_index, const ConstructOptions& opt) {
  const Eigen::Index d0 = X.rows();
  const auto k = static_cast<Eigen::Index>(subset.size());
  std::vector<bool> inside(static_cast<std::size_t>(X.cols()), false);
  Matrix points(k, d0);
  for (Eigen::Index j = 0; j < k; ++j) {
    points.row(j) = X.col(static_cast<Eigen::Index>(subset[static_cast<std::size_t>(j)])).transpose();
    inside[subset[static_cast<std::size_t>(j)]] = true;
  }

  ConstructionBlock block;
  block.subset = subset;

  Vector w_tilde;
  try {
    w_tilde = linalg::nullspace_direction(points);
  } catch (const Error& e) {
    throw Error(ErrorKind::DegenerateData,
                "samples " + subset_label(subset) +
                    " are linearly dependent; perturb the inputs infinitesimally");
  }
  if (!separates_outside(w_tilde, X, inside)) {
    // A larger null space leaves room to pick another hyperplane.
    const Matrix basis = linalg::nullspace_basis(points);
    bool found = false;
    if (basis.cols() > 1) {
      auto stream = rng::make_stream(opt.seed, rng::StreamId::Redraw, block_index);
      for (int attempt = 0; attempt < kRedrawAttempts && !found; ++attempt) {
        Vector coeff(basis.cols());
        for (Eigen::Index c = 0; c < coeff.size(); ++c) coeff(c) = stream.normal();
        w_tilde = (basis * coeff).normalized();
        linalg::canonicalize_sign(w_tilde);
        found = separates_outside(w_tilde, X, inside);
      }
    }
    if (!found) {
      throw Error(ErrorKind::DegenerateData,
                  "hyperplane through samples " + subset_label(subset) +
                      " contains another sample; perturb the inputs infinitesimally");
    }
  }

  Matrix system(k + 1, d0);
  system.topRows(k) = points;
  system.row(k) = w_tilde.transpose();
  Vector rhs = Vector::Ones(k + 1);
  rhs(k) = 0.0;
  try {
    block.w_hat = linalg::solve_linear(system, rhs);
  } catch (const Error&) {
    throw Error(ErrorKind::DegenerateData,
                "samples " + subset_label(subset) + " do not span a hyperplane; perturb the inputs");
  }
  block.w_tilde = w_tilde * block.w_hat.norm();

  double min_tilde = std::numeric_limits<double>::infinity();
  double max_hat = 0.0;
  for (Eigen::Index n = 0; n < X.cols(); ++n) {
    if (inside[static_cast<std::size_t>(n)]) continue;
    min_tilde = std::min(min_tilde, std::abs(block.w_tilde.dot(X.col(n))));
    max_hat = std::max(max_hat, std::abs(block.w_hat.dot(X.col(n))));
  }
  // With no outside sample (or none seen by w_hat) any eps keeps the signs.
  block.eps1 = (std::isfinite(min_tilde) && max_hat > 0.0) ? opt.beta * min_tilde / max_hat
                                                           : opt.beta;
  block.eps2 = opt.gamma * block.eps1;
  block.output_scale = 1.0 / ((block.eps1 - block.eps2) * (1.0 - opt.rho));
  return block;
}

}  // namespace

std::size_t zero_error_width(std::size_t n, std::size_t d0) {
  if (d0 < 2) throw Error(ErrorKind::DomainError, "zero_error_width: d0 must be >= 2");
  const std::size_t denom = 2 * d0 - 2;
  return 4 * ((n + denom - 1) / denom);
}

std::vector<std::vector<std::size_t>> partition_positive(const Vector& y, std::size_t d0) {
  if (d0 < 2) throw Error(ErrorKind::DomainError, "partition_positive: d0 must be >= 2");
  std::vector<std::vector<std::size_t>> out;
  for (Eigen::Index n = 0; n < y.size(); ++n) {
    if (y(n) != 1.0) continue;
    if (out.empty() || out.back().size() == d0 - 1) out.emplace_back();
    out.back().push_back(static_cast<std::size_t>(n));
  }
  return out;
}

double trapezoid(double x, double eps1, double eps2, double rho) {
  const double scale = 1.0 / ((eps1 - eps2) * (1.0 - rho));
  return scale * (lrelu(x + eps1, rho) - lrelu(x + eps2, rho) - lrelu(x - eps2, rho) +
                  lrelu(x - eps1, rho));
}

Construction build_global_minimum(const Dataset& data, const ConstructOptions& opt) {
  validate(data);
  if (opt.rho == 1.0) throw Error(ErrorKind::BadLeak, "leak parameter rho must differ from 1");
  if (!(opt.beta > 0.0 && opt.beta < 1.0) || !(opt.gamma > 0.0 && opt.gamma < 1.0)) {
    throw Error(ErrorKind::DomainError, "beta and gamma must lie in (0, 1)");
  }
  const auto d0 = static_cast<std::size_t>(data.d0());
  const auto n = static_cast<std::size_t>(data.size());
  if (d0 < 2) throw Error(ErrorKind::DomainError, "construction needs d0 >= 2");

  const auto subsets = partition_positive(data.y, d0);
  const std::size_t units = 4 * subsets.size();
  const std::size_t width = opt.target_d1.value_or(std::max(units, zero_error_width(n, d0)));
  if (width < units) {
    throw Error(ErrorKind::TargetTooSmall,
                "target width " + std::to_string(width) + " is below the " +
                    std::to_string(units) + " units the construction needs");
  }

  Construction out;
  out.params.rho = opt.rho;
  out.params.W = Matrix::Zero(static_cast<Eigen::Index>(width), data.d0());
  out.params.z = Vector::Zero(static_cast<Eigen::Index>(width));
  out.blocks.reserve(subsets.size());

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    ConstructionBlock block = build_block(data.X, subsets[i], i, opt);
    const auto row = static_cast<Eigen::Index>(4 * i);
    out.params.W.row(row) = (block.w_tilde + block.eps1 * block.w_hat).transpose();
    out.params.W.row(row + 1) = (block.w_tilde + block.eps2 * block.w_hat).transpose();
    out.params.W.row(row + 2) = (block.w_tilde - block.eps2 * block.w_hat).transpose();
    out.params.W.row(row + 3) = (block.w_tilde - block.eps1 * block.w_hat).transpose();
    out.params.z.segment(row, 4) << block.output_scale, -block.output_scale,
        -block.output_scale, block.output_scale;
    out.blocks.push_back(std::move(block));
  }

  auto stream = rng::make_stream(opt.seed, rng::StreamId::Padding);
  for (auto r = static_cast<Eigen::Index>(units); r < static_cast<Eigen::Index>(width); ++r) {
    for (Eigen::Index c = 0; c < data.d0(); ++c) out.params.W(r, c) = stream.normal();
  }
  out.d1_star = width;
  return out;
}

MarginCertificate angular_margin(const Matrix& X, const Matrix& Wstar) {
  if (X.rows() != Wstar.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "angular_margin: dimension mismatch");
  }
  const Vector xn = X.colwise().norm().transpose();
  const Vector wn = Wstar.rowwise().norm();
  for (Eigen::Index n = 0; n < xn.size(); ++n) {
    if (xn(n) == 0.0) throw Error(ErrorKind::ZeroVector, "angular_margin: sample " + std::to_string(n) + " is zero");
  }
  for (Eigen::Index i = 0; i < wn.size(); ++i) {
    if (wn(i) == 0.0) throw Error(ErrorKind::ZeroVector, "angular_margin: weight row " + std::to_string(i) + " is zero");
  }
  const Matrix cosines = ((Wstar * X).array().colwise() / wn.array()).rowwise() / xn.transpose().array();
  MarginCertificate cert;
  Eigen::Index i = 0, n = 0;
  cert.sin_alpha = cosines.cwiseAbs().minCoeff(&i, &n);
  cert.neuron = static_cast<std::size_t>(i);
  cert.sample = static_cast<std::size_t>(n);
  return cert;
}

}  // namespace landscape
