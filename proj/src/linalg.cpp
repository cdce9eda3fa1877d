#include "landscape/linalg.hpp"

#include "landscape/error.hpp"

#include <string>

namespace landscape {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::BadLeak: return "BadLeak";
    case ErrorKind::TargetTooSmall: return "TargetTooSmall";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::LabelDomain: return "LabelDomain";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

bool Error::is_numerical() const noexcept {
  switch (kind_) {
    case ErrorKind::RankDeficient:
    case ErrorKind::DegenerateInput:
    case ErrorKind::DegenerateData:
    case ErrorKind::NonFinite:
    case ErrorKind::VerificationFailed:
      return true;
    default:
      return false;
  }
}

namespace linalg {

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector(0);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

Vector solve_linear(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "solve_linear: A has " + std::to_string(a.rows()) +
                    " rows but b has " + std::to_string(b.size()) + " entries");
  }
  if (a.rows() > a.cols()) {
    throw Error(ErrorKind::ShapeMismatch,
                "solve_linear: overdetermined system (m > n) not supported");
  }
  if (a.rows() == 0) return Vector::Zero(a.cols());

  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (!(smallest >= 1e-12 * s(0)) || s(0) == 0.0) {
    throw Error(ErrorKind::RankDeficient,
                "solve_linear: matrix is rank deficient (sigma_min/sigma_max = " +
                    std::to_string(s(0) == 0.0 ? 0.0 : smallest / s(0)) + ")");
  }
  // x = V diag(1/s) U^T b is the minimum-norm solution.
  const Vector coeffs = (svd.matrixU().transpose() * b).cwiseQuotient(s);
  return svd.matrixV() * coeffs;
}

void canonicalize_sign(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-14) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

namespace {

// Null-space basis of a k x d matrix that must have rank exactly k.
Matrix checked_nullspace(const Matrix& m, double tol) {
  const Eigen::Index d = m.cols();
  const Eigen::Index k = m.rows();
  if (k >= d) {
    throw Error(ErrorKind::ShapeMismatch,
                "nullspace_direction: need fewer rows than columns");
  }
  if (k == 0) return Matrix::Identity(d, d);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0 || s(k - 1) <= tol * s(0)) {
    throw Error(ErrorKind::DegenerateInput,
                "nullspace_direction: rows are linearly dependent (input not in "
                "generic position)");
  }
  return svd.matrixV().rightCols(d - k);
}

}  // namespace

Matrix nullspace_basis(const Matrix& m, double tol) {
  const std::size_t r = numerical_rank(m, tol);
  if (m.rows() == 0 || r == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(m.cols() - static_cast<Eigen::Index>(r));
}

Vector nullspace_direction(const Matrix& m, double tol) {
  const Matrix basis = checked_nullspace(m, tol);
  Vector v;
  if (basis.cols() == 1) {
    v = basis.col(0);
  } else {
    // Pick the standard basis vector with the largest projection; the
    // projector basis*basis^T is independent of the basis chosen.
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < basis.rows(); ++j) {
      const double nrm = basis.row(j).squaredNorm();
      if (nrm > best_norm + 1e-12) {
        best_norm = nrm;
        best = j;
      }
    }
    v = basis * basis.row(best).transpose();
  }
  v.normalize();
  canonicalize_sign(v);
  return v;
}

}  // namespace linalg
}  // namespace landscape
