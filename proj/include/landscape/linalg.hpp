#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace landscape {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

inline constexpr double kDefaultRankTol = 1e-10;

/// Solves A x = b for A (m x n, m <= n) of full row rank. When the system is
/// underdetermined the minimum-norm solution is returned.
/// Throws RankDeficient when the smallest singular value is below
/// 1e-12 times the largest, ShapeMismatch on bad dimensions.
Vector solve_linear(const Matrix& a, const Vector& b);

/// Unit vector v with M v = 0 for M of shape k x d, k < d.
///
/// For a one-dimensional null space this is the (unique up to sign) kernel
/// direction. For larger null spaces the result is the normalized projection
/// of the first standard basis vector with the largest projection, which
/// does not depend on the basis the factorization happens to return.
/// The first coordinate whose magnitude exceeds 1e-14 is made positive.
///
/// Throws DegenerateInput when rank(M) < k at relative tolerance `tol`.
Vector nullspace_direction(const Matrix& m, double tol = kDefaultRankTol);

/// Orthonormal basis (columns) of the null space of M at relative tolerance.
Matrix nullspace_basis(const Matrix& m, double tol = kDefaultRankTol);

/// Number of singular values strictly above rel_tol times the largest.
std::size_t numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);

Vector singular_values(const Matrix& m);

/// Flips v so its first entry with |v_i| > 1e-14 is positive.
void canonicalize_sign(Vector& v);

}  // namespace linalg
}  // namespace landscape
