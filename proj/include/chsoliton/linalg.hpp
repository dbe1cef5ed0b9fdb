#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace chs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Linear map of a metric Lie algebra written in its orthonormal basis.
using Endomorphism = Eigen::MatrixXd;

/// Thrown when vector or matrix shapes do not match the algebra they are used with.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Default relative threshold below which singular values count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Singular values at or below `rel_tol * max(sigma_max, 1)` are treated as zero.
/// The unit floor keeps roundoff-level inputs (e.g. brackets of an abelian
/// algebra computed in floating point) from being promoted to full rank.
double rank_threshold(const Eigen::VectorXd& singular_values, double rel_tol);

/// Orthonormal basis (as columns) of the column span of `spanning`.
Matrix orthonormal_span(const Matrix& spanning, double rel_tol = kRankTolerance);

/// Orthonormal basis of the orthogonal complement of span(Q) in R^dim. Q must
/// have orthonormal columns.
Matrix orthogonal_complement(const Matrix& q, Eigen::Index dim);

/// Orthonormal basis of the null space of `m` (right singular vectors).
Matrix null_space(const Matrix& m, double rel_tol = kRankTolerance);

/// Modified Gram-Schmidt in the given column order, dropping columns that are
/// (numerically) dependent on the previous ones.
Matrix gram_schmidt(const Matrix& spanning, double rel_tol = kRankTolerance);

/// Orthonormal basis of span(A) ∩ span(B); both inputs have orthonormal columns.
Matrix intersect_spans(const Matrix& a, const Matrix& b, double tol = 1e-9);

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const Matrix& m);

}  // namespace chs
