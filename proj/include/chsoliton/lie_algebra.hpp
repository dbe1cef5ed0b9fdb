#pragma once

#include "chsoliton/linalg.hpp"

#include <string>
#include <vector>

namespace chs {

/// Thrown when structure constants violate antisymmetry or the Jacobi identity.
class InvalidAlgebra : public std::invalid_argument {
 public:
  explicit InvalidAlgebra(const std::string& what) : std::invalid_argument(what) {}
};

/**
 * Finite-dimensional real Lie algebra with an inner product, stored through
 * its structure constants in an orthonormal basis:
 *
 *   [e_i, e_j] = sum_k C(i, j, k) e_k,   <e_i, e_j> = delta_ij.
 *
 * Construction validates antisymmetry and the Jacobi identity. Values are
 * immutable after construction.
 */
class MetricLieAlgebra {
 public:
  /// `structure` holds C(i, j, k) at index (i * dim + j) * dim + k.
  MetricLieAlgebra(int dim, std::vector<double> structure, std::string label = {});

  static MetricLieAlgebra abelian(int dim, std::string label = "abelian");
  /// Heisenberg algebra with orthonormal X, Y, Z and [X, Y] = Z.
  static MetricLieAlgebra heisenberg3();

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  double constant(int i, int j, int k) const { return c_[index(i, j, k)]; }
  const std::vector<double>& structure() const { return c_; }

  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of y -> [x, y].
  Matrix ad(const Vector& x) const;
  /// Matrix of y -> [e_i, y].
  Matrix ad_basis(int i) const;

  /// Largest |C(i,j,k) + C(j,i,k)|.
  double antisymmetry_residual() const;
  /// Largest component of the cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
  double jacobi_residual() const;
  double max_constant() const;
  bool is_abelian(double tol = 1e-12) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<double> c_;
  std::string label_;
};

/// Bilinear bracket with shape checking.
Vector bracket(const MetricLieAlgebra& alg, const Vector& x, const Vector& y);

/// Metric g -> lambda * g. In the orthonormal-basis convention the basis is
/// rescaled by 1/sqrt(lambda), so the structure constants scale by 1/sqrt(lambda).
MetricLieAlgebra rescaled(const MetricLieAlgebra& alg, double lambda);

/// Same Lie algebra, new inner product: the columns of `basis` (invertible) are
/// declared orthonormal.
MetricLieAlgebra with_basis(const MetricLieAlgebra& alg, const Matrix& basis, std::string label = {});

/// Each entry is an orthonormal basis of one term, first term = whole algebra.
/// The chain stops at zero or when it stabilizes, and never exceeds dim + 1 terms.
std::vector<Matrix> lower_central_series(const MetricLieAlgebra& alg, double rel_tol = kRankTolerance);
std::vector<Matrix> derived_series(const MetricLieAlgebra& alg, double rel_tol = kRankTolerance);
bool is_nilpotent(const MetricLieAlgebra& alg, double rel_tol = kRankTolerance);
bool is_solvable(const MetricLieAlgebra& alg, double rel_tol = kRankTolerance);

/// Orthonormal span of [A, B] for subspaces given by orthonormal columns.
Matrix bracket_span(const MetricLieAlgebra& alg, const Matrix& a, const Matrix& b, double rel_tol = kRankTolerance);

/// Frobenius-orthonormal basis of Der(alg) = {D : D[x,y] = [Dx,y] + [x,Dy]}.
std::vector<Endomorphism> derivation_space(const MetricLieAlgebra& alg, double rel_tol = kRankTolerance);

/// Largest component of D[e_i,e_j] - [De_i,e_j] - [e_i,De_j] over all basis pairs.
double derivation_residual(const MetricLieAlgebra& alg, const Endomorphism& d);

/**
 * Levi-Civita connection of the left-invariant metric, evaluated at the
 * identity through the Koszul formula
 *
 *   2<nabla_X Y, W> = <[X,Y],W> - <[Y,W],X> + <[W,X],Y>.
 *
 * Curvature uses R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
 */
class LeviCivita {
 public:
  explicit LeviCivita(MetricLieAlgebra alg);

  const MetricLieAlgebra& algebra() const { return alg_; }
  int dim() const { return alg_.dim(); }

  /// <nabla_{e_i} e_j, e_k>
  double christoffel(int i, int j, int k) const {
    return gamma_[(static_cast<std::size_t>(i) * dim() + j) * dim() + k];
  }
  Vector connection(const Vector& x, const Vector& y) const;
  /// Matrix of y -> nabla_x y.
  Matrix nabla(const Vector& x) const;
  const Matrix& nabla_basis(int i) const { return nabla_[i]; }

  /// Matrix of z -> R(x, y) z.
  Matrix curvature_operator(const Vector& x, const Vector& y) const;
  Vector curvature(const Vector& x, const Vector& y, const Vector& z) const;
  /// R_xi x = R(x, xi) xi.
  Endomorphism jacobi_operator(const Vector& xi) const;
  /// Ric(x) = sum_i R(x, e_i) e_i.
  Endomorphism ricci() const;
  /// <R(e_i, e_j) e_k, e_l> at ((i * d + j) * d + k) * d + l.
  std::vector<double> curvature_tensor() const;

 private:
  MetricLieAlgebra alg_;
  std::vector<double> gamma_;
  std::vector<Matrix> nabla_;
};

Vector koszul_connection(const MetricLieAlgebra& alg, const Vector& x, const Vector& y);
Vector curvature(const MetricLieAlgebra& alg, const Vector& x, const Vector& y, const Vector& z);
Endomorphism jacobi_operator(const MetricLieAlgebra& alg, const Vector& xi);
Endomorphism ricci(const MetricLieAlgebra& alg);

}  // namespace chs
