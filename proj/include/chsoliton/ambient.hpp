#pragma once

#include "chsoliton/lie_algebra.hpp"

#include <memory>

namespace chs {

/**
 * The solvable Iwasawa algebra a + n of the complex hyperbolic space CH^n
 * (holomorphic sectional curvature -1), in the orthonormal basis
 *
 *   (B; X_1, Y_1, ..., X_{n-1}, Y_{n-1}; Z),   J B = Z,  J X_i = Y_i.
 *
 * Brackets: [B,U] = U/2, [U,V] = <JU,V> Z, [B,Z] = Z, [Z,U] = 0 for U, V in
 * g_alpha = span{X_i, Y_i}.
 */
class AmbientModel {
 public:
  explicit AmbientModel(int n);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int index_b() const { return 0; }
  int index_z() const { return 2 * n_ - 1; }
  int alpha_begin() const { return 1; }
  int alpha_dim() const { return 2 * n_ - 2; }
  int index_x(int i) const { return 1 + 2 * i; }
  int index_y(int i) const { return 2 + 2 * i; }

  const MetricLieAlgebra& algebra() const { return levi_civita_.algebra(); }
  const LeviCivita& levi_civita() const { return levi_civita_; }
  /// Complex structure J (orthogonal, J^2 = -id).
  const Matrix& complex_structure() const { return j_; }
  /// J restricted to g_alpha, in the (X_1, Y_1, ...) coordinates.
  Matrix alpha_complex_structure() const { return j_.block(1, 1, alpha_dim(), alpha_dim()); }

  Vector b() const { return Vector::Unit(dim(), index_b()); }
  Vector z() const { return Vector::Unit(dim(), index_z()); }
  Vector x(int i) const { return Vector::Unit(dim(), index_x(i)); }
  Vector y(int i) const { return Vector::Unit(dim(), index_y(i)); }

  /// Embeds a g_alpha coordinate vector (length 2n-2) into the ambient algebra.
  Vector from_alpha(const Vector& u) const;
  Vector alpha_part(const Vector& v) const { return v.segment(1, alpha_dim()); }
  Vector apply_j(const Vector& v) const { return j_ * v; }

  /// Projection onto n = g_alpha + g_2alpha (drops the B coordinate).
  Matrix n_projector() const;
  bool in_alpha(const Vector& v, double tol = 1e-12) const;

  /// Closed-form Levi-Civita connection of AN:
  /// nabla_{aB+U+cZ}(bB+V+dZ) = (<U,V>/2 + cd) B - (bU + cJV + dJU)/2 + (<JU,V>/2 - bc) Z.
  Vector closed_form_connection(const Vector& x, const Vector& y) const;

 private:
  int n_;
  LeviCivita levi_civita_;
  Matrix j_;
};

AmbientModel build_ambient(int n);
std::shared_ptr<const AmbientModel> make_ambient(int n);

/// The nilpotent part n with the induced metric, basis (X_1, Y_1, ..., Z).
MetricLieAlgebra nilpotent_part(const AmbientModel& model);

}  // namespace chs
