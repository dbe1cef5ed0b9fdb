#pragma once

#include "chsoliton/ambient.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chs {

inline constexpr double kClosureTolerance = 1e-10;
inline constexpr double kMinimalTolerance = 1e-9;

/// Thrown when a spanning set is not closed under the ambient bracket.
class ClosureError : public std::invalid_argument {
 public:
  ClosureError(const std::string& what, double residual) : std::invalid_argument(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/**
 * Extrinsic geometry at the identity of a subspace S of a metric Lie algebra
 * G: tangent basis Q (orthonormal columns in G coordinates) and its
 * orthonormal completion as normal basis.
 *
 * Shape operators are written in the tangent basis:
 *   S_xi X = -(nabla_X xi)^T.
 */
class ExtrinsicGeometry {
 public:
  ExtrinsicGeometry(std::shared_ptr<const LeviCivita> ambient, Matrix tangent);

  const LeviCivita& ambient() const { return *ambient_; }
  const Matrix& tangent() const { return tangent_; }
  const Matrix& normal() const { return normal_; }
  int dim() const { return static_cast<int>(tangent_.cols()); }
  int codim() const { return static_cast<int>(normal_.cols()); }

  /// Throws std::invalid_argument when xi is zero or not normal.
  Endomorphism shape_operator(const Vector& xi) const;
  std::vector<Endomorphism> shape_operators() const;
  /// H = sum_i tr(S_{xi_i}) xi_i, in ambient coordinates.
  Vector mean_curvature() const;
  bool is_minimal(double tol = kMinimalTolerance) const;
  bool is_totally_geodesic(double tol = kMinimalTolerance) const;
  /// Tangential part of the ambient Jacobi operator, R^T_xi X = (R(X, xi) xi)^T.
  Endomorphism projected_jacobi(const Vector& xi) const;
  /// Ric^S = (Ric^G)^T + S_H - sum_i (S_{xi_i}^2 + R^T_{xi_i}).
  Endomorphism gauss_ricci() const;

  /// Ambient vector -> tangent coordinates (orthogonal projection).
  Vector tangent_coords(const Vector& v) const { return tangent_.transpose() * v; }

 private:
  std::shared_ptr<const LeviCivita> ambient_;
  Matrix tangent_;
  Matrix normal_;
};

/**
 * Lie subalgebra of the Iwasawa algebra of CH^n with the induced metric. The
 * spanning vectors are orthonormalized in the given order (dependent ones are
 * dropped); closure under the bracket is enforced.
 */
class Subalgebra {
 public:
  Subalgebra(std::shared_ptr<const AmbientModel> model, const Matrix& spanning,
             double closure_tol = kClosureTolerance, std::string label = {});

  const AmbientModel& ambient() const { return *model_; }
  std::shared_ptr<const AmbientModel> ambient_ptr() const { return model_; }
  const Matrix& basis() const { return geometry_.tangent(); }
  const Matrix& normal_basis() const { return geometry_.normal(); }
  const MetricLieAlgebra& induced() const { return induced_; }
  const ExtrinsicGeometry& geometry() const { return geometry_; }
  int dim() const { return geometry_.dim(); }
  double closure_residual() const { return closure_residual_; }
  const std::string& label() const { return induced_.label(); }

  Vector to_ambient(const Vector& coords) const { return basis() * coords; }

 private:
  std::shared_ptr<const AmbientModel> model_;
  ExtrinsicGeometry geometry_;
  MetricLieAlgebra induced_;
  double closure_residual_;
};

/// Largest |[x, y] - proj_span([x, y])| over pairs of orthonormalized spanning vectors.
double closure_residual(const AmbientModel& model, const Matrix& spanning);

/// Smallest subalgebra containing the spanning set (iterated brackets).
Matrix subalgebra_closure(const AmbientModel& model, const Matrix& spanning);

Endomorphism shape_operator(const Subalgebra& sub, const Vector& xi);
Vector mean_curvature(const Subalgebra& sub);
bool is_minimal(const Subalgebra& sub, double tol = kMinimalTolerance);
bool is_totally_geodesic(const Subalgebra& sub, double tol = kMinimalTolerance);
Endomorphism gauss_ricci(const Subalgebra& sub);

/**
 * Decomposition s = R T + l with l = s ∩ n the nilradical. For s not inside
 * n, T = B + U + xZ is the vector of s orthogonal to l with unit B-coefficient.
 */
struct NilradicalSplit {
  bool nilpotent = false;
  Matrix nilradical;       ///< orthonormal columns, ambient coordinates
  std::optional<Vector> t; ///< B + U + xZ when not nilpotent
};

NilradicalSplit split_nilradical(const Subalgebra& sub, double tol = 1e-12);

/// Geometry of the nilradical l as a submanifold of N (the induced metric on n),
/// with ambient coordinates (X_1, Y_1, ..., Z).
ExtrinsicGeometry nilradical_in_n(const AmbientModel& model, const Matrix& nilradical);

enum class CurvatureKind { Flat, ConstantSectional, ConstantHolomorphic, Other };

struct CurvatureSignature {
  CurvatureKind kind = CurvatureKind::Other;
  double kappa = 0.0;     ///< sectional or holomorphic sectional constant
  double residual = 0.0;  ///< deviation from the model tensor
};

std::string to_string(CurvatureKind kind);

/// Intrinsic curvature class of a metric Lie algebra of dimension >= 2.
CurvatureSignature curvature_signature(const MetricLieAlgebra& alg);
CurvatureSignature curvature_signature(const Subalgebra& sub);

struct GeometryReport {
  std::vector<Endomorphism> shape_operators;  ///< one per normal basis vector
  Vector mean_curvature;
  double mean_curvature_norm = 0.0;
  bool minimal = false;
  bool totally_geodesic = false;
  Endomorphism gauss_ricci;
  Endomorphism intrinsic_ricci;
  double gauss_residual = 0.0;  ///< |gauss_ricci - intrinsic_ricci|_max
  CurvatureSignature signature;
  bool below_scope = false;  ///< dimension one: flat, outside the classification
};

GeometryReport geometry_report(const Subalgebra& sub);

}  // namespace chs
