#pragma once

#include "chsoliton/ambient.hpp"

#include <utility>
#include <vector>

namespace chs {

inline constexpr double kAngleClusterTolerance = 1e-8;

/// One constant-Kähler-angle summand V_phi.
struct KahlerPiece {
  double angle = 0.0;  ///< in [0, pi/2]
  Matrix basis;        ///< orthonormal columns spanning V_phi
  /// For angle in (0, pi/2): C-orthonormal generators (e_{2l-1}, e_{2l}) with
  /// V_phi = sum_l span{e_{2l-1}, cos(phi) J e_{2l-1} + sin(phi) J e_{2l}}.
  std::vector<std::pair<Vector, Vector>> adapted_pairs;

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct SignatureEntry {
  double angle = 0.0;
  int dim = 0;
};

struct KahlerDecomposition {
  std::vector<KahlerPiece> pieces;  ///< sorted by ascending angle

  std::vector<SignatureEntry> signature() const;
  int dim() const;
  bool empty() const { return pieces.empty(); }
  /// Piece whose angle is within `tol` of `angle`, or nullptr.
  const KahlerPiece* find(double angle, double tol = 1e-9) const;
};

/**
 * Splits the real subspace spanned by the columns of `spanning` into
 * constant-Kähler-angle pieces with respect to the orthogonal complex
 * structure `j`.
 *
 * With Q an orthonormal basis of V and F = Q^T J Q (the compression P J|_V),
 * the singular values of F are cos(phi). Angles closer than `cluster_tol`
 * (radians) are one angle.
 */
KahlerDecomposition decompose_kahler(const Matrix& j, const Matrix& spanning,
                                     double cluster_tol = kAngleClusterTolerance);

/// Decomposition of a subspace of g_alpha; throws if a column leaves g_alpha.
KahlerDecomposition kahler_decompose(const AmbientModel& model, const Matrix& spanning,
                                     double cluster_tol = kAngleClusterTolerance);

struct ComplexComplement {
  Matrix basis;             ///< C V ⊖ V
  bool degenerate = false;  ///< true when V is complex (angle 0): the complement is zero
};

/// C V ⊖ V for a constant-angle piece V.
ComplexComplement perp_in_complex_span(const Matrix& j, const Matrix& piece);
ComplexComplement perp_in_complex_span(const AmbientModel& model, const Matrix& piece);

/// |proj_V(J v)| / |v| for v in V (V given by orthonormal columns).
double kahler_cosine(const Matrix& j, const Matrix& v_basis, const Vector& v);

/// True when both u and J u are orthogonal to span(basis).
bool complex_orthogonal(const Matrix& j, const Vector& u, const Matrix& basis, double tol = 1e-9);

}  // namespace chs
