#pragma once

#include "chsoliton/families.hpp"
#include "chsoliton/scan.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace testing {

using chs::Matrix;
using chs::Vector;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Vector gaussian(Rng& rng, int size) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(size);
  for (int i = 0; i < size; ++i) v(i) = g(rng);
  return v;
}

inline Matrix gaussian(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) m.col(c) = gaussian(rng, rows);
  return m;
}

/// Orthonormal k-frame of a random subspace of g_alpha in ambient coordinates.
inline Matrix random_alpha_subspace(const chs::AmbientModel& model, int k, Rng& rng) {
  Matrix m = Matrix::Zero(model.dim(), k);
  m.middleRows(1, model.alpha_dim()) = gaussian(rng, model.alpha_dim(), k);
  return chs::orthonormal_span(m);
}

/// Random unit vector of g_alpha orthogonal to the columns of `q` (orthonormal, inside g_alpha).
inline Vector random_alpha_normal(const chs::AmbientModel& model, const Matrix& q, Rng& rng) {
  Vector v = Vector::Zero(model.dim());
  v.segment(1, model.alpha_dim()) = gaussian(rng, model.alpha_dim());
  v -= q * (q.transpose() * v);
  return v / v.norm();
}

inline Matrix with_z(const chs::AmbientModel& model, const Matrix& m) {
  Matrix out(model.dim(), m.cols() + 1);
  out << m, model.z();
  return out;
}

/// Random feasible family instance with n drawn from [n_lo, n_hi].
inline chs::FamilySpec random_instance(chs::Item item, Rng& rng, int n_lo = 2, int n_hi = 6) {
  for (;;) {
    const int n = uniform_int(rng, n_lo, n_hi);
    if (auto s = chs::random_family_spec(item, n, rng)) return *s;
  }
}

/// Standard complex structure on R^{2m} = C^m: J e_{2i} = e_{2i+1}.
inline Matrix standard_j(int m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;
    j(2 * i, 2 * i + 1) = -1.0;
  }
  return j;
}

/// Random subspace of C^m. Half the draws are Gaussian; the rest are sums of
/// constant-angle pieces over a random unitary frame, so repeated angles,
/// complex and totally real parts all occur.
inline Matrix random_complex_subspace(int m, Rng& rng) {
  if (uniform_int(rng, 0, 1) == 0) return chs::orthonormal_span(gaussian(rng, 2 * m, uniform_int(rng, 1, 2 * m)));
  const Matrix j = standard_j(m);
  // unitary frame: Gram-Schmidt over complex vectors, realified
  Matrix frame(2 * m, m);
  for (int c = 0; c < m; ++c) {
    Vector v = gaussian(rng, 2 * m);
    for (int p = 0; p < c; ++p) {
      v -= v.dot(frame.col(p)) * frame.col(p);
      v -= v.dot(j * frame.col(p)) * (j * frame.col(p));
    }
    frame.col(c) = v.normalized();
  }
  const double angles[] = {0.3, 0.3, 0.9, M_PI / 4};
  std::vector<Vector> cols;
  int slot = 0;
  while (slot < m) {
    const int kind = uniform_int(rng, 0, 3);
    const Vector e = frame.col(slot);
    if (kind == 0) {  // complex line
      cols.push_back(e);
      cols.push_back(j * e);
      ++slot;
    } else if (kind == 1) {  // totally real
      cols.push_back(e);
      ++slot;
    } else if (kind == 2 && slot + 1 < m) {  // angle pair
      const double phi = angles[uniform_int(rng, 0, 3)];
      cols.push_back(e);
      cols.push_back(std::cos(phi) * (j * e) + std::sin(phi) * (j * frame.col(slot + 1)));
      slot += 2;
    } else {
      ++slot;
    }
  }
  if (cols.empty()) cols.push_back(frame.col(0));
  Matrix out(2 * m, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<int>(c)) = cols[c];
  return out;
}

/// Violations of the constant-angle decomposition invariants for V = span(spanning):
/// pieces orthonormal and spanning V, constant angle on each piece, even dimension
/// below pi/2, distinct pieces C-orthogonal, adapted pairs generating the piece.
inline std::vector<std::string> kahler_violations(const Matrix& j, const Matrix& spanning, double tol = 1e-8) {
  std::vector<std::string> bad;
  const chs::KahlerDecomposition dec = chs::decompose_kahler(j, spanning);
  const Matrix v = chs::orthonormal_span(spanning);
  Matrix all(v.rows(), dec.dim());
  int at = 0;
  for (const auto& p : dec.pieces) {
    all.middleCols(at, p.dim()) = p.basis;
    at += p.dim();
  }
  if (dec.dim() != v.cols()) bad.push_back("dimension");
  else {
    if ((all.transpose() * all - Matrix::Identity(at, at)).cwiseAbs().maxCoeff() > tol) bad.push_back("orthonormality");
    if ((v - all * (all.transpose() * v)).norm() > tol) bad.push_back("round trip");
  }
  std::mt19937_64 rng(99);
  for (std::size_t a = 0; a < dec.pieces.size(); ++a) {
    const auto& p = dec.pieces[a];
    for (int trial = 0; trial < 3; ++trial) {
      const Vector w = p.basis * gaussian(rng, p.dim());
      if (std::abs(chs::kahler_cosine(j, p.basis, w) - std::cos(p.angle)) > tol) bad.push_back("angle constancy");
    }
    if (p.angle < M_PI / 2 - tol && p.dim() % 2 != 0) bad.push_back("evenness");
    for (std::size_t b = 0; b < dec.pieces.size(); ++b) {
      if (a == b) continue;
      if ((p.basis.transpose() * (j * dec.pieces[b].basis)).cwiseAbs().maxCoeff() > tol) bad.push_back("C-orthogonality");
    }
    if (p.angle > tol && p.angle < M_PI / 2 - tol) {
      Matrix gen(v.rows(), p.dim());
      int c = 0;
      for (const auto& [e1, e2] : p.adapted_pairs) {
        if (std::abs(e1.dot(e2)) > tol || std::abs(e1.dot(j * e2)) > tol || std::abs(e1.norm() - 1) > tol) {
          bad.push_back("adapted pair frame");
        }
        if (c + 2 > p.dim()) break;
        gen.col(c++) = e1;
        gen.col(c++) = std::cos(p.angle) * (j * e1) + std::sin(p.angle) * (j * e2);
      }
      if (c != p.dim() || (gen - p.basis * (p.basis.transpose() * gen)).norm() > tol) bad.push_back("adapted pairs");
    }
  }
  return bad;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace testing
