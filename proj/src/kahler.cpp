#include "chsoliton/kahler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace chs {

std::vector<SignatureEntry> KahlerDecomposition::signature() const {
  std::vector<SignatureEntry> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back({p.angle, p.dim()});
  return out;
}

int KahlerDecomposition::dim() const {
  int d = 0;
  for (const auto& p : pieces) d += p.dim();
  return d;
}

const KahlerPiece* KahlerDecomposition::find(double angle, double tol) const {
  for (const auto& p : pieces)
    if (std::abs(p.angle - angle) <= tol) return &p;
  return nullptr;
}

namespace {

std::vector<std::pair<Vector, Vector>> adapted_pairs(const Matrix& j, const Matrix& piece, double cos_phi,
                                                     double sin_phi) {
  std::vector<std::pair<Vector, Vector>> pairs;
  Matrix remaining = piece;
  while (remaining.cols() >= 2) {
    const Vector e1 = remaining.col(0);
    const Vector je1 = j * e1;
    // the compression of J to the piece is cos(phi) times a complex structure
    Vector f = remaining * (remaining.transpose() * je1);
    f /= f.norm();
    const Vector e2 = -(j * (f - cos_phi * je1)) / sin_phi;
    pairs.emplace_back(e1, e2);
    Matrix rest = remaining - e1 * (e1.transpose() * remaining) - f * (f.transpose() * remaining);
    remaining = gram_schmidt(rest, 1e-8);
  }
  return pairs;
}

}  // namespace

KahlerDecomposition decompose_kahler(const Matrix& j, const Matrix& spanning, double cluster_tol) {
  if (j.rows() != spanning.rows()) throw DimensionError("decompose_kahler: complex structure size mismatch");
  KahlerDecomposition out;
  const Matrix q = orthonormal_span(spanning);
  const Eigen::Index m = q.cols();
  if (m == 0) return out;

  const Matrix f = q.transpose() * j * q;
  const Matrix w = j * q - q * f;
  // singular values of f are the cosines; the normal part gives the sines
  Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeFullV);
  const Matrix& vecs = svd.matrixV();
  std::vector<double> angle(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double c = svd.singularValues()(i);
    const double s = (w * vecs.col(i)).norm();
    angle[static_cast<std::size_t>(i)] = std::atan2(s, c);
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return angle[static_cast<std::size_t>(a)] < angle[static_cast<std::size_t>(b)];
  });

  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index idx : order) {
    if (clusters.empty() ||
        angle[static_cast<std::size_t>(idx)] - angle[static_cast<std::size_t>(clusters.back().back())] > cluster_tol)
      clusters.emplace_back();
    clusters.back().push_back(idx);
  }

  for (const auto& cluster : clusters) {
    Matrix local(m, static_cast<Eigen::Index>(cluster.size()));
    double phi = 0.0;
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      local.col(static_cast<Eigen::Index>(c)) = vecs.col(cluster[c]);
      phi += angle[static_cast<std::size_t>(cluster[c])];
    }
    phi /= static_cast<double>(cluster.size());

    KahlerPiece piece;
    piece.basis = q * local;
    if (std::numbers::pi / 2 - phi <= cluster_tol) {
      piece.angle = std::numbers::pi / 2;
    } else if (phi <= cluster_tol) {
      piece.angle = 0.0;
    } else {
      piece.angle = phi;
      piece.adapted_pairs = adapted_pairs(j, piece.basis, std::cos(phi), std::sin(phi));
    }
    out.pieces.push_back(std::move(piece));
  }
  std::stable_sort(out.pieces.begin(), out.pieces.end(),
                   [](const KahlerPiece& a, const KahlerPiece& b) { return a.angle < b.angle; });
  return out;
}

KahlerDecomposition kahler_decompose(const AmbientModel& model, const Matrix& spanning, double cluster_tol) {
  if (spanning.rows() != model.dim()) throw DimensionError("kahler_decompose: vectors must have length 2n");
  for (Eigen::Index c = 0; c < spanning.cols(); ++c) {
    const double scale = std::max(1.0, spanning.col(c).norm());
    if (!model.in_alpha(spanning.col(c), 1e-12 * scale)) {
      throw std::invalid_argument("kahler_decompose: subspace is not contained in g_alpha");
    }
  }
  return decompose_kahler(model.complex_structure(), spanning, cluster_tol);
}

ComplexComplement perp_in_complex_span(const Matrix& j, const Matrix& piece) {
  ComplexComplement out;
  const Matrix v = orthonormal_span(piece);
  Matrix both(v.rows(), 2 * v.cols());
  both << v, j * v;
  const Matrix cv = orthonormal_span(both);
  const Matrix rest = cv - v * (v.transpose() * cv);
  out.basis = orthonormal_span(rest, 1e-8);
  out.degenerate = out.basis.cols() == 0;
  return out;
}

ComplexComplement perp_in_complex_span(const AmbientModel& model, const Matrix& piece) {
  return perp_in_complex_span(model.complex_structure(), piece);
}

double kahler_cosine(const Matrix& j, const Matrix& v_basis, const Vector& v) {
  const Vector jv = j * v;
  return (v_basis.transpose() * jv).norm() / v.norm();
}

bool complex_orthogonal(const Matrix& j, const Vector& u, const Matrix& basis, double tol) {
  if (basis.cols() == 0) return true;
  const double scale = std::max(1.0, u.norm());
  return (basis.transpose() * u).cwiseAbs().maxCoeff() <= tol * scale &&
         (basis.transpose() * (j * u)).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace chs
