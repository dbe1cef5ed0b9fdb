#include "chsoliton/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace chs {

ExtrinsicGeometry::ExtrinsicGeometry(std::shared_ptr<const LeviCivita> ambient, Matrix tangent)
    : ambient_(std::move(ambient)), tangent_(std::move(tangent)) {
  if (!ambient_) throw std::invalid_argument("ExtrinsicGeometry: missing ambient connection");
  if (tangent_.rows() != ambient_->dim()) throw DimensionError("ExtrinsicGeometry: tangent basis has wrong length");
  normal_ = orthogonal_complement(tangent_, ambient_->dim());
}

Endomorphism ExtrinsicGeometry::shape_operator(const Vector& xi) const {
  if (xi.size() != ambient_->dim()) throw DimensionError("shape_operator: normal vector has wrong length");
  const double len = xi.norm();
  if (len == 0.0) throw std::invalid_argument("shape_operator: normal vector is zero");
  if ((tangent_.transpose() * xi).norm() > 1e-9 * len) {
    throw std::invalid_argument("shape_operator: vector is not normal to the subspace");
  }
  const int k = dim();
  Matrix images(ambient_->dim(), k);
  for (int j = 0; j < k; ++j) images.col(j) = ambient_->connection(tangent_.col(j), xi);
  return -(tangent_.transpose() * images);
}

std::vector<Endomorphism> ExtrinsicGeometry::shape_operators() const {
  std::vector<Endomorphism> out;
  out.reserve(static_cast<std::size_t>(codim()));
  for (int a = 0; a < codim(); ++a) out.push_back(shape_operator(normal_.col(a)));
  return out;
}

Vector ExtrinsicGeometry::mean_curvature() const {
  Vector h = Vector::Zero(ambient_->dim());
  for (int a = 0; a < codim(); ++a) h += shape_operator(normal_.col(a)).trace() * normal_.col(a);
  return h;
}

bool ExtrinsicGeometry::is_minimal(double tol) const { return mean_curvature().norm() <= tol; }

bool ExtrinsicGeometry::is_totally_geodesic(double tol) const {
  for (const auto& s : shape_operators())
    if (s.norm() > tol) return false;
  return true;
}

Endomorphism ExtrinsicGeometry::projected_jacobi(const Vector& xi) const {
  return tangent_.transpose() * ambient_->jacobi_operator(xi) * tangent_;
}

Endomorphism ExtrinsicGeometry::gauss_ricci() const {
  Endomorphism ric = tangent_.transpose() * ambient_->ricci() * tangent_;
  const Vector h = mean_curvature();
  if (h.norm() > 0.0) ric += shape_operator(h);
  for (int a = 0; a < codim(); ++a) {
    const Vector xi = normal_.col(a);
    const Endomorphism s = shape_operator(xi);
    ric -= s * s + projected_jacobi(xi);
  }
  return ric;
}

namespace {

std::shared_ptr<const LeviCivita> ambient_connection(const std::shared_ptr<const AmbientModel>& model) {
  if (!model) throw std::invalid_argument("Subalgebra: missing ambient model");
  return std::shared_ptr<const LeviCivita>(model, &model->levi_civita());
}

double residual_of(const MetricLieAlgebra& alg, const Matrix& q) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < q.cols(); ++i)
    for (Eigen::Index j = i + 1; j < q.cols(); ++j) {
      const Vector b = alg.bracket(q.col(i), q.col(j));
      worst = std::max(worst, (b - q * (q.transpose() * b)).norm());
    }
  return worst;
}

Matrix checked_basis(const std::shared_ptr<const AmbientModel>& model, const Matrix& spanning) {
  if (!model) throw std::invalid_argument("Subalgebra: missing ambient model");
  if (spanning.rows() != model->dim()) {
    std::ostringstream os;
    os << "basis vectors must have length " << model->dim() << ", got " << spanning.rows();
    throw DimensionError(os.str());
  }
  if (!spanning.allFinite()) throw std::invalid_argument("basis contains non-finite entries");
  Matrix q = gram_schmidt(spanning);
  if (q.cols() == 0) throw std::invalid_argument("basis spans the zero subspace");
  return q;
}

MetricLieAlgebra induced_algebra(const MetricLieAlgebra& alg, const Matrix& q, std::string label) {
  const int k = static_cast<int>(q.cols());
  std::vector<double> c(static_cast<std::size_t>(k) * k * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Vector coords = q.transpose() * alg.bracket(q.col(i), q.col(j));
      for (int l = 0; l < k; ++l) {
        c[(static_cast<std::size_t>(i) * k + j) * k + l] = coords(l);
        c[(static_cast<std::size_t>(j) * k + i) * k + l] = -coords(l);
      }
    }
  return MetricLieAlgebra(k, std::move(c), std::move(label));
}

}  // namespace

Subalgebra::Subalgebra(std::shared_ptr<const AmbientModel> model, const Matrix& spanning, double closure_tol,
                       std::string label)
    : model_(model),
      geometry_(ambient_connection(model), checked_basis(model, spanning)),
      induced_(MetricLieAlgebra::abelian(1)),
      closure_residual_(residual_of(model->algebra(), geometry_.tangent())) {
  if (closure_residual_ > closure_tol) {
    std::ostringstream os;
    os << "subspace is not a subalgebra: bracket leaves the span by " << closure_residual_;
    throw ClosureError(os.str(), closure_residual_);
  }
  induced_ = induced_algebra(model_->algebra(), geometry_.tangent(), std::move(label));
}

double closure_residual(const AmbientModel& model, const Matrix& spanning) {
  if (spanning.rows() != model.dim()) throw DimensionError("closure_residual: wrong vector length");
  return residual_of(model.algebra(), gram_schmidt(spanning));
}

Matrix subalgebra_closure(const AmbientModel& model, const Matrix& spanning) {
  Matrix q = gram_schmidt(spanning);
  for (int round = 0; round <= model.dim(); ++round) {
    const Eigen::Index k = q.cols();
    Matrix grown = q;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j) {
        grown.conservativeResize(Eigen::NoChange, grown.cols() + 1);
        grown.col(grown.cols() - 1) = model.algebra().bracket(q.col(i), q.col(j));
      }
    Matrix next = gram_schmidt(grown, 1e-9);
    if (next.cols() == k) return q;
    q = next;
  }
  return q;
}

Endomorphism shape_operator(const Subalgebra& sub, const Vector& xi) { return sub.geometry().shape_operator(xi); }
Vector mean_curvature(const Subalgebra& sub) { return sub.geometry().mean_curvature(); }
bool is_minimal(const Subalgebra& sub, double tol) { return sub.geometry().is_minimal(tol); }
bool is_totally_geodesic(const Subalgebra& sub, double tol) { return sub.geometry().is_totally_geodesic(tol); }
Endomorphism gauss_ricci(const Subalgebra& sub) { return sub.geometry().gauss_ricci(); }

NilradicalSplit split_nilradical(const Subalgebra& sub, double tol) {
  NilradicalSplit out;
  const Matrix& q = sub.basis();
  const Eigen::RowVectorXd beta = q.row(sub.ambient().index_b());
  const double len = beta.norm();
  if (len <= tol) {
    out.nilpotent = true;
    out.nilradical = q;
    return out;
  }
  const Matrix kernel = null_space(Matrix(beta), 1e-12);
  out.nilradical = q * kernel;
  Vector t = q * beta.transpose() / (len * len);
  t(sub.ambient().index_b()) = 1.0;
  out.t = t;
  return out;
}

ExtrinsicGeometry nilradical_in_n(const AmbientModel& model, const Matrix& nilradical) {
  if (nilradical.rows() != model.dim()) throw DimensionError("nilradical_in_n: wrong vector length");
  if (nilradical.cols() > 0 && nilradical.row(model.index_b()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("nilradical_in_n: subspace is not contained in n");
  }
  auto lc = std::make_shared<const LeviCivita>(nilpotent_part(model));
  const Matrix inner = nilradical.bottomRows(model.dim() - 1);
  return ExtrinsicGeometry(lc, orthonormal_span(inner));
}

std::string to_string(CurvatureKind kind) {
  switch (kind) {
    case CurvatureKind::Flat: return "flat";
    case CurvatureKind::ConstantSectional: return "constant-sectional";
    case CurvatureKind::ConstantHolomorphic: return "constant-holomorphic";
    case CurvatureKind::Other: return "other";
  }
  return "other";
}

namespace {

constexpr double kFlatTolerance = 1e-9;
constexpr double kModelTolerance = 1e-8;

struct Tensor4 {
  int d;
  const std::vector<double>& r;
  double operator()(int i, int j, int k, int l) const {
    return r[((static_cast<std::size_t>(i) * d + j) * d + k) * d + l];
  }
};

double holomorphic_residual(const Tensor4& r, const Matrix& j, double& kappa) {
  const int d = r.d;
  // <R(X, JX) JX, X> = kappa for unit X; average over the basis
  kappa = 0.0;
  for (int i = 0; i < d; ++i) {
    const Vector x = Vector::Unit(d, i);
    const Vector jx = j * x;
    double s = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) s += x(a) * jx(b) * jx(c) * x(e) * r(a, b, c, e);
    kappa += s;
  }
  kappa /= d;
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          // <R(e_a, e_b) e_c, e_e> for the model with holomorphic curvature kappa
          const double model =
              0.25 * kappa *
              ((b == c ? 1.0 : 0.0) * (a == e ? 1.0 : 0.0) - (a == c ? 1.0 : 0.0) * (b == e ? 1.0 : 0.0) +
               j(c, b) * j(e, a) - j(c, a) * j(e, b) + 2.0 * j(a, b) * j(e, c));
          worst = std::max(worst, std::abs(r(a, b, c, e) - model));
        }
  return worst;
}

}  // namespace

CurvatureSignature curvature_signature(const MetricLieAlgebra& alg) {
  const int d = alg.dim();
  if (d < 2) throw std::invalid_argument("curvature_signature: dimension must be at least 2");
  const LeviCivita lc(alg);
  const std::vector<double> data = lc.curvature_tensor();
  const Tensor4 r{d, data};

  CurvatureSignature sig;
  double largest = 0.0;
  for (double v : data) largest = std::max(largest, std::abs(v));
  if (largest <= kFlatTolerance) {
    sig.kind = CurvatureKind::Flat;
    sig.residual = largest;
    return sig;
  }

  // constant sectional curvature: R_ijkl = kappa (d_jk d_il - d_ik d_jl)
  double kappa = 0.0;
  int pairs = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      kappa += r(i, j, j, i);
      ++pairs;
    }
  kappa /= pairs;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double model = kappa * ((j == k) * (i == l) - (i == k) * (j == l));
          worst = std::max(worst, std::abs(r(i, j, k, l) - model));
        }
  if (worst <= kModelTolerance) {
    sig.kind = CurvatureKind::ConstantSectional;
    sig.kappa = kappa;
    sig.residual = worst;
    return sig;
  }

  if (d >= 4 && d % 2 == 0) {
    // candidate Kähler forms: eigenvectors of the curvature operator on 2-forms
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) idx.emplace_back(i, j);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix op(m, m);
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q) op(p, q) = r(idx[p].first, idx[p].second, idx[q].first, idx[q].second);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (op + op.transpose()));
    double best = std::numeric_limits<double>::infinity();
    double best_kappa = 0.0;
    for (Eigen::Index c = 0; c < m; ++c) {
      Matrix omega = Matrix::Zero(d, d);
      for (Eigen::Index p = 0; p < m; ++p) {
        omega(idx[p].first, idx[p].second) = eig.eigenvectors()(p, c);
        omega(idx[p].second, idx[p].first) = -eig.eigenvectors()(p, c);
      }
      omega *= std::sqrt(static_cast<double>(d)) / omega.norm();
      if ((omega * omega.transpose() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-6) continue;
      const Matrix j = omega.transpose();
      double k = 0.0;
      const double res = holomorphic_residual(r, j, k);
      if (res < best) {
        best = res;
        best_kappa = k;
      }
    }
    if (best <= kModelTolerance) {
      sig.kind = CurvatureKind::ConstantHolomorphic;
      sig.kappa = best_kappa;
      sig.residual = best;
      return sig;
    }
  }

  sig.kind = CurvatureKind::Other;
  sig.residual = worst;
  return sig;
}

CurvatureSignature curvature_signature(const Subalgebra& sub) { return curvature_signature(sub.induced()); }

GeometryReport geometry_report(const Subalgebra& sub) {
  GeometryReport rep;
  const auto& geo = sub.geometry();
  rep.shape_operators = geo.shape_operators();
  rep.mean_curvature = geo.mean_curvature();
  rep.mean_curvature_norm = rep.mean_curvature.norm();
  rep.minimal = rep.mean_curvature_norm <= kMinimalTolerance;
  rep.totally_geodesic = true;
  for (const auto& s : rep.shape_operators)
    if (s.norm() > kMinimalTolerance) rep.totally_geodesic = false;
  rep.gauss_ricci = geo.gauss_ricci();
  rep.intrinsic_ricci = ricci(sub.induced());
  rep.gauss_residual = max_abs(rep.gauss_ricci - rep.intrinsic_ricci);
  if (sub.dim() < 2) {
    rep.signature.kind = CurvatureKind::Flat;
    rep.below_scope = true;
  } else {
    rep.signature = curvature_signature(sub.induced());
  }
  return rep;
}

}  // namespace chs
