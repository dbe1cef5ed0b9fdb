#include "chsoliton/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace chs {

double rank_threshold(const Eigen::VectorXd& singular_values, double rel_tol) {
  const double smax = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return rel_tol * std::max(smax, 1.0);
}

namespace {

Eigen::Index numerical_rank(const Eigen::VectorXd& s, double rel_tol) {
  const double thr = rank_threshold(s, rel_tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++r;
  }
  return r;
}

}  // namespace

Matrix orthonormal_span(const Matrix& spanning, double rel_tol) {
  const Eigen::Index dim = spanning.rows();
  if (spanning.cols() == 0 || dim == 0) return Matrix(dim, 0);
  Eigen::JacobiSVD<Matrix> svd(spanning, Eigen::ComputeThinU);
  const Eigen::Index r = numerical_rank(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Matrix orthogonal_complement(const Matrix& q, Eigen::Index dim) {
  if (q.cols() == 0) return Matrix::Identity(dim, dim);
  if (q.rows() != dim) throw DimensionError("orthogonal_complement: row count mismatch");
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ() * Matrix::Identity(dim, dim);
  return full.rightCols(dim - q.cols());
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = numerical_rank(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(cols - r);
}

Matrix gram_schmidt(const Matrix& spanning, double rel_tol) {
  const Eigen::Index dim = spanning.rows();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < spanning.cols(); ++j) scale = std::max(scale, spanning.col(j).norm());
  const double thr = rel_tol * std::max(scale, 1.0);
  Matrix out(dim, 0);
  for (Eigen::Index j = 0; j < spanning.cols(); ++j) {
    Vector v = spanning.col(j);
    // two passes keep the result orthogonal to machine precision
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < out.cols(); ++k) v -= out.col(k).dot(v) * out.col(k);
    }
    const double nv = v.norm();
    if (nv <= thr) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v / nv;
  }
  return out;
}

Matrix intersect_spans(const Matrix& a, const Matrix& b, double tol) {
  const Eigen::Index dim = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return Matrix(dim, 0);
  // principal vectors with cosine 1 span the intersection
  Matrix m = a.transpose() * b;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  Matrix out(dim, 0);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) >= 1.0 - tol) {
      out.conservativeResize(Eigen::NoChange, out.cols() + 1);
      out.col(out.cols() - 1) = a * svd.matrixU().col(i);
    }
  }
  return gram_schmidt(out);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace chs
