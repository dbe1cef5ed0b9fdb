#include "chsoliton/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chs {

namespace {

void check_vector(const MetricLieAlgebra& alg, const Vector& v, const char* what) {
  if (v.size() != alg.dim()) {
    std::ostringstream os;
    os << what << ": expected length " << alg.dim() << ", got " << v.size();
    throw DimensionError(os.str());
  }
}

}  // namespace

MetricLieAlgebra::MetricLieAlgebra(int dim, std::vector<double> structure, std::string label)
    : dim_(dim), c_(std::move(structure)), label_(std::move(label)) {
  if (dim <= 0) throw InvalidAlgebra("dimension must be positive");
  if (c_.size() != static_cast<std::size_t>(dim) * dim * dim) {
    throw DimensionError("structure constants must have dim^3 entries");
  }
  const double scale = std::max(1.0, max_constant());
  const double anti = antisymmetry_residual();
  if (anti > 1e-12 * scale) {
    std::ostringstream os;
    os << "structure constants not antisymmetric (residual " << anti << ")";
    throw InvalidAlgebra(os.str());
  }
  const double jac = jacobi_residual();
  if (jac > 1e-12 * scale * scale) {
    std::ostringstream os;
    os << "Jacobi identity fails (residual " << jac << ")";
    throw InvalidAlgebra(os.str());
  }
}

MetricLieAlgebra MetricLieAlgebra::abelian(int dim, std::string label) {
  return MetricLieAlgebra(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim * dim, 0.0),
                          std::move(label));
}

MetricLieAlgebra MetricLieAlgebra::heisenberg3() {
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;
  c[(1 * 3 + 0) * 3 + 2] = -1.0;
  return MetricLieAlgebra(3, std::move(c), "heisenberg3");
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out(k) += w * c_[index(i, j, k)];
    }
  }
  return out;
}

Matrix MetricLieAlgebra::ad_basis(int i) const {
  Matrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) m(k, j) = c_[index(i, j, k)];
  }
  return m;
}

Matrix MetricLieAlgebra::ad(const Vector& x) const {
  Matrix m = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) != 0.0) m += x(i) * ad_basis(i);
  }
  return m;
}

double MetricLieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) r = std::max(r, std::abs(c_[index(i, j, k)] + c_[index(j, i, k)]));
  return r;
}

double MetricLieAlgebra::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      for (int k = j + 1; k < dim_; ++k) {
        for (int m = 0; m < dim_; ++m) {
          double s = 0.0;
          for (int l = 0; l < dim_; ++l) {
            s += c_[index(i, j, l)] * c_[index(l, k, m)];
            s += c_[index(j, k, l)] * c_[index(l, i, m)];
            s += c_[index(k, i, l)] * c_[index(l, j, m)];
          }
          r = std::max(r, std::abs(s));
        }
      }
    }
  }
  return r;
}

double MetricLieAlgebra::max_constant() const {
  double r = 0.0;
  for (double v : c_) r = std::max(r, std::abs(v));
  return r;
}

bool MetricLieAlgebra::is_abelian(double tol) const { return max_constant() <= tol; }

Vector bracket(const MetricLieAlgebra& alg, const Vector& x, const Vector& y) {
  check_vector(alg, x, "bracket");
  check_vector(alg, y, "bracket");
  return alg.bracket(x, y);
}

MetricLieAlgebra rescaled(const MetricLieAlgebra& alg, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rescaled: lambda must be positive");
  std::vector<double> c = alg.structure();
  const double f = 1.0 / std::sqrt(lambda);
  for (double& v : c) v *= f;
  return MetricLieAlgebra(alg.dim(), std::move(c), alg.label());
}

MetricLieAlgebra with_basis(const MetricLieAlgebra& alg, const Matrix& basis, std::string label) {
  const int d = alg.dim();
  if (basis.rows() != d || basis.cols() != d) throw DimensionError("with_basis: basis must be dim x dim");
  Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible()) throw std::invalid_argument("with_basis: basis is singular");
  std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Vector coords = lu.solve(alg.bracket(basis.col(i), basis.col(j)));
      for (int k = 0; k < d; ++k) c[(static_cast<std::size_t>(i) * d + j) * d + k] = coords(k);
    }
  }
  return MetricLieAlgebra(d, std::move(c), label.empty() ? alg.label() : std::move(label));
}

Matrix bracket_span(const MetricLieAlgebra& alg, const Matrix& a, const Matrix& b, double rel_tol) {
  Matrix spanning(alg.dim(), a.cols() * b.cols());
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) spanning.col(col++) = alg.bracket(a.col(i), b.col(j));
  return orthonormal_span(spanning, rel_tol);
}

namespace {

template <typename Next>
std::vector<Matrix> descending_chain(const MetricLieAlgebra& alg, Next next) {
  std::vector<Matrix> chain;
  chain.push_back(Matrix::Identity(alg.dim(), alg.dim()));
  for (int depth = 0; depth < alg.dim() + 1; ++depth) {
    Matrix term = next(chain.back());
    const bool stable = term.cols() == chain.back().cols();
    if (stable) break;
    chain.push_back(std::move(term));
    if (chain.back().cols() == 0) break;
  }
  return chain;
}

}  // namespace

std::vector<Matrix> lower_central_series(const MetricLieAlgebra& alg, double rel_tol) {
  const Matrix whole = Matrix::Identity(alg.dim(), alg.dim());
  return descending_chain(alg, [&](const Matrix& prev) { return bracket_span(alg, whole, prev, rel_tol); });
}

std::vector<Matrix> derived_series(const MetricLieAlgebra& alg, double rel_tol) {
  return descending_chain(alg, [&](const Matrix& prev) { return bracket_span(alg, prev, prev, rel_tol); });
}

bool is_nilpotent(const MetricLieAlgebra& alg, double rel_tol) {
  return lower_central_series(alg, rel_tol).back().cols() == 0;
}

bool is_solvable(const MetricLieAlgebra& alg, double rel_tol) {
  return derived_series(alg, rel_tol).back().cols() == 0;
}

std::vector<Endomorphism> derivation_space(const MetricLieAlgebra& alg, double rel_tol) {
  const int d = alg.dim();
  const int unknowns = d * d;
  const int pairs = d * (d - 1) / 2;
  // Unknown D(r, c) sits at column r * d + c. The residual of the pair (i, j) is
  //   D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j],
  // whose k-th component is
  //   sum_l C(i,j,l) D(k,l) - sum_r D(r,i) C(r,j,k) - sum_r D(r,j) C(i,r,k).
  Matrix system = Matrix::Zero(static_cast<Eigen::Index>(pairs) * d, unknowns);
  Eigen::Index row = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = 0; k < d; ++k, ++row) {
        for (int l = 0; l < d; ++l) system(row, k * d + l) += alg.constant(i, j, l);
        for (int r = 0; r < d; ++r) {
          system(row, r * d + i) -= alg.constant(r, j, k);
          system(row, r * d + j) -= alg.constant(i, r, k);
        }
      }
    }
  }
  const Matrix kernel = null_space(system, rel_tol);
  std::vector<Endomorphism> out;
  out.reserve(static_cast<std::size_t>(kernel.cols()));
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Endomorphism m(d, d);
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) m(r, s) = kernel(r * d + s, c);
    out.push_back(std::move(m));
  }
  return out;
}

double derivation_residual(const MetricLieAlgebra& alg, const Endomorphism& d) {
  const int n = alg.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionError("derivation_residual: shape mismatch");
  double r = 0.0;
  const Matrix id = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector lhs = d * alg.bracket(id.col(i), id.col(j));
      const Vector rhs = alg.bracket(d.col(i), id.col(j)) + alg.bracket(id.col(i), d.col(j));
      r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

LeviCivita::LeviCivita(MetricLieAlgebra alg) : alg_(std::move(alg)) {
  const int d = alg_.dim();
  gamma_.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        gamma_[(static_cast<std::size_t>(i) * d + j) * d + k] =
            0.5 * (alg_.constant(i, j, k) - alg_.constant(j, k, i) + alg_.constant(k, i, j));
  nabla_.reserve(d);
  for (int i = 0; i < d; ++i) {
    Matrix m(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(k, j) = christoffel(i, j, k);
    nabla_.push_back(std::move(m));
  }
}

Matrix LeviCivita::nabla(const Vector& x) const {
  check_vector(alg_, x, "nabla");
  Matrix m = Matrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (x(i) != 0.0) m += x(i) * nabla_[i];
  }
  return m;
}

Vector LeviCivita::connection(const Vector& x, const Vector& y) const {
  check_vector(alg_, y, "connection");
  return nabla(x) * y;
}

Matrix LeviCivita::curvature_operator(const Vector& x, const Vector& y) const {
  const Matrix nx = nabla(x);
  const Matrix ny = nabla(y);
  return nx * ny - ny * nx - nabla(alg_.bracket(x, y));
}

Vector LeviCivita::curvature(const Vector& x, const Vector& y, const Vector& z) const {
  check_vector(alg_, z, "curvature");
  return curvature_operator(x, y) * z;
}

Endomorphism LeviCivita::jacobi_operator(const Vector& xi) const {
  check_vector(alg_, xi, "jacobi_operator");
  const int d = dim();
  Endomorphism out(d, d);
  const Matrix nxi = nabla(xi);
  const Vector nxixi = nxi * xi;
  for (int a = 0; a < d; ++a) {
    // R(e_a, xi) xi = nabla_a nabla_xi xi - nabla_xi nabla_a xi - nabla_[e_a, xi] xi
    const Vector ea = Vector::Unit(d, a);
    out.col(a) = nabla_[a] * nxixi - nxi * (nabla_[a] * xi) - nabla(alg_.bracket(ea, xi)) * xi;
  }
  return out;
}

Endomorphism LeviCivita::ricci() const {
  const int d = dim();
  Endomorphism ric = Endomorphism::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < d; ++i) {
      // R(e_a, e_i) e_i
      Vector v = nabla_[a] * nabla_[i].col(i) - nabla_[i] * nabla_[a].col(i);
      for (int k = 0; k < d; ++k) {
        const double c = alg_.constant(a, i, k);
        if (c != 0.0) v -= c * nabla_[k].col(i);
      }
      ric.col(a) += v;
    }
  }
  return ric;
}

std::vector<double> LeviCivita::curvature_tensor() const {
  const int d = dim();
  std::vector<double> out(static_cast<std::size_t>(d) * d * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix r = curvature_operator(Vector::Unit(d, i), Vector::Unit(d, j));
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out[((static_cast<std::size_t>(i) * d + j) * d + k) * d + l] = r(l, k);
    }
  }
  return out;
}

Vector koszul_connection(const MetricLieAlgebra& alg, const Vector& x, const Vector& y) {
  return LeviCivita(alg).connection(x, y);
}

Vector curvature(const MetricLieAlgebra& alg, const Vector& x, const Vector& y, const Vector& z) {
  return LeviCivita(alg).curvature(x, y, z);
}

Endomorphism jacobi_operator(const MetricLieAlgebra& alg, const Vector& xi) {
  return LeviCivita(alg).jacobi_operator(xi);
}

Endomorphism ricci(const MetricLieAlgebra& alg) { return LeviCivita(alg).ricci(); }

}  // namespace chs
