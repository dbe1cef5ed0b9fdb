#include "chsoliton/ambient.hpp"

#include <sstream>

namespace chs {

namespace {

MetricLieAlgebra chn_algebra(int n) {
  if (n < 2) {
    std::ostringstream os;
    os << "complex dimension n must be >= 2, got " << n;
    throw std::invalid_argument(os.str());
  }
  const int d = 2 * n;
  std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    c[(static_cast<std::size_t>(i) * d + j) * d + k] = v;
    c[(static_cast<std::size_t>(j) * d + i) * d + k] = -v;
  };
  const int b = 0;
  const int z = d - 1;
  for (int a = 1; a < d - 1; ++a) set(b, a, a, 0.5);
  set(b, z, z, 1.0);
  for (int i = 0; i < n - 1; ++i) set(1 + 2 * i, 2 + 2 * i, z, 1.0);
  std::ostringstream label;
  label << "CH^" << n;
  return MetricLieAlgebra(d, std::move(c), label.str());
}

}  // namespace

AmbientModel::AmbientModel(int n) : n_(n), levi_civita_(chn_algebra(n)), j_(Matrix::Zero(2 * n, 2 * n)) {
  j_(index_z(), index_b()) = 1.0;
  j_(index_b(), index_z()) = -1.0;
  for (int i = 0; i < n - 1; ++i) {
    j_(index_y(i), index_x(i)) = 1.0;
    j_(index_x(i), index_y(i)) = -1.0;
  }
}

Vector AmbientModel::from_alpha(const Vector& u) const {
  if (u.size() != alpha_dim()) throw DimensionError("from_alpha: expected a g_alpha coordinate vector");
  Vector v = Vector::Zero(dim());
  v.segment(1, alpha_dim()) = u;
  return v;
}

Matrix AmbientModel::n_projector() const {
  Matrix p = Matrix::Identity(dim(), dim());
  p(0, 0) = 0.0;
  return p;
}

bool AmbientModel::in_alpha(const Vector& v, double tol) const {
  return std::abs(v(index_b())) <= tol && std::abs(v(index_z())) <= tol;
}

Vector AmbientModel::closed_form_connection(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionError("closed_form_connection: shape mismatch");
  const double a = x(index_b());
  const double c = x(index_z());
  const double b = y(index_b());
  const double d = y(index_z());
  (void)a;  // nabla_B vanishes identically
  const Vector u = from_alpha(alpha_part(x));
  const Vector v = from_alpha(alpha_part(y));
  const Vector ju = j_ * u;
  const Vector jv = j_ * v;
  Vector out = -0.5 * (b * u + c * jv + d * ju);
  out(index_b()) += 0.5 * u.dot(v) + c * d;
  out(index_z()) += 0.5 * ju.dot(v) - b * c;
  return out;
}

AmbientModel build_ambient(int n) { return AmbientModel(n); }

std::shared_ptr<const AmbientModel> make_ambient(int n) { return std::make_shared<const AmbientModel>(n); }

MetricLieAlgebra nilpotent_part(const AmbientModel& model) {
  const int d = model.dim() - 1;
  std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        c[(static_cast<std::size_t>(i) * d + j) * d + k] = model.algebra().constant(i + 1, j + 1, k + 1);
  std::ostringstream label;
  label << "n(CH^" << model.n() << ")";
  return MetricLieAlgebra(d, std::move(c), label.str());
}

}  // namespace chs
