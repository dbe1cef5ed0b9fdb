#include "chsoliton/ambient.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace chs;

TEST_CASE("structure constants and complex structure match the bracket relations") {
  for (int n = 2; n <= 6; ++n) {
    const AmbientModel m(n);
    const auto want = oracle::ch_structure(n);
    const auto& got = m.algebra().structure();
    REQUIRE(got.size() == want.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    CHECK(worst == 0.0);
    CHECK(testing::max_abs(m.complex_structure() - oracle::ch_complex_structure(n)) == 0.0);
    const Matrix& j = m.complex_structure();
    CHECK(testing::max_abs(j * j + Matrix::Identity(2 * n, 2 * n)) == 0.0);
  }
  CHECK_THROWS(AmbientModel(1));
}

TEST_CASE("ambient space is Einstein with constant -(n+1)/2") {
  for (int n = 2; n <= 6; ++n) {
    const AmbientModel m(n);
    const Matrix want = -0.5 * (n + 1) * Matrix::Identity(2 * n, 2 * n);
    CHECK(testing::max_abs(m.levi_civita().ricci() - want) < 1e-12);
    CHECK(testing::max_abs(oracle::besse_ricci(m.algebra()) - want) < 1e-12);
  }
}

TEST_CASE("holomorphic sectional curvature is -1, totally real planes -1/4") {
  const AmbientModel m(3);
  const LeviCivita& lc = m.levi_civita();
  testing::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    Vector x = testing::gaussian(rng, m.dim());
    x.normalize();
    const Vector jx = m.apply_j(x);
    CHECK(lc.curvature(x, jx, jx).dot(x) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  const Vector x = m.x(0), y = m.x(1);
  CHECK(lc.curvature(x, y, y).dot(x) == doctest::Approx(-0.25));
}

TEST_CASE("closed-form connection agrees with the Koszul formula") {
  testing::Rng rng(22);
  for (int n = 2; n <= 6; ++n) {
    const AmbientModel m(n);
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) {
        const Vector ei = Vector::Unit(m.dim(), i), ej = Vector::Unit(m.dim(), j);
        CHECK((m.closed_form_connection(ei, ej) - oracle::nabla(m.algebra(), ei, ej)).norm() < 1e-14);
      }
    const Vector x = testing::gaussian(rng, m.dim()), y = testing::gaussian(rng, m.dim());
    CHECK((m.closed_form_connection(x, y) - m.levi_civita().connection(x, y)).norm() < 1e-12);
  }
}

TEST_CASE("connection on root spaces") {
  testing::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(rng, 2, 6);
    const AmbientModel m(n);
    const LeviCivita& lc = m.levi_civita();
    const Vector b = m.b(), z = m.z();
    const Vector x = m.from_alpha(testing::gaussian(rng, m.alpha_dim()));
    Vector xi = m.from_alpha(testing::gaussian(rng, m.alpha_dim()));
    xi -= xi.dot(x) / x.squaredNorm() * x;
    const Vector jxi = m.apply_j(xi);

    CHECK((lc.connection(x, xi) + 0.5 * jxi.dot(x) * z).norm() < 1e-12);
    CHECK((lc.connection(x, x) - 0.5 * x.squaredNorm() * b).norm() < 1e-12);
    CHECK((lc.connection(x, b) + 0.5 * x).norm() < 1e-12);
    CHECK((lc.connection(z, b) + z).norm() < 1e-12);
    CHECK((lc.connection(xi, z) + 0.5 * jxi).norm() < 1e-12);
    CHECK((lc.connection(z, xi) + 0.5 * jxi).norm() < 1e-12);
    CHECK(lc.nabla(b).norm() < 1e-12);
  }
}

TEST_CASE("nilpotent part is a Heisenberg algebra") {
  for (int n = 2; n <= 5; ++n) {
    const AmbientModel m(n);
    const MetricLieAlgebra nil = nilpotent_part(m);
    CHECK(nil.dim() == 2 * n - 1);
    CHECK(is_nilpotent(nil));
    Matrix want = -0.5 * Matrix::Identity(nil.dim(), nil.dim());
    want(nil.dim() - 1, nil.dim() - 1) = 0.5 * (n - 1);
    CHECK(testing::max_abs(ricci(nil) - want) < 1e-12);
  }
}

TEST_CASE("alpha embedding") {
  const AmbientModel m(3);
  Vector u(4);
  u << 1, 2, 3, 4;
  const Vector v = m.from_alpha(u);
  CHECK(v(0) == 0.0);
  CHECK(v(5) == 0.0);
  CHECK(m.alpha_part(v) == u);
  CHECK(m.in_alpha(v));
  CHECK_FALSE(m.in_alpha(v + m.z()));
  CHECK(testing::max_abs(m.n_projector() * m.b()) == 0.0);
}
