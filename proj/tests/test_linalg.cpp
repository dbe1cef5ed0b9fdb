#include "chsoliton/linalg.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace chs;

TEST_CASE("orthonormal span drops dependent columns") {
  Matrix m(3, 3);
  m << 1, 2, 0,
       0, 0, 1,
       0, 0, 0;
  const Matrix q = orthonormal_span(m);
  CHECK(q.cols() == 2);
  CHECK((q.transpose() * q - Matrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((m - q * (q.transpose() * m)).norm() < 1e-14);
}

TEST_CASE("roundoff-sized spans count as zero") {
  Matrix m = Matrix::Constant(4, 2, 1e-17);
  CHECK(orthonormal_span(m).cols() == 0);
  CHECK(rank_threshold(Eigen::VectorXd::Constant(2, 1e-17), 1e-10) == doctest::Approx(1e-10));
}

TEST_CASE("orthogonal complement completes a frame") {
  testing::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = testing::uniform_int(rng, 2, 8);
    const int k = testing::uniform_int(rng, 0, d);
    const Matrix q = orthonormal_span(testing::gaussian(rng, d, k));
    const Matrix c = orthogonal_complement(q, d);
    REQUIRE(c.cols() == d - q.cols());
    Matrix full(d, d);
    full << q, c;
    CHECK((full.transpose() * full - Matrix::Identity(d, d)).norm() < 1e-12);
  }
}

TEST_CASE("null space") {
  Matrix m(2, 4);
  m << 1, 0, 1, 0,
       0, 1, 0, 1;
  const Matrix n = null_space(m);
  CHECK(n.cols() == 2);
  CHECK((m * n).norm() < 1e-14);
  CHECK(null_space(Matrix::Identity(3, 3)).cols() == 0);
}

TEST_CASE("gram schmidt keeps column order") {
  Matrix m(3, 3);
  m << 0, 1, 1,
       2, 1, 1,
       0, 0, 0;
  const Matrix q = gram_schmidt(m);
  REQUIRE(q.cols() == 2);
  CHECK(q.col(0).isApprox(Vector::Unit(3, 1)));
  CHECK(q.col(1).isApprox(Vector::Unit(3, 0)));
}

TEST_CASE("intersection of spans") {
  Matrix a(3, 2), b(3, 2);
  a << 1, 0, 0, 1, 0, 0;
  b << 0, 0, 1, 0, 0, 1;
  const Matrix i = intersect_spans(a, b);
  REQUIRE(i.cols() == 1);
  CHECK(std::abs(std::abs(i(1, 0)) - 1.0) < 1e-12);
  CHECK(max_abs(Matrix(0, 0)) == 0.0);
}
