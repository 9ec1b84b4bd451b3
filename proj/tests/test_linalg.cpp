// Small dense helpers used by the characteristic decomposition.

#include <doctest.h>

#include <cmath>
#include <random>

#include "srhd/linalg.hpp"

using namespace srhd;

TEST_CASE("invert recovers the identity") {
  std::mt19937_64 rng(3u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Mat<4> A;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) A.a[i][j] = dist(rng) + (i == j ? 3.0 : 0.0);
    Mat<4> Ainv;
    REQUIRE(invert(A, Ainv));
    Mat<4> P = matmul(A, Ainv);
    for (int i = 0; i < 4; ++i) P.a[i][i] -= 1.0;
    CHECK(mat_norm_inf(P) < 1e-12);
  }
}

TEST_CASE("invert reports singular input") {
  Mat<3> A;  // rank 1
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A.a[i][j] = (i + 1.0) * (j + 1.0);
  Mat<3> out;
  CHECK_FALSE(invert(A, out));
}

TEST_CASE("nullspace finds the kernel of a rank-deficient matrix") {
  // M = outer products spanning a 2-dimensional row space in R^4
  std::mt19937_64 rng(5u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    double r1[4], r2[4];
    for (int j = 0; j < 4; ++j) {
      r1[j] = dist(rng);
      r2[j] = dist(rng);
    }
    Mat<4> M;
    for (int i = 0; i < 4; ++i) {
      const double c1 = dist(rng), c2 = dist(rng);
      for (int j = 0; j < 4; ++j) M.a[i][j] = c1 * r1[j] + c2 * r2[j];
    }
    Vec<4> basis[4];
    const int got = nullspace(M, 1e-10, basis, 4);
    CHECK(got >= 2);  // rank at most 2
    for (int k = 0; k < got; ++k) {
      CHECK(norm2(basis[k]) == doctest::Approx(1.0).epsilon(1e-12));
      const Vec<4> y = matvec(M, basis[k]);
      CHECK(norm_inf(y) < 1e-9);
    }
  }
}

TEST_CASE("nullspace of a regular matrix is empty") {
  Mat<3> M = Mat<3>::identity();
  M.a[0][1] = 0.5;
  Vec<3> basis[3];
  CHECK(nullspace(M, 1e-12, basis, 3) == 0);
}
