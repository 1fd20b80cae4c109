#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ainfty/sparse_matrix.hpp"

using namespace ainfty;

TEST_CASE("field parsing") {
  CHECK(Field::parse("Q") == Field::rationals());
  CHECK(Field::parse("F7") == Field::prime(7));
  CHECK(Field::parse("F2") == Field::prime(2));
  CHECK_THROWS_AS(Field::parse("F4"), Error);
  CHECK_THROWS_AS(Field::parse("F1"), Error);
  CHECK_THROWS_AS(Field::parse("R"), Error);
  CHECK_THROWS_AS(Field::parse(""), Error);
  CHECK(Field::prime(7).to_string() == "F7");
  CHECK(Field::rationals().to_string() == "Q");
}

TEST_CASE("rational arithmetic is exact") {
  Field Q = Field::rationals();
  Scalar third = Scalar::parse(Q, "1/3");
  Scalar sixth = Scalar::parse(Q, "1/6");
  CHECK((third + sixth) == Scalar::parse(Q, "1/2"));
  CHECK((third - third).is_zero());
  CHECK((third * Scalar::from_int(Q, 3)).is_one());
  CHECK((Scalar::from_int(Q, 1) / Scalar::from_int(Q, -4)) == Scalar::parse(Q, "-1/4"));
  CHECK(Scalar::parse(Q, "2/4") == Scalar::parse(Q, "1/2"));
  CHECK(Scalar::parse(Q, "-6/-4") == Scalar::parse(Q, "3/2"));
  CHECK_THROWS_AS(third / Scalar::zero(Q), Error);
  // no float contamination: (1/3)*3 - 1 is exactly zero
  CHECK((third * Scalar::from_int(Q, 3) - Scalar::one(Q)).is_zero());
}

TEST_CASE("prime field arithmetic") {
  Field F7 = Field::prime(7);
  Scalar a = Scalar::from_int(F7, 3), b = Scalar::from_int(F7, 5);
  CHECK((a + b) == Scalar::from_int(F7, 1));
  CHECK((a * b) == Scalar::from_int(F7, 1));
  CHECK((-a) == Scalar::from_int(F7, 4));
  CHECK(a.inverse() == Scalar::from_int(F7, 5));
  CHECK((a / b) == Scalar::from_int(F7, 3 * 3));  // 3 * 5^{-1} = 3*3 = 9 = 2
  CHECK((a / b) == Scalar::from_int(F7, 2));
  CHECK(Scalar::from_int(F7, -1) == Scalar::from_int(F7, 6));
}

TEST_CASE("mixing fields throws") {
  Scalar q = Scalar::one(Field::rationals());
  Scalar f = Scalar::one(Field::prime(5));
  CHECK_THROWS_AS(q + f, Error);
  CHECK_THROWS_AS(q * f, Error);
}

TEST_CASE("scalar string round trip") {
  Field Q = Field::rationals();
  for (const char* t : {"0", "1", "-1", "7/3", "-22/7"})
    CHECK(Scalar::parse(Q, Scalar::parse(Q, t).to_string()) == Scalar::parse(Q, t));
  Field F5 = Field::prime(5);
  for (int k = 0; k < 5; ++k) {
    Scalar s = Scalar::from_int(F5, k);
    CHECK(Scalar::parse(F5, s.to_string()) == s);
  }
}

TEST_CASE("rref, rank, kernel, image over Q") {
  Field Q = Field::rationals();
  // [[1,2,3],[2,4,6],[1,0,1]] has rank 2, kernel dim 1
  SparseMatrix A(3, 3, Q);
  int vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (vals[r][c]) A.set(r, c, Scalar::from_int(Q, vals[r][c]));
  CHECK(rank(A) == 2);
  auto ker = kernel_basis(A);
  REQUIRE(ker.size() == 1);
  // check A * k = 0
  for (const auto& k : ker) {
    SparseVec img = A.apply(k);
    CHECK(img.empty());
  }
  auto img = image_basis(A);
  CHECK(img.size() == 2);
}

TEST_CASE("solve reproduces a known solution") {
  Field F7 = Field::prime(7);
  SparseMatrix A(2, 2, F7);
  A.set(0, 0, Scalar::from_int(F7, 2));
  A.set(0, 1, Scalar::from_int(F7, 1));
  A.set(1, 1, Scalar::from_int(F7, 3));
  SparseVec x{{0, Scalar::from_int(F7, 4)}, {1, Scalar::from_int(F7, 5)}};
  SparseVec b = A.apply(x);
  auto sol = solve(A, b);
  REQUIRE(sol.has_value());
  SparseVec check = A.apply(*sol);
  SparseVec diff = check;
  vec_add_scaled(diff, b, Scalar::from_int(F7, -1));
  CHECK(diff.empty());
}

TEST_CASE("solve reports inconsistency") {
  Field Q = Field::rationals();
  SparseMatrix A(2, 1, Q);
  A.set(0, 0, Scalar::one(Q));
  SparseVec b{{1, Scalar::one(Q)}};  // second row cannot be hit
  CHECK_FALSE(solve(A, b).has_value());
}
