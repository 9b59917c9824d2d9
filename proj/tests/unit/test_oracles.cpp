#include <gtest/gtest.h>

#include "oracles.hpp"

// The oracles are only useful if they are right; check them on textbook values.

TEST(Oracles, Determinant) {
  EXPECT_EQ(oracle::det({{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(oracle::det({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(oracle::rank({{1, 2}, {2, 4}}), 1u);
}

TEST(Oracles, MatrixOrderDiscriminants) {
  EXPECT_EQ(abs(oracle::matrix_order_discriminant(1)), 1);
  EXPECT_EQ(abs(oracle::matrix_order_discriminant(2)), 16);
  EXPECT_EQ(abs(oracle::matrix_order_discriminant(3)), 19683);
  // disc(O_K)^{n^2} times the Q value squared
  EXPECT_EQ(abs(oracle::matrix_order_discriminant(2, 5)), 625 * 256);
  EXPECT_EQ(abs(oracle::matrix_order_discriminant(2, -1)), 256 * 256);
}

TEST(Oracles, ReducednessConstant) {
  EXPECT_DOUBLE_EQ(static_cast<double>(oracle::reducedness_constant(1)), 1.5);
  EXPECT_DOUBLE_EQ(static_cast<double>(oracle::reducedness_constant(4)), 648.0);
}

TEST(Oracles, HilbertSymbols) {
  using oracle::Z;
  // (-1, -1) ramifies exactly at 2 and infinity
  EXPECT_EQ(oracle::hilbert(-1, -1, Z(-1)), -1);
  EXPECT_EQ(oracle::hilbert(-1, -1, Z(2)), -1);
  EXPECT_EQ(oracle::hilbert(-1, -1, Z(3)), 1);
  // (5, 2): 2 is not a square mod 5
  EXPECT_EQ(oracle::hilbert(5, 2, Z(5)), -1);
  EXPECT_EQ(oracle::hilbert(5, 2, Z(2)), -1);
  // (a, 1 - a) = 1
  for (long a : {-6L, -2L, 3L, 7L, 10L})
    for (long p : {-1L, 2L, 3L, 5L, 7L}) EXPECT_EQ(oracle::hilbert(a, 1 - a, Z(p)), 1) << a << " " << p;
}

TEST(Oracles, NormSolvability) {
  EXPECT_TRUE(oracle::norm_solvable(5, 4));
  EXPECT_TRUE(oracle::norm_solvable(5, -1));  // (2 + sqrt 5)(2 - sqrt 5) = -1
  EXPECT_TRUE(oracle::norm_solvable(2, 7));   // 3^2 - 2 = 7
  EXPECT_FALSE(oracle::norm_solvable(5, 2));
  EXPECT_FALSE(oracle::norm_solvable(-1, 3));
  EXPECT_FALSE(oracle::norm_solvable(-1, -1));
  EXPECT_TRUE(oracle::norm_solvable(-1, 2));
  EXPECT_TRUE(oracle::norm_solvable(3, oracle::Q(1, 2)) == oracle::norm_solvable(3, 2));
}
