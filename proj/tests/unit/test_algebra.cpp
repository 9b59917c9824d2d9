#include <gtest/gtest.h>

#include "csa/algebra.hpp"
#include "csa/errors.hpp"
#include "csa/instance_io.hpp"
#include "csa/splitter.hpp"

using namespace csa;

namespace {

const NumberField kQ = NumberField::rationals();

Element coords(std::initializer_list<long> v) {
  Element e;
  for (long x : v) e.emplace_back(x);
  return e;
}

// E_ij of M_n(Q) in the standard basis.
Element unit(std::size_t n, std::size_t i, std::size_t j) {
  Element e(n * n);
  e[i * n + j] = 1;
  return e;
}

}  // namespace

TEST(Algebra, StandardTableIdentity) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_EQ(A.one(), coords({1, 0, 0, 1}));
  EXPECT_EQ(A.degree(), 2u);
}

TEST(Algebra, PerturbedTableIsRejected) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  auto gamma = A.constants();
  gamma[(0 * 4 + 1) * 4 + 1][0] += 1;  // E11 E12 = 2 E12
  EXPECT_THROW(Algebra(kQ, 4, gamma, true), InputError);
}

TEST(Algebra, CommutativeThreeDimensional) {
  std::vector<FieldElem> g(27, kQ.zero());
  for (std::size_t i = 0; i < 3; ++i) g[(i * 3 + i) * 3 + i][0] = 1;
  const Algebra A(kQ, 3, g, true);
  EXPECT_FALSE(A.degree());
  EXPECT_EQ(A.one(), coords({1, 1, 1}));
  EXPECT_THROW(A.require_degree(), InputError);
}

TEST(Algebra, LeftRegularMatrices) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_EQ(A.left_matrix(A.one()), Matrix::identity(4));
  EXPECT_EQ(rank(A.left_matrix(unit(2, 0, 0))), 2u);
  EXPECT_TRUE(A.left_matrix(A.zero()).is_zero());
}

TEST(Algebra, RankOfElement) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_EQ(rank_of_element(A, unit(2, 0, 0)), 1u);
  EXPECT_EQ(rank_of_element(A, A.one()), 2u);
  EXPECT_EQ(rank_of_element(A, A.zero()), 0u);
  const FastRank fr(A);
  EXPECT_EQ(fr.rank(unit(2, 0, 1)), 1u);
  EXPECT_TRUE(fr.is_zero_divisor(unit(2, 1, 0)));
  EXPECT_FALSE(fr.is_zero_divisor(A.one()));
}

TEST(Algebra, RegularTrace) {
  const Algebra A = standard_matrix_algebra(kQ, 3);
  EXPECT_EQ(A.trace(A.one()), 9);
  EXPECT_EQ(A.trace(unit(3, 1, 1)), 3);
  EXPECT_EQ(A.trace(unit(3, 0, 2)), 0);
}

TEST(Algebra, NilpotentElement) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_TRUE(is_nilpotent(A, unit(2, 0, 1)));
  EXPECT_FALSE(is_nilpotent(A, unit(2, 0, 0)));
}

TEST(Algebra, RightIdentityOfLeftIdeal) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_EQ(right_identity_of_left_ideal(A, unit(2, 0, 0)), unit(2, 0, 0));
  EXPECT_EQ(right_identity_of_left_ideal(A, A.one()), A.one());
  const Element e = right_identity_of_left_ideal(A, unit(2, 0, 1));
  EXPECT_EQ(A.mul(e, e), e);
  EXPECT_EQ(rank_of_element(A, e), 1u);
  EXPECT_EQ(A.mul(unit(2, 0, 1), e), unit(2, 0, 1));
}

TEST(Algebra, CornerOfIdentityIsEverything) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const Corner c = corner_algebra(A, A.one());
  EXPECT_EQ(c.algebra.dim(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(c.section(c.lift(c.algebra.basis(i))), c.algebra.basis(i));
}

TEST(Algebra, CornerOfRankOneIdempotent) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const Corner c = corner_algebra(A, unit(2, 0, 0));
  EXPECT_EQ(c.algebra.dim(), 1u);
  EXPECT_EQ(c.lift(c.algebra.one()), unit(2, 0, 0));
}

TEST(Algebra, CornerOfRankTwoIdempotentInConjugatedM3) {
  GenOptions o;
  o.n = 3;
  o.seed = 7;
  const Instance inst = gen_instance(o);
  const Algebra A = inst.algebra();
  // E_l in the generated basis is row l of T^-1.
  Matrix T(9, 9);
  for (std::size_t i = 0; i < 81; ++i) T(i / 9, i % 9) = (*inst.hidden_witness)[i][0];
  const Matrix Ti = *inverse(T);
  const Element e = add(Ti.row_vector(0), Ti.row_vector(4));
  ASSERT_EQ(A.mul(e, e), e);
  EXPECT_EQ(rank_of_element(A, e), 2u);
  const Corner c = corner_algebra(A, e);
  EXPECT_EQ(c.algebra.dim(), 4u);
  EXPECT_EQ(c.algebra.degree(), 2u);
  const SplitReport rep = split(c.algebra);
  EXPECT_EQ(rep.iso.n, 2u);
  EXPECT_TRUE(verify(c.algebra, rep.witness.C, rep.iso.images).ok);
}

TEST(Algebra, RebasePreservesProducts) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const std::vector<Element> b{coords({1, 1, 0, 1}), coords({0, 1, 0, 0}), coords({1, 0, 2, 0}), coords({0, 0, 0, 3})};
  const Algebra B = rebase(A, b);
  EXPECT_EQ(B.degree(), 2u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Element lhs = A.zero();
      for (std::size_t k = 0; k < 4; ++k) lhs = add(lhs, scale(B.gamma(i, j, k)[0], b[k]));
      EXPECT_EQ(lhs, A.mul(b[i], b[j]));
    }
}

TEST(Algebra, KIndependentOverQuadraticField) {
  FieldDescriptor f;
  f.kind = FieldDescriptor::Kind::quadratic;
  f.D = 5;
  const NumberField K = NumberField::make(f);
  const Algebra A = standard_matrix_algebra(K, 2);
  const Element x = A.basis(0);                  // E11
  const Element wx = A.omega_times(1, x);         // omega E11, K-dependent on x
  const Element y = A.basis(1 * 2);               // E12
  EXPECT_EQ(k_independent(A, {x, wx, y}), (std::vector<std::size_t>{0, 2}));
}
