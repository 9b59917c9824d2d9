#include <gtest/gtest.h>

#include "csa/apps.hpp"
#include "csa/errors.hpp"
#include "csa/instance_io.hpp"
#include "oracles.hpp"

using namespace csa;

namespace {

const NumberField kQ = NumberField::rationals();

Instance generated(std::uint64_t seed) {
  GenOptions g;
  g.seed = seed;
  return gen_instance(g);
}

std::vector<std::vector<oracle::Q>> rows_of(const std::vector<Element>& sigma) {
  std::vector<std::vector<oracle::Q>> out;
  for (const auto& s : sigma) out.emplace_back(s.begin(), s.end());
  return out;
}

}  // namespace

TEST(Apps, TensorOppositeDimensions) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const Algebra T = tensor_opposite(A, hamilton_quaternions());
  EXPECT_EQ(T.dim(), 16u);
  EXPECT_EQ(T.degree(), 4u);
}

TEST(Apps, QuaternionRelations) {
  const Algebra H = quaternion_algebra(3, -7);
  const Element u = H.basis(1), v = H.basis(2);
  EXPECT_EQ(H.mul(u, u), scale(3, H.one()));
  EXPECT_EQ(H.mul(v, v), scale(-7, H.one()));
  EXPECT_EQ(H.mul(v, u), scale(-1, H.mul(u, v)));
}

TEST(Apps, IsomorphismOfStandardWithItself) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const IsoResult r = algebra_isomorphism(A, A);
  EXPECT_TRUE(verify_isomorphism(A, A, r.sigma).ok);
  const Instance I = instance_from_algebra(A);
  std::string why;
  EXPECT_TRUE(oracle::check_isomorphism(I, I, rows_of(r.sigma), why)) << why;
}

TEST(Apps, IsomorphismOfConjugatedCopies) {
  const Instance a = generated(11), b = generated(12);
  const Algebra A = a.algebra(), B = b.algebra();
  const IsoResult r = algebra_isomorphism(A, B);
  EXPECT_TRUE(verify_isomorphism(A, B, r.sigma).ok);
  std::string why;
  EXPECT_TRUE(oracle::check_isomorphism(a, b, rows_of(r.sigma), why)) << why;
  EXPECT_GT(r.commuting_checks, 0u);
}

TEST(Apps, VerifyIsomorphismRejectsNonHomomorphism) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  std::vector<Element> sigma;
  for (std::size_t i = 0; i < 4; ++i) sigma.push_back(A.basis(i));
  std::swap(sigma[0], sigma[1]);
  EXPECT_FALSE(verify_isomorphism(A, A, sigma).ok);
  std::string why;
  const Instance I = instance_from_algebra(A);
  EXPECT_FALSE(oracle::check_isomorphism(I, I, rows_of(sigma), why));
}

TEST(Apps, MatrixAlgebraIsNotIsomorphicToHamilton) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_ANY_THROW(algebra_isomorphism(A, hamilton_quaternions()));
}

TEST(Apps, ZeroDivisorOfStandardM2) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const ZeroDivisorResult r = find_zero_divisor(A);
  EXPECT_TRUE(is_zero_divisor(A, r.y));
  EXPECT_FALSE(is_zero(r.y));
  EXPECT_EQ(r.rank, 1u);
}

TEST(Apps, ZeroDivisorOfConjugatedM3) {
  GenOptions g;
  g.n = 3;
  g.seed = 5;
  const Algebra A = gen_instance(g).algebra();
  const ZeroDivisorResult r = find_zero_divisor(A);
  EXPECT_TRUE(is_zero_divisor(A, r.y));
  EXPECT_GE(r.rank, 1u);
  EXPECT_LE(r.rank, 2u);
}

TEST(Apps, ZeroDivisorNeedsDegreeTwo) {
  std::vector<FieldElem> g{kQ.one()};
  EXPECT_THROW(find_zero_divisor(Algebra(kQ, 1, g)), InputError);
}

TEST(Apps, NormEquationSolvedExactly) {
  const NormResult r = solve_norm_equation(5, 4);
  ASSERT_EQ(r.status, NormStatus::solved);
  EXPECT_EQ(r.x0 * r.x0 - 5 * r.x1 * r.x1, 4);
  const NormResult s = solve_norm_equation(5, 4, {}, false);
  ASSERT_EQ(s.status, NormStatus::solved);
  EXPECT_EQ(s.x0 * s.x0 - 5 * s.x1 * s.x1, 4);
}

TEST(Apps, NormEquationUnsolvable) {
  ASSERT_FALSE(oracle::norm_solvable(5, 2));
  EXPECT_EQ(solve_norm_equation(5, 2).status, NormStatus::unsolvable);
  EXPECT_EQ(solve_norm_equation(-1, -3).status, NormStatus::unsolvable);
}

TEST(Apps, NormEquationsAgreeWithHilbertSymbols) {
  for (long D : {2L, 3L, 5L, 6L, 7L, -2L, -3L}) {
    for (long a : {-5L, -3L, -2L, -1L, 2L, 3L, 5L, 7L, 11L}) {
      const bool solvable = oracle::norm_solvable(D, a);
      const NormResult r = solve_norm_equation(D, a);
      if (r.status == NormStatus::solved) {
        EXPECT_TRUE(solvable) << D << " " << a;
        EXPECT_EQ(r.x0 * r.x0 - D * r.x1 * r.x1, a) << D << " " << a;
      } else if (r.status == NormStatus::unsolvable) {
        EXPECT_FALSE(solvable) << D << " " << a;
      } else {
        EXPECT_FALSE(solvable) << D << " " << a << ": " << r.reason;
      }
    }
  }
}
