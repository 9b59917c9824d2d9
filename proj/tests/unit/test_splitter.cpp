#include <gtest/gtest.h>

#include <cmath>

#include "csa/apps.hpp"
#include "csa/errors.hpp"
#include "csa/instance_io.hpp"
#include "csa/splitter.hpp"
#include "oracles.hpp"

using namespace csa;

namespace {

const NumberField kQ = NumberField::rationals();

NumberField quadratic(long D) {
  FieldDescriptor f;
  f.kind = FieldDescriptor::Kind::quadratic;
  f.D = D;
  return NumberField::make(f);
}

Instance generated(std::size_t n, long D, std::uint64_t seed) {
  GenOptions g;
  g.n = n;
  g.seed = seed;
  if (D) {
    g.field.kind = FieldDescriptor::Kind::quadratic;
    g.field.D = D;
  }
  return gen_instance(g);
}

void expect_split(const Instance& inst, const SplitConfig& cfg = {}) {
  const Algebra A = inst.algebra();
  const SplitReport rep = split(A, cfg);
  const std::size_t n = *A.degree();
  EXPECT_EQ(rep.iso.n, n);
  EXPECT_EQ(rank_of_element(A, rep.witness.C), 1u);
  EXPECT_TRUE(verify(A, rep.witness.C, rep.iso.images).ok);
  std::string why;
  EXPECT_TRUE(oracle::check_witness(inst, witness_from_report(A, rep), why)) << why;
  EXPECT_LE(rep.stats.levels.size(), n - 1);
  EXPECT_EQ(rep.stats.short_violations, 0u);
  for (const auto& l : rep.stats.levels) EXPECT_LE(l.ratio, oracle::reducedness_constant(l.n * l.n * A.field().degree()));
  EXPECT_EQ(rep.stats.levels.front().discriminant, oracle::matrix_order_discriminant(n, A.field().descriptor().D));
}

}  // namespace

TEST(Splitter, BBoundRationals) {
  PrecisionGuard g(128);
  const BBound b = b_bound(kQ);
  EXPECT_EQ(b.value, 1);
  EXPECT_EQ(b.radius, 0);
}

TEST(Splitter, BBoundRealQuadratic) {
  PrecisionGuard g(128);
  const BBound b3 = b_bound(quadratic(3));
  EXPECT_LE(abs(b3.value - 2 * sqrt(Real(3))), b3.radius + pow2(-100));
  const BBound b5 = b_bound(quadratic(5));
  EXPECT_LE(abs(b5.value - sqrt(Real(5))), b5.radius + pow2(-100));
}

TEST(Splitter, BBoundImaginaryQuadratic) {
  PrecisionGuard g(128);
  // (2/pi)^{2s/d} |Delta|^{1/d} with s = 1, d = 2, Delta = -4
  const BBound b = b_bound(quadratic(-1));
  EXPECT_NEAR(static_cast<double>(b.value), 2.0 * 2.0 / M_PI, 1e-15);
}

TEST(Splitter, StandardM2FoundInReducedBasis) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const SplitReport rep = split(A);
  ASSERT_EQ(rep.stats.levels.size(), 1u);
  EXPECT_EQ(rep.stats.levels[0].found_in, "reduced-basis");
  EXPECT_TRUE(verify(A, rep.witness.C, rep.iso.images).ok);
}

TEST(Splitter, ConjugatedM2) {
  for (std::uint64_t seed : {1u, 2u, 3u}) expect_split(generated(2, 0, seed));
}

TEST(Splitter, ConjugatedByUpperTriangular) {
  // basis P E_ij P^-1 with P = [[1,1],[0,1]]
  const Algebra S = standard_matrix_algebra(kQ, 2);
  const auto M = [](long a, long b, long c, long d) {
    Element e;
    for (long x : {a, b, c, d}) e.emplace_back(x);
    return e;
  };
  const std::vector<Element> basis{M(1, -1, 0, 0), M(0, 1, 0, 0), M(1, -1, 1, -1), M(0, 1, 0, 1)};
  const Algebra A = rebase(S, basis);
  expect_split(instance_from_algebra(A));
}

TEST(Splitter, EnumerationFindsShortRankOne) {
  SplitConfig cfg;
  cfg.force_enumeration = true;
  const Instance inst = generated(2, 0, 4);
  const SplitReport rep = split(inst.algebra(), cfg);
  ASSERT_EQ(rep.stats.levels.size(), 1u);
  const LevelStats& l = rep.stats.levels[0];
  EXPECT_NE(l.found_in, "reduced-basis");
  EXPECT_TRUE(l.norm_below_n);
  ASSERT_EQ(l.norms.size(), 1u);
  EXPECT_LT(l.norms[0], 2.0);
  EXPECT_EQ(rep.stats.short_violations, 0u);
}

TEST(Splitter, ConjugatedM3UsesCornerRecursion) {
  const Instance inst = generated(3, 0, 1);
  expect_split(inst);
}

TEST(Splitter, QuadraticFields) {
  expect_split(generated(2, 5, 1));
  expect_split(generated(2, -1, 1));
}

TEST(Splitter, HamiltonQuaternionsAreNotSplit) {
  EXPECT_THROW(split(hamilton_quaternions()), BudgetExhausted);
}

TEST(Splitter, SearchForZeroDivisorOnDivisionAlgebra) {
  // (2, 5) is a division algebra that splits at infinity; the search is
  // exhaustive and certifies the absence of short zero divisors.
  SplitStats st;
  EXPECT_THROW(search(quaternion_algebra(5, 2), Target::zero_divisor, {}, st), NotSplit);
  EXPECT_EQ(st.short_violations, 0u);
}

TEST(Splitter, IsomorphismFromE11) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  Element e11(4);
  e11[0] = 1;
  const IsoMap iso = isomorphism_from_rank_one(A, e11);
  EXPECT_EQ(iso.n, 2u);
  // phi(1) = I
  KMatrix one = KMatrix(kQ, 2, 2);
  for (std::size_t i = 0; i < 4; ++i)
    if (A.one()[i] != 0) one = kadd(kQ, one, kscale(kQ, kQ.from_rational(A.one()[i]), iso.images[i]));
  EXPECT_EQ(one, kidentity(kQ, 2));
  EXPECT_TRUE(verify(A, e11, iso.images).ok);
  ASSERT_EQ(iso.inverse.size(), 4u);
}

TEST(Splitter, VerifyCatchesPerturbedImage) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  Element e11(4);
  e11[0] = 1;
  IsoMap iso = isomorphism_from_rank_one(A, e11);
  iso.images[1](0, 0) = kQ.add(iso.images[1](0, 0), kQ.one());
  const VerifyResult r = verify(A, e11, iso.images);
  EXPECT_FALSE(r.ok);
}

TEST(Splitter, VerifyRejectsRankTwoWitness) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  Element e11(4);
  e11[0] = 1;
  const IsoMap iso = isomorphism_from_rank_one(A, e11);
  const VerifyResult r = verify(A, A.one(), iso.images);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.check, "rank-one");
}

TEST(Splitter, Deterministic) {
  SplitConfig cfg;
  cfg.deterministic = true;
  const Algebra A = generated(2, 0, 9).algebra();
  const auto a = write_witness(witness_from_report(A, split(A, cfg)));
  const auto b = write_witness(witness_from_report(A, split(A, cfg)));
  EXPECT_EQ(a, b);
}
