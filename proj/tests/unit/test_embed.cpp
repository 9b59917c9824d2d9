#include <gtest/gtest.h>

#include "csa/embed.hpp"
#include "csa/errors.hpp"
#include "csa/instance_io.hpp"
#include "csa/order.hpp"

using namespace csa;

namespace {

const NumberField kQ = NumberField::rationals();

Element coords(std::initializer_list<long> v) {
  Element e;
  for (long x : v) e.emplace_back(x);
  return e;
}

Algebra generated(std::size_t n, long D, std::uint64_t seed) {
  GenOptions g;
  g.n = n;
  g.seed = seed;
  if (D) {
    g.field.kind = FieldDescriptor::Kind::quadratic;
    g.field.D = D;
  }
  return gen_instance(g).algebra();
}

double residual_of_products(const Algebra& A, const ArchRepresentation& rep) {
  Real worst = 0;
  for (std::size_t i = 0; i < A.qdim(); ++i)
    for (std::size_t j = 0; j < A.qdim(); ++j) {
      const CMatrix d = rep.apply(A.mul(A.basis(i), A.basis(j))) - rep.apply(A.basis(i)) * rep.apply(A.basis(j));
      worst = std::max(worst, frobenius(d));
    }
  return static_cast<double>(worst);
}

}  // namespace

TEST(Embed, MinimalPolynomialOfDiagonal) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const auto f = kminimal_polynomial(A, coords({1, 0, 0, 2}));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0][0], 2);
  EXPECT_EQ(f[1][0], -3);
  EXPECT_EQ(f[2][0], 1);
  PrecisionGuard g(128);
  const auto pr = place_roots(kQ, kQ.embeddings(128)[0], f);
  ASSERT_EQ(pr.roots.size(), 2u);
  EXPECT_TRUE(pr.real[0] && pr.real[1]);
  EXPECT_NEAR(static_cast<double>(pr.separation), 1.0, 1e-20);
}

TEST(Embed, MultiplesOfIdentityAreRejected) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  EXPECT_EQ(kminimal_polynomial(A, A.one()).size(), 2u);
  std::mt19937_64 rng(1);
  PrecisionGuard g(128);
  const Matrix only_one = Matrix::from_rows({A.one()});
  EXPECT_THROW(splitting_element(A, only_one, kQ.embeddings(128)[0], rng, 10), BudgetExhausted);
}

TEST(Embed, SamplerOnConjugatedM3) {
  const Algebra A = generated(3, 0, 7);
  const Order o = maximal_order(A);
  std::mt19937_64 rng(7);
  PrecisionGuard g(128);
  const SplittingElement s = splitting_element(A, o.basis, kQ.embeddings(128)[0], rng, 20);
  EXPECT_LE(s.samples, 20u);
  EXPECT_EQ(s.min_poly.size(), 4u);
}

TEST(Embed, StandardRepresentationOverQ) {
  const Algebra A = standard_matrix_algebra(kQ, 2);
  const Order o = maximal_order(A);
  std::mt19937_64 rng(1);
  const LatticeEmbedding L = embed_order(A, o.basis, 128, rng, 64);
  PrecisionGuard g(128);
  EXPECT_EQ(L.dim, 4u);
  ASSERT_EQ(L.places.size(), 1u);
  const CMatrix one = L.places[0].apply(A.one());
  EXPECT_NEAR(static_cast<double>(frobenius(one)), std::sqrt(2.0), 1e-30);
  EXPECT_LT(static_cast<double>(L.places[0].residual), std::ldexp(1.0, -64));
  EXPECT_LT(residual_of_products(A, L.places[0]), 1e-30);
}

TEST(Embed, PhiOfOneHasNormRPlusSTimesN) {
  for (long D : {0L, 5L, -1L}) {
    const Algebra A = generated(2, D, 1);
    const Matrix basis = reduce_lattice_basis(maximal_order(A).basis);
    std::mt19937_64 rng(1);
    const LatticeEmbedding L = embed_order(A, basis, 128, rng, 64);
    PrecisionGuard g(128);
    const auto v = L.phi(A.one());
    EXPECT_EQ(v.size(), 4 * A.field().degree());
    Real s = 0;
    for (const auto& x : v) s += x * x;
    const double want = static_cast<double>(A.field().places() * 2);
    EXPECT_NEAR(static_cast<double>(s), want, 1e-25) << D;
    for (const auto& p : L.place_norms2(v)) EXPECT_NEAR(static_cast<double>(p), 2.0, 1e-25);
  }
}

TEST(Embed, ComplexPlaceActsByConjugateScalar) {
  const Algebra A = generated(2, -1, 1);
  const Matrix basis = reduce_lattice_basis(maximal_order(A).basis);
  std::mt19937_64 rng(1);
  const LatticeEmbedding L = embed_order(A, basis, 128, rng, 64);
  PrecisionGuard g(128);
  ASSERT_EQ(L.places.size(), 1u);
  EXPECT_FALSE(L.places[0].real);
  const FieldElem i = A.field().from_power_basis({0, 1});
  const Complex si = NumberField::embed(A.field().embeddings(128)[0], i);
  const CMatrix m = L.places[0].apply(A.from_field(i));
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const Complex want = r == c ? si : Complex();
      EXPECT_LT(static_cast<double>((m(r, c) - want).abs()), 1e-30);
    }
  EXPECT_LT(residual_of_products(A, L.places[0]), 1e-25);
}

TEST(Embed, LatticeVectorsAreIndependent) {
  const Algebra A = generated(2, 5, 2);
  const Matrix basis = reduce_lattice_basis(maximal_order(A).basis);
  std::mt19937_64 rng(2);
  const LatticeEmbedding L = embed_order(A, basis, 128, rng, 64);
  PrecisionGuard g(128);
  EXPECT_EQ(L.vectors.size(), 8u);
  EXPECT_GT(static_cast<double>(abs_determinant(L.vectors)), 1e-6);
}
