#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "csa/errors.hpp"
#include "csa/lattice.hpp"
#include "oracles.hpp"

using namespace csa;

namespace {

std::vector<RealVector> rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<RealVector> out;
  for (auto& row : r) {
    RealVector v;
    for (long x : row) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

long max_abs(const std::vector<long>& v) {
  long m = 0;
  for (long x : v) m = std::max(m, std::labs(x));
  return m;
}

bool sign_canonical(const std::vector<long>& v) {
  for (long x : v)
    if (x != 0) return x > 0;
  return false;
}

}  // namespace

TEST(Lattice, ReducednessConstantSmall) {
  PrecisionGuard g(128);
  EXPECT_EQ(static_cast<double>(reducedness_constant(1)), 1.5);
  EXPECT_NEAR(static_cast<double>(reducedness_constant(4)), 648.0, 1e-9);
}

TEST(Lattice, ReducednessConstantMatchesOracle) {
  PrecisionGuard g(128);
  for (std::size_t m = 1; m <= 12; ++m) {
    const long double want = oracle::reducedness_constant(m);
    EXPECT_NEAR(static_cast<double>(reducedness_constant(m) / Real(static_cast<double>(want))), 1.0, 1e-12) << m;
  }
  for (std::size_t m = 1; m < 20; ++m) EXPECT_LT(reducedness_constant(m), reducedness_constant(m + 1)) << m;
}

TEST(Lattice, OrthogonalBasisIsAlreadyReduced) {
  PrecisionGuard g(128);
  const ReducedBasis rb = lll_reduce(rows({{2, 0}, {0, 2}}), 0.99, 128);
  EXPECT_TRUE(rb.certified);
  EXPECT_NEAR(static_cast<double>(rb.ratio), 1.0, 1e-12);
  for (const auto& len : rb.lengths) EXPECT_NEAR(static_cast<double>(len), 2.0, 1e-12);
}

TEST(Lattice, EvenLatticeReducesToShortestVectors) {
  PrecisionGuard g(128);
  const ReducedBasis rb = lll_reduce(rows({{2, 0}, {1, 1}}), 0.99, 128);
  // brute force over coefficients in [-2, 2]: the shortest nonzero length^2
  long best = LONG_MAX;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      if (a || b) best = std::min(best, (2 * a + b) * (2 * a + b) + b * b);
  ASSERT_EQ(best, 2);
  for (const auto& len : rb.lengths) EXPECT_NEAR(static_cast<double>(len * len), 2.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(rb.det), 2.0, 1e-12);
}

TEST(Lattice, CertificateHoldsOnRandomBases) {
  PrecisionGuard g(128);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 6;
    std::vector<RealVector> b(m, RealVector(m));
    for (auto& r : b)
      for (auto& x : r) x = Real(static_cast<long>(rng() % 2001) - 1000) / 7;
    if (abs_determinant(b) < Real(1e-6)) continue;
    const ReducedBasis rb = lll_reduce(b, 0.99, 128);
    EXPECT_TRUE(rb.certified);
    EXPECT_LE(static_cast<double>(rb.ratio), oracle::reducedness_constant(m));
    EXPECT_NEAR(static_cast<double>(rb.det / abs_determinant(b)), 1.0, 1e-9);
    // transform is unimodular
    std::vector<IntVector> U = rb.transform;
    EXPECT_EQ(abs(determinant(U)), 1);
  }
}

TEST(Lattice, IntegralLLLTransform) {
  std::vector<IntVector> b{{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
  const std::vector<IntVector> orig = b;
  const auto U = lll_integral(b, Rational(99, 100));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += U[i][k] * orig[k][j];
      EXPECT_EQ(s, b[i][j]);
    }
  EXPECT_EQ(abs(determinant(b)), abs(determinant(orig)));
}

TEST(Lattice, CoefficientBoxes) {
  PrecisionGuard g(128);
  EXPECT_EQ(coefficient_box({Real(1), Real(1), Real(1)}, Real(1), Real(1)), (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(coefficient_box({Real(2)}, Real(3) / 2, Real(3)), (std::vector<long>{2}));
  EXPECT_EQ(coefficient_box({Real(1)}, Real(1), pow2(60)), (std::vector<long>{1L << 40}));
}

TEST(Lattice, ShellEnumerationUnitBox) {
  ShellEnumerator e({1, 1});
  std::vector<std::vector<long>> seen;
  EnumerationStats st;
  const auto hit = e.shells(8, [&](const std::vector<long>& x, double) {
    seen.push_back(x);
    return false;
  }, st);
  EXPECT_FALSE(hit);
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen.front(), (std::vector<long>{0, 1}));
  EXPECT_EQ(st.visited, 4u);
  for (const auto& x : seen) EXPECT_TRUE(sign_canonical(x));
}

TEST(Lattice, ShellsAreOrderedAndComplete) {
  const std::vector<long> box{2, 1, 3};
  ShellEnumerator e(box);
  std::vector<std::vector<long>> seen;
  EnumerationStats st;
  e.shells(8, [&](const std::vector<long>& x, double) {
    seen.push_back(x);
    return false;
  }, st);
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LE(max_abs(seen[i - 1]), max_abs(seen[i]));
  // brute force: sign-canonical nonzero points of the box
  std::set<std::vector<long>> want;
  for (long a = -2; a <= 2; ++a)
    for (long b = -1; b <= 1; ++b)
      for (long c = -3; c <= 3; ++c)
        if (sign_canonical({a, b, c})) want.insert({a, b, c});
  EXPECT_EQ(std::set<std::vector<long>>(seen.begin(), seen.end()), want);
  EXPECT_EQ(seen.size(), want.size());
}

TEST(Lattice, ZeroBoxPinsCoordinate) {
  ShellEnumerator e({2, 0, 2});
  EnumerationStats st;
  e.shells(8, [&](const std::vector<long>& x, double) {
    EXPECT_EQ(x[1], 0);
    return false;
  }, st);
  EXPECT_EQ(st.visited, 12u);
}

TEST(Lattice, ShellCapAndBeyond) {
  ShellEnumerator e({3, 3});
  EnumerationStats st;
  std::size_t first = 0, second = 0;
  e.shells(1, [&](const std::vector<long>&, double) { return ++first, false; }, st);
  e.beyond(1, [&](const std::vector<long>& x, double) {
    EXPECT_GT(max_abs(x), 1);
    return ++second, false;
  }, st, UINT64_MAX);
  EXPECT_EQ(first + second, (7u * 7u - 1) / 2);
}

TEST(Lattice, StopsAtFirstHit) {
  ShellEnumerator e({3, 3});
  EnumerationStats st;
  const auto hit = e.shells(8, [](const std::vector<long>& x, double) { return x == std::vector<long>{2, -1}; }, st);
  ASSERT_TRUE(hit);
  EXPECT_EQ(*hit, (std::vector<long>{2, -1}));
  EXPECT_EQ(st.shell, 2u);
}

TEST(Lattice, PruningMatchesBruteForceBall) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 3;
    std::vector<std::vector<double>> b(m, std::vector<double>(m));
    for (auto& r : b)
      for (auto& x : r) x = static_cast<double>(static_cast<long>(rng() % 21) - 10) / 3;
    std::vector<std::vector<double>> G(m, std::vector<double>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) G[i][j] += b[i][k] * b[j][k];
    double det = G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1]) - G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0]) +
                 G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0]);
    if (det < 1e-3) continue;
    const double r2 = 30;
    auto len2 = [&](const std::vector<long>& x) {
      double s = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += G[i][j] * x[i] * x[j];
      return s;
    };
    const std::vector<long> box{6, 6, 6};
    std::set<std::vector<long>> want;
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y)
        for (long z = -6; z <= 6; ++z) {
          const std::vector<long> v{x, y, z};
          if (sign_canonical(v) && len2(v) <= r2 * (1 - 1e-9)) want.insert(v);
        }
    ShellEnumerator e(box, G, r2);
    std::set<std::vector<long>> got;
    EnumerationStats st;
    e.shells(8, [&](const std::vector<long>& x, double l2) {
      EXPECT_NEAR(l2, len2(x), 1e-6 * (1 + l2));
      if (len2(x) <= r2 * (1 - 1e-9)) got.insert(x);
      return false;
    }, st);
    EXPECT_EQ(got, want) << trial;
  }
}

TEST(Lattice, NodeBudget) {
  ShellEnumerator e({50, 50, 50});
  EnumerationStats st;
  EXPECT_THROW(e.shells(50, [](const std::vector<long>&, double) { return false; }, st, 1000), BudgetExhausted);
}
