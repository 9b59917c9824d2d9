#pragma once

// Applications of splitting: isomorphisms between central simple algebras,
// zero divisors, and norm equations from quadratic fields.

#include <string>
#include <vector>

#include "csa/algebra.hpp"
#include "csa/splitter.hpp"

namespace csa {

// A (x) B^op over the common field; basis a_i (x) b_j has index i*dim(B) + j.
Algebra tensor_opposite(const Algebra& A, const Algebra& B);

// The quaternion algebra over Q with basis 1, u, v, uv, u^2 = D, v^2 = a,
// vu = -uv.
Algebra quaternion_algebra(const Rational& D, const Rational& a);
Algebra hamilton_quaternions();

struct IsoResult {
  std::vector<Element> sigma;  // sigma[i] = image of the i-th K-basis element of A, in B
  SplitStats stats;
  std::size_t left_steps = 0;
  std::size_t right_steps = 0;
  std::uint64_t commuting_checks = 0;  // pairs (a_i, b_j) checked
  std::uint64_t rank_checks = 0;       // left rank re-checked after right steps
};

struct IsoOptions {
  // Over Q, move A and B to bases of maximal orders before forming A (x) B^op.
  bool rebase_to_orders = true;
};

IsoResult algebra_isomorphism(const Algebra& A, const Algebra& B, const SplitConfig& config = {},
                              const IsoOptions& options = {});

// Exact checks: linear by construction, unital, multiplicative, bijective.
VerifyResult verify_isomorphism(const Algebra& A, const Algebra& B, const std::vector<Element>& sigma);

struct ZeroDivisorResult {
  Element y;
  std::size_t rank = 0;
  SplitStats stats;
};

ZeroDivisorResult find_zero_divisor(const Algebra& A, const SplitConfig& config = {});

enum class NormStatus { solved, unsolvable, inconclusive };

struct NormResult {
  NormStatus status = NormStatus::inconclusive;
  Rational x0, x1;  // x = x0 + x1 sqrt(D)
  std::string reason;
  SplitStats stats;
};

// N(x) = x0^2 - D x1^2 = a for x in Q(sqrt(D)).
NormResult solve_norm_equation(long D, const Rational& a, const SplitConfig& config = {}, bool shortcuts = true);

}  // namespace csa
