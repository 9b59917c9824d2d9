#pragma once

// Arithmetic over Z/qZ for q < 2^63: vectors, matrices, and polynomials over
// prime fields, plus a few helpers for prime-power moduli.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "csa/exact.hpp"

namespace csa::modp {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

inline u64 add(u64 a, u64 b, u64 q) {
  u64 s = a + b;
  return (s >= q || s < a) ? s - q : s;
}
inline u64 sub(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + (q - b); }
inline u64 mul(u64 a, u64 b, u64 q) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % q);
}
u64 pow(u64 a, u64 e, u64 q);
u64 inv(u64 a, u64 p);  // p prime, a != 0 mod p

u64 reduce(const Integer& x, u64 q);
// Image of a rational in Z/qZ, none if q shares a factor with the denominator.
std::optional<u64> reduce(const Rational& x, u64 q);

// Matrix product modulo q.
Mat mul(const Mat& a, const Mat& b, u64 q);
Mat identity(std::size_t n);
u64 trace(const Mat& a, u64 q);
Mat power(Mat a, u64 e, u64 q);

// Reduced row echelon form over F_p; pivots are the pivot columns.
struct Echelon {
  Mat rows;
  std::vector<std::size_t> pivots;
};
Echelon echelon(Mat m, u64 p);
std::size_t rank(Mat m, u64 p);

// Basis of {x : M x = 0} over F_p (M given by rows, x has M[0].size() entries).
Mat kernel(const Mat& m, std::size_t ncols, u64 p);

// Basis of the row span, in reduced echelon form.
Mat row_space(const Mat& m, u64 p);

// Polynomials over F_p, coefficients from the constant term up, trimmed.
using Poly = std::vector<u64>;

void trim(Poly& f);
int degree(const Poly& f);
Poly poly_mul(const Poly& a, const Poly& b, u64 p);
Poly poly_sub(const Poly& a, const Poly& b, u64 p);
Poly poly_rem(Poly a, const Poly& b, u64 p);
Poly poly_divexact(Poly a, const Poly& b, u64 p);
Poly poly_gcd(Poly a, Poly b, u64 p);  // monic
Poly poly_powmod(const Poly& base, const Integer& e, const Poly& mod, u64 p);
Poly monic(Poly f, u64 p);

// Distinct roots in F_p of f (f nonzero). Deterministic for a given rng state.
std::vector<u64> roots(const Poly& f, u64 p, std::mt19937_64& rng);

// Degrees of the irreducible factors of a squarefree f over F_p, with
// multiplicity, from distinct-degree factorization.
std::vector<int> factor_degrees(const Poly& f, u64 p);

}  // namespace csa::modp
