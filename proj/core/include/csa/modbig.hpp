#pragma once

// The parts of modp needed for p-local work at primes too large for a
// machine word, on GMP integers.

#include <optional>
#include <random>
#include <vector>

#include "csa/exact.hpp"

namespace csa::modbig {

using Vec = std::vector<Integer>;
using Mat = std::vector<Vec>;
using Poly = std::vector<Integer>;

Integer reduce(const Integer& x, const Integer& q);
Integer add(const Integer& a, const Integer& b, const Integer& q);
Integer sub(const Integer& a, const Integer& b, const Integer& q);
Integer mul(const Integer& a, const Integer& b, const Integer& q);
Integer pow(const Integer& a, const Integer& e, const Integer& q);
Integer inv(const Integer& a, const Integer& p);

Mat mul(const Mat& a, const Mat& b, const Integer& q);
Mat identity(std::size_t n);
Integer trace(const Mat& a, const Integer& q);
Mat power(Mat a, const Integer& e, const Integer& q);

struct Echelon {
  Mat rows;
  std::vector<std::size_t> pivots;
};
Echelon echelon(Mat m, const Integer& p);
std::size_t rank(Mat m, const Integer& p);
Mat kernel(const Mat& m, std::size_t ncols, const Integer& p);
Mat row_space(const Mat& m, const Integer& p);

void trim(Poly& f);
int degree(const Poly& f);
Poly poly_mul(const Poly& a, const Poly& b, const Integer& p);
Poly poly_sub(const Poly& a, const Poly& b, const Integer& p);
Poly poly_rem(Poly a, const Poly& b, const Integer& p);
Poly poly_divexact(Poly a, const Poly& b, const Integer& p);
Poly poly_gcd(Poly a, Poly b, const Integer& p);
Poly poly_powmod(const Poly& base, const Integer& e, const Poly& mod, const Integer& p);
Poly monic(Poly f, const Integer& p);

// Distinct roots in F_p, ascending.
std::vector<Integer> roots(const Poly& f, const Integer& p, std::mt19937_64& rng);

}  // namespace csa::modbig
