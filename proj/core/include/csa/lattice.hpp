#pragma once

// LLL reduction of a real lattice with a length-product certificate,
// coefficient boxes from Cramer's rule, and enumeration of short
// combinations.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "csa/exact.hpp"
#include "csa/real.hpp"

namespace csa {

using RealVector = std::vector<Real>;

// |det| of a square real matrix given by rows (partial pivoting).
Real abs_determinant(std::vector<RealVector> rows);

// c_m = gamma_m^{m/2} (3/2)^m 2^{m(m-1)/2}, exact Hermite constants for m <= 8
// and gamma_m <= m beyond.
Real reducedness_constant(std::size_t m);

// Integral LLL (de Weger / Cohen) on linearly independent integer rows, with
// delta = p/q. Returns the unimodular transform U with reduced = U * input.
std::vector<IntVector> lll_integral(std::vector<IntVector>& rows, const Rational& delta);

struct ReducedBasis {
  std::vector<IntVector> transform;  // row i: coefficients of b_i over the input basis
  std::vector<RealVector> vectors;   // b_i
  RealVector lengths;
  Real det;    // |det Gamma|
  Real ratio;  // prod |b_i| / det
  Real c_m;
  unsigned rounding_bits = 0;
  bool certified = false;
};

// Reduces round(2^q * basis) for q = bits/2, doubling q up to `bits` until the
// true vectors satisfy prod |b_i| <= c_m det. Throws PrecisionCeiling.
ReducedBasis lll_reduce(const std::vector<RealVector>& basis, double delta, unsigned bits);

// beta_i = floor(c L / |b_i|), rounded outward; c defaults to c_m. Entries
// are clamped at 2^40.
std::vector<long> coefficient_box(const ReducedBasis& rb, const Real& L);
std::vector<long> coefficient_box(const RealVector& lengths, const Real& c, const Real& L);

struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;
  bool passed() const { return at && std::chrono::steady_clock::now() > *at; }
  static Deadline in_seconds(std::optional<double> s);
};

struct EnumerationStats {
  std::uint64_t visited = 0;  // leaves handed to the visitor
  std::uint64_t nodes = 0;
  std::size_t shell = 0;      // shell of the hit
  bool beyond_cap = false;    // hit came from the ball phase
};

// Visitor gets the coefficient vector and its squared length (double
// estimate); returns true to stop.
using Visitor = std::function<bool(const std::vector<long>&, double)>;

// Sign-canonical integer vectors inside the box, by max-norm shell 1, 2, ...,
// up to `cap`, lexicographically ascending within a shell. When gram is
// given, combinations with squared length above radius2 are pruned.
class ShellEnumerator {
 public:
  ShellEnumerator(std::vector<long> box, std::optional<std::vector<std::vector<double>>> gram = std::nullopt,
                  double radius2 = 0);

  // Returns the hit, if any, within shells 1..cap.
  std::optional<std::vector<long>> shells(std::size_t cap, const Visitor& visit, EnumerationStats& stats,
                                          std::uint64_t node_budget = UINT64_MAX, const Deadline& deadline = {});
  // Everything in the box (and ball) with max-norm above `cap`, depth first.
  std::optional<std::vector<long>> beyond(std::size_t cap, const Visitor& visit, EnumerationStats& stats,
                                          std::uint64_t node_budget, const Deadline& deadline = {});

  std::size_t max_shell() const;

 private:
  std::optional<std::vector<long>> run(long lim_shell, long min_max, const Visitor& visit,
                                       EnumerationStats& stats, std::uint64_t node_budget, const Deadline& deadline);

  std::size_t m_;
  std::vector<long> box_;
  bool prune_ = false;
  double radius2_ = 0;
  // Cholesky data of the Gram matrix with coordinates visited from the first.
  std::vector<std::vector<double>> mu_;
  std::vector<double> B_;
};

}  // namespace csa
