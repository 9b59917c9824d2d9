#pragma once

// Numerical representations phi_i : A -> M_n(R or C), one per archimedean
// place of K, and the map Phi that turns an order into a lattice in R^{n^2 d}.

#include <random>
#include <vector>

#include "csa/algebra.hpp"
#include "csa/lattice.hpp"
#include "csa/real.hpp"

namespace csa {

struct SplittingElement {
  Element a;                       // Q-coordinates
  std::vector<FieldElem> min_poly;  // over K, constant term first, monic of degree n
  std::size_t samples = 0;         // elements tried, including this one
};

// Minimal polynomial of x over K (monic, constant term first).
std::vector<FieldElem> kminimal_polynomial(const Algebra& A, const Element& x);

struct PlaceRoots {
  std::vector<Complex> roots;
  Real radius;       // common inclusion radius
  Real separation;   // min distance between roots
  std::vector<bool> real;
};

// Roots of sigma(f) for f over K at the given place.
PlaceRoots place_roots(const NumberField& K, const Embedding& place, const std::vector<FieldElem>& f);

// Samples small integral combinations of the order basis until the minimal
// polynomial has degree n and distinct roots at the place (with a real root
// at a real place). Throws BudgetExhausted after `budget` samples.
SplittingElement splitting_element(const Algebra& A, const Matrix& order_basis, const Embedding& place,
                                   std::mt19937_64& rng, std::size_t budget);

struct ArchRepresentation {
  std::size_t place = 0;
  bool real = true;
  std::size_t n = 0;
  unsigned precision_bits = 0;
  std::vector<Complex> omega;   // sigma of the integral basis of K
  std::vector<CMatrix> images;  // phi(a_i) for the K-basis of A
  Real residual;                // max defect over unitality and basis pairs
  std::size_t samples = 0;

  CMatrix apply(const Element& x) const;  // x in Q-coordinates
};

// Raised when the ideal basis or the residual gate fails at this precision.
struct RepresentationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ArchRepresentation build_representation(const Algebra& A, const Embedding& place, std::size_t index,
                                        const SplittingElement& s, unsigned precision_bits);

struct LatticeEmbedding {
  std::size_t n = 0;
  std::size_t dim = 0;  // n^2 d
  std::vector<ArchRepresentation> places;  // real places first
  std::vector<std::vector<Real>> vectors;  // Phi(lambda_t)

  std::vector<Real> phi(const Element& x) const;
  // Squared Frobenius norm per place of the element with Phi-vector v.
  std::vector<Real> place_norms2(const std::vector<Real>& v) const;
};

LatticeEmbedding phi_interleave(const Algebra& A, const Matrix& order_basis, std::vector<ArchRepresentation> reps);

// All places at once; retries with fresh splitting elements when a build fails.
LatticeEmbedding embed_order(const Algebra& A, const Matrix& order_basis, unsigned precision_bits,
                             std::mt19937_64& rng, std::size_t sample_budget, std::size_t* samples = nullptr);

}  // namespace csa
