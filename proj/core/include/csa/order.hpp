#pragma once

// Z-orders in an algebra over K (viewed over Q by restriction of scalars) and
// maximal order construction by p-local enlargement.

#include <vector>

#include "csa/algebra.hpp"
#include "csa/factor.hpp"
#include "csa/modp.hpp"

namespace csa {

struct Order {
  Matrix basis;  // N x N; row t is lambda_t in Q-coordinates of A
  Integer discriminant;
};

// Integer multiplication table of an order in its own basis.
class OrderTable {
 public:
  OrderTable(const Algebra& A, const Matrix& basis);

  std::size_t size() const { return N_; }
  const Integer& at(std::size_t a, std::size_t b, std::size_t c) const { return t_[(a * N_ + b) * N_ + c]; }
  const Integer& trace(std::size_t a) const { return tr_[a]; }
  const IntVector& one() const { return one_; }
  const Matrix& basis() const { return basis_; }

  // Coordinates over the order basis of an element of A, if integral.
  std::optional<IntVector> coordinates(const Element& x) const;
  RatVector rational_coordinates(const Element& x) const;
  Element element(const IntVector& c) const;
  Element element(const RatVector& c) const;

  IntVector mul(const IntVector& x, const IntVector& y) const;
  Integer discriminant() const;

 private:
  std::size_t N_;
  Matrix basis_;
  Matrix basis_inv_;
  std::vector<Integer> t_;
  IntVector tr_;
  IntVector one_;
};

// Lattice spanned by rational generators, in HNF, as basis rows.
Matrix lattice_basis(const std::vector<RatVector>& generators);

// LLL-reduced basis of the same lattice under the coordinate inner product.
// Hermite bases can be very skewed, which hurts both random sampling and
// the working precision of the embedded lattice.
Matrix reduce_lattice_basis(const Matrix& basis);

Order initial_order(const Algebra& A);
Order make_order(const Algebra& A, const std::vector<Element>& generators);
Integer order_discriminant(const Algebra& A, const Matrix& basis);
bool is_order(const Algebra& A, const Matrix& basis);
// True when the lattice with basis `inner` is contained in the one with basis `outer`.
bool contains(const Matrix& outer, const Matrix& inner);

// Basis (rows, reduced echelon, over the order basis) of the radical of
// Lambda/p Lambda.
modp::Mat radical_mod_p(const OrderTable& T, modp::u64 p);

// Maximal two-sided ideals of Lambda/p Lambda, each as a spanning set.
std::vector<modp::Mat> maximal_ideals_mod_p(const OrderTable& T, modp::u64 p, const modp::Mat& radical);

enum class Side { left, right };

// The left (or right) order of the ideal I = p*Lambda + lift(ideal): all x in
// A with x I in I (I x in I). Returns Lambda itself when nothing is gained.
Order idealizer(const Algebra& A, const OrderTable& T, modp::u64 p, const modp::Mat& ideal, Side side);

// One enlargement step at p: radical idealizers first, then maximal ideals.
// Returns the input unchanged when Lambda is p-maximal.
Order p_enlarge(const Algebra& A, const Order& order, const Integer& p);

struct MaximalOrderLog {
  std::vector<Integer> primes;  // primes p with p^2 | disc that were examined
  std::size_t enlargements = 0;
  Integer initial_discriminant;
};

Order maximal_order(const Algebra& A, const FactorBudget& budget = {}, MaximalOrderLog* log = nullptr);
Order maximal_order_from(const Algebra& A, Order start, const FactorBudget& budget = {},
                         MaximalOrderLog* log = nullptr);

}  // namespace csa
