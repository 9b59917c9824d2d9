#pragma once

// Associative algebras over K given by structure constants.
//
// Elements are stored by restriction of scalars: an element with K-coordinates
// (y_0, ..., y_{m-1}) is the rational vector of length N = m*d whose entry
// i*d + l is coordinate l of y_i over the integral basis of K. The Q-basis
// element with index i*d + l is omega_l * a_i.

#include <optional>
#include <vector>

#include "csa/exact.hpp"
#include "csa/modp.hpp"
#include "csa/number_field.hpp"

namespace csa {

using Element = RatVector;

class Algebra {
 public:
  // gamma has m*m*m entries; a_i a_j = sum_k gamma[(i*m + j)*m + k] a_k.
  Algebra(NumberField K, std::size_t m, std::vector<FieldElem> gamma, bool check_associativity = true);

  const NumberField& field() const { return K_; }
  std::size_t dim() const { return m_; }
  std::size_t qdim() const { return N_; }
  std::optional<std::size_t> degree() const { return n_; }
  std::size_t require_degree() const;  // throws InputError unless m = n^2

  const FieldElem& gamma(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma_[(i * m_ + j) * m_ + k];
  }
  const std::vector<FieldElem>& constants() const { return gamma_; }
  // Structure constants over Q.
  const Rational& qconst(std::size_t I, std::size_t J, std::size_t K) const {
    return qconst_[(I * N_ + J) * N_ + K];
  }
  const std::vector<Rational>& qconstants() const { return qconst_; }

  const Element& one() const { return one_; }
  Element zero() const { return Element(N_); }
  Element basis(std::size_t I) const;
  Element from_field(const FieldElem& c) const;  // c * 1
  Element from_kcoords(const std::vector<FieldElem>& y) const;
  std::vector<FieldElem> kcoords(const Element& x) const;

  Element mul(const Element& x, const Element& y) const;
  Element kscale(const FieldElem& c, const Element& x) const;
  Element omega_times(std::size_t l, const Element& x) const;

  Matrix left_matrix(const Element& x) const;   // z -> x z, on Q-coordinates
  Matrix right_matrix(const Element& x) const;  // z -> z x
  Rational trace(const Element& x) const;       // regular trace over Q

  const std::vector<Rational>& trace_vector() const { return trace_of_basis_; }

 private:
  NumberField K_;
  std::size_t m_, d_, N_;
  std::optional<std::size_t> n_;
  std::vector<FieldElem> gamma_;
  std::vector<Rational> qconst_;
  std::vector<Rational> trace_of_basis_;
  Element one_;
};

Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const Rational& q, const Element& x);
bool is_zero(const Element& x);

// Q-dimension of A*y (left ideal generated by y).
std::size_t left_ideal_qdim(const Algebra& A, const Element& y);

// Matrix rank of y under any isomorphism A = M_n(K): dim_K(A y) / n.
std::size_t rank_of_element(const Algebra& A, const Element& y);
bool is_zero_divisor(const Algebra& A, const Element& y);
bool is_nilpotent(const Algebra& A, const Element& y);

// Rank tests that first work modulo a 61-bit prime and only fall back to exact
// elimination when the modular answer is not conclusive.
class FastRank {
 public:
  explicit FastRank(const Algebra& A);
  // Exact rank of y in the sense of rank_of_element.
  std::size_t rank(const Element& y) const;
  bool is_rank_one(const Element& y) const;
  bool is_zero_divisor(const Element& y) const;
  // Same tests for an element given modulo the prime, skipping the exact
  // confirmation: may only be used to reject.
  std::size_t qrank_mod(const modp::Vec& y) const;
  modp::u64 prime() const { return p_; }
  bool usable() const { return usable_; }
  std::optional<modp::Vec> reduce(const Element& y) const;

 private:
  const Algebra& A_;
  modp::u64 p_;
  bool usable_ = true;
  modp::Vec c_;  // qconst mod p
};

// Idempotent e in A*y with z*e = z for every z in A*y.
Element right_identity_of_left_ideal(const Algebra& A, const Element& y);

// Greedy K-independent subset of the given elements (indices).
std::vector<std::size_t> k_independent(const Algebra& A, const std::vector<Element>& v);

struct Corner {
  Algebra algebra;
  Matrix inclusion;  // N_A x N_B: Q-coordinates in B -> Q-coordinates in A
  Element lift(const Element& b) const { return inclusion.apply(b); }
  Element section(const Element& a) const;  // a must lie in eAe
};

Corner corner_algebra(const Algebra& A, const Element& e);

// Structure constants of A in a new K-basis b_0..b_{m-1} (given as elements).
Algebra rebase(const Algebra& A, const std::vector<Element>& new_basis);

}  // namespace csa
