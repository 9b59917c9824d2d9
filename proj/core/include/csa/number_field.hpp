#pragma once

// The base field K = Q(alpha) with a fixed integral basis, its signature and
// its archimedean embeddings.

#include <optional>
#include <string>
#include <vector>

#include "csa/exact.hpp"
#include "csa/real.hpp"

namespace csa {

struct FieldDescriptor {
  enum class Kind { rationals, quadratic, general };
  Kind kind = Kind::rationals;
  long D = 0;                             // quadratic: squarefree, not 0 or 1
  IntVector min_poly;                     // general: monic, constant term first
  std::vector<RatVector> integral_basis;  // general: rows over the power basis
  Integer discriminant;                   // general
};

// Coordinates over the integral basis.
using FieldElem = RatVector;

struct Embedding {
  bool real = true;
  Complex alpha;               // image of the generator
  Real radius;                 // enclosure radius for alpha
  std::vector<Complex> omega;  // images of the integral basis
};

class NumberField {
 public:
  static NumberField rationals();
  static NumberField make(const FieldDescriptor& desc);

  const FieldDescriptor& descriptor() const { return desc_; }
  std::size_t degree() const { return d_; }
  const Integer& discriminant() const { return disc_; }
  int real_places() const { return r_; }
  int complex_places() const { return s_; }
  int places() const { return r_ + s_; }
  const Polynomial& min_poly() const { return f_; }
  const Matrix& basis_matrix() const { return basis_; }
  // omega_i * omega_j = sum_k table(i,j,k) omega_k
  const Integer& table(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * d_ + j) * d_ + k];
  }

  FieldElem zero() const { return FieldElem(d_); }
  FieldElem one() const { return one_; }
  FieldElem from_rational(const Rational& q) const;
  bool is_zero(const FieldElem& x) const;
  bool is_integral(const FieldElem& x) const;

  FieldElem add(const FieldElem& x, const FieldElem& y) const;
  FieldElem sub(const FieldElem& x, const FieldElem& y) const;
  FieldElem neg(const FieldElem& x) const;
  FieldElem mul(const FieldElem& x, const FieldElem& y) const;
  FieldElem scale(const Rational& q, const FieldElem& x) const;
  std::optional<FieldElem> inverse(const FieldElem& x) const;

  Matrix mult_matrix(const FieldElem& x) const;  // column l holds x * omega_l
  Rational norm(const FieldElem& x) const;
  Rational trace(const FieldElem& x) const;

  FieldElem from_power_basis(const RatVector& c) const;
  RatVector to_power_basis(const FieldElem& x) const;

  std::vector<Embedding> embeddings(unsigned precision_bits) const;
  static Complex embed(const Embedding& e, const FieldElem& x);

  std::string to_string(const FieldElem& x) const;

 private:
  void finish();

  FieldDescriptor desc_;
  std::size_t d_ = 1;
  Polynomial f_;
  Matrix basis_;      // rows: omega_l over 1, alpha, ..., alpha^{d-1}
  Matrix basis_inv_;  // power basis -> omega coordinates
  std::vector<Integer> table_;
  FieldElem one_;
  Integer disc_ = 1;
  int r_ = 1, s_ = 0;
};

// Restriction of scalars: a rows x cols matrix over K, entries row-major,
// becomes the (rows*d) x (cols*d) rational matrix of the same Q-linear map on
// coordinate vectors indexed i*d + l.
Matrix restrict_scalars(const NumberField& K, std::size_t rows, std::size_t cols,
                        const std::vector<FieldElem>& entries);

// Real roots of a squarefree polynomial over Q, isolated by Sturm sequences
// and refined by bisection to width 2^-bits. Returned ascending as rational
// enclosing intervals.
struct RootInterval {
  Rational lo, hi;
};
std::vector<RootInterval> real_roots(const Polynomial& f, unsigned bits);

// All complex roots of a squarefree polynomial with complex coefficients,
// by Durand-Kerner at the current working precision; each comes with an
// inclusion radius.
struct ComplexRoot {
  Complex z;
  Real radius;
};
std::vector<ComplexRoot> complex_roots(const std::vector<Complex>& coeffs);

}  // namespace csa
