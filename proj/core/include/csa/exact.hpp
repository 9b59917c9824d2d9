#pragma once

// Exact rational arithmetic and linear algebra over Q and Z.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csa {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Integer lcm_of_denominators(std::span<const Rational> values);

// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<RatVector>& rows);
  static Matrix from_columns(const std::vector<RatVector>& cols, std::size_t height);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  RatVector row_vector(std::size_t r) const;
  RatVector column(std::size_t c) const;
  const std::vector<Rational>& entries() const { return entries_; }

  bool is_zero() const;
  Matrix transpose() const;
  RatVector apply(std::span<const Rational> v) const;  // M * v

  friend bool operator==(const Matrix& a, const Matrix& b) = default;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

// Solution set of M x = rhs: one particular solution (columns matching the
// right-hand sides) if consistent, plus a basis of ker M.
struct SolveResult {
  std::optional<Matrix> particular;
  std::vector<RatVector> kernel;
};

SolveResult solve_and_kernel(const Matrix& m, const std::optional<Matrix>& rhs = std::nullopt);
std::vector<RatVector> kernel(const Matrix& m);
std::optional<RatVector> solve(const Matrix& m, std::span<const Rational> rhs);
std::optional<Matrix> inverse(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);

// Indices of pivot columns of the row echelon form, i.e. a maximal set of
// linearly independent columns chosen greedily from the left.
std::vector<std::size_t> independent_columns(const Matrix& m);

// Integer matrices used for lattices, given as lists of row vectors.
Integer determinant(const std::vector<IntVector>& square);
std::size_t rank(const std::vector<IntVector>& rows);

struct HermiteForm {
  std::vector<IntVector> basis;        // nonzero rows, upper triangular
  std::vector<std::size_t> pivots;     // pivot column of each row
  std::optional<Integer> determinant;  // product of pivots when full rank
};

// Row-style Hermite normal form: upper triangular, positive pivots, entries
// above each pivot reduced into [0, pivot).
HermiteForm hnf_and_det(const std::vector<IntVector>& rows);

// Coordinates of v in the lattice basis given in Hermite form, if v lies in
// the lattice.
std::optional<IntVector> hnf_coordinates(const HermiteForm& hnf, std::span<const Integer> v);

// Univariate polynomial over Q, coefficients stored from the constant term up.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RatVector coefficients);
  static Polynomial monomial(std::size_t degree, const Rational& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const RatVector& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  std::string to_string(const std::string& var = "x") const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);

 private:
  void trim();
  RatVector coeffs_;
};

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};
PolyDivision divide(const Polynomial& a, const Polynomial& b);
Polynomial gcd(Polynomial a, Polynomial b);

Matrix evaluate(const Polynomial& p, const Matrix& m);

struct MinCharPoly {
  Polynomial minimal;
  Polynomial characteristic;
};

MinCharPoly min_char_poly(const Matrix& m);
Polynomial characteristic_polynomial(const Matrix& m);
Polynomial minimal_polynomial(const Matrix& m);

}  // namespace csa
