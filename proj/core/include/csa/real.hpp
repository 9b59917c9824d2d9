#pragma once

// Variable-precision binary floating point (MPFR) and a minimal complex type.

#include <boost/multiprecision/mpfr.hpp>

#include "csa/exact.hpp"

namespace csa {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Sets the working precision for newly created Reals; restores on exit.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits_;
};

unsigned digits10_for_bits(unsigned bits);

Real to_real(const Rational& q);
Real to_real(const Integer& z);
Integer round_to_integer(const Real& x);
Integer floor_to_integer(const Real& x);
Rational to_rational(const Real& x);  // exact value of the binary float
Real pow2(long e);
std::string to_decimal(const Real& x, int digits = 20);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm2()); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm2();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
};

// Dense complex matrix, row-major.
struct CMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Complex& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix operator+(const CMatrix& x, const CMatrix& y);
CMatrix operator-(const CMatrix& x, const CMatrix& y);
CMatrix operator*(const Complex& s, const CMatrix& x);
CMatrix adjoint(const CMatrix& x);
Real frobenius(const CMatrix& x);

}  // namespace csa
