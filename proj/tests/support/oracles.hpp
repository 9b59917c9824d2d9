#pragma once

// Reference computations for the tests. Deliberately naive and independent
// of the library's algorithms: plain rational elimination, direct index
// formulas, textbook Hilbert symbols.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "csa/instance_io.hpp"

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;
using QMat = std::vector<std::vector<Q>>;

Q det(QMat a);
std::size_t rank(QMat a);

// Gram determinant of the Z-basis omega_a E_ij of M_n(O_K) under the regular
// trace of M_n(K) over Q; K = Q (D = 0) or Q(sqrt D).
Z matrix_order_discriminant(std::size_t n, long D = 0);

// gamma_m^{m/2} (3/2)^m 2^{m(m-1)/2} from a table of gamma_m^m.
long double reducedness_constant(std::size_t m);

// Hilbert symbol (a, b)_p for nonzero integers; p = -1 is the real place.
int hilbert(const Z& a, const Z& b, const Z& p);
// x^2 - D y^2 = a has a rational solution iff all local symbols are 1.
bool norm_solvable(long D, const Q& a);

// Arithmetic in Q (D = 0) or Q(sqrt D) on integral-basis coordinates.
struct Field {
  long D = 0;
  std::size_t degree() const { return D == 0 ? 1 : 2; }
  std::vector<Q> mul(const std::vector<Q>& x, const std::vector<Q>& y) const;
  std::vector<Q> add(const std::vector<Q>& x, const std::vector<Q>& y) const;
  std::vector<Q> zero() const { return std::vector<Q>(degree()); }
  bool is_zero(const std::vector<Q>& x) const;
};

Field field_of(const csa::FieldDescriptor& f);

// Images multiplicative, spanning M_n(K), and phi(C) of matrix rank one.
bool check_witness(const csa::Instance& inst, const csa::WitnessFile& w, std::string& why);

// sigma multiplicative and bijective between two algebras over Q, coordinates
// given over the respective bases.
bool check_isomorphism(const csa::Instance& A, const csa::Instance& B, const std::vector<std::vector<Q>>& sigma,
                       std::string& why);

}  // namespace oracle
