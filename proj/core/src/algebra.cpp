#include "csa/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csa/errors.hpp"

namespace csa {

Element add(const Element& x, const Element& y) {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

Element sub(const Element& x, const Element& y) {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

Element scale(const Rational& q, const Element& x) {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = q * x[i];
  return z;
}

bool is_zero(const Element& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
}

Algebra::Algebra(NumberField K, std::size_t m, std::vector<FieldElem> table, bool check_associativity)
    : K_(std::move(K)), m_(m), d_(K_.degree()), N_(m * K_.degree()), gamma_(std::move(table)) {
  if (m_ == 0) throw InputError("algebra dimension must be positive");
  if (gamma_.size() != m_ * m_ * m_) throw InputError("structure constant table has wrong size");
  for (const auto& g : gamma_)
    if (g.size() != d_) throw InputError("structure constant has wrong number of field coordinates");
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m_))));
  if (root * root == m_) n_ = root;

  // omega_l * omega_l' in omega coordinates.
  std::vector<FieldElem> omega_products(d_ * d_, FieldElem(d_));
  for (std::size_t l = 0; l < d_; ++l)
    for (std::size_t l2 = 0; l2 < d_; ++l2)
      for (std::size_t t = 0; t < d_; ++t) omega_products[l * d_ + l2][t] = K_.table(l, l2, t);

  qconst_.assign(N_ * N_ * N_, 0);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t k = 0; k < m_; ++k) {
        const FieldElem& g = gamma(i, j, k);
        if (K_.is_zero(g)) continue;
        for (std::size_t l = 0; l < d_; ++l)
          for (std::size_t l2 = 0; l2 < d_; ++l2) {
            FieldElem c = K_.mul(omega_products[l * d_ + l2], g);
            for (std::size_t u = 0; u < d_; ++u)
              qconst_[((i * d_ + l) * N_ + (j * d_ + l2)) * N_ + (k * d_ + u)] = c[u];
          }
      }

  if (check_associativity) {
    // K-bilinearity holds by construction, so basis triples over K suffice.
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j)
        for (std::size_t k = 0; k < m_; ++k) {
          std::vector<FieldElem> lhs(m_, K_.zero()), rhs(m_, K_.zero());
          for (std::size_t t = 0; t < m_; ++t) {
            const FieldElem& g1 = gamma(i, j, t);
            if (!K_.is_zero(g1))
              for (std::size_t u = 0; u < m_; ++u) {
                const FieldElem& g2 = gamma(t, k, u);
                if (!K_.is_zero(g2)) lhs[u] = K_.add(lhs[u], K_.mul(g1, g2));
              }
            const FieldElem& g3 = gamma(j, k, t);
            if (!K_.is_zero(g3))
              for (std::size_t u = 0; u < m_; ++u) {
                const FieldElem& g4 = gamma(i, t, u);
                if (!K_.is_zero(g4)) rhs[u] = K_.add(rhs[u], K_.mul(g3, g4));
              }
          }
          if (lhs != rhs) {
            std::ostringstream msg;
            msg << "associativity fails for basis triple (" << i << ", " << j << ", " << k << ")";
            throw InputError(msg.str());
          }
        }
  }

  // Identity: x a_i = a_i = a_i x for the K-basis, written over Q.
  Matrix sys(2 * m_ * N_, N_);
  RatVector rhs(2 * m_ * N_);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t I = i * d_;
    for (std::size_t k = 0; k < N_; ++k) {
      for (std::size_t J = 0; J < N_; ++J) {
        sys((2 * i) * N_ + k, J) = qconst(J, I, k);
        sys((2 * i + 1) * N_ + k, J) = qconst(I, J, k);
      }
      rhs[(2 * i) * N_ + k] = (k == I) ? 1 : 0;
      rhs[(2 * i + 1) * N_ + k] = (k == I) ? 1 : 0;
    }
  }
  auto e = solve(sys, rhs);
  if (!e) throw InputError("algebra has no two-sided identity element");
  one_ = std::move(*e);

  trace_of_basis_.assign(N_, 0);
  for (std::size_t I = 0; I < N_; ++I)
    for (std::size_t k = 0; k < N_; ++k) trace_of_basis_[I] += qconst(I, k, k);
}

std::size_t Algebra::require_degree() const {
  if (!n_) throw InputError("algebra dimension " + std::to_string(m_) + " is not a perfect square");
  return *n_;
}

Element Algebra::basis(std::size_t I) const {
  Element e(N_);
  e[I] = 1;
  return e;
}

Element Algebra::from_field(const FieldElem& c) const { return kscale(c, one_); }

Element Algebra::from_kcoords(const std::vector<FieldElem>& y) const {
  Element x(N_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t l = 0; l < d_; ++l) x[i * d_ + l] = y[i][l];
  return x;
}

std::vector<FieldElem> Algebra::kcoords(const Element& x) const {
  std::vector<FieldElem> y(m_, FieldElem(d_));
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t l = 0; l < d_; ++l) y[i][l] = x[i * d_ + l];
  return y;
}

Element Algebra::mul(const Element& x, const Element& y) const {
  Element z(N_);
  for (std::size_t I = 0; I < N_; ++I) {
    if (x[I] == 0) continue;
    for (std::size_t J = 0; J < N_; ++J) {
      if (y[J] == 0) continue;
      const Rational xy = x[I] * y[J];
      const Rational* row = &qconst_[(I * N_ + J) * N_];
      for (std::size_t k = 0; k < N_; ++k)
        if (row[k] != 0) z[k] += xy * row[k];
    }
  }
  return z;
}

Element Algebra::kscale(const FieldElem& c, const Element& x) const {
  Element z(N_);
  for (std::size_t i = 0; i < m_; ++i) {
    FieldElem xi(x.begin() + i * d_, x.begin() + (i + 1) * d_);
    FieldElem p = K_.mul(c, xi);
    for (std::size_t l = 0; l < d_; ++l) z[i * d_ + l] = p[l];
  }
  return z;
}

Element Algebra::omega_times(std::size_t l, const Element& x) const {
  FieldElem w(d_);
  w[l] = 1;
  return kscale(w, x);
}

Matrix Algebra::left_matrix(const Element& x) const {
  Matrix L(N_, N_);
  for (std::size_t I = 0; I < N_; ++I) {
    if (x[I] == 0) continue;
    for (std::size_t J = 0; J < N_; ++J) {
      const Rational* row = &qconst_[(I * N_ + J) * N_];
      for (std::size_t k = 0; k < N_; ++k)
        if (row[k] != 0) L(k, J) += x[I] * row[k];
    }
  }
  return L;
}

Matrix Algebra::right_matrix(const Element& y) const {
  Matrix R(N_, N_);
  for (std::size_t I = 0; I < N_; ++I) {
    for (std::size_t J = 0; J < N_; ++J) {
      if (y[J] == 0) continue;
      const Rational* row = &qconst_[(I * N_ + J) * N_];
      for (std::size_t k = 0; k < N_; ++k)
        if (row[k] != 0) R(k, I) += y[J] * row[k];
    }
  }
  return R;
}

Rational Algebra::trace(const Element& x) const {
  Rational t = 0;
  for (std::size_t I = 0; I < N_; ++I)
    if (x[I] != 0) t += x[I] * trace_of_basis_[I];
  return t;
}

// ---------------------------------------------------------------- rank tests

std::size_t left_ideal_qdim(const Algebra& A, const Element& y) { return rank(A.right_matrix(y)); }

std::size_t rank_of_element(const Algebra& A, const Element& y) {
  const std::size_t n = A.require_degree();
  const std::size_t d = A.field().degree();
  const std::size_t q = left_ideal_qdim(A, y);
  if (q % (n * d) != 0) {
    throw StructuralFailure("dim_K(A y) = " + std::to_string(q / d) + " is not divisible by n = " +
                            std::to_string(n));
  }
  return q / (n * d);
}

bool is_zero_divisor(const Algebra& A, const Element& y) { return rank(A.left_matrix(y)) < A.qdim(); }

bool is_nilpotent(const Algebra& A, const Element& y) {
  return characteristic_polynomial(A.left_matrix(y)) == Polynomial::monomial(A.qdim());
}

FastRank::FastRank(const Algebra& A) : A_(A), p_((modp::u64(1) << 61) - 1) {
  const auto& c = A.qconstants();
  c_.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto r = modp::reduce(c[i], p_);
    if (!r) {
      usable_ = false;
      return;
    }
    c_[i] = *r;
  }
}

std::optional<modp::Vec> FastRank::reduce(const Element& y) const {
  modp::Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto r = modp::reduce(y[i], p_);
    if (!r) return std::nullopt;
    out[i] = *r;
  }
  return out;
}

std::size_t FastRank::qrank_mod(const modp::Vec& y) const {
  const std::size_t N = A_.qdim();
  modp::Mat R(N, modp::Vec(N, 0));
  for (std::size_t I = 0; I < N; ++I)
    for (std::size_t J = 0; J < N; ++J) {
      if (!y[J]) continue;
      const modp::u64* row = &c_[(I * N + J) * N];
      for (std::size_t k = 0; k < N; ++k)
        if (row[k]) R[k][I] = modp::add(R[k][I], modp::mul(y[J], row[k], p_), p_);
    }
  return modp::rank(std::move(R), p_);
}

std::size_t FastRank::rank(const Element& y) const {
  if (usable_) {
    if (auto r = reduce(y); r && qrank_mod(*r) == A_.qdim()) return A_.require_degree();
  }
  return rank_of_element(A_, y);
}

bool FastRank::is_rank_one(const Element& y) const {
  const std::size_t nd = A_.require_degree() * A_.field().degree();
  if (usable_) {
    if (auto r = reduce(y); r && qrank_mod(*r) > nd) return false;
  }
  return !is_zero(y) && rank_of_element(A_, y) == 1;
}

bool FastRank::is_zero_divisor(const Element& y) const {
  if (usable_) {
    if (auto r = reduce(y); r && qrank_mod(*r) == A_.qdim()) return false;
  }
  return csa::is_zero_divisor(A_, y);
}

// ---------------------------------------------------------------- idempotents

Element right_identity_of_left_ideal(const Algebra& A, const Element& y) {
  if (is_zero(y)) throw StructuralFailure("right identity requested for the zero left ideal");
  Matrix R = A.right_matrix(y);
  std::vector<std::size_t> cols = independent_columns(R);
  std::vector<Element> w;
  for (auto c : cols) w.push_back(R.column(c));
  const std::size_t N = A.qdim(), t = w.size();

  // unknown c: e = sum_j c_j w_j with w_s e = w_s for all s
  Matrix sys(t * N, t);
  RatVector rhs(t * N);
  for (std::size_t s = 0; s < t; ++s) {
    for (std::size_t j = 0; j < t; ++j) {
      Element p = A.mul(w[s], w[j]);
      for (std::size_t k = 0; k < N; ++k) sys(s * N + k, j) = p[k];
    }
    for (std::size_t k = 0; k < N; ++k) rhs[s * N + k] = w[s][k];
  }
  auto c = solve(sys, rhs);
  if (!c) throw StructuralFailure("left ideal A*y has no right identity");
  Element e(N);
  for (std::size_t j = 0; j < t; ++j)
    if ((*c)[j] != 0)
      for (std::size_t k = 0; k < N; ++k) e[k] += (*c)[j] * w[j][k];
  if (A.mul(e, e) != e) throw StructuralFailure("right identity of A*y is not idempotent");
  return e;
}

std::vector<std::size_t> k_independent(const Algebra& A, const std::vector<Element>& v) {
  const std::size_t d = A.field().degree();
  std::vector<std::size_t> chosen;
  std::vector<RatVector> cols;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<RatVector> trial = cols;
    for (std::size_t l = 0; l < d; ++l) trial.push_back(A.omega_times(l, v[i]));
    if (rank(Matrix::from_columns(trial, A.qdim())) == (chosen.size() + 1) * d) {
      chosen.push_back(i);
      cols = std::move(trial);
    }
  }
  return chosen;
}

namespace {

// Structure constants in the K-basis b, which spans a subalgebra; inc is the
// matrix with columns omega_l * b_k.
std::vector<FieldElem> constants_in_basis(const Algebra& A, const std::vector<Element>& b, const Matrix& inc) {
  const std::size_t k2 = b.size();
  const std::size_t d = A.field().degree();
  std::vector<FieldElem> gamma(k2 * k2 * k2, FieldElem(d));
  std::vector<RatVector> products;
  for (std::size_t i = 0; i < k2; ++i)
    for (std::size_t j = 0; j < k2; ++j) products.push_back(A.mul(b[i], b[j]));
  Matrix rhs = Matrix::from_columns(products, A.qdim());
  auto res = solve_and_kernel(inc, rhs);
  if (!res.particular) throw StructuralFailure("basis does not span a subalgebra");
  for (std::size_t i = 0; i < k2; ++i)
    for (std::size_t j = 0; j < k2; ++j)
      for (std::size_t k = 0; k < k2; ++k)
        for (std::size_t l = 0; l < d; ++l)
          gamma[(i * k2 + j) * k2 + k][l] = (*res.particular)(k * d + l, i * k2 + j);
  return gamma;
}

Matrix inclusion_matrix(const Algebra& A, const std::vector<Element>& b) {
  std::vector<RatVector> cols;
  for (const auto& x : b)
    for (std::size_t l = 0; l < A.field().degree(); ++l) cols.push_back(A.omega_times(l, x));
  return Matrix::from_columns(cols, A.qdim());
}

}  // namespace

Element Corner::section(const Element& a) const {
  auto x = solve(inclusion, a);
  if (!x) throw StructuralFailure("element does not lie in the corner algebra");
  return *x;
}

Corner corner_algebra(const Algebra& A, const Element& e) {
  if (is_zero(e) || A.mul(e, e) != e) throw StructuralFailure("corner algebra needs a nonzero idempotent");
  std::vector<Element> span;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    std::vector<FieldElem> y(A.dim(), A.field().zero());
    y[i] = A.field().one();
    Element ai = A.from_kcoords(y);
    span.push_back(A.mul(A.mul(e, ai), e));
  }
  std::vector<Element> b;
  for (auto idx : k_independent(A, span)) b.push_back(span[idx]);
  Matrix inc = inclusion_matrix(A, b);
  auto gamma = constants_in_basis(A, b, inc);
  return Corner{Algebra(A.field(), b.size(), std::move(gamma), false), std::move(inc)};
}

Algebra rebase(const Algebra& A, const std::vector<Element>& new_basis) {
  if (new_basis.size() != A.dim() || k_independent(A, new_basis).size() != A.dim())
    throw StructuralFailure("rebase needs a K-basis of the algebra");
  Matrix inc = inclusion_matrix(A, new_basis);
  return Algebra(A.field(), A.dim(), constants_in_basis(A, new_basis, inc), false);
}

}  // namespace csa
