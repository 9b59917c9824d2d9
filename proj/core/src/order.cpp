#include "csa/order.hpp"

#include <algorithm>
#include <random>

#include "csa/errors.hpp"
#include "csa/lattice.hpp"
#include "csa/modbig.hpp"

namespace csa {

namespace {

using modp::u64;

// The p-local code below runs on machine words when p fits and on GMP
// integers otherwise; overload resolution picks modp or modbig.
namespace pl {
using modp::add;
using modp::sub;
using modp::mul;
using modp::reduce;
using modp::trace;
using modp::power;
using modp::echelon;
using modp::kernel;
using modp::row_space;
using modp::trim;
using modp::roots;
using modbig::add;
using modbig::sub;
using modbig::mul;
using modbig::reduce;
using modbig::trace;
using modbig::power;
using modbig::echelon;
using modbig::kernel;
using modbig::row_space;
using modbig::trim;
using modbig::roots;
}  // namespace pl
using namespace pl;

template <class S>
using VecT = std::vector<S>;
template <class S>
using MatT = std::vector<VecT<S>>;

template <class S>
struct Mod;
template <>
struct Mod<u64> {
  using Echelon = modp::Echelon;
  static MatT<u64> identity(std::size_t n) { return modp::identity(n); }
  static Integer integer(u64 x) { return Integer(static_cast<unsigned long>(x)); }
  static std::uint64_t seed(u64 p) { return p; }
};
template <>
struct Mod<Integer> {
  using Echelon = modbig::Echelon;
  static MatT<Integer> identity(std::size_t n) { return modbig::identity(n); }
  static Integer integer(const Integer& x) { return x; }
  static std::uint64_t seed(const Integer& p) { return mpz_getlimbn(p.get_mpz_t(), 0); }
};

// The multiplication table of an order reduced modulo q.
template <class S>
struct ModTable {
  S q;
  std::size_t N;
  std::vector<S> t;

  ModTable(const OrderTable& T, const S& q_) : q(q_), N(T.size()), t(N * N * N) {
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        for (std::size_t c = 0; c < N; ++c) t[(a * N + b) * N + c] = reduce(T.at(a, b, c), q);
  }

  VecT<S> mul(const VecT<S>& x, const VecT<S>& y) const {
    VecT<S> z(N, S(0));
    for (std::size_t a = 0; a < N; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < N; ++b) {
        if (y[b] == 0) continue;
        const S xy = pl::mul(x[a], y[b], q);
        const S* row = &t[(a * N + b) * N];
        for (std::size_t c = 0; c < N; ++c)
          if (row[c] != 0) z[c] = add(z[c], pl::mul(xy, row[c], q), q);
      }
    }
    return z;
  }

  // Matrix of z -> x z.
  MatT<S> left(const VecT<S>& x) const {
    MatT<S> L(N, VecT<S>(N, S(0)));
    for (std::size_t a = 0; a < N; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < N; ++b) {
        const S* row = &t[(a * N + b) * N];
        for (std::size_t c = 0; c < N; ++c)
          if (row[c] != 0) L[c][b] = add(L[c][b], pl::mul(x[a], row[c], q), q);
      }
    }
    return L;
  }

  VecT<S> unit(std::size_t k) const {
    VecT<S> e(N, S(0));
    e[k] = q == 1 ? S(0) : S(1);
    return e;
  }
};

u64 to_u64_prime(const Integer& p) {
  if (p < 2 || mpz_sizeinbase(p.get_mpz_t(), 2) > 62)
    throw InputError("prime " + p.get_str() + " is outside the machine-word range");
  return p.get_ui();
}

template <class S>
VecT<S> reduce_vec(const IntVector& v, const S& q) {
  VecT<S> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = reduce(v[i], q);
  return out;
}

// Reduction modulo a subspace given in reduced echelon form.
template <class S>
struct Quotient {
  const typename Mod<S>::Echelon& sub;
  S p;
  VecT<S> operator()(VecT<S> v) const {
    for (std::size_t k = 0; k < sub.rows.size(); ++k) {
      const S f = v[sub.pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = pl::sub(v[j], mul(f, sub.rows[k][j], p), p);
    }
    return v;
  }
};

template <class S>
bool all_zero(const VecT<S>& v) {
  return std::all_of(v.begin(), v.end(), [](const S& x) { return x == 0; });
}

template <class S>
VecT<S> power_in(const ModTable<S>& tp, const Quotient<S>& red, VecT<S> x, const S& e) {
  const Integer ez = Mod<S>::integer(e);
  VecT<S> r;
  bool have = false;
  const std::size_t bits = ez == 0 ? 0 : mpz_sizeinbase(ez.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(ez.get_mpz_t(), i)) {
      r = have ? red(tp.mul(r, x)) : x;
      have = true;
    }
    if (i + 1 < bits) x = red(tp.mul(x, x));
  }
  return r;
}

// Coordinates of v over an echelon basis whose span contains v.
template <class S, class E>
VecT<S> echelon_coords(const E& basis, const VecT<S>& v) {
  VecT<S> c(basis.rows.size());
  for (std::size_t k = 0; k < basis.rows.size(); ++k) c[k] = v[basis.pivots[k]];
  return c;
}

// ---------------------------------------------------------------- radical

template <class S>
MatT<S> radical_impl(const OrderTable& T, const S& p) {
  const std::size_t N = T.size();
  std::size_t lmax = 0;
  for (Integer pw = Mod<S>::integer(p); pw <= N; pw *= Mod<S>::integer(p)) ++lmax;

  VecT<S> trace_mod_p(N);
  for (std::size_t c = 0; c < N; ++c) trace_mod_p[c] = reduce(T.trace(c), p);

  MatT<S> basis = Mod<S>::identity(N);
  S e(1);  // p^i
  for (std::size_t i = 0; i <= lmax && !basis.empty(); ++i) {
    const S q = e * p;
    ModTable<S> tq(T, q);
    const std::size_t t = basis.size();
    MatT<S> Mt(N, VecT<S>(t, S(0)));  // Mt[k][s] = g_i(b_s lambda_k)
    for (std::size_t s = 0; s < t; ++s) {
      for (std::size_t k = 0; k < N; ++k) {
        VecT<S> x = tq.mul(basis[s], tq.unit(k));
        S g;
        if (i == 0) {
          S tr(0);
          for (std::size_t c = 0; c < N; ++c) tr = add(tr, mul(S(x[c] % p), trace_mod_p[c], p), p);
          g = tr;
        } else {
          S tr = trace(power(tq.left(x), e, q), q);
          if (tr % e != 0) throw StructuralFailure("trace of p-power is not divisible as expected");
          g = (tr / e) % p;
        }
        Mt[k][s] = g;
      }
    }
    MatT<S> coeffs = kernel(Mt, t, p);
    MatT<S> next;
    for (const auto& c : coeffs) {
      VecT<S> v(N, S(0));
      for (std::size_t s = 0; s < t; ++s)
        if (c[s] != 0)
          for (std::size_t j = 0; j < N; ++j) v[j] = add(v[j], mul(c[s], basis[s][j], p), p);
      next.push_back(std::move(v));
    }
    basis = row_space(next, p);
    e = q;
  }
  return basis;
}

template <class S>
std::vector<MatT<S>> maximal_ideals_impl(const OrderTable& T, const S& p, const MatT<S>& radical) {
  const std::size_t N = T.size();
  typename Mod<S>::Echelon rad = echelon(radical, p);
  Quotient<S> red{rad, p};
  std::vector<bool> is_pivot(N, false);
  for (auto c : rad.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < N; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  if (free_cols.empty()) throw StructuralFailure("radical of the order is everything");

  ModTable<S> tp(T, p);
  // Centre of Lambda/rad: x with x lambda_k - lambda_k x in rad for all k.
  MatT<S> cons;
  std::vector<std::vector<VecT<S>>> comm(N, std::vector<VecT<S>>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t k = 0; k < N; ++k) {
      VecT<S> v = VecT<S>(N, S(0));
      VecT<S> ak = tp.mul(tp.unit(a), tp.unit(k));
      VecT<S> ka = tp.mul(tp.unit(k), tp.unit(a));
      for (std::size_t j = 0; j < N; ++j) v[j] = pl::sub(ak[j], ka[j], p);
      comm[a][k] = red(v);
    }
  for (std::size_t k = 0; k < N; ++k)
    for (auto q : free_cols) {
      VecT<S> row(N);
      for (std::size_t a = 0; a < N; ++a) row[a] = comm[a][k][q];
      cons.push_back(std::move(row));
    }
  MatT<S> centre_lift = kernel(cons, N, p);
  MatT<S> centre_red;
  for (auto& z : centre_lift) {
    VecT<S> r = red(z);
    if (!all_zero(r)) centre_red.push_back(std::move(r));
  }
  typename Mod<S>::Echelon centre = echelon(centre_red, p);
  const std::size_t c = centre.rows.size();
  if (c <= 1) return {radical};

  // Fixed points of Frobenius in the centre: a copy of F_p per simple component.
  MatT<S> fcons(c, VecT<S>(c, S(0)));  // column j = coords of z_j^p - z_j
  for (std::size_t j = 0; j < c; ++j) {
    VecT<S> zp = power_in(tp, red, centre.rows[j], p);
    for (std::size_t k = 0; k < N; ++k) zp[k] = pl::sub(zp[k], centre.rows[j][k], p);
    VecT<S> co = echelon_coords(centre, red(zp));
    for (std::size_t i = 0; i < c; ++i) fcons[i][j] = co[i];
  }
  MatT<S> fixed_coords = kernel(fcons, c, p);
  if (fixed_coords.size() <= 1) return {radical};
  std::vector<VecT<S>> fixed;
  for (const auto& co : fixed_coords) {
    VecT<S> v(N, S(0));
    for (std::size_t j = 0; j < c; ++j)
      if (co[j] != 0)
        for (std::size_t k = 0; k < N; ++k) v[k] = add(v[k], mul(co[j], centre.rows[j][k], p), p);
    fixed.push_back(std::move(v));
  }

  std::mt19937_64 rng(Mod<S>::seed(p));
  std::vector<VecT<S>> idem{red(reduce_vec(T.one(), p))};
  for (const auto& y : fixed) {
    if (idem.size() == fixed.size()) break;
    std::vector<VecT<S>> next;
    for (const auto& e : idem) {
      VecT<S> ye = red(tp.mul(y, e));
      // minimal polynomial of ye inside e * centre
      std::vector<VecT<S>> powers{e, ye};
      VecT<S> mpoly;
      for (;;) {
        MatT<S> cols(N, VecT<S>(powers.size(), S(0)));
        for (std::size_t j = 0; j < powers.size(); ++j)
          for (std::size_t k = 0; k < N; ++k) cols[k][j] = powers[j][k];
        MatT<S> ker = kernel(cols, powers.size(), p);
        if (!ker.empty()) {
          mpoly = ker[0];
          trim(mpoly);
          break;
        }
        powers.push_back(red(tp.mul(powers.back(), ye)));
      }
      for (const S& lam : roots(mpoly, p, rng)) {
        VecT<S> u(N);
        for (std::size_t k = 0; k < N; ++k) u[k] = pl::sub(ye[k], mul(lam, e[k], p), p);
        VecT<S> up = power_in(tp, red, u, S(p - 1));
        VecT<S> f(N);
        for (std::size_t k = 0; k < N; ++k) f[k] = pl::sub(e[k], up[k], p);
        if (!all_zero(f)) next.push_back(std::move(f));
      }
    }
    idem = std::move(next);
  }
  if (idem.size() != fixed.size()) throw StructuralFailure("failed to split the centre into components");

  std::vector<MatT<S>> ideals;
  for (const auto& eps : idem) {
    MatT<S> span = rad.rows;
    VecT<S> comp(N);
    VecT<S> one = reduce_vec(T.one(), p);
    for (std::size_t k = 0; k < N; ++k) comp[k] = pl::sub(one[k], eps[k], p);
    for (std::size_t a = 0; a < N; ++a) span.push_back(tp.mul(comp, tp.unit(a)));
    ideals.push_back(row_space(span, p));
  }
  return ideals;
}

template <class S>
Order idealizer_impl(const Algebra& A, const OrderTable& T, const S& p, const MatT<S>& ideal, Side side) {
  const std::size_t N = T.size();
  std::vector<IntVector> rows;
  for (std::size_t a = 0; a < N; ++a) {
    IntVector r(N);
    r[a] = Mod<S>::integer(p);
    rows.push_back(std::move(r));
  }
  for (const auto& v : ideal) {
    rows.push_back(IntVector(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) rows.back()[k] = Mod<S>::integer(v[k]);
  }
  HermiteForm H = hnf_and_det(rows);

  MatT<S> cons;
  for (const auto& g : H.basis) {
    std::vector<VecT<S>> images(N);
    for (std::size_t i = 0; i < N; ++i) {
      IntVector ei(N);
      ei[i] = 1;
      IntVector v = side == Side::left ? T.mul(ei, g) : T.mul(g, ei);
      auto w = hnf_coordinates(H, v);
      if (!w) throw StructuralFailure("ideal is not closed under multiplication by the order");
      images[i] = reduce_vec(*w, p);
    }
    for (std::size_t t = 0; t < N; ++t) {
      VecT<S> row(N);
      for (std::size_t i = 0; i < N; ++i) row[i] = images[i][t];
      cons.push_back(std::move(row));
    }
  }
  MatT<S> sol = kernel(cons, N, p);

  std::vector<Element> gens;
  for (std::size_t a = 0; a < N; ++a) gens.push_back(T.basis().row_vector(a));
  const Rational inv_p(Integer(1), Mod<S>::integer(p));
  for (const auto& c : sol) {
    RatVector coords(N);
    for (std::size_t i = 0; i < N; ++i) coords[i] = Rational(Mod<S>::integer(c[i])) * inv_p;
    gens.push_back(T.element(coords));
  }
  if (sol.empty()) return {T.basis(), T.discriminant()};
  return make_order(A, gens);
}

template <class S>
Order p_enlarge_impl(const Algebra& A, const Order& order, const S& p) {
  OrderTable T(A, order.basis);
  const Integer disc = abs(order.discriminant);
  auto bigger = [&](const Order& o) { return abs(o.discriminant) < disc; };

  MatT<S> rad = radical_impl(T, p);
  for (Side side : {Side::left, Side::right}) {
    Order o = idealizer_impl(A, T, p, rad, side);
    if (bigger(o)) return o;
  }
  for (const auto& J : maximal_ideals_impl(T, p, rad)) {
    for (Side side : {Side::left, Side::right}) {
      Order o = idealizer_impl(A, T, p, J, side);
      if (bigger(o)) return o;
    }
  }
  return order;
}

}  // namespace

// ---------------------------------------------------------------- OrderTable

OrderTable::OrderTable(const Algebra& A, const Matrix& basis) : N_(A.qdim()), basis_(basis) {
  if (basis.rows() != N_ || basis.cols() != N_) throw StructuralFailure("order basis has wrong shape");
  auto inv = inverse(basis);
  if (!inv) throw StructuralFailure("order basis is not a full-rank lattice");
  basis_inv_ = std::move(*inv);
  std::vector<Element> lambda(N_);
  for (std::size_t a = 0; a < N_; ++a) lambda[a] = basis.row_vector(a);
  t_.assign(N_ * N_ * N_, 0);
  for (std::size_t a = 0; a < N_; ++a)
    for (std::size_t b = 0; b < N_; ++b) {
      auto c = coordinates(A.mul(lambda[a], lambda[b]));
      if (!c) throw StructuralFailure("lattice is not closed under multiplication");
      for (std::size_t k = 0; k < N_; ++k) t_[(a * N_ + b) * N_ + k] = (*c)[k];
    }
  tr_.resize(N_);
  for (std::size_t a = 0; a < N_; ++a) {
    Rational t = A.trace(lambda[a]);
    if (t.get_den() != 1) throw StructuralFailure("order element with non-integral trace");
    tr_[a] = t.get_num();
  }
  auto one = coordinates(A.one());
  if (!one) throw StructuralFailure("lattice does not contain the identity");
  one_ = std::move(*one);
}

RatVector OrderTable::rational_coordinates(const Element& x) const {
  // x = c * basis as row vectors
  RatVector c(N_);
  for (std::size_t k = 0; k < N_; ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < N_; ++j)
      if (basis_inv_(k, j) != 0) c[j] += x[k] * basis_inv_(k, j);
  }
  return c;
}

std::optional<IntVector> OrderTable::coordinates(const Element& x) const {
  RatVector c = rational_coordinates(x);
  IntVector out(N_);
  for (std::size_t k = 0; k < N_; ++k) {
    if (c[k].get_den() != 1) return std::nullopt;
    out[k] = c[k].get_num();
  }
  return out;
}

Element OrderTable::element(const RatVector& c) const {
  Element x(N_);
  for (std::size_t a = 0; a < N_; ++a) {
    if (c[a] == 0) continue;
    for (std::size_t k = 0; k < N_; ++k)
      if (basis_(a, k) != 0) x[k] += c[a] * basis_(a, k);
  }
  return x;
}

Element OrderTable::element(const IntVector& c) const { return element(RatVector(c.begin(), c.end())); }

IntVector OrderTable::mul(const IntVector& x, const IntVector& y) const {
  IntVector z(N_);
  for (std::size_t a = 0; a < N_; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < N_; ++b) {
      if (y[b] == 0) continue;
      const Integer xy = x[a] * y[b];
      for (std::size_t c = 0; c < N_; ++c)
        if (at(a, b, c) != 0) z[c] += xy * at(a, b, c);
    }
  }
  return z;
}

Integer OrderTable::discriminant() const {
  std::vector<IntVector> gram(N_, IntVector(N_));
  for (std::size_t a = 0; a < N_; ++a)
    for (std::size_t b = 0; b < N_; ++b) {
      Integer s = 0;
      for (std::size_t c = 0; c < N_; ++c)
        if (at(a, b, c) != 0) s += at(a, b, c) * tr_[c];
      gram[a][b] = s;
    }
  return determinant(gram);
}

// ---------------------------------------------------------------- lattices

Matrix lattice_basis(const std::vector<RatVector>& generators) {
  if (generators.empty()) return {};
  std::vector<Rational> all;
  for (const auto& g : generators) all.insert(all.end(), g.begin(), g.end());
  const Integer D = lcm_of_denominators(all);
  std::vector<IntVector> rows;
  for (const auto& g : generators) {
    IntVector r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = Rational(g[i] * D).get_num();
    rows.push_back(std::move(r));
  }
  HermiteForm h = hnf_and_det(rows);
  Matrix out(h.basis.size(), generators[0].size());
  for (std::size_t i = 0; i < h.basis.size(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) {
      Rational q(h.basis[i][j], D);
      q.canonicalize();
      out(i, j) = q;
    }
  return out;
}

bool contains(const Matrix& outer, const Matrix& inner) {
  auto inv = inverse(outer);
  if (!inv) return false;
  Matrix c = inner * *inv;
  for (const auto& q : c.entries())
    if (q.get_den() != 1) return false;
  return true;
}

Integer order_discriminant(const Algebra& A, const Matrix& basis) { return OrderTable(A, basis).discriminant(); }

bool is_order(const Algebra& A, const Matrix& basis) {
  try {
    OrderTable T(A, basis);
    return true;
  } catch (const StructuralFailure&) {
    return false;
  }
}

Order make_order(const Algebra& A, const std::vector<Element>& generators) {
  Matrix basis = lattice_basis(generators);
  if (basis.rows() != A.qdim()) throw StructuralFailure("generators do not span a full-rank lattice");
  OrderTable T(A, basis);
  return {basis, T.discriminant()};
}

Matrix reduce_lattice_basis(const Matrix& order_basis) {
  const Integer den = lcm_of_denominators(order_basis.entries());
  std::vector<IntVector> rows(order_basis.rows(), IntVector(order_basis.cols()));
  for (std::size_t i = 0; i < order_basis.rows(); ++i)
    for (std::size_t j = 0; j < order_basis.cols(); ++j) {
      const Rational v = order_basis(i, j) * den;
      rows[i][j] = v.get_num();
    }
  lll_integral(rows, Rational(99, 100));
  Matrix out(rows.size(), order_basis.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < order_basis.cols(); ++j) {
      out(i, j) = Rational(rows[i][j], den);
      out(i, j).canonicalize();
    }
  return out;
}

Order initial_order(const Algebra& A) {
  const Integer c = lcm_of_denominators(A.qconstants());
  std::vector<Element> gens;
  for (std::size_t l = 0; l < A.field().degree(); ++l) gens.push_back(A.omega_times(l, A.one()));
  for (std::size_t I = 0; I < A.qdim(); ++I) gens.push_back(scale(Rational(c), A.basis(I)));
  return make_order(A, gens);
}

// ---------------------------------------------------------------- radical

// ---------------------------------------------------------------- p-local

modp::Mat radical_mod_p(const OrderTable& T, u64 p) { return radical_impl(T, p); }

std::vector<modp::Mat> maximal_ideals_mod_p(const OrderTable& T, u64 p, const modp::Mat& radical) {
  return maximal_ideals_impl(T, p, radical);
}

Order idealizer(const Algebra& A, const OrderTable& T, u64 p, const modp::Mat& ideal, Side side) {
  return idealizer_impl(A, T, p, ideal, side);
}

Order p_enlarge(const Algebra& A, const Order& order, const Integer& p) {
  if (p < 2 || !is_probable_prime(p)) throw InputError("p_enlarge needs a prime, got " + p.get_str());
  if (mpz_sizeinbase(p.get_mpz_t(), 2) <= 62) return p_enlarge_impl(A, order, to_u64_prime(p));
  return p_enlarge_impl(A, order, p);
}

Order maximal_order_from(const Algebra& A, Order order, const FactorBudget& budget, MaximalOrderLog* log) {
  if (log) log->initial_discriminant = order.discriminant;
  if (order.discriminant == 0) throw StructuralFailure("order has zero discriminant; algebra is not semisimple");
  for (const auto& [p, e] : factor_integer(order.discriminant, budget)) {
    if (e < 2) continue;
    if (log) log->primes.push_back(p);
    for (;;) {
      if (!mpz_divisible_p(order.discriminant.get_mpz_t(), Integer(p * p).get_mpz_t())) break;
      Order next = p_enlarge(A, order, p);
      if (abs(next.discriminant) == abs(order.discriminant)) break;
      order = std::move(next);
      if (log) ++log->enlargements;
    }
  }
  return order;
}

Order maximal_order(const Algebra& A, const FactorBudget& budget, MaximalOrderLog* log) {
  return maximal_order_from(A, initial_order(A), budget, log);
}

}  // namespace csa
