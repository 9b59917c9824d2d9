#include "csa/apps.hpp"

#include "csa/errors.hpp"
#include "csa/kmatrix.hpp"
#include "csa/order.hpp"

namespace csa {

namespace {

bool same_field(const NumberField& K, const NumberField& L) {
  const auto& a = K.descriptor();
  const auto& b = L.descriptor();
  return a.kind == b.kind && a.D == b.D && a.min_poly == b.min_poly && a.integral_basis == b.integral_basis;
}

Element kbasis(const Algebra& A, std::size_t i) {
  std::vector<FieldElem> y(A.dim(), A.field().zero());
  y[i] = A.field().one();
  return A.from_kcoords(y);
}

// Columns M_i v as a matrix.
KMatrix orbit(const NumberField& K, const std::vector<KMatrix>& ops, const std::vector<FieldElem>& v) {
  std::vector<std::vector<FieldElem>> cols;
  for (const auto& M : ops) cols.push_back(kapply(K, M, v));
  return kcolumns(K, cols, v.size());
}

bool is_square(const Integer& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

}  // namespace

Algebra tensor_opposite(const Algebra& A, const Algebra& B) {
  if (!same_field(A.field(), B.field())) throw InputError("algebras are over different fields");
  const NumberField& K = A.field();
  const std::size_t ma = A.dim(), mb = B.dim(), m = ma * mb;
  std::vector<FieldElem> gamma(m * m * m, K.zero());
  for (std::size_t i = 0; i < ma; ++i)
    for (std::size_t k = 0; k < ma; ++k)
      for (std::size_t p = 0; p < ma; ++p) {
        const FieldElem& ga = A.gamma(i, k, p);
        if (K.is_zero(ga)) continue;
        for (std::size_t j = 0; j < mb; ++j)
          for (std::size_t l = 0; l < mb; ++l)
            for (std::size_t q = 0; q < mb; ++q) {
              const FieldElem& gb = B.gamma(l, j, q);
              if (K.is_zero(gb)) continue;
              gamma[((i * mb + j) * m + (k * mb + l)) * m + (p * mb + q)] = K.mul(ga, gb);
            }
      }
  return Algebra(K, m, std::move(gamma), false);
}

Algebra quaternion_algebra(const Rational& D, const Rational& a) {
  if (D == 0 || a == 0) throw InputError("quaternion parameters must be nonzero");
  const NumberField Q = NumberField::rationals();
  std::vector<FieldElem> gamma(64, Q.zero());
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Rational& c) { gamma[(i * 4 + j) * 4 + k][0] = c; };
  for (std::size_t x = 0; x < 4; ++x) {
    set(0, x, x, 1);
    set(x, 0, x, 1);
  }
  set(1, 1, 0, D);
  set(1, 2, 3, 1);
  set(1, 3, 2, D);
  set(2, 1, 3, -1);
  set(2, 2, 0, a);
  set(2, 3, 1, -a);
  set(3, 1, 2, -D);
  set(3, 2, 1, a);
  set(3, 3, 0, -D * a);
  return Algebra(Q, 4, std::move(gamma), true);
}

Algebra hamilton_quaternions() { return quaternion_algebra(-1, -1); }

IsoResult algebra_isomorphism(const Algebra& A0, const Algebra& B0, const SplitConfig& config,
                              const IsoOptions& options) {
  if (!same_field(A0.field(), B0.field())) throw InputError("algebras are over different fields");
  if (A0.dim() != B0.dim()) throw StructuralFailure("algebras have different dimensions");
  const NumberField& K = A0.field();
  const std::size_t n = A0.require_degree(), m = A0.dim();
  const bool rebased = options.rebase_to_orders && K.degree() == 1;

  std::vector<Element> PA, PB;
  auto rebased_copy = [&](const Algebra& X, std::vector<Element>& P) {
    const Order o = maximal_order(X, config.factor);
    for (std::size_t t = 0; t < o.basis.rows(); ++t) P.push_back(o.basis.row_vector(t));
    return rebase(X, P);
  };
  const Algebra A = rebased ? rebased_copy(A0, PA) : A0;
  const Algebra B = rebased ? rebased_copy(B0, PB) : B0;

  IsoResult res;
  const Algebra T = tensor_opposite(A, B);
  SplitConfig cfg = config;
  SplitReport rep = split(T, cfg);
  res.stats = rep.stats;
  const std::size_t N2 = n * n;  // dim_K V

  const auto oneA = A.kcoords(A.one()), oneB = B.kcoords(B.one());
  std::vector<KMatrix> alpha, beta;
  for (std::size_t i = 0; i < m; ++i) {
    KMatrix s(K, N2, N2);
    for (std::size_t j = 0; j < m; ++j)
      if (!K.is_zero(oneB[j])) s = kadd(K, s, kscale(K, oneB[j], rep.iso.images[i * m + j]));
    alpha.push_back(std::move(s));
  }
  for (std::size_t j = 0; j < m; ++j) {
    KMatrix s(K, N2, N2);
    for (std::size_t i = 0; i < m; ++i)
      if (!K.is_zero(oneA[i])) s = kadd(K, s, kscale(K, oneA[i], rep.iso.images[i * m + j]));
    beta.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ++res.commuting_checks;
      if (kmul(K, alpha[i], beta[j]) != kmul(K, beta[j], alpha[i]))
        throw StructuralFailure("left and right actions do not commute");
    }

  std::vector<FieldElem> v(N2, K.zero());
  v[0] = K.one();
  auto left_rank = [&](const std::vector<FieldElem>& w) { return krank(K, orbit(K, alpha, w)); };
  auto right_rank = [&](const std::vector<FieldElem>& w) { return krank(K, orbit(K, beta, w)); };

  // Greedy rank increase: v + omega e_t for omega in Omega.
  auto improve = [&](auto&& rank_of, auto&& admissible, std::size_t& steps) {
    std::size_t r = rank_of(v);
    while (r < N2) {
      bool moved = false;
      for (int pass = 0; pass < 2 && !moved; ++pass) {
        for (std::size_t t = 0; t < N2 && !moved; ++t)
          for (long w = 1; w <= static_cast<long>(N2) + 1 && !moved; ++w) {
            std::vector<FieldElem> cand = v;
            cand[t] = K.add(cand[t], K.from_rational(pass == 0 ? w : -w));
            const std::size_t rc = rank_of(cand);
            if (rc > r && admissible(cand)) {
              v = std::move(cand);
              r = rc;
              moved = true;
            }
          }
      }
      if (!moved) throw StructuralFailure("rank increase stalled");
      ++steps;
    }
  };
  improve(left_rank, [](const std::vector<FieldElem>&) { return true; }, res.left_steps);
  improve(right_rank,
          [&](const std::vector<FieldElem>& w) {
            ++res.rank_checks;
            return left_rank(w) == N2;
          },
          res.right_steps);
  if (left_rank(v) != N2) throw StructuralFailure("left generation lost during the right pass");

  const KMatrix W = orbit(K, beta, v);
  std::vector<Element> sigma;
  for (std::size_t i = 0; i < m; ++i) {
    auto s = ksolve(K, W, kapply(K, alpha[i], v));
    if (!s) throw StructuralFailure("alpha(a) v is not in the right orbit of v");
    sigma.push_back(B.from_kcoords(*s));
  }

  if (rebased) {
    // a_i = sum_t c_it a'_t, and b'_t = PB[t] in B0-coordinates.
    std::vector<RatVector> rows;
    for (const auto& p : PA) rows.push_back(p);
    const auto inv = inverse(Matrix::from_rows(rows));
    if (!inv) throw StructuralFailure("order basis is singular");
    std::vector<Element> out;
    for (std::size_t i = 0; i < m; ++i) {
      Element img(m);
      for (std::size_t t = 0; t < m; ++t) {
        const Rational& c = (*inv)(i, t);
        if (c == 0) continue;
        for (std::size_t u = 0; u < m; ++u)
          if (sigma[t][u] != 0) img = add(img, scale(c * sigma[t][u], PB[u]));
      }
      out.push_back(std::move(img));
    }
    sigma = std::move(out);
  }
  const VerifyResult check = verify_isomorphism(A0, B0, sigma);
  if (!check.ok) throw StructuralFailure("isomorphism failed verification: " + check.check + " " + check.detail);
  res.sigma = std::move(sigma);
  return res;
}

VerifyResult verify_isomorphism(const Algebra& A, const Algebra& B, const std::vector<Element>& sigma) {
  const NumberField& K = A.field();
  const std::size_t m = A.dim();
  if (sigma.size() != m || B.dim() != m) return {false, "shape", "expected one image per basis element"};
  for (const auto& s : sigma)
    if (s.size() != B.qdim()) return {false, "shape", "image has the wrong number of coordinates"};
  auto apply = [&](const Element& x) {
    const auto c = A.kcoords(x);
    Element out = B.zero();
    for (std::size_t i = 0; i < m; ++i)
      if (!K.is_zero(c[i])) out = add(out, B.kscale(c[i], sigma[i]));
    return out;
  };
  if (apply(A.one()) != B.one()) return {false, "unital", "sigma(1) != 1"};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (apply(A.mul(kbasis(A, i), kbasis(A, j))) != B.mul(sigma[i], sigma[j]))
        return {false, "multiplicative", "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")"};
  if (k_independent(B, sigma).size() != m) return {false, "bijective", "images are linearly dependent"};
  return {};
}

ZeroDivisorResult find_zero_divisor(const Algebra& A, const SplitConfig& config) {
  if (A.require_degree() < 2) throw InputError("zero divisors need n > 1");
  ZeroDivisorResult out;
  SearchResult r = search(A, Target::zero_divisor, config, out.stats);
  if (!is_zero_divisor(A, r.y) || is_zero(r.y)) throw StructuralFailure("search returned a non-zero-divisor");
  out.y = r.y;
  out.rank = rank_of_element(A, r.y);
  return out;
}

NormResult solve_norm_equation(long D, const Rational& a, const SplitConfig& config, bool shortcuts) {
  if (D == 0 || D == 1) throw InputError("D must differ from 0 and 1");
  if (a == 0) throw InputError("a must be nonzero");
  for (const auto& [p, e] : factor_integer(Integer(D)))
    if (e > 1) throw InputError("D must be squarefree");
  NormResult res;
  if (shortcuts) {
    if (a > 0 && is_square(a.get_num()) && is_square(a.get_den())) {
      res.status = NormStatus::solved;
      res.x0 = Rational(Integer(sqrt(a.get_num())), Integer(sqrt(a.get_den())));
      res.reason = "a is a square";
      return res;
    }
    if (D < 0 && a < 0) {
      res.status = NormStatus::unsolvable;
      res.reason = "norms from an imaginary quadratic field are positive";
      return res;
    }
  }
  const Algebra Q = quaternion_algebra(D, a);
  Element z;
  try {
    ZeroDivisorResult zd = find_zero_divisor(Q, config);
    res.stats = zd.stats;
    z = zd.y;
  } catch (const NotSplit& e) {
    res.status = NormStatus::unsolvable;
    res.reason = e.what();
    return res;
  } catch (const StructuralFailure& e) {
    res.status = NormStatus::unsolvable;
    res.reason = e.what();
    return res;
  } catch (const BudgetExhausted& e) {
    res.reason = e.what();
    return res;
  } catch (const PrecisionCeiling& e) {
    res.reason = e.what();
    return res;
  }
  // z = xi + eta v with xi = z0 + z1 u, eta = z2 + z3 u; x = xi / eta.
  const Rational dr(D);
  const Rational nz = z[2] * z[2] - dr * z[3] * z[3];
  if (nz == 0) throw StructuralFailure("zero divisor has no v-component");
  res.x0 = (z[0] * z[2] - dr * z[1] * z[3]) / nz;
  res.x1 = (z[1] * z[2] - z[0] * z[3]) / nz;
  if (res.x0 * res.x0 - dr * res.x1 * res.x1 != a) throw StructuralFailure("extracted element has the wrong norm");
  res.status = NormStatus::solved;
  res.reason = "zero divisor of the quaternion algebra";
  return res;
}

}  // namespace csa
