#include "csa/modbig.hpp"

#include <algorithm>
#include <stdexcept>

namespace csa::modbig {

Integer reduce(const Integer& x, const Integer& q) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
  return r;
}

Integer add(const Integer& a, const Integer& b, const Integer& q) {
  Integer s = a + b;
  if (s >= q) s -= q;
  return s;
}

Integer sub(const Integer& a, const Integer& b, const Integer& q) {
  Integer s = a - b;
  if (s < 0) s += q;
  return s;
}

Integer mul(const Integer& a, const Integer& b, const Integer& q) { return reduce(a * b, q); }

Integer pow(const Integer& a, const Integer& e, const Integer& q) {
  Integer r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
  return r;
}

Integer inv(const Integer& a, const Integer& p) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t())) throw std::domain_error("inverse of zero modulo p");
  return r;
}

Mat mul(const Mat& a, const Mat& b, const Integer& q) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Mat c(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
    for (auto& x : c[i]) x = reduce(x, q);
  }
  return c;
}

Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer trace(const Mat& a, const Integer& q) {
  Integer t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return reduce(t, q);
}

Mat power(Mat a, const Integer& e, const Integer& q) {
  Mat r = identity(a.size());
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r, q);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a, q);
  }
  return r;
}

Echelon echelon(Mat m, const Integer& p) {
  Echelon e;
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows ? m[0].size() : 0;
  for (auto& row : m)
    for (auto& x : row) x = reduce(x, p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(m[piv], m[r]);
    const Integer s = inv(m[r][c], p);
    for (auto& x : m[r]) x = mul(x, s, p);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Integer f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) m[i][j] = reduce(m[i][j] - f * m[r][j], p);
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(Mat m, const Integer& p) { return echelon(std::move(m), p).pivots.size(); }

Mat kernel(const Mat& m, std::size_t ncols, const Integer& p) {
  Echelon e = echelon(m, p);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Mat out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(ncols, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = sub(0, e.rows[k][f], p);
    out.push_back(std::move(x));
  }
  return out;
}

Mat row_space(const Mat& m, const Integer& p) { return echelon(m, p).rows; }

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  for (auto& x : c) x = reduce(x, p);
  trim(c);
  return c;
}

Poly poly_sub(const Poly& a, const Poly& b, const Integer& p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = reduce((i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0)), p);
  trim(c);
  return c;
}

Poly poly_rem(Poly a, const Poly& b, const Integer& p) {
  if (b.empty()) throw std::domain_error("polynomial remainder by zero");
  trim(a);
  const int db = degree(b);
  const Integer lc_inv = inv(b.back(), p);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Integer f = mul(a.back(), lc_inv, p);
    for (int j = 0; j <= db; ++j) a[shift + j] = reduce(a[shift + j] - f * b[j], p);
    trim(a);
  }
  return a;
}

Poly poly_divexact(Poly a, const Poly& b, const Integer& p) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {};
  Poly q(degree(a) - db + 1, 0);
  const Integer lc_inv = inv(b.back(), p);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Integer f = mul(a.back(), lc_inv, p);
    q[shift] = f;
    for (int j = 0; j <= db; ++j) a[shift + j] = reduce(a[shift + j] - f * b[j], p);
    trim(a);
  }
  trim(q);
  return q;
}

Poly monic(Poly f, const Integer& p) {
  trim(f);
  if (f.empty()) return f;
  const Integer s = inv(f.back(), p);
  for (auto& c : f) c = mul(c, s, p);
  return f;
}

Poly poly_gcd(Poly a, Poly b, const Integer& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly poly_powmod(const Poly& base, const Integer& e, const Poly& mod, const Integer& p) {
  Poly result = poly_rem(Poly{1}, mod, p);
  const Poly b = poly_rem(base, mod, p);
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = poly_rem(poly_mul(result, result, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_rem(poly_mul(result, b, p), mod, p);
  }
  return result;
}

namespace {

Integer random_below(const Integer& p, std::mt19937_64& rng) {
  // enough random words to make the modulo bias negligible
  Integer r = 0;
  const std::size_t words = mpz_sizeinbase(p.get_mpz_t(), 2) / 64 + 2;
  for (std::size_t i = 0; i < words; ++i) {
    r <<= 64;
    r += Integer(static_cast<unsigned long>(rng()));
  }
  return reduce(r, p);
}

void split_roots(const Poly& g, const Integer& p, std::mt19937_64& rng, std::vector<Integer>& out) {
  const int dg = degree(g);
  if (dg <= 0) return;
  if (dg == 1) {
    out.push_back(sub(0, mul(g[0], inv(g[1], p), p), p));
    return;
  }
  const Integer half = (p - 1) / 2;
  for (;;) {
    Poly h = poly_powmod(Poly{random_below(p, rng), 1}, half, g, p);
    h = poly_sub(h, Poly{1}, p);
    Poly d = poly_gcd(g, h, p);
    if (degree(d) > 0 && degree(d) < dg) {
      split_roots(d, p, rng, out);
      split_roots(poly_divexact(g, d, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Integer> roots(const Poly& f0, const Integer& p, std::mt19937_64& rng) {
  Poly f = monic(f0, p);
  if (f.empty()) throw std::domain_error("roots of the zero polynomial");
  const Poly xp = poly_powmod(Poly{0, 1}, p, f, p);
  const Poly g = poly_gcd(f, poly_sub(xp, Poly{0, 1}, p), p);
  std::vector<Integer> out;
  split_roots(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace csa::modbig
