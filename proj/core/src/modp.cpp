#include "csa/modp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace csa::modp {

u64 pow(u64 a, u64 e, u64 q) {
  u64 r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mul(r, a, q);
    a = mul(a, a, q);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("inverse of zero modulo p");
  return pow(a, p - 2, p);
}

u64 reduce(const Integer& x, u64 q) {
  Integer r;
  Integer qq;
  mpz_import(qq.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &q);
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), qq.get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
  return out;
}

std::optional<u64> reduce(const Rational& x, u64 q) {
  u64 den = reduce(x.get_den(), q);
  if (std::gcd(den, q) != 1) return std::nullopt;
  // q need not be prime here: invert the denominator with extended Euclid.
  Integer d = den, qq, inv_d;
  mpz_import(qq.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &q);
  mpz_invert(inv_d.get_mpz_t(), d.get_mpz_t(), qq.get_mpz_t());
  return mul(reduce(x.get_num(), q), reduce(inv_d, q), q);
}

Mat mul(const Mat& a, const Mat& b, u64 q) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Mat c(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<unsigned __int128> acc(m, 0);
    for (std::size_t t = 0; t < k; ++t) {
      const u64 ait = a[i][t];
      if (!ait) continue;
      for (std::size_t j = 0; j < m; ++j) {
        acc[j] += static_cast<unsigned __int128>(ait) * b[t][j];
        // keep the accumulator bounded; products are below 2^126
        if (acc[j] >> 126) acc[j] %= q;
      }
    }
    for (std::size_t j = 0; j < m; ++j) c[i][j] = static_cast<u64>(acc[j] % q);
  }
  return c;
}

Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

u64 trace(const Mat& a, u64 q) {
  u64 t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t = add(t, a[i][i] % q, q);
  return t;
}

Mat power(Mat a, u64 e, u64 q) {
  Mat r = identity(a.size());
  for (auto& row : r)
    for (auto& x : row) x %= q;
  while (e) {
    if (e & 1) r = mul(r, a, q);
    e >>= 1;
    if (e) a = mul(a, a, q);
  }
  return r;
}

Echelon echelon(Mat m, u64 p) {
  Echelon e;
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][c] % p == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(m[piv], m[r]);
    const u64 s = inv(m[r][c], p);
    for (auto& x : m[r]) x = mul(x, s, p);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      const u64 f = m[i][c] % p;
      if (!f) continue;
      for (std::size_t j = c; j < ncols; ++j) m[i][j] = sub(m[i][j] % p, mul(f, m[r][j], p), p);
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(Mat m, u64 p) { return echelon(std::move(m), p).pivots.size(); }

Mat kernel(const Mat& m, std::size_t ncols, u64 p) {
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

Mat row_space(const Mat& m, u64 p) { return echelon(m, p).rows; }

// ---------------------------------------------------------------- polynomials

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = add(c[i + j], mul(a[i], b[j], p), p);
  }
  trim(c);
  return c;
}

Poly poly_sub(const Poly& a, const Poly& b, u64 p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    c[i] = sub(x, y, p);
  }
  trim(c);
  return c;
}

Poly poly_rem(Poly a, const Poly& b, u64 p) {
  if (b.empty()) throw std::domain_error("polynomial remainder by zero");
  trim(a);
  const int db = degree(b);
  const u64 lc_inv = inv(b.back(), p);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const u64 f = mul(a.back(), lc_inv, p);
    for (int j = 0; j <= db; ++j) a[shift + j] = sub(a[shift + j], mul(f, b[j], p), p);
    trim(a);
  }
  return a;
}

Poly poly_divexact(Poly a, const Poly& b, u64 p) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {};
  Poly q(degree(a) - db + 1, 0);
  const u64 lc_inv = inv(b.back(), p);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const u64 f = mul(a.back(), lc_inv, p);
    q[shift] = f;
    for (int j = 0; j <= db; ++j) a[shift + j] = sub(a[shift + j], mul(f, b[j], p), p);
    trim(a);
  }
  trim(q);
  return q;
}

Poly monic(Poly f, u64 p) {
  trim(f);
  if (f.empty()) return f;
  const u64 s = inv(f.back(), p);
  for (auto& c : f) c = mul(c, s, p);
  return f;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly poly_powmod(const Poly& base, const Integer& e, const Poly& mod, u64 p) {
  Poly result{1};
  result = poly_rem(result, mod, p);
  Poly b = poly_rem(base, mod, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = poly_rem(poly_mul(result, result, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_rem(poly_mul(result, b, p), mod, p);
  }
  return result;
}

namespace {

void split_roots(const Poly& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
  const int dg = degree(g);
  if (dg <= 0) return;
  if (dg == 1) {
    out.push_back(sub(0, mul(g[0], inv(g[1], p), p), p));
    return;
  }
  const Integer half = (Integer(static_cast<unsigned long>(p)) - 1) / 2;
  for (;;) {
    const u64 delta = std::uniform_int_distribution<u64>(0, p - 1)(rng);
    Poly h = poly_powmod(Poly{delta, 1}, half, g, p);
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

std::vector<u64> roots(const Poly& f0, u64 p, std::mt19937_64& rng) {
  Poly f = monic(f0, p);
  if (f.empty()) throw std::domain_error("roots of the zero polynomial");
  std::vector<u64> out;
  if (p < 1024) {
    for (u64 x = 0; x < p; ++x) {
      u64 v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = add(mul(v, x, p), f[i], p);
      if (v == 0) out.push_back(x);
    }
    return out;
  }
  // Product of the distinct linear factors: gcd(f, x^p - x).
  Poly xp = poly_powmod(Poly{0, 1}, Integer(static_cast<unsigned long>(p)), f, p);
  Poly g = poly_gcd(f, poly_sub(xp, Poly{0, 1}, p), p);
  split_roots(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> factor_degrees(const Poly& f0, u64 p) {
  Poly f = monic(f0, p);
  std::vector<int> degs;
  Poly h{0, 1};
  const Integer pp(static_cast<unsigned long>(p));
  for (int k = 1; 2 * k <= degree(f); ++k) {
    h = poly_powmod(h, pp, f, p);
    Poly g = poly_gcd(f, poly_sub(h, Poly{0, 1}, p), p);
    if (degree(g) > 0) {
      for (int t = 0; t < degree(g) / k; ++t) degs.push_back(k);
      f = poly_divexact(f, g, p);
      h = poly_rem(h, f, p);
    }
  }
  if (degree(f) > 0) degs.push_back(degree(f));
  return degs;
}

}  // namespace csa::modp
