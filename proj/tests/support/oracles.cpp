#include "oracles.hpp"

#include <cmath>

namespace oracle {

namespace {

std::size_t eliminate(QMat& a, Q* det_out) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  Q d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) {
      d = 0;
      continue;
    }
    if (piv != r) {
      std::swap(a[piv], a[r]);
      d = -d;
    }
    d *= a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  if (det_out) *det_out = (r == rows && rows == cols) ? d : Q(0);
  return r;
}

Z strip(const Z& x, const Z& p, unsigned& e) {
  Z u = x;
  e = 0;
  while (u != 0 && mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
    u /= p;
    ++e;
  }
  return u;
}

int legendre(const Z& u, const Z& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

int mod2(const Z& x) {
  Z r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), 2);
  return r == 0 ? 0 : 1;
}

std::vector<Z> prime_divisors(Z x) {
  std::vector<Z> ps;
  if (x < 0) x = -x;
  for (Z p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    ps.push_back(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1) ps.push_back(x);
  return ps;
}

using Elem = std::vector<Q>;
using FMat = std::vector<Elem>;  // row-major n x n

FMat fmul(const Field& F, const FMat& a, const FMat& b, std::size_t n) {
  FMat c(n * n, F.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = F.add(c[i * n + j], F.mul(a[i * n + k], b[k * n + j]));
  return c;
}

}  // namespace

Q det(QMat a) {
  Q d;
  eliminate(a, &d);
  return d;
}

std::size_t rank(QMat a) { return eliminate(a, nullptr); }

Z matrix_order_discriminant(std::size_t n, long D) {
  const Field F{D};
  const std::size_t d = F.degree(), m = n * n;
  auto trace = [&](const Elem& x) -> Q {
    if (d == 1) return x[0];
    const bool one_mod4 = ((D % 4) + 4) % 4 == 1;
    return 2 * x[0] + (one_mod4 ? x[1] : Q(0));
  };
  QMat G(d * m, std::vector<Q>(d * m));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Elem wa(d), wb(d);
      wa[a] = 1;
      wb[b] = 1;
      const Q t = trace(F.mul(wa, wb));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
              if (j == k && i == l) G[a * m + i * n + j][b * m + k * n + l] = t * Q(static_cast<long>(n));
    }
  const Q v = det(G);
  return v.get_num();
}

long double reducedness_constant(std::size_t m) {
  static const long double gm[] = {1.0L, 1.0L, 4.0L / 3, 2.0L, 4.0L, 8.0L, 64.0L / 3, 64.0L, 256.0L};
  const long double g = m <= 8 ? gm[m] : std::pow(static_cast<long double>(m), static_cast<long double>(m));
  return std::sqrt(g) * std::pow(1.5L, static_cast<long double>(m)) *
         std::pow(2.0L, static_cast<long double>(m * (m - 1)) / 2);
}

int hilbert(const Z& a, const Z& b, const Z& p) {
  if (p == -1) return (a < 0 && b < 0) ? -1 : 1;
  unsigned alpha, beta;
  const Z u = strip(a, p, alpha), v = strip(b, p, beta);
  if (p == 2) {
    const int eu = mod2((u - 1) / 2), ev = mod2((v - 1) / 2);
    const int wu = mod2((u * u - 1) / 8), wv = mod2((v * v - 1) / 8);
    const int e = eu * ev + static_cast<int>(alpha) * wv + static_cast<int>(beta) * wu;
    return e % 2 ? -1 : 1;
  }
  int s = (static_cast<int>(alpha * beta) * mod2((p - 1) / 2)) % 2 ? -1 : 1;
  if (beta % 2) s *= legendre(u, p);
  if (alpha % 2) s *= legendre(v, p);
  return s;
}

bool norm_solvable(long D, const Q& a) {
  const Z b = a.get_num() * a.get_den();
  const Z dz(D);
  if (hilbert(dz, b, Z(-1)) != 1) return false;
  std::vector<Z> ps = prime_divisors(2 * dz * b);
  for (const auto& p : ps)
    if (hilbert(dz, b, p) != 1) return false;
  return true;
}

std::vector<Q> Field::mul(const std::vector<Q>& x, const std::vector<Q>& y) const {
  if (D == 0) return {x[0] * y[0]};
  const bool one_mod4 = ((D % 4) + 4) % 4 == 1;
  Q c = one_mod4 ? Q(D - 1, 4) : Q(D);
  c.canonicalize();
  const Q t = one_mod4 ? Q(1) : Q(0);
  return {x[0] * y[0] + c * x[1] * y[1], x[0] * y[1] + x[1] * y[0] + t * x[1] * y[1]};
}

std::vector<Q> Field::add(const std::vector<Q>& x, const std::vector<Q>& y) const {
  std::vector<Q> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

bool Field::is_zero(const std::vector<Q>& x) const {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

Field field_of(const csa::FieldDescriptor& f) {
  if (f.kind == csa::FieldDescriptor::Kind::rationals) return Field{0};
  if (f.kind == csa::FieldDescriptor::Kind::quadratic) return Field{f.D};
  throw std::invalid_argument("oracle handles Q and quadratic fields only");
}

bool check_witness(const csa::Instance& inst, const csa::WitnessFile& w, std::string& why) {
  const Field F = field_of(inst.field);
  const std::size_t m = inst.dim, n = w.n, d = F.degree();
  if (n * n != m || w.images.size() != m || w.rank_one.size() != m) {
    why = "shape";
    return false;
  }
  std::vector<FMat> M;
  for (const auto& K : w.images) M.push_back(K.a);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const FMat lhs = fmul(F, M[i], M[j], n);
      FMat rhs(n * n, F.zero());
      for (std::size_t k = 0; k < m; ++k) {
        const Elem& g = inst.constants[(i * m + j) * m + k];
        if (F.is_zero(g)) continue;
        for (std::size_t t = 0; t < n * n; ++t) rhs[t] = F.add(rhs[t], F.mul(g, M[k][t]));
      }
      if (lhs != rhs) {
        why = "multiplicative at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
        return false;
      }
    }
  QMat span;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < d; ++l) {
      Elem wl(d);
      wl[l] = 1;
      std::vector<Q> row;
      for (std::size_t t = 0; t < n * n; ++t)
        for (const auto& x : F.mul(wl, M[i][t])) row.push_back(x);
      span.push_back(row);
    }
  if (rank(span) != m * d) {
    why = "images do not span M_n(K)";
    return false;
  }
  FMat X(n * n, F.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < n * n; ++t) X[t] = F.add(X[t], F.mul(w.rank_one[i], M[i][t]));
  bool nonzero = false;
  for (const auto& x : X) nonzero = nonzero || !F.is_zero(x);
  if (!nonzero) {
    why = "phi(C) = 0";
    return false;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a + 1; c < n; ++c)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t e = b + 1; e < n; ++e) {
          Elem minor = F.mul(X[a * n + b], X[c * n + e]);
          Elem other = F.mul(X[a * n + e], X[c * n + b]);
          for (auto& v : other) v = -v;
          if (!F.is_zero(F.add(minor, other))) {
            why = "phi(C) has rank above one";
            return false;
          }
        }
  return true;
}

bool check_isomorphism(const csa::Instance& A, const csa::Instance& B, const std::vector<std::vector<Q>>& sigma,
                       std::string& why) {
  const std::size_t m = A.dim;
  if (B.dim != m || sigma.size() != m) {
    why = "shape";
    return false;
  }
  auto gA = [&](std::size_t i, std::size_t j, std::size_t k) -> const Q& { return A.constants[(i * m + j) * m + k][0]; };
  auto gB = [&](std::size_t i, std::size_t j, std::size_t k) -> const Q& { return B.constants[(i * m + j) * m + k][0]; };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Q> lhs(m), rhs(m);
      for (std::size_t k = 0; k < m; ++k)
        if (gA(i, j, k) != 0)
          for (std::size_t t = 0; t < m; ++t) lhs[t] += gA(i, j, k) * sigma[k][t];
      for (std::size_t p = 0; p < m; ++p) {
        if (sigma[i][p] == 0) continue;
        for (std::size_t q = 0; q < m; ++q) {
          if (sigma[j][q] == 0) continue;
          const Q c = sigma[i][p] * sigma[j][q];
          for (std::size_t t = 0; t < m; ++t)
            if (gB(p, q, t) != 0) rhs[t] += c * gB(p, q, t);
        }
      }
      if (lhs != rhs) {
        why = "multiplicative at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
        return false;
      }
    }
  if (rank(sigma) != m) {
    why = "not bijective";
    return false;
  }
  return true;
}

}  // namespace oracle
