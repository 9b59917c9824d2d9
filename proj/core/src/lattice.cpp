#include "csa/lattice.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>

#include "csa/errors.hpp"

namespace csa {

Real abs_determinant(std::vector<RealVector> rows) {
  const std::size_t m = rows.size();
  Real det = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (abs(rows[r][c]) > abs(rows[p][c])) p = r;
    if (rows[p][c] == 0) return 0;
    std::swap(rows[p], rows[c]);
    det *= abs(rows[c][c]);
    for (std::size_t r = c + 1; r < m; ++r) {
      Real f = rows[r][c] / rows[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < m; ++k) rows[r][k] -= f * rows[c][k];
    }
  }
  return det;
}

Real reducedness_constant(std::size_t m) {
  // gamma_m^m for m = 1..8
  static const Rational hermite_power[] = {Rational(1), Rational(4, 3), Rational(2),     Rational(4),
                                           Rational(8), Rational(64, 3), Rational(64), Rational(256)};
  Real g;
  if (m >= 1 && m <= 8) g = sqrt(to_real(hermite_power[m - 1]));
  else g = pow(Real(static_cast<long>(m)), Real(static_cast<long>(m)) / 2);
  Real c = g * pow(Real(3) / 2, Real(static_cast<long>(m)));
  return c * pow2(static_cast<long>(m * (m - 1) / 2));
}

namespace {

// round(a / b) for b > 0
Integer round_div(const Integer& a, const Integer& b) {
  Integer q;
  Integer num = 2 * a + b;
  Integer den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer dot(const IntVector& x, const IntVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void sub_multiple(IntVector& x, const IntVector& y, const Integer& q) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= q * y[i];
}

}  // namespace

std::vector<IntVector> lll_integral(std::vector<IntVector>& b, const Rational& delta) {
  const std::size_t n = b.size();
  std::vector<IntVector> H(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) H[i][i] = 1;
  if (n == 0) return H;
  const Integer dp = delta.get_num(), dq = delta.get_den();

  // 1-based in the bookkeeping below: d[0] = 1, d[i] for vector i.
  std::vector<Integer> d(n + 1, 0);
  std::vector<IntVector> lam(n + 1, IntVector(n + 1, 0));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw std::domain_error("lattice vectors are linearly dependent");

  auto redi = [&](std::size_t k, std::size_t l) {
    Integer two = 2 * lam[k][l];
    if (abs(two) <= d[l]) return;
    Integer q = round_div(lam[k][l], d[l]);
    sub_multiple(b[k - 1], b[l - 1], q);
    sub_multiple(H[k - 1], H[l - 1], q);
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  std::size_t k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(b[k - 1], b[j - 1]);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) lam[k][j] = u;
        else {
          if (u == 0) throw std::domain_error("lattice vectors are linearly dependent");
          d[k] = u;
        }
      }
    }
    redi(k, k - 1);
    if (dq * d[k] * d[k - 2] < dp * d[k - 1] * d[k - 1] - dq * lam[k][k - 1] * lam[k][k - 1]) {
      std::swap(b[k - 1], b[k - 2]);
      std::swap(H[k - 1], H[k - 2]);
      for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      Integer l = lam[k][k - 1];
      Integer B = (d[k - 2] * d[k] + l * l) / d[k - 1];
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        Integer t = lam[i][k];
        lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
        lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
      }
      d[k - 1] = B;
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  return H;
}

ReducedBasis lll_reduce(const std::vector<RealVector>& basis, double delta, unsigned bits) {
  const std::size_t m = basis.size();
  const Rational dl(static_cast<long>(std::llround(delta * 1000000)), 1000000);
  if (!(dl > Rational(1, 4) && dl < 1)) throw InputError("LLL parameter delta must lie in (1/4, 1)");

  ReducedBasis rb;
  rb.c_m = reducedness_constant(m);
  rb.det = abs_determinant(basis);
  const Real slack = 1 + pow2(-static_cast<long>(bits / 2));
  for (unsigned q = std::max(8u, bits / 2);; q = std::min(bits, 2 * q)) {
    const Real scale = pow2(q);
    std::vector<IntVector> rows(m);
    for (std::size_t t = 0; t < m; ++t)
      for (const auto& x : basis[t]) rows[t].push_back(round_to_integer(scale * x));
    try {
      rb.transform = lll_integral(rows, dl);
    } catch (const std::domain_error&) {
      if (q >= bits) break;
      continue;
    }
    rb.vectors.assign(m, RealVector(m, Real(0)));
    rb.lengths.assign(m, Real(0));
    Real prod = 1;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (rb.transform[i][j] == 0) continue;
        Real c = to_real(rb.transform[i][j]);
        for (std::size_t k = 0; k < m; ++k) rb.vectors[i][k] += c * basis[j][k];
      }
      Real s = 0;
      for (const auto& x : rb.vectors[i]) s += x * x;
      rb.lengths[i] = sqrt(s);
      prod *= rb.lengths[i];
    }
    rb.ratio = prod / rb.det;
    rb.rounding_bits = q;
    rb.certified = rb.ratio * slack <= rb.c_m;
    if (rb.certified) return rb;
    if (q >= bits) break;
  }
  throw PrecisionCeiling("LLL certificate not reached at " + std::to_string(bits) + " bits");
}

std::vector<long> coefficient_box(const RealVector& lengths, const Real& c, const Real& L) {
  const Real cap = pow2(40);
  std::vector<long> box;
  for (const auto& len : lengths) {
    Real beta = c * L / len;
    beta *= 1 + pow2(-40);
    if (beta > cap) beta = cap;
    box.push_back(floor_to_integer(beta).get_si());
  }
  return box;
}

std::vector<long> coefficient_box(const ReducedBasis& rb, const Real& L) {
  return coefficient_box(rb.lengths, rb.c_m, L);
}

Deadline Deadline::in_seconds(std::optional<double> s) {
  Deadline d;
  if (s) d.at = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                       std::chrono::duration<double>(*s));
  return d;
}

// ---------------------------------------------------------------- enumeration

ShellEnumerator::ShellEnumerator(std::vector<long> box, std::optional<std::vector<std::vector<double>>> gram,
                                 double radius2)
    : m_(box.size()), box_(std::move(box)), radius2_(radius2) {
  if (!gram) return;
  prune_ = true;
  // Gram matrix in reversed order, so the first coordinate is the last
  // Gram-Schmidt vector.
  const std::size_t m = m_;
  std::vector<std::vector<double>> G(m, std::vector<double>(m));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) G[p][q] = (*gram)[m - 1 - p][m - 1 - q];
  std::vector<std::vector<double>> mu(m, std::vector<double>(m, 0));
  std::vector<double> B(m);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < p; ++q) {
      double s = G[p][q];
      for (std::size_t j = 0; j < q; ++j) s -= mu[q][j] * mu[p][j] * B[j];
      mu[p][q] = s / B[q];
    }
    double s = G[p][p];
    for (std::size_t j = 0; j < p; ++j) s -= mu[p][j] * mu[p][j] * B[j];
    B[p] = s;
  }
  // level k handles coordinate k, i.e. reversed index p = m-1-k
  mu_.assign(m, std::vector<double>(m, 0));
  B_.assign(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    B_[k] = B[m - 1 - k];
    for (std::size_t j = 0; j < k; ++j) mu_[j][k] = mu[m - 1 - j][m - 1 - k];
  }
}

std::size_t ShellEnumerator::max_shell() const {
  long mx = 0;
  for (long b : box_) mx = std::max(mx, b);
  return static_cast<std::size_t>(mx);
}

std::optional<std::vector<long>> ShellEnumerator::run(long lim_shell, long min_max, const Visitor& visit,
                                                      EnumerationStats& stats,
                                                      std::uint64_t node_budget, const Deadline& deadline) {
  const std::size_t m = m_;
  std::vector<long> lim(m), suffix(m + 1, 0);
  for (std::size_t k = 0; k < m; ++k) lim[k] = std::min(box_[k], lim_shell);
  for (std::size_t k = m; k-- > 0;) suffix[k] = std::max(suffix[k + 1], lim[k]);
  if (suffix[0] < min_max) return std::nullopt;

  std::vector<long> x(m, 0);
  std::vector<double> partial(m + 1, 0);
  std::optional<std::vector<long>> hit;

  // Recursive depth-first walk in lexicographic order.
  std::function<bool(std::size_t, long, bool)> rec = [&](std::size_t k, long cur_max, bool all_zero) -> bool {
    if (++stats.nodes > node_budget) throw BudgetExhausted("enumeration node budget exhausted");
    if ((stats.nodes & 4095) == 0 && deadline.passed()) throw BudgetExhausted("time budget exhausted");
    if (k == m) {
      if (all_zero || cur_max < min_max) return false;
      ++stats.visited;
      if (visit(x, partial[m])) {
        hit = x;
        return true;
      }
      return false;
    }
    if (cur_max < min_max && suffix[k] < min_max) return false;
    long lo = -lim[k], hi = lim[k];
    double center = 0;
    if (prune_) {
      for (std::size_t j = 0; j < k; ++j) center -= mu_[j][k] * static_cast<double>(x[j]);
      const double room = radius2_ - partial[k];
      if (room < 0) return false;
      const double r = std::sqrt(room / B_[k]);
      lo = std::max(lo, static_cast<long>(std::ceil(center - r)));
      hi = std::min(hi, static_cast<long>(std::floor(center + r)));
    }
    if (all_zero) lo = std::max(lo, 0L);
    for (long v = lo; v <= hi; ++v) {
      x[k] = v;
      if (prune_) {
        const double t = static_cast<double>(v) - center;
        partial[k + 1] = partial[k] + B_[k] * t * t;
      }
      if (rec(k + 1, std::max(cur_max, std::labs(v)), all_zero && v == 0)) return true;
    }
    x[k] = 0;
    return false;
  };
  rec(0, 0, true);
  return hit;
}

std::optional<std::vector<long>> ShellEnumerator::shells(std::size_t cap, const Visitor& visit,
                                                         EnumerationStats& stats, std::uint64_t node_budget,
                                                         const Deadline& deadline) {
  const std::size_t top = std::min(cap, max_shell());
  for (std::size_t s = 1; s <= top; ++s) {
    auto hit = run(static_cast<long>(s), static_cast<long>(s), visit, stats, node_budget, deadline);
    if (hit) {
      stats.shell = s;
      return hit;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<long>> ShellEnumerator::beyond(std::size_t cap, const Visitor& visit,
                                                         EnumerationStats& stats, std::uint64_t node_budget,
                                                         const Deadline& deadline) {
  if (cap >= max_shell()) return std::nullopt;
  auto hit = run(LONG_MAX, static_cast<long>(cap) + 1, visit, stats, node_budget, deadline);
  if (hit) {
    long mx = 0;
    for (long v : *hit) mx = std::max(mx, std::labs(v));
    stats.shell = static_cast<std::size_t>(mx);
    stats.beyond_cap = true;
  }
  return hit;
}

}  // namespace csa
