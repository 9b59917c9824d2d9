#include "csa/exact.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "csa/errors.hpp"

namespace csa {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  std::size_t start = (text[0] == '-') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '/') {
      if (seen_slash) throw InputError("malformed rational literal: " + text);
      seen_slash = true;
    } else if (ch >= '0' && ch <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw InputError("malformed rational literal: " + text);
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    throw InputError("malformed rational literal: " + text);
  }
  Rational q(text, 10);
  if (q.get_den() == 0) throw InputError("zero denominator in " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw InputError("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + r * m.cols_);
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<RatVector>& cols, std::size_t height) {
  Matrix m(height, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != height) throw InputError("ragged matrix columns");
    for (std::size_t r = 0; r < height; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

RatVector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

RatVector Matrix::column(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatVector Matrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  RatVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] != 0 && (*this)(r, c) != 0) acc += (*this)(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
  Matrix s = a;
  for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] += b.entries_[i];
  return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
  Matrix s = a;
  for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] -= b.entries_[i];
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  Matrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) != 0) p(i, j) += aik * b(k, j);
      }
    }
  }
  return p;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix p = a;
  for (auto& e : p.entries_) e *= s;
  return p;
}

// ------------------------------------------------- fraction-free elimination

namespace {

// Scales each row of a rational matrix (optionally augmented) to integers.
std::vector<IntVector> integer_rows(const Matrix& m, const Matrix* rhs) {
  const std::size_t extra = rhs ? rhs->cols() : 0;
  std::vector<IntVector> rows(m.rows(), IntVector(m.cols() + extra));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < extra; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*rhs)(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rows[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
    for (std::size_t c = 0; c < extra; ++c) {
      rows[r][m.cols() + c] = (*rhs)(r, c).get_num() * (l / (*rhs)(r, c).get_den());
    }
  }
  return rows;
}

struct Echelon {
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivots;  // pivot column for rows[0..rank)
  int sign = 1;                     // parity of row swaps
};

// Bareiss elimination restricted to the first `pivot_cols` columns. Every
// entry after step k is a (k+1)-minor of the input, so the divisions are exact.
Echelon bareiss(std::vector<IntVector> a, std::size_t pivot_cols) {
  Echelon e;
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a[0].size() : 0;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && a[p][c] == 0) ++p;
    if (p == nrows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      e.sign = -e.sign;
    }
    const Integer& piv = a[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Integer lead = a[i][c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Integer t = piv * a[i][j] - lead * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(a);
  return e;
}

// Back substitution on an echelon form: solves for pivot variables given the
// values of free variables and a right-hand-side column.
RatVector back_substitute(const Echelon& e, std::size_t ncols, const RatVector& free_values,
                          std::size_t rhs_col, bool use_rhs) {
  RatVector x = free_values;
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    const auto& row = e.rows[k];
    const std::size_t p = e.pivots[k];
    Rational acc = use_rhs ? Rational(row[rhs_col]) : Rational(0);
    for (std::size_t j = p + 1; j < ncols; ++j) {
      if (row[j] != 0 && x[j] != 0) acc -= Rational(row[j]) * x[j];
    }
    x[p] = acc / Rational(row[p]);
  }
  return x;
}

}  // namespace

SolveResult solve_and_kernel(const Matrix& m, const std::optional<Matrix>& rhs) {
  if (rhs && rhs->rows() != m.rows()) throw InputError("solve: right-hand side row count mismatch");
  const std::size_t n = m.cols();
  Echelon e = bareiss(integer_rows(m, rhs ? &*rhs : nullptr), n);
  const std::size_t rk = e.pivots.size();

  SolveResult result;
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;

  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(n);
    x[f] = 1;
    result.kernel.push_back(back_substitute(e, n, x, 0, false));
  }

  if (rhs) {
    const std::size_t k = rhs->cols();
    bool consistent = true;
    for (std::size_t r = rk; r < e.rows.size() && consistent; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (e.rows[r][n + c] != 0) {
          consistent = false;
          break;
        }
    if (consistent) {
      Matrix sol(n, k);
      for (std::size_t c = 0; c < k; ++c) {
        RatVector x = back_substitute(e, n, RatVector(n), n + c, true);
        for (std::size_t r = 0; r < n; ++r) sol(r, c) = x[r];
      }
      result.particular = std::move(sol);
    }
  }
  return result;
}

std::vector<RatVector> kernel(const Matrix& m) { return solve_and_kernel(m).kernel; }

std::optional<RatVector> solve(const Matrix& m, std::span<const Rational> rhs) {
  Matrix b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  auto res = solve_and_kernel(m, b);
  if (!res.particular) return std::nullopt;
  return res.particular->column(0);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw InputError("inverse of non-square matrix");
  auto res = solve_and_kernel(m, Matrix::identity(m.rows()));
  if (!res.kernel.empty() || !res.particular) return std::nullopt;
  return res.particular;
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return bareiss(integer_rows(m, nullptr), m.cols()).pivots.size();
}

std::vector<std::size_t> independent_columns(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  return bareiss(integer_rows(m, nullptr), m.cols()).pivots;
}

Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw InputError("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  // Scale rows to integers, run Bareiss, undo the scaling.
  Rational scale = 1;
  std::vector<IntVector> rows = integer_rows(m, nullptr);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) {
        scale *= Rational(rows[r][c]) / m(r, c);
        break;
      }
    }
  }
  Integer d = determinant(rows);
  return Rational(d) / scale;
}

Integer determinant(const std::vector<IntVector>& square) {
  const std::size_t n = square.size();
  if (n == 0) return 1;
  for (const auto& row : square)
    if (row.size() != n) throw InputError("determinant of non-square matrix");
  Echelon e = bareiss(square, n);
  if (e.pivots.size() < n) return 0;
  return e.sign * e.rows[n - 1][n - 1];
}

std::size_t rank(const std::vector<IntVector>& rows) {
  if (rows.empty() || rows[0].empty()) return 0;
  return bareiss(rows, rows[0].size()).pivots.size();
}

// ---------------------------------------------------------------- HNF

HermiteForm hnf_and_det(const std::vector<IntVector>& input) {
  HermiteForm h;
  if (input.empty()) return h;
  std::vector<IntVector> a = input;
  const std::size_t nrows = a.size();
  const std::size_t ncols = a[0].size();
  for (const auto& row : a)
    if (row.size() != ncols) throw InputError("hnf: ragged rows");

  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    // Euclid on column c over rows r..: leave the gcd in row r.
    for (;;) {
      std::size_t best = nrows;
      for (std::size_t k = r; k < nrows; ++k) {
        if (a[k][c] == 0) continue;
        if (best == nrows || abs(a[k][c]) < abs(a[best][c])) best = k;
      }
      if (best == nrows) break;
      if (best != r) std::swap(a[best], a[r]);
      bool cleared = true;
      for (std::size_t k = r + 1; k < nrows; ++k) {
        if (a[k][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[k][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (std::size_t j = c; j < ncols; ++j) a[k][j] -= q * a[r][j];
        if (a[k][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (std::size_t j = c; j < ncols; ++j) a[r][j] = -a[r][j];
    for (std::size_t k = 0; k < r; ++k) {
      if (a[k][c] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[k][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < ncols; ++j) a[k][j] -= q * a[r][j];
    }
    h.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  h.basis = std::move(a);
  if (r == ncols) {
    Integer d = 1;
    for (std::size_t i = 0; i < r; ++i) d *= h.basis[i][h.pivots[i]];
    h.determinant = d;
  }
  return h;
}

std::optional<IntVector> hnf_coordinates(const HermiteForm& hnf, std::span<const Integer> v) {
  IntVector rest(v.begin(), v.end());
  IntVector coords(hnf.basis.size());
  for (std::size_t i = 0; i < hnf.basis.size(); ++i) {
    const std::size_t p = hnf.pivots[i];
    const Integer& piv = hnf.basis[i][p];
    if (!mpz_divisible_p(rest[p].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    Integer q = rest[p] / piv;
    coords[i] = q;
    if (q != 0)
      for (std::size_t j = p; j < rest.size(); ++j) rest[j] -= q * hnf.basis[i][j];
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RatVector coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, const Rational& c) {
  RatVector v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  RatVector d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational lc = leading();
  RatVector v = coeffs_;
  for (auto& c : v) c /= lc;
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    std::string term;
    Rational mag = abs(c);
    if (!out.empty()) out += (c < 0) ? " - " : " + ";
    else if (c < 0) out += "-";
    if (i == 0 || mag != 1) term = csa::to_string(mag);
    if (i > 0) {
      if (!term.empty()) term += "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    out += term;
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  RatVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coefficient(i) + b.coefficient(i);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  RatVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coefficient(i) - b.coefficient(i);
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatVector v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  RatVector v = a.coeffs_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

PolyDivision divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RatVector rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  RatVector quo(a.degree() - db + 1);
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[k] / b.leading();
    quo[k - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coefficient(j);
  }
  rem.resize(db);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Matrix evaluate(const Polynomial& p, const Matrix& m) {
  if (!m.is_square()) throw InputError("polynomial evaluated at non-square matrix");
  Matrix acc(m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m + p.coefficient(i) * Matrix::identity(m.rows());
  }
  return acc;
}

Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw InputError("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  Matrix h = m;
  // Reduce to upper Hessenberg form by similarity transformations.
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    while (piv < n && h(piv, c) == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, piv), h(j, c + 1));
    }
    const Rational t = h(c + 1, c);
    for (std::size_t i = c + 2; i < n; ++i) {
      if (h(i, c) == 0) continue;
      Rational u = h(i, c) / t;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(c + 1, j);
      for (std::size_t j = 0; j < n; ++j) h(j, c + 1) += u * h(j, i);
    }
  }
  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial({Rational(1)});
  const Polynomial x = Polynomial::monomial(1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = (x - Polynomial({h(k - 1, k - 1)})) * p[k - 1];
    Rational t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t *= h(k - i, k - i - 1);
      if (t == 0) break;
      p[k] = p[k] - (t * h(k - i - 1, k - 1)) * p[k - i - 1];
    }
  }
  return p[n];
}

Polynomial minimal_polynomial(const Matrix& m) {
  if (!m.is_square()) throw InputError("minimal polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<RatVector> powers;
  Matrix power = Matrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    RatVector flat = power.entries();
    if (!powers.empty()) {
      Matrix basis = Matrix::from_columns(powers, n * n);
      if (auto coeffs = solve(basis, flat)) {
        RatVector poly(k + 1);
        for (std::size_t i = 0; i < k; ++i) poly[i] = -(*coeffs)[i];
        poly[k] = 1;
        return Polynomial(std::move(poly));
      }
    } else if (n == 0) {
      return Polynomial({Rational(1)});
    }
    powers.push_back(std::move(flat));
    power = power * m;
  }
  throw std::logic_error("minimal polynomial degree exceeds matrix size");
}

MinCharPoly min_char_poly(const Matrix& m) {
  return {minimal_polynomial(m), characteristic_polynomial(m)};
}

}  // namespace csa
