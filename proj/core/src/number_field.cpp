#include "csa/number_field.hpp"

#include <algorithm>
#include <set>

#include "csa/errors.hpp"
#include "csa/factor.hpp"
#include "csa/modp.hpp"

namespace csa {

namespace {

// f(x) for a polynomial over Q at a complex point.
Complex eval_complex(const std::vector<Complex>& c, const Complex& z) {
  Complex acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& f) {
  std::vector<Polynomial> seq{f, f.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    Polynomial r = divide(seq[seq.size() - 2], seq.back()).remainder;
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  return seq;
}

int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Roots in (a, b].
int count_roots(const std::vector<Polynomial>& seq, const Rational& a, const Rational& b) {
  return sign_changes(seq, a) - sign_changes(seq, b);
}

// Possible degrees of rational factors, from the factorisation pattern mod p.
std::set<int> subset_sums(const std::vector<int>& degs) {
  std::set<int> sums{0};
  for (int k : degs) {
    std::set<int> next = sums;
    for (int s : sums) next.insert(s + k);
    sums = std::move(next);
  }
  return sums;
}

void certify_irreducible(const Polynomial& f) {
  const int d = f.degree();
  if (d <= 1) return;
  if (gcd(f, f.derivative()).degree() > 0) throw InputError("minimal polynomial is not squarefree");

  // A monic integer polynomial of degree 2 or 3 is reducible iff it has an
  // integer root.
  for (const auto& iv : real_roots(f, 8)) {
    for (Integer z = floor_to_integer(to_real(iv.lo)) - 1; z <= floor_to_integer(to_real(iv.hi)) + 1; ++z) {
      if (f(Rational(z)) == 0) throw InputError("minimal polynomial has a rational root");
    }
  }
  if (d <= 3) return;

  std::set<int> possible;
  for (int k = 0; k <= d; ++k) possible.insert(k);
  int used = 0;
  for (modp::u64 p = 3; used < 200; p += 2) {
    if (!is_probable_prime(Integer(static_cast<unsigned long>(p)))) continue;
    modp::Poly fp(d + 1);
    for (int i = 0; i <= d; ++i) {
      auto c = modp::reduce(f.coefficient(i), p);
      fp[i] = c.value_or(0);
    }
    modp::Poly dfp;
    for (int i = 1; i <= d; ++i) dfp.push_back(modp::mul(fp[i], static_cast<modp::u64>(i) % p, p));
    modp::trim(dfp);
    if (modp::degree(modp::poly_gcd(fp, dfp, p)) > 0) continue;
    ++used;
    std::set<int> sums = subset_sums(modp::factor_degrees(fp, p));
    std::set<int> inter;
    std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(),
                          std::inserter(inter, inter.begin()));
    possible = std::move(inter);
    if (possible.size() == 2) return;
  }
  throw InputError("could not certify irreducibility of the minimal polynomial");
}

}  // namespace

// ---------------------------------------------------------------- roots

std::vector<RootInterval> real_roots(const Polynomial& f, unsigned bits) {
  std::vector<RootInterval> out;
  if (f.degree() <= 0) return out;
  const auto seq = sturm_sequence(f);
  Rational bound = 1;
  for (int i = 0; i < f.degree(); ++i) {
    Rational c = abs(f.coefficient(i) / f.leading());
    if (c + 1 > bound) bound = c + 1;
  }
  Rational b = 1;
  while (b < bound) b *= 2;

  std::vector<RootInterval> stack{{-b, b}};
  std::vector<RootInterval> isolated;
  while (!stack.empty()) {
    RootInterval iv = stack.back();
    stack.pop_back();
    int c = count_roots(seq, iv.lo, iv.hi);
    if (c == 0) continue;
    if (c == 1) {
      isolated.push_back(iv);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    stack.push_back({mid, iv.hi});
    stack.push_back({iv.lo, mid});
  }
  Rational width = 1;
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), bits);
  for (auto iv : isolated) {
    if (f(iv.hi) == 0) {
      out.push_back({iv.hi, iv.hi});
      continue;
    }
    while (iv.hi - iv.lo > width) {
      Rational mid = (iv.lo + iv.hi) / 2;
      if (f(mid) == 0) {
        iv = {mid, mid};
        break;
      }
      if (count_roots(seq, iv.lo, mid) == 1) iv.hi = mid;
      else iv.lo = mid;
    }
    out.push_back(iv);
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

std::vector<ComplexRoot> complex_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back().re == 0 && c.back().im == 0) c.pop_back();
  if (c.size() < 2) return {};
  const std::size_t n = c.size() - 1;
  const Complex lc = c.back();
  for (auto& v : c) v = v / lc;

  Real bound = 1;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, Real(1) + c[i].abs());

  const long prec_bits = static_cast<long>(Real::default_precision() * 3.3219280948873623);
  const Real tol = pow2(-(prec_bits - 8));

  std::vector<Complex> z(n);
  Complex seed(Real(4) / 10, Real(9) / 10);
  Complex w(Real(1));
  for (std::size_t k = 0; k < n; ++k) {
    w = w * seed;
    z[k] = bound * w;
  }
  std::vector<Complex> corr(n);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex denom(Real(1));
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) denom = denom * (z[k] - z[j]);
      corr[k] = eval_complex(c, z[k]) / denom;
      z[k] -= corr[k];
      worst = std::max(worst, corr[k].abs() / (Real(1) + z[k].abs()));
    }
    if (worst < tol) break;
  }
  std::vector<ComplexRoot> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex denom(Real(1));
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) denom = denom * (z[k] - z[j]);
    Real wk = (eval_complex(c, z[k]) / denom).abs();
    out[k].z = z[k];
    out[k].radius = Real(static_cast<long>(n)) * wk + pow2(-(prec_bits - 4)) * (Real(1) + z[k].abs());
  }
  return out;
}

// ---------------------------------------------------------------- NumberField

NumberField NumberField::rationals() {
  NumberField K;
  K.desc_ = FieldDescriptor{};
  K.d_ = 1;
  K.f_ = Polynomial({Rational(0), Rational(1)});
  K.basis_ = Matrix::identity(1);
  K.finish();
  return K;
}

NumberField NumberField::make(const FieldDescriptor& desc) {
  using Kind = FieldDescriptor::Kind;
  if (desc.kind == Kind::rationals) return rationals();

  NumberField K;
  K.desc_ = desc;
  if (desc.kind == Kind::quadratic) {
    const long D = desc.D;
    if (D == 0 || D == 1) throw InputError("quadratic field needs D different from 0 and 1");
    for (const auto& [p, e] : factor_integer(Integer(D)))
      if (e > 1) throw InputError("D is not squarefree: " + std::to_string(D));
    K.d_ = 2;
    K.f_ = Polynomial({Rational(-D), Rational(0), Rational(1)});
    K.basis_ = Matrix(2, 2);
    K.basis_(0, 0) = 1;
    const long r = ((D % 4) + 4) % 4;
    if (r == 1) {
      K.basis_(1, 0) = Rational(1, 2);
      K.basis_(1, 1) = Rational(1, 2);
    } else {
      K.basis_(1, 1) = 1;
    }
    K.finish();
    const Integer expected = (r == 1) ? Integer(D) : Integer(4 * D);
    if (K.disc_ != expected) throw std::logic_error("quadratic discriminant mismatch");
    return K;
  }

  // general
  const IntVector& mp = desc.min_poly;
  if (mp.size() < 2) throw InputError("minimal polynomial must have degree at least 1");
  if (mp.back() != 1) throw InputError("minimal polynomial must be monic");
  RatVector coeffs(mp.begin(), mp.end());
  K.f_ = Polynomial(coeffs);
  K.d_ = static_cast<std::size_t>(K.f_.degree());
  certify_irreducible(K.f_);
  if (desc.integral_basis.size() != K.d_) throw InputError("integral basis must have d elements");
  for (const auto& row : desc.integral_basis)
    if (row.size() != K.d_) throw InputError("integral basis element has wrong length");
  K.basis_ = Matrix::from_rows(desc.integral_basis);
  K.finish();
  if (K.disc_ != desc.discriminant) {
    throw InputError("supplied discriminant " + desc.discriminant.get_str() +
                     " differs from the trace-form discriminant " + K.disc_.get_str());
  }
  return K;
}

void NumberField::finish() {
  auto inv = csa::inverse(basis_);
  if (!inv) throw InputError("integral basis is not linearly independent");
  basis_inv_ = std::move(*inv);

  // Products of basis elements in the power basis, reduced modulo f.
  auto reduce_mod_f = [&](const Polynomial& p) { return divide(p, f_).remainder; };
  std::vector<Polynomial> omega(d_);
  for (std::size_t l = 0; l < d_; ++l) omega[l] = Polynomial(basis_.row_vector(l));
  table_.assign(d_ * d_ * d_, 0);
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      Polynomial prod = reduce_mod_f(omega[i] * omega[j]);
      RatVector pc(d_);
      for (std::size_t k = 0; k < d_; ++k) pc[k] = prod.coefficient(k);
      FieldElem c = from_power_basis(pc);
      for (std::size_t k = 0; k < d_; ++k) {
        if (c[k].get_den() != 1) throw InputError("integral basis is not closed under multiplication");
        table_[(i * d_ + j) * d_ + k] = c[k].get_num();
      }
    }
  }
  RatVector unit(d_);
  unit[0] = 1;
  one_ = from_power_basis(unit);
  if (!is_integral(one_)) throw InputError("integral basis does not contain 1 in its Z-span");

  Matrix gram(d_, d_);
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      FieldElem e(d_);
      e[i] = 1;
      FieldElem g(d_);
      g[j] = 1;
      gram(i, j) = trace(mul(e, g));
    }
  }
  Rational disc = determinant(gram);
  disc_ = disc.get_num();

  auto roots = real_roots(f_, 8);
  r_ = static_cast<int>(roots.size());
  s_ = static_cast<int>((d_ - roots.size()) / 2);
}

FieldElem NumberField::from_rational(const Rational& q) const { return scale(q, one_); }

bool NumberField::is_zero(const FieldElem& x) const {
  return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
}

bool NumberField::is_integral(const FieldElem& x) const {
  return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q.get_den() == 1; });
}

FieldElem NumberField::add(const FieldElem& x, const FieldElem& y) const {
  FieldElem z(d_);
  for (std::size_t i = 0; i < d_; ++i) z[i] = x[i] + y[i];
  return z;
}

FieldElem NumberField::sub(const FieldElem& x, const FieldElem& y) const {
  FieldElem z(d_);
  for (std::size_t i = 0; i < d_; ++i) z[i] = x[i] - y[i];
  return z;
}

FieldElem NumberField::neg(const FieldElem& x) const {
  FieldElem z(d_);
  for (std::size_t i = 0; i < d_; ++i) z[i] = -x[i];
  return z;
}

FieldElem NumberField::mul(const FieldElem& x, const FieldElem& y) const {
  FieldElem z(d_);
  if (d_ == 1) {
    z[0] = x[0] * y[0];
    return z;
  }
  for (std::size_t i = 0; i < d_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      if (y[j] == 0) continue;
      Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < d_; ++k) {
        const Integer& t = table(i, j, k);
        if (t != 0) z[k] += xy * t;
      }
    }
  }
  return z;
}

FieldElem NumberField::scale(const Rational& q, const FieldElem& x) const {
  FieldElem z(d_);
  for (std::size_t i = 0; i < d_; ++i) z[i] = q * x[i];
  return z;
}

std::optional<FieldElem> NumberField::inverse(const FieldElem& x) const {
  if (is_zero(x)) return std::nullopt;
  return solve(mult_matrix(x), one_);
}

Matrix NumberField::mult_matrix(const FieldElem& x) const {
  Matrix m(d_, d_);
  for (std::size_t l = 0; l < d_; ++l) {
    FieldElem e(d_);
    e[l] = 1;
    FieldElem c = mul(x, e);
    for (std::size_t k = 0; k < d_; ++k) m(k, l) = c[k];
  }
  return m;
}

Rational NumberField::norm(const FieldElem& x) const { return determinant(mult_matrix(x)); }

Rational NumberField::trace(const FieldElem& x) const {
  Matrix m = mult_matrix(x);
  Rational t = 0;
  for (std::size_t i = 0; i < d_; ++i) t += m(i, i);
  return t;
}

FieldElem NumberField::from_power_basis(const RatVector& c) const {
  // c = sum_l x_l * basis row l, so x = c * basis^{-1} as a row vector.
  return basis_inv_.transpose().apply(c);
}

RatVector NumberField::to_power_basis(const FieldElem& x) const { return basis_.transpose().apply(x); }

std::vector<Embedding> NumberField::embeddings(unsigned precision_bits) const {
  PrecisionGuard guard(precision_bits + 32);
  std::vector<Embedding> out;
  if (d_ == 1) {
    Embedding e;
    e.real = true;
    e.alpha = Complex(to_real(-f_.coefficient(0)));
    e.radius = 0;
    e.omega = {Complex(Real(1))};
    out.push_back(std::move(e));
    return out;
  }
  for (const auto& iv : real_roots(f_, precision_bits + 16)) {
    Embedding e;
    e.real = true;
    e.alpha = Complex((to_real(iv.lo) + to_real(iv.hi)) / 2);
    e.radius = to_real(iv.hi - iv.lo);
    out.push_back(std::move(e));
  }
  if (s_ > 0) {
    std::vector<Complex> c(d_ + 1);
    for (std::size_t i = 0; i <= d_; ++i) c[i] = Complex(to_real(f_.coefficient(i)));
    auto roots = complex_roots(c);
    std::sort(roots.begin(), roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
      if (a.z.im != b.z.im) return a.z.im > b.z.im;
      return a.z.re > b.z.re;
    });
    std::vector<ComplexRoot> upper(roots.begin(), roots.begin() + s_);
    std::sort(upper.begin(), upper.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
      if (a.z.re != b.z.re) return a.z.re < b.z.re;
      return a.z.im < b.z.im;
    });
    for (auto& root : upper) {
      Embedding e;
      e.real = false;
      e.alpha = root.z;
      e.radius = root.radius;
      out.push_back(std::move(e));
    }
  }
  for (auto& e : out) {
    std::vector<Complex> powers(d_);
    powers[0] = Complex(Real(1));
    for (std::size_t k = 1; k < d_; ++k) powers[k] = powers[k - 1] * e.alpha;
    e.omega.assign(d_, Complex());
    for (std::size_t l = 0; l < d_; ++l)
      for (std::size_t k = 0; k < d_; ++k)
        if (basis_(l, k) != 0) e.omega[l] += to_real(basis_(l, k)) * powers[k];
  }
  return out;
}

Complex NumberField::embed(const Embedding& e, const FieldElem& x) {
  Complex acc;
  for (std::size_t l = 0; l < x.size(); ++l)
    if (x[l] != 0) acc += to_real(x[l]) * e.omega[l];
  return acc;
}

std::string NumberField::to_string(const FieldElem& x) const {
  if (d_ == 1) return csa::to_string(x[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < d_; ++i) {
    if (i) out += ", ";
    out += csa::to_string(x[i]);
  }
  return out + "]";
}

Matrix restrict_scalars(const NumberField& K, std::size_t rows, std::size_t cols,
                        const std::vector<FieldElem>& entries) {
  const std::size_t d = K.degree();
  Matrix out(rows * d, cols * d);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const FieldElem& x = entries[i * cols + j];
      if (K.is_zero(x)) continue;
      Matrix m = K.mult_matrix(x);
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t l = 0; l < d; ++l) out(i * d + u, j * d + l) = m(u, l);
    }
  }
  return out;
}

}  // namespace csa
