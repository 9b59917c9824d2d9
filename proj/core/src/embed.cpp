#include "csa/embed.hpp"

#include <algorithm>

#include "csa/errors.hpp"
#include "csa/order.hpp"

namespace csa {

namespace {

unsigned current_bits() { return static_cast<unsigned>(Real::default_precision() * 3.3219280948873623); }

Complex sigma(const Embedding& place, const FieldElem& x) { return NumberField::embed(place, x); }

// sigma applied to the K-coordinates of x (given over Q).
std::vector<Complex> sigma_coords(const std::vector<Complex>& omega, std::size_t d, const Element& x) {
  std::vector<Complex> out(x.size() / d);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t l = 0; l < d; ++l)
      if (x[i * d + l] != 0) out[i] += to_real(x[i * d + l]) * omega[l];
  return out;
}

std::vector<Complex> matvec(const CMatrix& M, const std::vector<Complex>& v) {
  std::vector<Complex> out(M.rows);
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j) out[i] += M(i, j) * v[j];
  return out;
}

Complex inner(const std::vector<Complex>& q, const std::vector<Complex>& c) {
  Complex s;
  for (std::size_t k = 0; k < q.size(); ++k) s += q[k].conj() * c[k];
  return s;
}

Real norm(const std::vector<Complex>& v) {
  Real s = 0;
  for (const auto& z : v) s += z.norm2();
  return sqrt(s);
}

}  // namespace

std::vector<FieldElem> kminimal_polynomial(const Algebra& A, const Element& x) {
  const NumberField& K = A.field();
  const std::size_t d = K.degree(), N = A.qdim();
  std::vector<Element> powers{A.one()};
  std::vector<RatVector> cols;
  for (std::size_t k = 1; k <= A.dim(); ++k) {
    for (std::size_t l = 0; l < d; ++l) cols.push_back(A.omega_times(l, powers.back()));
    powers.push_back(A.mul(powers.back(), x));
    auto c = solve(Matrix::from_columns(cols, N), powers.back());
    if (!c) continue;
    std::vector<FieldElem> f(k + 1, K.zero());
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < d; ++l) f[j][l] = -(*c)[j * d + l];
    f[k] = K.one();
    return f;
  }
  throw StructuralFailure("no minimal polynomial found within the algebra dimension");
}

PlaceRoots place_roots(const NumberField& K, const Embedding& place, const std::vector<FieldElem>& f) {
  (void)K;
  std::vector<Complex> c;
  for (const auto& x : f) c.push_back(sigma(place, x));
  PlaceRoots out;
  out.radius = 0;
  if (c.size() == 2) {
    out.roots = {-(c[0] / c[1])};
  } else {
    for (auto& r : complex_roots(c)) {
      out.roots.push_back(r.z);
      out.radius = std::max(out.radius, r.radius);
    }
  }
  const std::size_t n = out.roots.size();
  out.separation = -1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Real s = (out.roots[i] - out.roots[j]).abs();
      if (out.separation < 0 || s < out.separation) out.separation = s;
    }
  if (n == 1) out.separation = 1;
  out.real.assign(n, false);
  if (place.real && out.separation > 2 * out.radius) {
    // The polynomial is real, so a root whose disc meets the axis and no
    // other disc is its own conjugate.
    for (std::size_t i = 0; i < n; ++i)
      if (abs(out.roots[i].im) <= out.radius) {
        out.real[i] = true;
        out.roots[i].im = 0;
      }
  }
  return out;
}

SplittingElement splitting_element(const Algebra& A, const Matrix& order_basis, const Embedding& place,
                                   std::mt19937_64& rng, std::size_t budget) {
  const std::size_t n = A.require_degree();
  const std::size_t N = A.qdim();
  const Real margin = pow2(-static_cast<long>(current_bits() / 8));
  const Matrix basis = reduce_lattice_basis(order_basis);
  for (std::size_t sample = 1; sample <= budget; ++sample) {
    Element x(N);
    for (std::size_t t = 0; t < basis.rows(); ++t) {
      const long c = static_cast<long>(rng() % 5) - 2;
      if (c == 0) continue;
      for (std::size_t k = 0; k < N; ++k) x[k] += c * basis(t, k);
    }
    if (is_zero(x)) continue;
    auto f = kminimal_polynomial(A, x);
    if (f.size() != n + 1) continue;
    PlaceRoots pr = place_roots(A.field(), place, f);
    Real scale = 1;
    for (const auto& z : pr.roots) scale = std::max(scale, z.abs());
    if (!(pr.separation > 4 * pr.radius) || !(pr.separation > margin * scale)) continue;
    if (place.real && std::none_of(pr.real.begin(), pr.real.end(), [](bool b) { return b; })) continue;
    return SplittingElement{std::move(x), std::move(f), sample};
  }
  throw BudgetExhausted("no splitting element found after " + std::to_string(budget) + " samples at a " +
                        (place.real ? "real" : "complex") + " place");
}

CMatrix ArchRepresentation::apply(const Element& x) const {
  const std::size_t d = omega.size();
  CMatrix out(n, n);
  auto s = sigma_coords(omega, d, x);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].re == 0 && s[i].im == 0) continue;
    out = out + s[i] * images[i];
  }
  return out;
}

ArchRepresentation build_representation(const Algebra& A, const Embedding& place, std::size_t index,
                                        const SplittingElement& s, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits);
  const NumberField& K = A.field();
  const std::size_t m = A.dim(), n = A.require_degree();

  ArchRepresentation rep;
  rep.place = index;
  rep.real = place.real;
  rep.n = n;
  rep.precision_bits = precision_bits;
  rep.omega = place.omega;
  rep.samples = s.samples;

  std::vector<Complex> sg(m * m * m);
  std::vector<bool> nz(m * m * m, false);
  for (std::size_t t = 0; t < sg.size(); ++t) {
    if (K.is_zero(A.constants()[t])) continue;
    sg[t] = sigma(place, A.constants()[t]);
    nz[t] = true;
  }
  auto left = [&](std::size_t i) {
    CMatrix L(m, m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (nz[(i * m + j) * m + k]) L(k, j) = sg[(i * m + j) * m + k];
    return L;
  };
  std::vector<CMatrix> L;
  for (std::size_t i = 0; i < m; ++i) L.push_back(left(i));

  CMatrix La(m, m);
  const auto sa = sigma_coords(place.omega, K.degree(), s.a);
  for (std::size_t i = 0; i < m; ++i) La = La + sa[i] * L[i];

  PlaceRoots pr = place_roots(K, place, s.min_poly);
  std::size_t pick = pr.roots.size();
  for (std::size_t i = 0; i < pr.roots.size(); ++i) {
    if (place.real && !pr.real[i]) continue;
    if (pick == pr.roots.size()) {
      pick = i;
      continue;
    }
    const Complex& z = pr.roots[i];
    const Complex& w = pr.roots[pick];
    bool better = place.real ? z.re > w.re : (z.im > w.im || (z.im == w.im && z.re > w.re));
    if (better) pick = i;
  }
  if (pick == pr.roots.size()) throw RepresentationFailure("splitting element lost its real root");
  const Complex theta = pr.roots[pick];

  std::vector<Complex> e = sigma_coords(place.omega, K.degree(), A.one());
  for (std::size_t j = 0; j < pr.roots.size(); ++j) {
    if (j == pick) continue;
    auto Le = matvec(La, e);
    Complex denom = theta - pr.roots[j];
    for (std::size_t k = 0; k < m; ++k) e[k] = (Le[k] - pr.roots[j] * e[k]) / denom;
  }
  if (place.real)
    for (auto& z : e) z.im = 0;

  // Pivoted Gram-Schmidt on the columns a_i e spanning A e.
  std::vector<std::vector<Complex>> cols;
  Real scale = 0;
  for (std::size_t i = 0; i < m; ++i) {
    cols.push_back(matvec(L[i], e));
    scale = std::max(scale, norm(cols.back()));
  }
  const Real thresh = pow2(-static_cast<long>(precision_bits / 4)) * scale;
  std::vector<std::vector<Complex>> Q;
  std::vector<bool> used(m, false);
  for (std::size_t t = 0; t <= n; ++t) {
    std::size_t best = m;
    Real best_norm = -1;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      Real r = norm(cols[i]);
      if (r > best_norm) {
        best_norm = r;
        best = i;
      }
    }
    if (t == n) {
      if (best < m && best_norm > thresh) throw RepresentationFailure("left ideal has dimension above n");
      break;
    }
    if (best == m || !(best_norm > thresh)) throw RepresentationFailure("ideal basis pivot below threshold");
    used[best] = true;
    std::vector<Complex> q = cols[best];
    for (auto& z : q) z = (Real(1) / best_norm) * z;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      Complex c = inner(q, cols[i]);
      for (std::size_t k = 0; k < m; ++k) cols[i][k] -= c * q[k];
    }
    Q.push_back(std::move(q));
  }

  CMatrix Qm(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < m; ++k) Qm(k, j) = Q[j][k];
  CMatrix Qa = adjoint(Qm);
  Real img_scale = 1;
  for (std::size_t i = 0; i < m; ++i) {
    rep.images.push_back(Qa * (L[i] * Qm));
    img_scale = std::max(img_scale, frobenius(rep.images.back()));
  }

  // Residual gate.
  Real residual = 0;
  {
    CMatrix unit(n, n);
    auto one = sigma_coords(place.omega, K.degree(), A.one());
    for (std::size_t i = 0; i < m; ++i) unit = unit + one[i] * rep.images[i];
    for (std::size_t i = 0; i < n; ++i) unit(i, i) -= Complex(Real(1));
    residual = frobenius(unit);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      CMatrix r = rep.images[i] * rep.images[j];
      for (std::size_t k = 0; k < m; ++k)
        if (nz[(i * m + j) * m + k]) r = r - sg[(i * m + j) * m + k] * rep.images[k];
      residual = std::max(residual, frobenius(r));
    }
  rep.residual = residual / (img_scale * img_scale);
  if (!(rep.residual < pow2(-static_cast<long>(precision_bits / 2))))
    throw RepresentationFailure("multiplicativity residual above tolerance");
  return rep;
}

std::vector<Real> LatticeEmbedding::phi(const Element& x) const {
  std::vector<Real> v;
  v.reserve(dim);
  for (const auto& rep : places) {
    CMatrix M = rep.apply(x);
    for (const auto& z : M.a) v.push_back(z.re);
    if (!rep.real)
      for (const auto& z : M.a) v.push_back(z.im);
  }
  return v;
}

std::vector<Real> LatticeEmbedding::place_norms2(const std::vector<Real>& v) const {
  std::vector<Real> out;
  std::size_t pos = 0;
  for (const auto& rep : places) {
    const std::size_t len = rep.real ? n * n : 2 * n * n;
    Real s = 0;
    for (std::size_t k = 0; k < len; ++k) s += v[pos + k] * v[pos + k];
    out.push_back(s);
    pos += len;
  }
  return out;
}

LatticeEmbedding phi_interleave(const Algebra& A, const Matrix& order_basis, std::vector<ArchRepresentation> reps) {
  LatticeEmbedding out;
  out.n = A.require_degree();
  out.dim = out.n * out.n * A.field().degree();
  std::stable_sort(reps.begin(), reps.end(),
                   [](const ArchRepresentation& x, const ArchRepresentation& y) { return x.real && !y.real; });
  out.places = std::move(reps);
  for (std::size_t t = 0; t < order_basis.rows(); ++t) out.vectors.push_back(out.phi(order_basis.row_vector(t)));
  if (out.vectors.size() != out.dim || out.vectors[0].size() != out.dim)
    throw StructuralFailure("lattice dimension does not match n^2 d");

  Real prod = 1;
  for (const auto& v : out.vectors) {
    Real s = 0;
    for (const auto& x : v) s += x * x;
    prod *= sqrt(s);
  }
  const unsigned bits = out.places.empty() ? 64 : out.places[0].precision_bits;
  if (!(abs_determinant(out.vectors) > pow2(-static_cast<long>(bits / 2)) * prod))
    throw RepresentationFailure("Phi(Lambda) is not certified full rank");
  return out;
}

LatticeEmbedding embed_order(const Algebra& A, const Matrix& order_basis, unsigned precision_bits,
                             std::mt19937_64& rng, std::size_t sample_budget, std::size_t* samples) {
  PrecisionGuard guard(precision_bits);
  const auto places = A.field().embeddings(precision_bits);
  std::vector<ArchRepresentation> reps;
  std::size_t total = 0;
  for (std::size_t i = 0; i < places.size(); ++i) {
    std::size_t left = sample_budget;
    for (int attempt = 0;; ++attempt) {
      SplittingElement s = splitting_element(A, order_basis, places[i], rng, left);
      total += s.samples;
      left -= std::min(left, s.samples);
      try {
        reps.push_back(build_representation(A, places[i], i, s, precision_bits));
        break;
      } catch (const RepresentationFailure&) {
        if (attempt >= 2 || left == 0) throw;
      }
    }
  }
  if (samples) *samples = total;
  return phi_interleave(A, order_basis, std::move(reps));
}

}  // namespace csa
