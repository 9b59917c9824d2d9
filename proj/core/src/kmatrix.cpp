#include "csa/kmatrix.hpp"

namespace csa {

KMatrix kidentity(const NumberField& K, std::size_t n) {
  KMatrix I(K, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = K.one();
  return I;
}

KMatrix kmul(const NumberField& K, const KMatrix& x, const KMatrix& y) {
  KMatrix z(K, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t t = 0; t < x.cols; ++t) {
      if (K.is_zero(x(i, t))) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        if (!K.is_zero(y(t, j))) z(i, j) = K.add(z(i, j), K.mul(x(i, t), y(t, j)));
    }
  return z;
}

KMatrix kadd(const NumberField& K, const KMatrix& x, const KMatrix& y) {
  KMatrix z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = K.add(x.a[i], y.a[i]);
  return z;
}

KMatrix kscale(const NumberField& K, const FieldElem& c, const KMatrix& x) {
  KMatrix z = x;
  for (auto& v : z.a) v = K.mul(c, v);
  return z;
}

std::vector<FieldElem> kapply(const NumberField& K, const KMatrix& x, const std::vector<FieldElem>& v) {
  std::vector<FieldElem> out(x.rows, K.zero());
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j)
      if (!K.is_zero(x(i, j)) && !K.is_zero(v[j])) out[i] = K.add(out[i], K.mul(x(i, j), v[j]));
  return out;
}

std::size_t krank(const NumberField& K, const KMatrix& x) {
  return rank(restrict_scalars(K, x.rows, x.cols, x.a)) / K.degree();
}

std::optional<std::vector<FieldElem>> ksolve(const NumberField& K, const KMatrix& x,
                                             const std::vector<FieldElem>& v) {
  auto y = solve(restrict_scalars(K, x.rows, x.cols, x.a), flatten(v));
  if (!y) return std::nullopt;
  return unflatten(*y, K.degree());
}

KMatrix kcolumns(const NumberField& K, const std::vector<std::vector<FieldElem>>& cols, std::size_t height) {
  KMatrix m(K, height, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < height; ++i) m(i, j) = cols[j][i];
  return m;
}

RatVector flatten(const std::vector<FieldElem>& v) {
  RatVector out;
  for (const auto& x : v) out.insert(out.end(), x.begin(), x.end());
  return out;
}

std::vector<FieldElem> unflatten(const RatVector& v, std::size_t d) {
  std::vector<FieldElem> out(v.size() / d, FieldElem(d));
  for (std::size_t i = 0; i < v.size(); ++i) out[i / d][i % d] = v[i];
  return out;
}

}  // namespace csa
