#pragma once

// Small dense matrices over the base field K.

#include <optional>
#include <vector>

#include "csa/number_field.hpp"

namespace csa {

struct KMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<FieldElem> a;  // row-major

  KMatrix() = default;
  KMatrix(const NumberField& K, std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, K.zero()) {}
  FieldElem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const FieldElem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  friend bool operator==(const KMatrix& x, const KMatrix& y) = default;
};

KMatrix kidentity(const NumberField& K, std::size_t n);
KMatrix kmul(const NumberField& K, const KMatrix& x, const KMatrix& y);
KMatrix kadd(const NumberField& K, const KMatrix& x, const KMatrix& y);
KMatrix kscale(const NumberField& K, const FieldElem& c, const KMatrix& x);
std::vector<FieldElem> kapply(const NumberField& K, const KMatrix& x, const std::vector<FieldElem>& v);

std::size_t krank(const NumberField& K, const KMatrix& x);
// Some y with x y = v, if one exists.
std::optional<std::vector<FieldElem>> ksolve(const NumberField& K, const KMatrix& x,
                                             const std::vector<FieldElem>& v);

// Column vectors as a matrix.
KMatrix kcolumns(const NumberField& K, const std::vector<std::vector<FieldElem>>& cols, std::size_t height);

// Flattening between K^n and Q^{nd}.
RatVector flatten(const std::vector<FieldElem>& v);
std::vector<FieldElem> unflatten(const RatVector& v, std::size_t d);

}  // namespace csa
