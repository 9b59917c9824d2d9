#pragma once

// Instance and witness files (JSON, rationals as canonical strings) and the
// random instance generator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csa/algebra.hpp"
#include "csa/apps.hpp"
#include "csa/kmatrix.hpp"
#include "csa/splitter.hpp"

namespace csa {

inline constexpr const char* kInstanceFormat = "csa-instance/1";
inline constexpr const char* kWitnessFormat = "csa-witness/1";

struct Instance {
  FieldDescriptor field;
  std::size_t dim = 0;
  std::vector<FieldElem> constants;  // m^3 entries, gamma[(i*m + j)*m + k]
  // Change of basis T with a_k = sum_l T_kl E_l (row-major, m x m).
  std::optional<std::vector<FieldElem>> hidden_witness;

  Algebra algebra(bool check_associativity = true) const;
};

Instance instance_from_algebra(const Algebra& A);

// M_n(K) in the basis E_ij (index i*n + j).
Algebra standard_matrix_algebra(const NumberField& K, std::size_t n);

struct GenOptions {
  std::size_t n = 2;
  FieldDescriptor field;
  std::uint64_t seed = 1;
  long entry_bound = 10;
  bool hidden_witness = true;
  bool identity = false;  // T = I, i.e. the standard table
};

// Random K-basis a_k = sum_l T_kl E_l of M_n(K) with T invertible and each
// rational coordinate p/q satisfying |p| <= bound, 1 <= q <= bound.
Instance gen_instance(const GenOptions& options);

std::string write_instance(const Instance& inst);
Instance read_instance(const std::string& text);

struct WitnessFile {
  std::size_t n = 0;
  std::vector<FieldElem> rank_one;  // K-coordinates of C
  std::vector<KMatrix> images;
  std::vector<Integer> order_discriminants;
  std::vector<LevelStats> levels;
  std::uint64_t short_checked = 0;
  std::uint64_t short_violations = 0;
};

WitnessFile witness_from_report(const Algebra& A, const SplitReport& report);
std::string write_witness(const WitnessFile& w);
// The field is needed to size the entries; throws InputError on malformed text.
WitnessFile read_witness(const std::string& text, const NumberField& K);

VerifyResult verify_witness(const Algebra& A, const WitnessFile& w);

// sigma as K-coordinates in B, one row per basis element of A.
std::string write_isomorphism(const Algebra& B, const IsoResult& r);
std::string write_zero_divisor(const Algebra& A, const ZeroDivisorResult& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace csa
