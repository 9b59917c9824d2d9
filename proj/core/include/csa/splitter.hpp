#pragma once

// Splitting A = M_n(K): maximal order, lattice reduction, search for a
// rank-one element (with corner recursion), and the isomorphism given by the
// left action of A on A*C.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csa/algebra.hpp"
#include "csa/factor.hpp"
#include "csa/kmatrix.hpp"
#include "csa/real.hpp"

namespace csa {

// b = (2/pi)^{2s/d} |Delta|^{1/d}, with an enclosure radius.
struct BBound {
  Real value;
  Real radius;
};
BBound b_bound(const NumberField& K, unsigned precision_bits = 128);

enum class Target { rank_one, zero_divisor, nilpotent };

struct SplitConfig {
  unsigned precision_bits = 128;
  unsigned max_precision_bits = 2048;
  double delta = 0.99;
  std::size_t shell_cap = 8;
  std::uint64_t seed = 1;
  bool deterministic = false;
  std::optional<double> budget_seconds;
  std::uint64_t node_budget = 200000000;
  std::size_t sample_budget = 64;
  // Skip the scan of the reduced basis and go straight to enumeration.
  bool force_enumeration = false;
  // After the shells up to shell_cap, search the rest of the ball |Phi| <= L.
  bool ball_phase = true;
  FactorBudget factor;
};

struct LevelStats {
  std::size_t n = 0;  // degree of the algebra at this level
  Integer initial_discriminant;
  Integer discriminant;
  std::size_t enlargements = 0;
  unsigned precision_bits = 0;
  unsigned rounding_bits = 0;
  std::size_t samples = 0;
  double ratio = 0;
  double c_m = 0;
  bool certified = false;
  std::string found_in;  // "reduced-basis", "shell", "ball"
  std::size_t found_rank = 0;
  std::size_t shell = 0;
  std::uint64_t visited = 0;
  std::uint64_t nodes = 0;
  std::vector<long> box;
  std::vector<double> norms;  // per place |phi_i(y)| of the element found
  bool norm_below_n = false;  // certified sum of squares < n^2 (K = Q)
};

struct SplitStats {
  std::vector<LevelStats> levels;
  // Elements whose certified per-place norms are all below sqrt(n), and how
  // many of them failed to be zero divisors.
  std::uint64_t short_checked = 0;
  std::uint64_t short_violations = 0;
  std::uint64_t certificates = 0;  // accepted LLL reductions
};

struct RankOneWitness {
  Element C;
  std::vector<Element> idempotents;  // each in the algebra of its own level
  std::vector<double> norms;
};

struct IsoMap {
  std::size_t n = 0;
  std::vector<Element> ideal_basis;  // K-basis of A*C
  std::vector<KMatrix> images;       // phi(a_i) for the K-basis of A
  std::vector<Element> inverse;      // phi^{-1}(E_kl) at index k*n + l
};

struct SplitReport {
  RankOneWitness witness;
  IsoMap iso;
  SplitStats stats;
};

SplitReport split(const Algebra& A, const SplitConfig& config = {});

// Single pass without recursion: returns an element satisfying the target
// predicate (for rank_one, possibly any zero divisor found in the reduced
// basis, whose rank is reported in the level stats).
struct SearchResult {
  Element y;
  LevelStats level;
};
SearchResult search(const Algebra& A, Target target, const SplitConfig& config, SplitStats& stats);

IsoMap isomorphism_from_rank_one(const Algebra& A, const Element& C);

struct VerifyResult {
  bool ok = true;
  std::string check;  // first failing check
  std::string detail;
};

// Exact checks in order: rank-one, unital, multiplicative, bijective.
VerifyResult verify(const Algebra& A, const Element& C, const std::vector<KMatrix>& images);

}  // namespace csa
