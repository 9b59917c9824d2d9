#pragma once

// Integer factorisation: trial division, then Pollard rho (Brent) with an
// iteration budget.

#include <cstdint>
#include <utility>
#include <vector>

#include "csa/exact.hpp"

namespace csa {

struct FactorBudget {
  std::uint64_t trial_limit = 1000000;
  std::uint64_t rho_iterations = 20000000;  // total over all rho calls
};

// Prime factorisation of |n| (n != 0), primes ascending. Throws
// BudgetExhausted naming the unfactored cofactor when rho gives up.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n,
                                                         const FactorBudget& budget = {});

bool is_probable_prime(const Integer& n);

}  // namespace csa
