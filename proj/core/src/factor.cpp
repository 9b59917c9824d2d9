#include "csa/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "csa/errors.hpp"

namespace csa {

namespace {

const std::vector<std::uint32_t>& small_primes(std::uint64_t limit) {
  static std::vector<std::uint32_t> primes;
  static std::uint64_t sieved = 0;
  if (sieved < limit) {
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    sieved = limit;
  }
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Integer rho(const Integer& n, std::uint64_t c0, std::uint64_t& budget) {
  Integer y = 2, c = c0, g = 1, q = 1, x, ys;
  std::uint64_t r = 1;
  const std::uint64_t m = 128;
  auto f = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t steps = std::min(m, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        y = f(y);
        Integer d = abs(x - y);
        q = q * d;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += steps;
      if (budget < steps) return 0;
      budget -= steps;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      if (budget == 0) return 0;
      --budget;
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

void split(const Integer& n, std::map<Integer, unsigned>& out, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  // peel perfect powers first
  for (unsigned k = 2; k < 64; ++k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::map<Integer, unsigned> sub;
      split(root, sub, budget);
      for (auto& [p, e] : sub) out[p] += e * k;
      return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) < 2 * k) break;
  }
  for (std::uint64_t c = 1; c < 64; ++c) {
    Integer d = rho(n, c, budget);
    if (d != 0) {
      split(d, out, budget);
      split(n / d, out, budget);
      return;
    }
    if (budget == 0) break;
  }
  throw BudgetExhausted("integer factoring budget exhausted; unfactored cofactor " + n.get_str());
}

}  // namespace

bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n0, const FactorBudget& budget) {
  if (n0 == 0) throw std::domain_error("factorisation of zero");
  Integer n = abs(n0);
  std::map<Integer, unsigned> found;
  for (std::uint32_t p : small_primes(budget.trial_limit)) {
    if (Integer(p) * p > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) found[Integer(p)] += e;
  }
  if (n > 1) {
    std::uint64_t left = budget.rho_iterations;
    split(n, found, left);
  }
  return {found.begin(), found.end()};
}

}  // namespace csa
