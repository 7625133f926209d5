// Independent reference implementations used only to derive expected test
// values. Deliberately naive: different algorithms than the library under
// test, so agreement is meaningful.
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "malle/numtheory.hpp"

namespace testref {

using malle::nt::Int;

// O(exponent) repeated multiplication.
inline Int naive_mod_pow(const Int& base, std::uint64_t exponent, const Int& mod) {
  Int acc = 1 % mod;
  for (std::uint64_t i = 0; i < exponent; ++i) acc = acc * base % mod;
  return acc;
}

inline bool trial_division_is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> trial_division_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    while (x % d == 0) {
      out.push_back(d);
      x /= d;
    }
  if (x > 1) out.push_back(x);
  return out;
}

// Scan k = 1, 2, ... until m^k ≡ 1 (mod r).
inline std::uint64_t naive_order(const Int& m, const Int& r) {
  Int acc = 1;
  for (std::uint64_t k = 1;; ++k) {
    acc = acc * m % r;
    if (acc == 1) return k;
  }
}

// Phi_d(m) through the recursive definition: divide m^d - 1 by every
// lower-order cyclotomic value at the divisors of d.
inline Int cyclotomic_recursive(std::uint64_t d, const Int& m) {
  Int value;
  mpz_pow_ui(value.get_mpz_t(), m.get_mpz_t(), d);
  value -= 1;
  for (std::uint64_t e = 1; e < d; ++e)
    if (d % e == 0) value /= cyclotomic_recursive(e, m);
  return value;
}

inline std::uint64_t naive_phi(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 1; i <= n; ++i)
    if (std::gcd(i, n) == 1) ++count;
  return count;
}

inline std::vector<std::uint64_t> naive_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = lo; x < hi; ++x)
    if (trial_division_is_prime(x)) out.push_back(x);
  return out;
}

}  // namespace testref
