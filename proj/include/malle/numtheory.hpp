// Arbitrary-precision integer primitives: primality, factorization,
// multiplicative order, cyclotomic evaluation, sieving.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace malle {

// Thrown when a configured effort bound is exceeded (sieve limit,
// factoring budget, generation attempts). Distinct from std::domain_error
// so the CLI can map it to its own exit code.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace nt {

using Int = mpz_class;

inline constexpr std::uint64_t kDefaultSieveLimit = 10'000'000;
inline constexpr std::uint64_t kDefaultFactorBudget = 10'000'000;

// Inputs below this are handled by deterministic Miller-Rabin.
inline constexpr double kProbabilisticErrorBound = 0x1p-80;

enum class Certainty { proven, probabilistic };

struct PrimeFactor {
  Int value;
  unsigned multiplicity = 1;
  Certainty certainty = Certainty::proven;
  double error_bound = 0.0;
};

// Factorization result; cofactor > 1 signals the unfactored remainder.
struct FactorSet {
  std::vector<PrimeFactor> factors;  // strictly increasing by value
  Int cofactor{1};

  bool complete() const { return cofactor == 1; }
  Int product() const;
  std::vector<Int> distinct_values() const;
};

// Effort bound shared across the phases of a factor hunt. One unit is one
// trial-division candidate or one rho iteration.
struct Budget {
  std::uint64_t limit = kDefaultFactorBudget;
  std::uint64_t used = 0;

  Budget() = default;
  explicit Budget(std::uint64_t l) : limit(l) {}
  bool spend(std::uint64_t k = 1) {
    if (used + k > limit) {
      used = limit;
      return false;
    }
    used += k;
    return true;
  }
  bool exhausted() const { return used >= limit; }
  std::uint64_t remaining() const { return limit - used; }
};

struct PrimalityResult {
  bool prime = false;
  Certainty certainty = Certainty::proven;
  double error_bound = 0.0;
};

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// base^exponent mod modulus. Throws std::domain_error for modulus < 2 or
/// negative exponent.
Int mod_pow(const Int& base, const Int& exponent, const Int& modulus);

/// Deterministic below 2^64 (fixed witness set), 40 Miller-Rabin rounds
/// with value-derived bases above.
PrimalityResult is_prime(const Int& x);
bool is_prime_u64(std::uint64_t x);

/// Complete factorization of a 64-bit value by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t x);

/// Trial division to 10^4, then Brent rho under the budget. Partial results
/// end up in the cofactor; no exceptions for incompleteness.
FactorSet factorize(const Int& x, Budget& budget);
FactorSet factorize(const Int& x);

/// Factor hunt specialized for values of the d-th cyclotomic polynomial:
/// trial division first by the primes dividing d, then by sieved primes
/// ≡ 1 (mod d) up to trial_bound, then Brent rho. Charges the budget one
/// unit per candidate or iteration.
FactorSet factorize_in_progression(const Int& x, std::uint64_t d,
                                   std::uint64_t trial_bound, Budget& budget);

/// Least k >= 1 with m^k ≡ 1 (mod r), given the complete factorization of
/// the group order r-1. Throws std::domain_error when gcd(m, r) != 1 or the
/// factorization is incomplete.
Int multiplicative_order(const Int& m, const Int& r,
                         const FactorSet& factored_group_order);

/// Exact value of the d-th cyclotomic polynomial at m, via the Moebius
/// divisor product. The terms with mu = -1 are divided out last.
Int cyclotomic_eval(std::uint64_t d, const Int& m);

int mobius(std::uint64_t d);

/// Primes p with lo <= p < hi, ascending. ResourceError when hi exceeds
/// the sieve limit.
std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi,
                                        std::uint64_t limit = kDefaultSieveLimit);

/// phi(d) from a complete factorization of d.
Int euler_phi(const Int& d, const FactorSet& factors);

}  // namespace nt
}  // namespace malle
