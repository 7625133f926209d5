// Desk-scale RSA moduli: generation, classification, primitive roots.
#pragma once

#include <cstdint>
#include <optional>

#include "malle/numtheory.hpp"

namespace malle::rsa {

// n = p*q with the secret factorization kept alongside. This is a
// simulator, not a cryptosystem: p and q are data, not secrets.
struct Modulus {
  nt::Int n;
  nt::Int p;  // p < q, p >= 5
  nt::Int q;
  nt::Int D;  // gcd(p-1, q-1), always even
  bool particular_case = false;
};

struct PrimitiveRootReport {
  nt::Int q;
  nt::Int g;           // least primitive root
  mpq_class density;   // phi(q-1)/(q-1), exact
};

struct BitRange {
  unsigned lo_bits;
  unsigned hi_bits;
};

inline constexpr unsigned kMaxPrimeBits = 32;

/// True iff 2^(p-1) != 1 (mod q) or 2^(q-1) != 1 (mod p). Throws
/// std::domain_error unless p < q are primes >= 5.
bool classify(const nt::Int& p, const nt::Int& q);

/// Builds a Modulus from a forced prime pair, validating every invariant.
Modulus make_modulus(const nt::Int& p, const nt::Int& q);

/// Reconstructs the Modulus for a bare n by trial factorization.
/// Harness-side privilege only; throws std::domain_error when n is not a
/// product of two distinct primes 5 <= p < q.
Modulus from_n(const nt::Int& n);

/// Rejection-samples a prime pair with per-prime bit length in the range,
/// seeded and reproducible. ResourceError when no qualifying pair is found
/// within the attempt budget.
Modulus gen_modulus(std::uint64_t rng_seed, BitRange bits,
                    std::optional<bool> require_particular = std::nullopt,
                    std::uint64_t attempt_budget = 100'000);

/// Least g >= 2 generating the multiplicative group mod q, with the exact
/// density phi(q-1)/(q-1). The scan tries every integer in turn.
PrimitiveRootReport least_primitive_root(const nt::Int& q, nt::Budget& budget);
PrimitiveRootReport least_primitive_root(const nt::Int& q);

}  // namespace malle::rsa
