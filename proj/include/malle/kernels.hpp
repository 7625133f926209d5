// Data-parallel inner loops of the analytics suite. Every kernel exists in
// two variants: a serial reference and an OpenMP version. The parallel
// variants only use order-insensitive integer merges, so both produce
// bit-identical results and either can back the public analytics API.
#pragma once

#include <cstdint>
#include <vector>

namespace malle::kernels {

enum class Exec { serial, openmp };

struct PairCounts {
  // Ordered pairs (p, q), diagonal included, with gcd(p-1, q-1) > threshold.
  std::uint64_t ordered_incl_diagonal = 0;
  // Unordered pairs p < q with gcd(p-1, q-1) > threshold.
  std::uint64_t unordered_offdiag = 0;
  // by_gcd[g] = ordered-pair count with gcd(p-1, q-1) == g, g > threshold.
  std::vector<std::uint64_t> by_gcd;
};

namespace serial {

std::vector<std::uint32_t> progression_counts(
    const std::vector<std::uint64_t>& primes, std::uint64_t dmax);

PairCounts gcd_pair_counts(const std::vector<std::uint64_t>& primes,
                           double threshold);

std::vector<std::uint32_t> least_primitive_roots(
    const std::vector<std::uint64_t>& odd_primes);

std::uint64_t montecarlo_no_primroot(std::uint64_t q,
                                     const std::vector<char>& is_primroot,
                                     std::uint64_t set_size,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace serial

namespace omp {

std::vector<std::uint32_t> progression_counts(
    const std::vector<std::uint64_t>& primes, std::uint64_t dmax);

PairCounts gcd_pair_counts(const std::vector<std::uint64_t>& primes,
                           double threshold);

std::vector<std::uint32_t> least_primitive_roots(
    const std::vector<std::uint64_t>& odd_primes);

std::uint64_t montecarlo_no_primroot(std::uint64_t q,
                                     const std::vector<char>& is_primroot,
                                     std::uint64_t set_size,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace omp

// Shared helpers.

/// counts[d] = number of primes p in the list with p ≡ 1 (mod d), d <= dmax.
std::vector<std::uint32_t> progression_counts(
    const std::vector<std::uint64_t>& primes, std::uint64_t dmax, Exec exec);

PairCounts gcd_pair_counts(const std::vector<std::uint64_t>& primes,
                           double threshold, Exec exec);

/// Least primitive root per prime, aligned with the input list.
std::vector<std::uint32_t> least_primitive_roots(
    const std::vector<std::uint64_t>& odd_primes, Exec exec);

/// Number of trials whose random draw of `set_size` integers in [1, q-1]
/// contains no primitive root. Each trial owns an RNG derived from
/// (seed, trial index), so the count is independent of scheduling.
std::uint64_t montecarlo_no_primroot(std::uint64_t q,
                                     const std::vector<char>& is_primroot,
                                     std::uint64_t set_size,
                                     std::uint64_t trials, std::uint64_t seed,
                                     Exec exec);

/// Deterministic per-trial RNG stream seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Least primitive root of a single odd prime p (u64 fast path).
std::uint32_t least_primitive_root_u64(std::uint64_t p);

}  // namespace malle::kernels
