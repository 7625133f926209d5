// Shared bodies of the per-row / per-trial work items, used by both the
// serial and the OpenMP kernels so the two stay in lockstep.
#pragma once

#include <numeric>

#include "malle/kernels.hpp"
#include "malle/numtheory.hpp"

namespace malle::kernels::detail {

inline bool trial_misses(std::uint64_t q, const std::vector<char>& is_primroot,
                         std::uint64_t set_size, std::uint64_t stream) {
  std::uint64_t state = stream;
  for (std::uint64_t i = 0; i < set_size; ++i) {
    state = splitmix64(state);
    std::uint64_t v = state % (q - 1) + 1;
    if (is_primroot[v]) return false;
  }
  return true;
}

inline void count_pair_row(const std::vector<std::uint64_t>& primes,
                           std::size_t i, double threshold,
                           std::uint64_t& ordered, std::uint64_t& unordered,
                           std::vector<std::uint64_t>& by_gcd) {
  for (std::size_t j = i; j < primes.size(); ++j) {
    std::uint64_t g = std::gcd(primes[i] - 1, primes[j] - 1);
    if (static_cast<double>(g) <= threshold) continue;
    if (i == j) {
      ordered += 1;
    } else {
      ordered += 2;
      unordered += 1;
    }
    by_gcd[g] += (i == j) ? 1 : 2;
  }
}

inline void add_divisor_counts(std::uint64_t p, std::uint64_t dmax,
                               std::vector<std::uint32_t>& counts) {
  std::uint64_t v = p - 1;
  for (std::uint64_t d = 1; d * d <= v; ++d) {
    if (v % d) continue;
    if (d <= dmax) counts[d]++;
    std::uint64_t e = v / d;
    if (e != d && e <= dmax) counts[e]++;
  }
}

}  // namespace malle::kernels::detail
