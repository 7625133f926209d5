// OpenMP variants. Parallelism is map-style: every loop fills thread-local
// integer accumulators that are merged index-by-index, so results are
// bit-identical to the serial reference at any thread count.
#include <omp.h>

#include "kernels_detail.hpp"
#include "malle/kernels.hpp"

namespace malle::kernels::omp {

std::vector<std::uint32_t> progression_counts(
    const std::vector<std::uint64_t>& primes, std::uint64_t dmax) {
  std::vector<std::uint32_t> counts(dmax + 1, 0);
#pragma omp parallel
  {
    std::vector<std::uint32_t> local(dmax + 1, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(primes.size()); ++i)
      detail::add_divisor_counts(primes[i], dmax, local);
#pragma omp critical
    for (std::uint64_t d = 0; d <= dmax; ++d) counts[d] += local[d];
  }
  return counts;
}

PairCounts gcd_pair_counts(const std::vector<std::uint64_t>& primes,
                           double threshold) {
  PairCounts out;
  std::uint64_t maxg = primes.empty() ? 1 : primes.back();
  out.by_gcd.assign(maxg + 1, 0);
#pragma omp parallel
  {
    std::uint64_t ordered = 0, unordered = 0;
    std::vector<std::uint64_t> local(maxg + 1, 0);
    // Row lengths shrink with i; dynamic scheduling keeps the load even.
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(primes.size()); ++i)
      detail::count_pair_row(primes, i, threshold, ordered, unordered, local);
#pragma omp critical
    {
      out.ordered_incl_diagonal += ordered;
      out.unordered_offdiag += unordered;
      for (std::uint64_t g = 0; g <= maxg; ++g) out.by_gcd[g] += local[g];
    }
  }
  return out;
}

std::vector<std::uint32_t> least_primitive_roots(
    const std::vector<std::uint64_t>& odd_primes) {
  std::vector<std::uint32_t> g(odd_primes.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(odd_primes.size());
       ++i)
    g[i] = least_primitive_root_u64(odd_primes[i]);
  return g;
}

std::uint64_t montecarlo_no_primroot(std::uint64_t q,
                                     const std::vector<char>& is_primroot,
                                     std::uint64_t set_size,
                                     std::uint64_t trials,
                                     std::uint64_t seed) {
  std::uint64_t misses = 0;
#pragma omp parallel for schedule(static) reduction(+ : misses)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t)
    if (detail::trial_misses(q, is_primroot, set_size,
                             splitmix64(seed ^ (t + 1))))
      ++misses;
  return misses;
}

}  // namespace malle::kernels::omp
