#include "kernels_detail.hpp"
#include "malle/kernels.hpp"
#include "malle/numtheory.hpp"

namespace malle::kernels {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint32_t least_primitive_root_u64(std::uint64_t p) {
  if (p == 3) return 2;
  std::uint64_t order = p - 1;
  std::uint64_t rest = order;
  std::uint64_t prime_divs[16];
  int ndivs = 0;
  for (std::uint64_t f = 2; f * f <= rest; f += (f == 2) ? 1 : 2) {
    if (rest % f) continue;
    prime_divs[ndivs++] = f;
    while (rest % f == 0) rest /= f;
  }
  if (rest > 1) prime_divs[ndivs++] = rest;
  for (std::uint64_t g = 2;; ++g) {
    bool generator = true;
    for (int i = 0; i < ndivs; ++i) {
      if (nt::mod_pow_u64(g, order / prime_divs[i], p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return static_cast<std::uint32_t>(g);
  }
}

namespace serial {

std::vector<std::uint32_t> progression_counts(
    const std::vector<std::uint64_t>& primes, std::uint64_t dmax) {
  std::vector<std::uint32_t> counts(dmax + 1, 0);
  for (std::uint64_t p : primes) detail::add_divisor_counts(p, dmax, counts);
  return counts;
}

PairCounts gcd_pair_counts(const std::vector<std::uint64_t>& primes,
                           double threshold) {
  PairCounts out;
  std::uint64_t maxg = primes.empty() ? 1 : primes.back();
  out.by_gcd.assign(maxg + 1, 0);
  for (std::size_t i = 0; i < primes.size(); ++i)
    detail::count_pair_row(primes, i, threshold, out.ordered_incl_diagonal,
                           out.unordered_offdiag, out.by_gcd);
  return out;
}

std::vector<std::uint32_t> least_primitive_roots(
    const std::vector<std::uint64_t>& odd_primes) {
  std::vector<std::uint32_t> g(odd_primes.size());
  for (std::size_t i = 0; i < odd_primes.size(); ++i)
    g[i] = least_primitive_root_u64(odd_primes[i]);
  return g;
}

std::uint64_t montecarlo_no_primroot(std::uint64_t q,
                                     const std::vector<char>& is_primroot,
                                     std::uint64_t set_size,
                                     std::uint64_t trials,
                                     std::uint64_t seed) {
  std::uint64_t misses = 0;
  for (std::uint64_t t = 0; t < trials; ++t)
    if (detail::trial_misses(q, is_primroot, set_size,
                             splitmix64(seed ^ (t + 1))))
      ++misses;
  return misses;
}

}  // namespace serial

std::vector<std::uint32_t> progression_counts(
    const std::vector<std::uint64_t>& primes, std::uint64_t dmax, Exec exec) {
  return exec == Exec::serial ? serial::progression_counts(primes, dmax)
                              : omp::progression_counts(primes, dmax);
}

PairCounts gcd_pair_counts(const std::vector<std::uint64_t>& primes,
                           double threshold, Exec exec) {
  return exec == Exec::serial ? serial::gcd_pair_counts(primes, threshold)
                              : omp::gcd_pair_counts(primes, threshold);
}

std::vector<std::uint32_t> least_primitive_roots(
    const std::vector<std::uint64_t>& odd_primes, Exec exec) {
  return exec == Exec::serial ? serial::least_primitive_roots(odd_primes)
                              : omp::least_primitive_roots(odd_primes);
}

std::uint64_t montecarlo_no_primroot(std::uint64_t q,
                                     const std::vector<char>& is_primroot,
                                     std::uint64_t set_size,
                                     std::uint64_t trials, std::uint64_t seed,
                                     Exec exec) {
  return exec == Exec::serial
             ? serial::montecarlo_no_primroot(q, is_primroot, set_size, trials,
                                              seed)
             : omp::montecarlo_no_primroot(q, is_primroot, set_size, trials,
                                           seed);
}

}  // namespace malle::kernels
