// Benchmark comparing the serial reference kernels against the OpenMP
// variants, and checking that both produce identical results.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "malle/analytics.hpp"
#include "malle/kernels.hpp"
#include "malle/numtheory.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double time_once(F&& f) {
  auto t0 = Clock::now();
  f();
  return seconds_since(t0);
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-24s serial %8.3fs   openmp %8.3fs   speedup %5.2fx   %s\n",
              name, serial, parallel, serial / parallel,
              equal ? "results match" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace malle;
  std::uint64_t scale = 1;
  if (argc > 1) scale = std::stoull(argv[1]);

  std::printf("threads: %d\n", omp_get_max_threads());

  {
    std::uint64_t z = 20'000 * scale;
    auto primes = nt::sieve_primes(z, 2 * z);
    double thr = std::log(static_cast<double>(z));
    kernels::PairCounts a, b;
    double ts = time_once([&] { a = kernels::serial::gcd_pair_counts(primes, thr); });
    double tp = time_once([&] { b = kernels::omp::gcd_pair_counts(primes, thr); });
    report("gcd_pair_counts", ts, tp,
           a.ordered_incl_diagonal == b.ordered_incl_diagonal &&
               a.unordered_offdiag == b.unordered_offdiag && a.by_gcd == b.by_gcd);
  }
  {
    std::uint64_t z = 500'000 * scale;
    auto primes = nt::sieve_primes(z, 2 * z);
    std::vector<std::uint32_t> a, b;
    double ts = time_once([&] { a = kernels::serial::progression_counts(primes, 2 * z - 1); });
    double tp = time_once([&] { b = kernels::omp::progression_counts(primes, 2 * z - 1); });
    report("progression_counts", ts, tp, a == b);
  }
  {
    std::uint64_t limit = 1'000'000 * scale;
    auto primes = nt::sieve_primes(3, limit);
    std::vector<std::uint32_t> a, b;
    double ts = time_once([&] { a = kernels::serial::least_primitive_roots(primes); });
    double tp = time_once([&] { b = kernels::omp::least_primitive_roots(primes); });
    report("least_primitive_roots", ts, tp, a == b);
  }
  {
    std::uint64_t q = 1'000'003, trials = 2'000'000 * scale;
    std::uint64_t g = kernels::least_primitive_root_u64(q);
    std::vector<char> ind(q, 0);
    std::uint64_t value = 1;
    for (std::uint64_t k = 1; k < q; ++k) {
      value = nt::mul_mod_u64(value, g, q);
      if (std::gcd(k, q - 1) == 1) ind[value] = 1;
    }
    std::uint64_t a = 0, b = 0, set_size = 14;
    double ts = time_once(
        [&] { a = kernels::serial::montecarlo_no_primroot(q, ind, set_size, trials, 42); });
    double tp = time_once(
        [&] { b = kernels::omp::montecarlo_no_primroot(q, ind, set_size, trials, 42); });
    report("montecarlo_no_primroot", ts, tp, a == b);
  }
  return 0;
}
