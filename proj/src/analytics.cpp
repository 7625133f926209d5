#include "malle/analytics.hpp"

#include <cmath>
#include <numeric>

namespace malle::analytics {

namespace {

double log_z(std::uint64_t z) { return std::log(static_cast<double>(z)); }

}  // namespace

std::vector<std::uint32_t> euler_phi_table(std::uint64_t limit) {
  std::vector<std::uint32_t> phi(limit + 1);
  for (std::uint64_t i = 0; i <= limit; ++i)
    phi[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (phi[i] != i) continue;  // i composite: already touched by a prime
    for (std::uint64_t j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
  }
  return phi;
}

SurveyReport survey_gcd_pairs(std::uint64_t z, std::optional<double> threshold,
                              Exec exec, std::uint64_t sieve_limit) {
  if (z < 10 || z > sieve_limit / 2)
    throw std::domain_error("survey_gcd_pairs: z out of range");

  SurveyReport rep;
  rep.z = z;
  rep.threshold = threshold.value_or(log_z(z));

  std::vector<std::uint64_t> primes = nt::sieve_primes(z, 2 * z, sieve_limit);
  rep.prime_count = primes.size();

  kernels::PairCounts pc = kernels::gcd_pair_counts(primes, rep.threshold, exec);
  rep.pair_count_exceeding = pc.ordered_incl_diagonal;
  rep.pair_count_unordered = pc.unordered_offdiag;
  for (std::uint64_t g = 0; g < pc.by_gcd.size(); ++g)
    if (pc.by_gcd[g]) rep.exceed_by_gcd.emplace(g, pc.by_gcd[g]);

  double lz = log_z(z);
  rep.bound_value = (z / lz) * (z / lz) * std::log(lz) * std::log(lz) / lz;

  std::uint64_t dmax = 2 * z - 1;
  rep.pi_table = kernels::progression_counts(primes, dmax, exec);
  std::vector<std::uint32_t> phi = euler_phi_table(dmax);
  rep.error_table.resize(dmax + 1, 0.0);
  for (std::uint64_t d = 1; d <= dmax; ++d)
    rep.error_table[d] = rep.pi_table[d] - z / (phi[d] * lz);

  double zalpha = std::pow(static_cast<double>(z), rep.alpha);
  rep.S1 = 0;
  for (std::uint64_t d = 1; d <= dmax; ++d)
    if (d > rep.threshold && d < zalpha)
      rep.S1 += static_cast<double>(rep.pi_table[d]) * rep.pi_table[d];
  rep.S2_bound = 4.0 * std::pow(static_cast<double>(z), 3.0 - 2.0 * rep.alpha);

  // Asymptotic statement; small z are exempt.
  if (z >= 100 && !threshold &&
      static_cast<double>(rep.pair_count_exceeding) > rep.bound_value)
    throw std::runtime_error("survey_gcd_pairs: pair count exceeds the bound");
  return rep;
}

BdhResult bdh_error_sum(std::uint64_t z, std::uint64_t d_max, double A,
                        double epsilon, Exec exec, std::uint64_t sieve_limit) {
  if (z < 10 || z > sieve_limit / 2)
    throw std::domain_error("bdh_error_sum: z out of range");
  if (d_max < 1 ||
      static_cast<double>(d_max) > std::pow(static_cast<double>(z), 1.0 - epsilon))
    throw std::domain_error("bdh_error_sum: d_max must be <= z^(1-epsilon)");

  BdhResult res;
  res.z = z;
  res.d_max = d_max;
  res.A = A;
  res.epsilon = epsilon;

  std::vector<std::uint64_t> primes = nt::sieve_primes(z, 2 * z, sieve_limit);
  std::vector<std::uint32_t> pi = kernels::progression_counts(primes, d_max, exec);
  std::vector<std::uint32_t> phi = euler_phi_table(d_max);
  double lz = log_z(z);
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    double e = pi[d] - z / (phi[d] * lz);
    res.sum_sq += e * e;
  }
  res.reference =
      static_cast<double>(z) * static_cast<double>(z) / std::pow(lz, A);
  return res;
}

MertensResult mertens_product(std::uint64_t x, std::uint64_t sieve_limit) {
  if (x < 3) throw std::domain_error("mertens_product: x must be >= 3");
  MertensResult res;
  res.x = x;
  res.product = 1.0;
  // Ascending order keeps the floating-point result reproducible.
  for (std::uint64_t p : nt::sieve_primes(2, x, sieve_limit))
    res.product *= 1.0 - 1.0 / static_cast<double>(p);
  res.reference = std::exp(-kEulerGamma) / std::log(static_cast<double>(x));
  if (x >= 100 && std::abs(res.product / res.reference - 1.0) >= 0.05)
    throw std::runtime_error("mertens_product: drifted beyond 5% of the reference");
  return res;
}

PrimRootSurvey primroot_survey(std::uint64_t limit, double epsilon, Exec exec,
                               std::uint64_t sieve_limit) {
  if (limit < 3) throw std::domain_error("primroot_survey: limit must be >= 3");
  PrimRootSurvey s;
  s.limit = limit;
  s.epsilon = epsilon;

  std::vector<std::uint64_t> odd_primes =
      nt::sieve_primes(3, limit + 1, std::max(sieve_limit, limit + 1));
  std::vector<std::uint32_t> g = kernels::least_primitive_roots(odd_primes, exec);
  s.odd_prime_count = odd_primes.size();

  std::uint64_t bach = 0, hb = 0;
  for (std::size_t i = 0; i < odd_primes.size(); ++i) {
    std::uint64_t p = odd_primes[i];
    double lp = std::log(static_cast<double>(p));
    if (p >= 11) {
      double ratio = g[i] / std::pow(lp, 6.0);
      if (ratio >= 1.0)
        throw std::runtime_error("primroot_survey: g(p) reached (log p)^6");
      if (ratio > s.worst_ratio_shoup) {
        s.worst_ratio_shoup = ratio;
        s.worst_ratio_p = p;
      }
    }
    if (g[i] > s.max_g) {
      s.max_g = g[i];
      s.max_g_p = p;
    }
    double bach_bound =
        std::exp(kEulerGamma) * lp * std::pow(std::log(lp), 2.0) * (1 + epsilon);
    if (g[i] <= bach_bound) ++bach;
    if (g[i] <= 5) ++hb;  // 4 is a square, never a generator
  }
  s.bach_fraction = static_cast<double>(bach) / s.odd_prime_count;
  s.hb235_fraction = static_cast<double>(hb) / s.odd_prime_count;
  return s;
}

DensityResult density_montecarlo(std::uint64_t q, double C,
                                 std::uint64_t trials, std::uint64_t seed,
                                 Exec exec) {
  if (q < 3 || !nt::is_prime_u64(q))
    throw std::domain_error("density_montecarlo: q must be an odd prime");
  if (trials < 1)
    throw std::domain_error("density_montecarlo: trials must be >= 1");

  DensityResult res;
  res.q = q;
  res.C = C;
  res.trials = trials;
  res.seed = seed;
  double lq = std::log(static_cast<double>(q));
  res.set_size = static_cast<std::uint64_t>(std::ceil(C * lq));
  if (res.set_size < 1) res.set_size = 1;

  // Mark the primitive roots: the powers g^k with gcd(k, q-1) = 1.
  std::uint64_t g = kernels::least_primitive_root_u64(q);
  std::vector<char> is_primroot(q, 0);
  std::uint64_t phi = 0, value = 1;
  for (std::uint64_t k = 1; k < q - 1 + 1; ++k) {
    value = nt::mul_mod_u64(value, g, q);
    if (std::gcd(k, q - 1) == 1) {
      is_primroot[value] = 1;
      ++phi;
    }
  }

  res.misses = kernels::montecarlo_no_primroot(q, is_primroot, res.set_size,
                                               trials, seed, exec);
  res.fraction = static_cast<double>(res.misses) / trials;
  double density = static_cast<double>(phi) / (q - 1);
  res.exact = std::pow(1.0 - density, static_cast<double>(res.set_size));
  res.reference = std::exp(-C / std::exp(kEulerGamma));
  return res;
}

}  // namespace malle::analytics
