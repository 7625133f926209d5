// Empirical verification of the supporting number-theoretic estimates:
// gcd(p-1, q-1) pair surveys, error sums for primes in progressions,
// Mertens products and primitive-root statistics.
#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "malle/kernels.hpp"
#include "malle/numtheory.hpp"

namespace malle::analytics {

using kernels::Exec;

inline constexpr double kEulerGamma = 0.5772156649015328606;

struct SurveyReport {
  std::uint64_t z = 0;
  double threshold = 0;  // defaults to log z
  std::uint64_t prime_count = 0;
  // Ordered pairs over [z, 2z)^2, diagonal included, with
  // gcd(p-1, q-1) > threshold; the unordered off-diagonal count is
  // reported alongside.
  std::uint64_t pair_count_exceeding = 0;
  std::uint64_t pair_count_unordered = 0;
  double bound_value = 0;  // (z/log z)^2 (loglog z)^2 / log z
  std::vector<std::uint32_t> pi_table;  // pi_table[d] = pi(d; z)
  std::vector<double> error_table;      // E(d; z) = pi(d;z) - z/(phi(d) log z)
  double alpha = 0.75;
  double S1 = 0;        // sum of pi(d;z)^2 over log z < d < z^alpha
  double S2_bound = 0;  // 4 z^(3-2alpha)
  // Exceeding ordered-pair counts broken down by the exact gcd value.
  std::map<std::uint64_t, std::uint64_t> exceed_by_gcd;
};

struct BdhResult {
  std::uint64_t z = 0;
  std::uint64_t d_max = 0;
  double A = 0;
  double epsilon = 0;
  double sum_sq = 0;     // sum over d <= d_max of E(d;z)^2
  double reference = 0;  // z^2 / (log z)^A  (implied constant unknown)
};

struct MertensResult {
  std::uint64_t x = 0;
  double product = 0;    // prod_{p < x} (1 - 1/p)
  double reference = 0;  // e^(-gamma) / log x
};

struct PrimRootSurvey {
  std::uint64_t limit = 0;
  double epsilon = 0.5;
  std::uint64_t odd_prime_count = 0;
  double worst_ratio_shoup = 0;  // max g(p)/(log p)^6 over p >= 11
  std::uint64_t worst_ratio_p = 0;
  std::uint32_t max_g = 0;
  std::uint64_t max_g_p = 0;
  double bach_fraction = 0;   // g(p) <= e^gamma log p (loglog p)^2 (1+eps)
  double hb235_fraction = 0;  // primitive root among {2, 3, 5}
};

struct DensityResult {
  std::uint64_t q = 0;
  double C = 0;
  std::uint64_t trials = 0;
  std::uint64_t set_size = 0;  // ceil(C log q)
  std::uint64_t seed = 0;
  std::uint64_t misses = 0;  // trials that saw no primitive root
  double fraction = 0;
  double exact = 0;      // (1 - phi(q-1)/(q-1))^set_size
  double reference = 0;  // e^(-C/e^gamma)
};

/// Exhaustive pair survey over primes in [z, 2z). Throws std::domain_error
/// for z outside [10, sieve_limit/2] and std::runtime_error if the counted
/// pairs ever exceed the bound for z >= 100.
SurveyReport survey_gcd_pairs(std::uint64_t z,
                              std::optional<double> threshold = std::nullopt,
                              Exec exec = Exec::openmp,
                              std::uint64_t sieve_limit = nt::kDefaultSieveLimit);

/// Mean-square error sum over d <= d_max; reported against z^2/(log z)^A,
/// never asserted. Requires d_max <= z^(1-epsilon).
BdhResult bdh_error_sum(std::uint64_t z, std::uint64_t d_max, double A,
                        double epsilon, Exec exec = Exec::openmp,
                        std::uint64_t sieve_limit = nt::kDefaultSieveLimit);

/// prod_{p<x} (1 - 1/p) against e^(-gamma)/log x; the two must agree within
/// 5% for x >= 100 (std::runtime_error otherwise).
MertensResult mertens_product(std::uint64_t x,
                              std::uint64_t sieve_limit = nt::kDefaultSieveLimit);

/// g(p) for every odd prime p <= limit, plus summary statistics. Checks
/// g(p) < (log p)^6 for all p >= 11 (std::runtime_error on violation; an
/// empirical gate, not a theorem).
PrimRootSurvey primroot_survey(std::uint64_t limit, double epsilon = 0.5,
                               Exec exec = Exec::openmp,
                               std::uint64_t sieve_limit = nt::kDefaultSieveLimit);

/// Fraction of random draws of ceil(C log q) integers in [1, q-1] that miss
/// every primitive root mod q, against the e^(-C/e^gamma) estimate.
DensityResult density_montecarlo(std::uint64_t q, double C,
                                 std::uint64_t trials, std::uint64_t seed,
                                 Exec exec = Exec::openmp);

/// phi(d) for all d <= limit by a linear sieve (analytics cross-checks).
std::vector<std::uint32_t> euler_phi_table(std::uint64_t limit);

}  // namespace malle::analytics
