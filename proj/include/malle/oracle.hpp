// The factoring oracle: on a probe (c, m) encoding m^n+1, return residue
// classes mod n of certified prime factors, or bottom.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "malle/modulus.hpp"
#include "malle/numtheory.hpp"

namespace malle::oracle {

// The bit string c is the binary encoding of 2^n+1; reinterpreted in base m
// it reads as m^n+1, so the same c serves every probe base.
struct ProbeEncoding {
  std::string bits;  // '1', n-1 zeros, '1'
  nt::Int m;

  std::uint64_t exponent() const { return bits.size() - 1; }
};

struct Witness {
  nt::Int prime;
  nt::Int residue;
  std::string proof_method;
};

struct OracleResponse {
  bool bottom = true;
  // S in assembly order: factors of m+1 first, then the low-degree
  // cyclotomic parts, ascending prime value within each part.
  std::vector<nt::Int> classes;
  // Every certified prime the hunt produced (the full residue pool).
  std::vector<Witness> witnesses;
  std::uint64_t budget_used = 0;
};

struct OracleConfig {
  std::uint64_t budget = nt::kDefaultFactorBudget;
  std::uint64_t trial_bound = 100'000;
  // Relaxed size rule: any nonempty S not contained in S_m ∪ {1} is
  // acceptable; default is the strict |S| = omega(m)+2.
  bool relaxed_size = false;
  std::uint64_t honest_n_cap = 64;
};

/// Canonical probe for (n, m). Throws std::domain_error when n is even,
/// n < 3 or m < 2.
ProbeEncoding encode_probe(std::uint64_t n, const nt::Int& m);

/// Validates the canonical form and recovers (n, m).
std::pair<std::uint64_t, nt::Int> decode_probe(const ProbeEncoding& probe);

/// m^n + 1.
nt::Int probe_value(const ProbeEncoding& probe);

/// Residues mod n of the distinct prime divisors of m+1, ascending.
std::vector<nt::Int> compute_Sm(const nt::Int& m, const nt::Int& n);

/// Harness-privileged realization: uses p, q to hunt the low-degree
/// cyclotomic parts Phi_2p(m) and Phi_2q(m); Phi_2pq(m) is never touched.
OracleResponse structured_query(const ProbeEncoding& probe,
                                const rsa::Modulus& secret,
                                const OracleConfig& cfg = {});

/// Unprivileged cross-validation mode: materializes m^n+1 and factors it
/// completely. Requires the decoded n to fit under cfg.honest_n_cap.
OracleResponse honest_query(const ProbeEncoding& probe,
                            const OracleConfig& cfg = {});

/// Opaque query handle handed to the reduction algorithms; this is the only
/// surface they may touch.
using QueryFn = std::function<OracleResponse(const ProbeEncoding&)>;

QueryFn make_structured_handle(const rsa::Modulus& secret,
                               const OracleConfig& cfg = {});
QueryFn make_honest_handle(const OracleConfig& cfg = {});

/// Drops the memoized factor hunts (test isolation only; the cache is
/// semantically transparent).
void clear_hunt_cache();

}  // namespace malle::oracle
