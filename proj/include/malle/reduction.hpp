// The two factoring reductions, consuming only n and an oracle handle.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malle/oracle.hpp"

namespace malle::reduction {

enum class Status {
  success,
  inapplicable,        // particular case: oracle answered bottom
  exhausted,           // general case: m-cap reached
  protocol_violation,  // oracle returned S inside S_m ∪ {1}
  bad_divisor,         // gcd gave 1 or n
};

const char* status_name(Status s);

struct TranscriptEntry {
  std::uint64_t m = 0;
  std::string outcome;  // "classes" | "bottom" | "shortcut" | "skip"
  std::vector<nt::Int> classes;
  nt::Int chosen_residue{0};  // 0 when no residue was picked
};

// Failure is a value: every outcome carries the query transcript.
struct ReductionResult {
  Status status = Status::exhausted;
  nt::Int d{0};
  std::optional<nt::Int> r_witness;  // absent on the gcd(m+1, n) shortcut
  nt::Int m_used{0};
  std::uint64_t queries = 0;
  std::vector<TranscriptEntry> transcript;
  std::string note;
};

/// m_cap heuristic: ceil(log2(n)^6) with a floor of 100.
std::uint64_t default_m_cap(const nt::Int& n);

/// Algorithm for the particular case: probe with m = 2 once, take the first
/// residue outside {1, 3} in assembly order, return d = gcd(r-1, n).
ReductionResult reduce_particular(const nt::Int& n,
                                  const oracle::QueryFn& query);

/// General algorithm: iterate m = 2, 3, ...; the gcd(m+1, n) shortcut fires
/// before each query; on classes take the first residue outside
/// S_m ∪ {1}; on bottom advance m.
ReductionResult reduce_general(const nt::Int& n, const oracle::QueryFn& query,
                               std::uint64_t m_cap = 0);

/// Checks the result invariants against n: d a proper prime divisor and,
/// when a witness is present, d = gcd(r-1, n) and m^n ≡ -1 (mod r).
bool verify_result(const ReductionResult& result, const nt::Int& n);

}  // namespace malle::reduction
