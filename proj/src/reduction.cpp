#include "malle/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace malle::reduction {

namespace {

// The witness prime backing a chosen residue, for later verification.
// Decisions never depend on it; the reducer works from residues alone.
std::optional<nt::Int> witness_for(const oracle::OracleResponse& resp,
                                   const nt::Int& residue) {
  std::optional<nt::Int> best;
  for (const auto& w : resp.witnesses)
    if (w.residue == residue && (!best || w.prime < *best)) best = w.prime;
  return best;
}

bool is_trivial(const nt::Int& r, const std::vector<nt::Int>& s_m) {
  return r == 1 || std::find(s_m.begin(), s_m.end(), r) != s_m.end();
}

ReductionResult finish_from_classes(ReductionResult res, const nt::Int& n,
                                    const oracle::OracleResponse& resp,
                                    const std::vector<nt::Int>& s_m,
                                    std::uint64_t m) {
  TranscriptEntry& entry = res.transcript.back();
  entry.outcome = "classes";
  entry.classes = resp.classes;

  auto it = std::find_if(resp.classes.begin(), resp.classes.end(),
                         [&](const nt::Int& r) { return !is_trivial(r, s_m); });
  if (it == resp.classes.end()) {
    res.status = Status::protocol_violation;
    res.note = "oracle returned S inside S_m ∪ {1}";
    return res;
  }
  const nt::Int& r = *it;
  entry.chosen_residue = r;
  res.m_used = m;
  res.r_witness = witness_for(resp, r);
  res.d = gcd(r - 1, n);
  if (res.d > 1 && res.d < n && nt::is_prime(res.d).prime) {
    res.status = Status::success;
  } else {
    res.status = Status::bad_divisor;
    res.note = "gcd(r-1, n) gave a trivial or composite divisor";
  }
  return res;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::success: return "success";
    case Status::inapplicable: return "inapplicable";
    case Status::exhausted: return "exhausted";
    case Status::protocol_violation: return "protocol-violation";
    case Status::bad_divisor: return "bad-divisor";
  }
  return "unknown";
}

std::uint64_t default_m_cap(const nt::Int& n) {
  double lg = std::log2(n.get_d());
  double cap = std::ceil(std::pow(lg, 6.0));
  return std::max<std::uint64_t>(100, static_cast<std::uint64_t>(cap));
}

ReductionResult reduce_particular(const nt::Int& n,
                                  const oracle::QueryFn& query) {
  if (n < 15 || mpz_even_p(n.get_mpz_t()) || !mpz_fits_ulong_p(n.get_mpz_t()))
    throw std::domain_error("reduce_particular: n must be odd, >= 15 and word-sized");

  ReductionResult res;
  oracle::ProbeEncoding probe = oracle::encode_probe(n.get_ui(), 2);
  oracle::OracleResponse resp = query(probe);
  res.queries = 1;
  res.transcript.push_back({2, "bottom", {}, 0});
  if (resp.bottom) {
    res.status = Status::inapplicable;
    res.note = "particular case inapplicable: oracle returned bottom";
    return res;
  }
  std::vector<nt::Int> s_m = {nt::Int(3) % n};
  return finish_from_classes(std::move(res), n, resp, s_m, 2);
}

ReductionResult reduce_general(const nt::Int& n, const oracle::QueryFn& query,
                               std::uint64_t m_cap) {
  if (n < 15 || mpz_even_p(n.get_mpz_t()) || !mpz_fits_ulong_p(n.get_mpz_t()))
    throw std::domain_error("reduce_general: n must be odd, >= 15 and word-sized");
  if (m_cap == 0) m_cap = default_m_cap(n);
  if (m_cap < 2) throw std::domain_error("reduce_general: m_cap must be >= 2");

  ReductionResult res;
  for (std::uint64_t m = 2; m <= m_cap; ++m) {
    // When m+1 shares a factor with n the probe is pointless: the gcd
    // already factors n (or, if it is all of n, no valid probe base exists).
    nt::Int g = gcd(nt::Int(m) + 1, n);
    if (g == n) {
      res.transcript.push_back({m, "skip", {}, 0});
      continue;
    }
    if (g > 1) {
      res.transcript.push_back({m, "shortcut", {}, 0});
      res.m_used = m;
      res.d = g;
      if (nt::is_prime(g).prime) {
        res.status = Status::success;
      } else {
        res.status = Status::bad_divisor;
        res.note = "gcd(m+1, n) shortcut hit a composite divisor";
      }
      return res;
    }

    oracle::ProbeEncoding probe = oracle::encode_probe(n.get_ui(), m);
    oracle::OracleResponse resp = query(probe);
    res.queries++;
    res.transcript.push_back({m, "bottom", {}, 0});
    if (resp.bottom) continue;

    std::vector<nt::Int> s_m = oracle::compute_Sm(m, n);
    return finish_from_classes(std::move(res), n, resp, s_m, m);
  }
  res.status = Status::exhausted;
  res.note = "no divisor found for any m <= m_cap";
  return res;
}

bool verify_result(const ReductionResult& result, const nt::Int& n) {
  if (result.status != Status::success) return false;
  const nt::Int& d = result.d;
  if (d <= 1 || d >= n) return false;
  if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
  if (!nt::is_prime(d).prime) return false;
  if (result.r_witness) {
    const nt::Int& r = *result.r_witness;
    if (r < 2 || !nt::is_prime(r).prime) return false;
    if (gcd(r - 1, n) != d) return false;
    // r divides m^n + 1 exactly when m^n ≡ -1 (mod r).
    if (nt::mod_pow(result.m_used, n, r) != r - 1) return false;
  }
  return true;
}

}  // namespace malle::reduction
