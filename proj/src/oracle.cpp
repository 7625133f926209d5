#include "malle/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace malle::oracle {

namespace {

const char* proof_name(nt::Certainty c) {
  return c == nt::Certainty::proven ? "deterministic-miller-rabin"
                                    : "miller-rabin-40";
}

struct Hunt {
  std::vector<Witness> found;  // ascending prime value, residues filled later
  bool complete = false;
  std::uint64_t cost = 0;
};

// Certified prime factors of Phi_d(m), hunted under a fixed budget slice.
// The outcome is a pure function of the key, which makes the cache
// indistinguishable from recomputation.
struct HuntKey {
  std::uint64_t d;
  std::string m;
  std::uint64_t slice;
  std::uint64_t trial_bound;
  auto operator<=>(const HuntKey&) const = default;
};

std::map<HuntKey, Hunt> g_hunt_cache;
std::mutex g_hunt_mutex;

Hunt hunt_cyclotomic(std::uint64_t d, const nt::Int& m, std::uint64_t slice,
                     std::uint64_t trial_bound) {
  HuntKey key{d, m.get_str(), slice, trial_bound};
  {
    std::lock_guard<std::mutex> lock(g_hunt_mutex);
    auto it = g_hunt_cache.find(key);
    if (it != g_hunt_cache.end()) return it->second;
  }
  Hunt h;
  nt::Budget budget(slice);
  nt::Int value = nt::cyclotomic_eval(d, m);
  nt::FactorSet fs = nt::factorize_in_progression(value, d, trial_bound, budget);
  for (const auto& f : fs.factors)
    h.found.push_back({f.value, 0, proof_name(f.certainty)});
  h.complete = fs.complete();
  h.cost = budget.used;
  {
    std::lock_guard<std::mutex> lock(g_hunt_mutex);
    g_hunt_cache.emplace(key, h);
  }
  return h;
}

unsigned omega(const nt::Int& m, nt::Budget& budget) {
  nt::FactorSet fs = nt::factorize(m, budget);
  if (!fs.complete())
    throw ResourceError("oracle: cannot establish omega(m) within budget");
  return static_cast<unsigned>(fs.factors.size());
}

// Walks the witness pool in assembly order and picks the response classes:
// strict mode wants exactly `target` distinct residues with at least one
// outside S_m ∪ {1}; relaxed mode wants any valid nonempty set.
bool assemble_classes(const std::vector<Witness>& pool,
                      const std::vector<nt::Int>& s_m, unsigned target,
                      bool relaxed, std::vector<nt::Int>& classes) {
  auto trivial = [&](const nt::Int& res) {
    return res == 1 ||
           std::find(s_m.begin(), s_m.end(), res) != s_m.end();
  };
  classes.clear();
  for (const auto& w : pool) {
    if (std::find(classes.begin(), classes.end(), w.residue) != classes.end())
      continue;
    classes.push_back(w.residue);
    if (classes.size() == target) break;
  }
  bool valid = std::any_of(classes.begin(), classes.end(),
                           [&](const nt::Int& r) { return !trivial(r); });
  if (!valid) {
    // Swap rule: replace the last pick with the first untaken nontrivial
    // residue further down the pool.
    for (const auto& w : pool) {
      if (trivial(w.residue)) continue;
      if (std::find(classes.begin(), classes.end(), w.residue) !=
          classes.end())
        continue;
      if (classes.empty())
        classes.push_back(w.residue);
      else
        classes.back() = w.residue;
      valid = true;
      break;
    }
  }
  if (!valid) return false;
  if (relaxed) return !classes.empty();
  return classes.size() == target;
}

void append_witnesses(std::vector<Witness>& pool, const std::vector<Witness>& part,
                      const nt::Int& n) {
  for (Witness w : part) {
    bool dup = std::any_of(pool.begin(), pool.end(), [&](const Witness& x) {
      return x.prime == w.prime;
    });
    if (dup) continue;
    w.residue = w.prime % n;
    pool.push_back(std::move(w));
  }
}

}  // namespace

ProbeEncoding encode_probe(std::uint64_t n, const nt::Int& m) {
  if (n < 3 || n % 2 == 0)
    throw std::domain_error("encode_probe: n must be odd and >= 3");
  if (m < 2) throw std::domain_error("encode_probe: m must be >= 2");
  ProbeEncoding p;
  p.bits.assign(n + 1, '0');
  p.bits.front() = '1';
  p.bits.back() = '1';
  p.m = m;
  return p;
}

std::pair<std::uint64_t, nt::Int> decode_probe(const ProbeEncoding& probe) {
  const std::string& b = probe.bits;
  if (b.size() < 4 || b.front() != '1' || b.back() != '1' ||
      b.find_first_not_of('0', 1) != b.size() - 1)
    throw std::domain_error("decode_probe: not a canonical probe encoding");
  std::uint64_t n = b.size() - 1;
  if (n % 2 == 0) throw std::domain_error("decode_probe: even exponent");
  if (probe.m < 2) throw std::domain_error("decode_probe: m must be >= 2");
  return {n, probe.m};
}

nt::Int probe_value(const ProbeEncoding& probe) {
  auto [n, m] = decode_probe(probe);
  nt::Int v;
  mpz_pow_ui(v.get_mpz_t(), m.get_mpz_t(), n);
  return v + 1;
}

std::vector<nt::Int> compute_Sm(const nt::Int& m, const nt::Int& n) {
  if (m < 2) throw std::domain_error("compute_Sm: m must be >= 2");
  nt::FactorSet fs = nt::factorize(m + 1);
  std::vector<nt::Int> out;
  for (const auto& f : fs.factors) out.push_back(f.value % n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OracleResponse structured_query(const ProbeEncoding& probe,
                                const rsa::Modulus& secret,
                                const OracleConfig& cfg) {
  auto [n_exp, m] = decode_probe(probe);
  if (nt::Int(static_cast<unsigned long>(n_exp)) != secret.n)
    throw std::domain_error("structured_query: probe modulus mismatch");
  const nt::Int& n = secret.n;

  OracleResponse resp;
  nt::Budget budget(cfg.budget);
  try {
    unsigned target = omega(m, budget) + 2;
    nt::FactorSet m1 = nt::factorize(m + 1, budget);
    if (!m1.complete()) {
      resp.budget_used = budget.used;
      return resp;
    }
    std::vector<nt::Int> s_m;
    std::vector<Witness> pool;
    for (const auto& f : m1.factors) {
      s_m.push_back(f.value % n);
      pool.push_back({f.value, f.value % n, proof_name(f.certainty)});
    }
    std::sort(s_m.begin(), s_m.end());
    s_m.erase(std::unique(s_m.begin(), s_m.end()), s_m.end());

    // Hunt the two low-degree parts on equal slices of what remains.
    // Phi_2pq(m) is out of reach by design and never needed.
    std::uint64_t slice = budget.remaining() / 2;
    std::uint64_t dp = 2 * secret.p.get_ui();
    std::uint64_t dq = 2 * secret.q.get_ui();
    Hunt hp = hunt_cyclotomic(dp, m, slice, cfg.trial_bound);
    Hunt hq = hunt_cyclotomic(dq, m, slice, cfg.trial_bound);
    budget.spend(hp.cost);
    budget.spend(hq.cost);
    append_witnesses(pool, hp.found, n);
    append_witnesses(pool, hq.found, n);

    std::vector<nt::Int> classes;
    if (assemble_classes(pool, s_m, target, cfg.relaxed_size, classes)) {
      resp.bottom = false;
      resp.classes = std::move(classes);
    }
    resp.witnesses = std::move(pool);
  } catch (const ResourceError&) {
    // Budget ran out before a valid S existed: bottom.
  }
  resp.budget_used = budget.used;
  return resp;
}

OracleResponse honest_query(const ProbeEncoding& probe,
                            const OracleConfig& cfg) {
  auto [n_exp, m] = decode_probe(probe);
  if (n_exp > cfg.honest_n_cap)
    throw std::domain_error("honest_query: n above honest-mode cap");
  nt::Int n(static_cast<unsigned long>(n_exp));

  OracleResponse resp;
  nt::Budget budget(cfg.budget);
  try {
    unsigned target = omega(m, budget) + 2;
    std::vector<nt::Int> s_m;
    std::vector<Witness> pool;

    // m^n+1 splits over the divisors d | 2n, d ∤ n, i.e. d = 2e for e | n.
    // The exponent n is public and tiny, so this uses no privilege.
    std::vector<std::uint64_t> parts;
    for (std::uint64_t e = 1; e <= n_exp; ++e)
      if (n_exp % e == 0) parts.push_back(2 * e);

    bool all_complete = true;
    for (std::uint64_t d : parts) {
      nt::Int value = nt::cyclotomic_eval(d, m);
      nt::FactorSet fs =
          nt::factorize_in_progression(value, d, cfg.trial_bound, budget);
      if (!fs.complete()) all_complete = false;
      std::vector<Witness> part;
      for (const auto& f : fs.factors)
        part.push_back({f.value, 0, proof_name(f.certainty)});
      append_witnesses(pool, part, n);
      if (d == 2)
        for (const auto& f : fs.factors) s_m.push_back(f.value % n);
    }
    std::sort(s_m.begin(), s_m.end());
    s_m.erase(std::unique(s_m.begin(), s_m.end()), s_m.end());

    std::vector<nt::Int> classes;
    if (all_complete &&
        assemble_classes(pool, s_m, target, cfg.relaxed_size, classes)) {
      resp.bottom = false;
      resp.classes = std::move(classes);
    }
    resp.witnesses = std::move(pool);
  } catch (const ResourceError&) {
  }
  resp.budget_used = budget.used;
  return resp;
}

QueryFn make_structured_handle(const rsa::Modulus& secret,
                               const OracleConfig& cfg) {
  return [secret, cfg](const ProbeEncoding& probe) {
    return structured_query(probe, secret, cfg);
  };
}

QueryFn make_honest_handle(const OracleConfig& cfg) {
  return [cfg](const ProbeEncoding& probe) { return honest_query(probe, cfg); };
}

void clear_hunt_cache() {
  std::lock_guard<std::mutex> lock(g_hunt_mutex);
  g_hunt_cache.clear();
}

}  // namespace malle::oracle
