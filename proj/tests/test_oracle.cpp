#include <doctest.h>

#include <algorithm>

#include "malle/oracle.hpp"
#include "support/oracles.hpp"

using namespace malle;
using nt::Int;

namespace {

bool contains(const std::vector<Int>& v, const Int& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<Int> witness_residues(const oracle::OracleResponse& r) {
  std::vector<Int> out;
  for (const auto& w : r.witnesses) out.push_back(w.residue);
  return out;
}

}  // namespace

TEST_CASE("probe encoding is canonical") {
  oracle::ProbeEncoding p = oracle::encode_probe(5, 2);
  CHECK(p.bits == "100001");
  CHECK(p.exponent() == 5);

  oracle::ProbeEncoding q = oracle::encode_probe(35, 2);
  CHECK(q.bits.size() == 36);
  CHECK(oracle::probe_value(q) == Int("34359738369"));

  // The same bit string serves every base.
  oracle::ProbeEncoding r = oracle::encode_probe(35, 3);
  CHECK(r.bits == q.bits);
  Int expect;
  mpz_pow_ui(expect.get_mpz_t(), Int(3).get_mpz_t(), 35);
  CHECK(oracle::probe_value(r) == expect + 1);

  auto [n, m] = oracle::decode_probe(r);
  CHECK(n == 35);
  CHECK(m == 3);

  CHECK_THROWS_AS(oracle::encode_probe(6, 2), std::domain_error);
  CHECK_THROWS_AS(oracle::encode_probe(35, 1), std::domain_error);
  oracle::ProbeEncoding bad{"10101", 2};
  CHECK_THROWS_AS(oracle::decode_probe(bad), std::domain_error);
  oracle::ProbeEncoding even{"10001", 2};  // n = 4
  CHECK_THROWS_AS(oracle::decode_probe(even), std::domain_error);
}

TEST_CASE("compute_Sm examples") {
  CHECK(oracle::compute_Sm(2, 341) == std::vector<Int>{3});
  CHECK(oracle::compute_Sm(3, 341) == std::vector<Int>{2});
  CHECK(oracle::compute_Sm(5, 35) == std::vector<Int>{2, 3});
}

TEST_CASE("structured query on n = 35, m = 2") {
  rsa::Modulus secret = rsa::make_modulus(5, 7);
  oracle::OracleResponse r =
      oracle::structured_query(oracle::encode_probe(35, 2), secret);
  REQUIRE_FALSE(r.bottom);
  // Assembly order: m+1 factors, then the 2p part, then the 2q part.
  CHECK(r.classes == std::vector<Int>{3, 11, 8});
  CHECK(contains(r.classes, 11));
  CHECK(contains(r.classes, 8));  // 43 mod 35
}

TEST_CASE("structured query escalates on the base-2 pseudoprime") {
  rsa::Modulus secret = rsa::make_modulus(11, 31);
  // Both low-degree parts are prime and ≡ 1 (mod 341): no valid S at m = 2.
  oracle::OracleResponse r2 =
      oracle::structured_query(oracle::encode_probe(341, 2), secret);
  CHECK(r2.bottom);
  std::vector<Int> pool2 = witness_residues(r2);
  for (const auto& res : pool2) CHECK((res == 1 || res == 3));

  // At m = 3 the 2p part factors as 67 * 661.
  oracle::OracleResponse r3 =
      oracle::structured_query(oracle::encode_probe(341, 3), secret);
  REQUIRE_FALSE(r3.bottom);
  CHECK(contains(r3.classes, 67));
}

TEST_CASE("zero budget yields bottom") {
  rsa::Modulus secret = rsa::make_modulus(5, 7);
  oracle::OracleConfig cfg;
  cfg.budget = 0;
  oracle::OracleResponse r =
      oracle::structured_query(oracle::encode_probe(35, 2), secret, cfg);
  CHECK(r.bottom);
}

TEST_CASE("probe modulus mismatch is a domain error") {
  rsa::Modulus secret = rsa::make_modulus(5, 7);
  CHECK_THROWS_AS(
      oracle::structured_query(oracle::encode_probe(55, 2), secret),
      std::domain_error);
}

TEST_CASE("strict size rule bottoms out where the relaxed rule succeeds") {
  // Phi_206(2) hides its factors from a 200k budget, so only {3, 11} turn
  // up for n = 5 * 103: too few for |S| = 3, enough for the relaxed rule.
  rsa::Modulus secret = rsa::make_modulus(5, 103);
  oracle::OracleConfig cfg;
  cfg.budget = 200'000;
  oracle::OracleResponse strict =
      oracle::structured_query(oracle::encode_probe(515, 2), secret, cfg);
  CHECK(strict.bottom);

  cfg.relaxed_size = true;
  oracle::OracleResponse relaxed =
      oracle::structured_query(oracle::encode_probe(515, 2), secret, cfg);
  REQUIRE_FALSE(relaxed.bottom);
  CHECK(relaxed.classes == std::vector<Int>{3, 11});
}

TEST_CASE("swap rule keeps a nontrivial class when m+1 fills the set") {
  // m = 29: omega(m)+2 = 3 but m+1 = 30 has three primes, so the last
  // trivial class must give way to a hunted one. Phi_10(29) = 5*11*31*401.
  rsa::Modulus secret = rsa::make_modulus(5, 7);
  oracle::OracleResponse r =
      oracle::structured_query(oracle::encode_probe(35, 29), secret);
  REQUIRE_FALSE(r.bottom);
  CHECK(r.classes == std::vector<Int>{2, 3, 11});
}

TEST_CASE("honest query returns the full factor pool") {
  oracle::OracleResponse r = oracle::honest_query(oracle::encode_probe(35, 2));
  REQUIRE_FALSE(r.bottom);
  // 2^35+1 = 3 * 11 * 43 * 281 * 86171 -> residues 3, 11, 8, 1, 1.
  std::vector<Int> primes;
  for (const auto& w : r.witnesses) primes.push_back(w.prime);
  std::sort(primes.begin(), primes.end());
  CHECK(primes == std::vector<Int>{3, 11, 43, 281, 86171});
  std::vector<Int> res = witness_residues(r);
  CHECK(contains(res, 3));
  CHECK(contains(res, 11));
  CHECK(contains(res, 8));
  CHECK(contains(res, 1));
}

TEST_CASE("honest query rejects n above the cap") {
  CHECK_THROWS_AS(oracle::honest_query(oracle::encode_probe(341, 2)),
                  std::domain_error);
}

TEST_CASE("honest query on n = 55 sees classes ≡ 1 mod p or q") {
  oracle::OracleResponse r = oracle::honest_query(oracle::encode_probe(55, 2));
  REQUIRE_FALSE(r.bottom);
  bool found = false;
  for (const auto& w : r.witnesses) {
    if (w.prime <= 3) continue;
    if (w.prime % 5 == 1 || w.prime % 11 == 1) found = true;
  }
  CHECK(found);
}

TEST_CASE("soundness: every witness divides the probe value") {
  rsa::Modulus secret = rsa::make_modulus(5, 7);
  for (int m = 2; m <= 6; ++m) {
    oracle::ProbeEncoding probe = oracle::encode_probe(35, m);
    oracle::OracleResponse r = oracle::structured_query(probe, secret);
    for (const auto& w : r.witnesses) {
      CHECK(nt::is_prime(w.prime).prime);
      // m^n ≡ -1 (mod r)
      CHECK(nt::mod_pow(m, 35, w.prime) == w.prime - 1);
      CHECK(w.residue == w.prime % 35);
    }
  }
}

TEST_CASE("order dichotomy for hunted witnesses") {
  rsa::Modulus secret = rsa::make_modulus(5, 7);
  for (int m : {2, 3, 5}) {
    oracle::OracleResponse r =
        oracle::structured_query(oracle::encode_probe(35, m), secret);
    for (const auto& w : r.witnesses) {
      if ((Int(m) + 1) % w.prime == 0 || (Int(m) - 1) % w.prime == 0) continue;
      nt::FactorSet fs = nt::factorize(w.prime - 1);
      Int ord = nt::multiplicative_order(m, w.prime, fs);
      // Up to factors of 2 the order is p, q or pq; in every case
      // p | r-1, q | r-1 or n | r-1.
      Int odd = ord;
      while (odd % 2 == 0) odd /= 2;
      CHECK((odd == 5 || odd == 7 || odd == 35 || odd == 1));
      bool div = (w.prime - 1) % 5 == 0 || (w.prime - 1) % 7 == 0 ||
                 (w.prime - 1) % 35 == 0;
      CHECK(div);
    }
  }
}

TEST_CASE("agreement between structured and honest modes") {
  for (auto [p, q] : {std::pair{5, 7}, {5, 11}}) {
    rsa::Modulus secret = rsa::make_modulus(p, q);
    std::uint64_t n = secret.n.get_ui();
    for (int m = 2; m <= 10; ++m) {
      oracle::ProbeEncoding probe = oracle::encode_probe(n, m);
      oracle::OracleResponse s = oracle::structured_query(probe, secret);
      oracle::OracleResponse h = oracle::honest_query(probe);
      REQUIRE_FALSE(s.bottom);
      REQUIRE_FALSE(h.bottom);
      std::vector<Int> pool = witness_residues(h);
      for (const auto& c : s.classes) CHECK(contains(pool, c));
    }
  }
}

TEST_CASE("particular-mode guarantee over generated moduli") {
  // classify(p, q) = true promises a valid S at m = 2 exists; the
  // structured hunt must find it at desk scale.
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    rsa::Modulus m = rsa::gen_modulus(seed, {3, 7}, true);
    oracle::OracleResponse r = oracle::structured_query(
        oracle::encode_probe(m.n.get_ui(), 2), m);
    CHECK_FALSE(r.bottom);
    bool valid = false;
    for (const auto& c : r.classes)
      if (c != 1 && c != 3) valid = true;
    CHECK(valid);
  }
}
