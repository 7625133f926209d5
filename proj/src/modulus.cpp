#include "malle/modulus.hpp"

#include <random>

namespace malle::rsa {

namespace {

void require_prime(const nt::Int& x, const char* who) {
  if (x < 5) throw std::domain_error(std::string(who) + ": prime must be >= 5");
  if (!nt::is_prime(x).prime)
    throw std::domain_error(std::string(who) + ": input is not prime");
}

unsigned bit_length(const nt::Int& x) {
  return static_cast<unsigned>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

}  // namespace

bool classify(const nt::Int& p, const nt::Int& q) {
  require_prime(p, "classify");
  require_prime(q, "classify");
  if (p >= q) throw std::domain_error("classify: need p < q");
  return nt::mod_pow(2, p - 1, q) != 1 || nt::mod_pow(2, q - 1, p) != 1;
}

Modulus make_modulus(const nt::Int& p, const nt::Int& q) {
  if (p == q) throw std::domain_error("make_modulus: p and q must differ");
  const nt::Int& lo = p < q ? p : q;
  const nt::Int& hi = p < q ? q : p;
  require_prime(lo, "make_modulus");
  require_prime(hi, "make_modulus");
  Modulus m;
  m.p = lo;
  m.q = hi;
  m.n = lo * hi;
  m.D = gcd(lo - 1, hi - 1);
  m.particular_case = classify(lo, hi);
  return m;
}

Modulus from_n(const nt::Int& n) {
  if (n < 35 || mpz_even_p(n.get_mpz_t()))
    throw std::domain_error("from_n: n is not a desk-scale RSA modulus");
  nt::Int p = 0;
  for (nt::Int d = 3; d * d <= n; d += 2) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      p = d;
      break;
    }
  }
  if (p == 0) throw std::domain_error("from_n: n is prime");
  nt::Int q = n / p;
  if (p == q) throw std::domain_error("from_n: n is a square");
  if (p < 5) throw std::domain_error("from_n: smallest prime factor below 5");
  if (!nt::is_prime(q).prime)
    throw std::domain_error("from_n: n has more than two prime factors");
  return make_modulus(p, q);
}

Modulus gen_modulus(std::uint64_t rng_seed, BitRange bits,
                    std::optional<bool> require_particular,
                    std::uint64_t attempt_budget) {
  if (bits.lo_bits < 3 || bits.lo_bits > bits.hi_bits ||
      bits.hi_bits > kMaxPrimeBits)
    throw std::domain_error("gen_modulus: bit range must satisfy 3 <= lo <= hi <= 32");

  std::mt19937_64 rng(rng_seed);

  // Small ranges draw from the sieve; wide ones Miller-Rabin-test random
  // odd candidates. Both paths are pure functions of the seed.
  std::vector<std::uint64_t> pool;
  const std::uint64_t range_lo = 1ull << (bits.lo_bits - 1);
  const std::uint64_t range_hi = 1ull << bits.hi_bits;
  if (range_hi <= nt::kDefaultSieveLimit) {
    for (std::uint64_t v : nt::sieve_primes(std::max<std::uint64_t>(range_lo, 5),
                                            range_hi))
      if (v >= 5) pool.push_back(v);
    if (pool.size() < 2)
      throw ResourceError("gen_modulus: fewer than two primes in range");
  }

  auto draw_prime = [&]() -> nt::Int {
    if (!pool.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      return nt::Int(static_cast<unsigned long>(pool[pick(rng)]));
    }
    std::uniform_int_distribution<unsigned> nbits(bits.lo_bits, bits.hi_bits);
    for (;;) {
      unsigned b = nbits(rng);
      std::uint64_t lo = 1ull << (b - 1);
      std::uint64_t hi = (1ull << b) - 1;
      std::uniform_int_distribution<std::uint64_t> val(lo, hi);
      std::uint64_t c = val(rng) | 1;
      if (c >= 5 && nt::is_prime_u64(c)) return nt::Int(static_cast<unsigned long>(c));
    }
  };

  for (std::uint64_t attempt = 0; attempt < attempt_budget; ++attempt) {
    nt::Int a = draw_prime();
    nt::Int b = draw_prime();
    if (a == b) continue;
    Modulus m = make_modulus(a, b);
    if (require_particular && m.particular_case != *require_particular) continue;
    return m;
  }
  throw ResourceError("gen_modulus: no qualifying pair within attempt budget");
}

PrimitiveRootReport least_primitive_root(const nt::Int& q, nt::Budget& budget) {
  if (q < 3 || mpz_even_p(q.get_mpz_t()) || !nt::is_prime(q).prime)
    throw std::domain_error("least_primitive_root: q must be an odd prime");

  nt::Int order = q - 1;
  nt::FactorSet fs = nt::factorize(order, budget);
  if (!fs.complete())
    throw ResourceError("least_primitive_root: factorization budget exceeded");

  PrimitiveRootReport rep;
  rep.q = q;
  rep.density = mpq_class(nt::euler_phi(order, fs), order);
  rep.density.canonicalize();

  // Scan every integer in turn; perfect powers are not skipped.
  for (nt::Int g = 2; g < q; ++g) {
    bool generator = true;
    for (const auto& f : fs.factors) {
      if (nt::mod_pow(g, order / f.value, q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      rep.g = g;
      return rep;
    }
  }
  throw std::logic_error("least_primitive_root: no generator found");
}

PrimitiveRootReport least_primitive_root(const nt::Int& q) {
  nt::Budget b;
  return least_primitive_root(q, b);
}

}  // namespace malle::rsa
