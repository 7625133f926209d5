#include <doctest.h>

#include "malle/reduction.hpp"

using namespace malle;
using nt::Int;

namespace {

oracle::QueryFn structured_for(const Int& n, std::uint64_t budget = 10'000'000) {
  oracle::OracleConfig cfg;
  cfg.budget = budget;
  return oracle::make_structured_handle(rsa::from_n(n), cfg);
}

}  // namespace

TEST_CASE("particular case factors 35 with the canonical pick") {
  reduction::ReductionResult r = reduction::reduce_particular(35, structured_for(35));
  REQUIRE(r.status == reduction::Status::success);
  // S = [3, 11, 8]; the first residue outside {1, 3} is 11, so d = gcd(10, 35).
  CHECK(r.d == 5);
  CHECK(r.transcript.back().chosen_residue == 11);
  REQUIRE(r.r_witness.has_value());
  CHECK(*r.r_witness == 11);
  CHECK(r.m_used == 2);
  CHECK(r.queries == 1);
  CHECK(reduction::verify_result(r, 35));
}

TEST_CASE("the other residue would give the other factor") {
  // gcd(43 - 1, 35) = 7: picking residue 8 (witness 43) is also sound, just
  // not the canonical choice.
  CHECK(gcd(Int(43) - 1, Int(35)) == 7);
  CHECK(gcd(Int(11) - 1, Int(35)) == 5);
}

TEST_CASE("particular case reports inapplicable on the pseudoprime") {
  // 2^340 ≡ 1 (mod 341), so every hunted class at m = 2 is 1 or 3 and the
  // oracle bottoms out.
  CHECK(nt::mod_pow(2, 340, 341) == 1);
  reduction::ReductionResult r =
      reduction::reduce_particular(341, structured_for(341));
  CHECK(r.status == reduction::Status::inapplicable);
  CHECK_FALSE(reduction::verify_result(r, 341));
}

TEST_CASE("general case on 341 escalates to m = 3") {
  reduction::ReductionResult r = reduction::reduce_general(341, structured_for(341));
  REQUIRE(r.status == reduction::Status::success);
  CHECK(r.m_used == 3);
  CHECK(r.d == 11);  // gcd(66, 341)
  CHECK(r.transcript.front().m == 2);
  CHECK(r.transcript.front().outcome == "bottom");
  CHECK(r.transcript.back().chosen_residue == 67);
  CHECK(reduction::verify_result(r, 341));
}

TEST_CASE("general case on 35 degenerates to the particular probe") {
  reduction::ReductionResult r = reduction::reduce_general(35, structured_for(35));
  REQUIRE(r.status == reduction::Status::success);
  CHECK(r.m_used == 2);
  CHECK(r.d == 5);
  CHECK(reduction::verify_result(r, 35));
}

TEST_CASE("gcd shortcut fires when m+1 shares a factor with n") {
  // Oracle that always answers bottom: only the shortcut can succeed.
  oracle::QueryFn bottom_only = [](const oracle::ProbeEncoding&) {
    return oracle::OracleResponse{};
  };
  reduction::ReductionResult r = reduction::reduce_general(35, bottom_only, 10);
  REQUIRE(r.status == reduction::Status::success);
  CHECK(r.m_used == 4);  // gcd(5, 35) = 5
  CHECK(r.d == 5);
  CHECK_FALSE(r.r_witness.has_value());
  CHECK(reduction::verify_result(r, 35));
}

TEST_CASE("m-cap exhaustion is a transcript-carrying failure") {
  oracle::QueryFn bottom_only = [](const oracle::ProbeEncoding&) {
    return oracle::OracleResponse{};
  };
  reduction::ReductionResult r = reduction::reduce_general(341, bottom_only, 6);
  CHECK(r.status == reduction::Status::exhausted);
  CHECK(r.transcript.size() == 5);  // m = 2..6
  CHECK(r.queries == 5);
  CHECK_FALSE(reduction::verify_result(r, 341));
}

TEST_CASE("protocol violation when S stays inside S_m and 1") {
  oracle::QueryFn degenerate = [](const oracle::ProbeEncoding& probe) {
    oracle::OracleResponse resp;
    resp.bottom = false;
    resp.classes = {Int(1), Int(3)};
    resp.witnesses = {{Int(281), Int(1), "deterministic-miller-rabin"}};
    return resp;
  };
  reduction::ReductionResult r = reduction::reduce_particular(35, degenerate);
  CHECK(r.status == reduction::Status::protocol_violation);
}

TEST_CASE("excluded residues matter: residue 1 would reach d = n") {
  // 281 and 86171 both reduce to 1 mod 35; a mutated reducer that accepted
  // residue 1 would compute gcd(0, 35) = 35 = n, a trivial divisor.
  CHECK(Int(281) % 35 == 1);
  CHECK(Int(86171) % 35 == 1);
  CHECK(gcd(Int(1) - 1, Int(35)) == 35);

  // Feed the reducer a response whose only non-1 class is 3: it must
  // refuse rather than fall back to the excluded residues.
  oracle::QueryFn tempting = [](const oracle::ProbeEncoding&) {
    oracle::OracleResponse resp;
    resp.bottom = false;
    resp.classes = {Int(3), Int(1), Int(1)};
    return resp;
  };
  reduction::ReductionResult r = reduction::reduce_particular(35, tempting);
  CHECK(r.status == reduction::Status::protocol_violation);
  CHECK(r.d != 35);
}

TEST_CASE("bad divisor when the witness residue is useless") {
  // Residue 2 -> gcd(1, n) = 1: reduction fails but carries its transcript.
  oracle::QueryFn junk = [](const oracle::ProbeEncoding&) {
    oracle::OracleResponse resp;
    resp.bottom = false;
    resp.classes = {Int(2)};
    return resp;
  };
  reduction::ReductionResult r = reduction::reduce_particular(35, junk);
  CHECK(r.status == reduction::Status::bad_divisor);
  CHECK(r.d == 1);
  CHECK(r.transcript.size() == 1);
  CHECK_FALSE(reduction::verify_result(r, 35));
}

TEST_CASE("verify_result example table") {
  reduction::ReductionResult good;
  good.status = reduction::Status::success;
  good.d = 5;
  good.r_witness = Int(11);
  good.m_used = 2;
  CHECK(reduction::verify_result(good, 35));

  reduction::ReductionResult trivial = good;
  trivial.d = 35;
  trivial.r_witness = Int(281);
  CHECK_FALSE(reduction::verify_result(trivial, 35));

  reduction::ReductionResult unit = good;
  unit.d = 1;
  unit.r_witness.reset();
  CHECK_FALSE(reduction::verify_result(unit, 35));

  // Witness that does not divide m^n + 1.
  reduction::ReductionResult lying = good;
  lying.r_witness = Int(13);
  CHECK_FALSE(reduction::verify_result(lying, 35));
}

TEST_CASE("reduction is deterministic across repeated runs") {
  auto run = [] {
    return reduction::reduce_general(341, structured_for(341));
  };
  reduction::ReductionResult a = run();
  reduction::ReductionResult b = run();
  REQUIRE(a.transcript.size() == b.transcript.size());
  for (std::size_t i = 0; i < a.transcript.size(); ++i) {
    CHECK(a.transcript[i].m == b.transcript[i].m);
    CHECK(a.transcript[i].outcome == b.transcript[i].outcome);
    CHECK(a.transcript[i].classes == b.transcript[i].classes);
  }
  CHECK(a.d == b.d);
  CHECK(a.queries == b.queries);
}

TEST_CASE("isolation: the reducer sees only n and the handle") {
  // The handle interface carries no Modulus; a counting wrapper shows the
  // reducer interacting purely through probes.
  std::uint64_t calls = 0;
  oracle::QueryFn handle = structured_for(35);
  oracle::QueryFn counting = [&](const oracle::ProbeEncoding& probe) {
    ++calls;
    CHECK(probe.exponent() == 35);
    return handle(probe);
  };
  reduction::ReductionResult r = reduction::reduce_general(35, counting);
  CHECK(r.status == reduction::Status::success);
  CHECK(calls == r.queries);
}

TEST_CASE("domain guards") {
  oracle::QueryFn dummy = [](const oracle::ProbeEncoding&) {
    return oracle::OracleResponse{};
  };
  CHECK_THROWS_AS(reduction::reduce_particular(34, dummy), std::domain_error);
  CHECK_THROWS_AS(reduction::reduce_general(9, dummy), std::domain_error);
  CHECK_THROWS_AS(reduction::reduce_general(35, dummy, 1), std::domain_error);
}

TEST_CASE("default m-cap honors the floor") {
  CHECK(reduction::default_m_cap(35) >= 100);
  CHECK(reduction::default_m_cap(Int("95477")) >=
        reduction::default_m_cap(Int("341")));
}
