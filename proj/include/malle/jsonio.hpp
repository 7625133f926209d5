// JSON serialization for every report type. Integers always serialize as
// decimal strings: several exceed the 53-bit float-safe range.
#pragma once

#include <json.hpp>

#include "malle/analytics.hpp"
#include "malle/modulus.hpp"
#include "malle/oracle.hpp"
#include "malle/reduction.hpp"

namespace malle::jsonio {

using Json = nlohmann::ordered_json;

inline std::string dec(const nt::Int& v) { return v.get_str(); }

inline nt::Int parse_int(const std::string& s) {
  try {
    return nt::Int(s);
  } catch (const std::invalid_argument&) {
    throw std::domain_error("not a decimal integer: '" + s + "'");
  }
}

inline Json to_json(const rsa::Modulus& m) {
  return Json{{"n", dec(m.n)},
              {"p", dec(m.p)},
              {"q", dec(m.q)},
              {"D", dec(m.D)},
              {"particular_case", m.particular_case}};
}

inline rsa::Modulus modulus_from_json(const Json& j) {
  rsa::Modulus m;
  m.n = parse_int(j.at("n").get<std::string>());
  m.p = parse_int(j.at("p").get<std::string>());
  m.q = parse_int(j.at("q").get<std::string>());
  m.D = parse_int(j.at("D").get<std::string>());
  m.particular_case = j.at("particular_case").get<bool>();
  return m;
}

inline Json to_json(const rsa::PrimitiveRootReport& r) {
  return Json{{"q", dec(r.q)},
              {"g", dec(r.g)},
              {"density_num", r.density.get_num().get_str()},
              {"density_den", r.density.get_den().get_str()},
              {"density", r.density.get_d()}};
}

inline Json to_json(const oracle::OracleResponse& resp) {
  Json j;
  j["bottom"] = resp.bottom;
  Json s = Json::array();
  for (const auto& r : resp.classes) s.push_back(dec(r));
  j["S"] = std::move(s);
  Json w = Json::array();
  for (const auto& wit : resp.witnesses)
    w.push_back(Json{{"r", dec(wit.prime)},
                     {"residue", dec(wit.residue)},
                     {"proof_method", wit.proof_method}});
  j["witnesses"] = std::move(w);
  j["budget_used"] = resp.budget_used;
  return j;
}

inline Json to_json(const reduction::ReductionResult& r) {
  Json j;
  j["status"] = reduction::status_name(r.status);
  j["d"] = dec(r.d);
  j["r_witness"] = r.r_witness ? Json(dec(*r.r_witness)) : Json(nullptr);
  j["m_used"] = dec(r.m_used);
  j["queries"] = r.queries;
  Json t = Json::array();
  for (const auto& e : r.transcript) {
    Json entry{{"m", e.m}, {"outcome", e.outcome}};
    if (!e.classes.empty()) {
      Json s = Json::array();
      for (const auto& c : e.classes) s.push_back(dec(c));
      entry["S"] = std::move(s);
    }
    if (e.chosen_residue != 0) entry["chosen"] = dec(e.chosen_residue);
    t.push_back(std::move(entry));
  }
  j["transcript"] = std::move(t);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const analytics::SurveyReport& s) {
  Json j;
  j["z"] = s.z;
  j["threshold"] = s.threshold;
  j["prime_count"] = s.prime_count;
  j["pair_count_exceeding"] = s.pair_count_exceeding;
  j["pair_count_unordered"] = s.pair_count_unordered;
  j["bound_value"] = s.bound_value;
  j["alpha"] = s.alpha;
  j["S1"] = s.S1;
  j["S2_bound"] = s.S2_bound;
  Json by = Json::object();
  for (auto [g, c] : s.exceed_by_gcd) by[std::to_string(g)] = c;
  j["exceed_by_gcd"] = std::move(by);
  // Tables start at d = 1.
  Json pi = Json::array(), err = Json::array();
  for (std::size_t d = 1; d < s.pi_table.size(); ++d) {
    pi.push_back(s.pi_table[d]);
    err.push_back(s.error_table[d]);
  }
  j["pi_table"] = std::move(pi);
  j["error_table"] = std::move(err);
  return j;
}

inline Json to_json(const analytics::BdhResult& b) {
  return Json{{"z", b.z},           {"d_max", b.d_max},
              {"A", b.A},           {"epsilon", b.epsilon},
              {"sum_sq", b.sum_sq}, {"reference", b.reference},
              {"ratio", b.sum_sq / b.reference}};
}

inline Json to_json(const analytics::MertensResult& m) {
  return Json{{"x", m.x},
              {"product", m.product},
              {"reference", m.reference},
              {"relative_difference", std::abs(m.product / m.reference - 1.0)}};
}

inline Json to_json(const analytics::PrimRootSurvey& s) {
  return Json{{"limit", s.limit},
              {"epsilon", s.epsilon},
              {"odd_prime_count", s.odd_prime_count},
              {"worst_ratio_shoup", s.worst_ratio_shoup},
              {"worst_ratio_p", s.worst_ratio_p},
              {"max_g", s.max_g},
              {"max_g_p", s.max_g_p},
              {"bach_fraction", s.bach_fraction},
              {"hb235_fraction", s.hb235_fraction}};
}

inline Json to_json(const analytics::DensityResult& d) {
  return Json{{"q", d.q},
              {"C", d.C},
              {"trials", d.trials},
              {"set_size", d.set_size},
              {"seed", d.seed},
              {"misses", d.misses},
              {"fraction", d.fraction},
              {"exact", d.exact},
              {"reference", d.reference}};
}

}  // namespace malle::jsonio
