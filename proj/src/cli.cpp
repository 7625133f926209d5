#include "malle/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <iostream>

#include "malle/config.hpp"
#include "malle/jsonio.hpp"

namespace malle::cli {

namespace {

using jsonio::Json;
using jsonio::dec;

struct Invocation {
  RunConfig cfg;
  kernels::Exec exec = kernels::Exec::openmp;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  oracle::OracleConfig oracle_cfg(bool relaxed) const {
    oracle::OracleConfig oc;
    oc.budget = cfg.oracle_budget;
    oc.relaxed_size = relaxed;
    oc.honest_n_cap = cfg.honest_n_cap;
    return oc;
  }
};

void emit(const Invocation& inv, const Json& j) { *inv.out << j.dump(2) << "\n"; }

nt::Int parse_n(const std::string& s) {
  nt::Int n = jsonio::parse_int(s);
  if (n < 1) throw std::domain_error("n must be positive");
  return n;
}

// --- gen ---------------------------------------------------------------

int cmd_gen(const Invocation& inv, unsigned bits_lo, unsigned bits_hi,
            int require_particular) {
  std::optional<bool> req;
  if (require_particular == 0) req = false;
  if (require_particular == 1) req = true;
  rsa::Modulus m = rsa::gen_modulus(inv.cfg.seed, {bits_lo, bits_hi}, req);
  switch (inv.cfg.output) {
    case OutputMode::csv:
      *inv.out << "n,p,q,D,particular_case\n"
               << dec(m.n) << ',' << dec(m.p) << ',' << dec(m.q) << ','
               << dec(m.D) << ',' << (m.particular_case ? 1 : 0) << "\n";
      break;
    case OutputMode::human:
      *inv.out << "n = " << dec(m.n) << " = " << dec(m.p) << " * " << dec(m.q)
               << ", D = " << dec(m.D)
               << ", particular_case = " << (m.particular_case ? "yes" : "no")
               << "\n";
      break;
    default:
      emit(inv, jsonio::to_json(m));
  }
  return kExitOk;
}

// --- reduce ------------------------------------------------------------

oracle::QueryFn build_handle(const Invocation& inv, const nt::Int& n,
                             const std::string& mode, bool relaxed) {
  if (mode == "structured") {
    // Harness privilege: the oracle side may know p and q. The reducer
    // itself only ever sees the returned handle.
    rsa::Modulus secret = rsa::from_n(n);
    return oracle::make_structured_handle(secret, inv.oracle_cfg(relaxed));
  }
  return oracle::make_honest_handle(inv.oracle_cfg(relaxed));
}

int cmd_reduce(const Invocation& inv, const std::string& n_str,
               const std::string& mode, const std::string& oracle_mode,
               bool relaxed) {
  nt::Int n = parse_n(n_str);
  oracle::QueryFn handle = build_handle(inv, n, oracle_mode, relaxed);
  reduction::ReductionResult res =
      mode == "particular"
          ? reduction::reduce_particular(n, handle)
          : reduction::reduce_general(n, handle, inv.cfg.m_cap);

  Json j = jsonio::to_json(res);
  j["n"] = dec(n);
  j["mode"] = mode;
  j["oracle"] = oracle_mode;
  j["verified"] = reduction::verify_result(res, n);
  if (inv.cfg.output == OutputMode::human) {
    *inv.out << "status = " << reduction::status_name(res.status);
    if (res.status == reduction::Status::success)
      *inv.out << ", d = " << dec(res.d) << " (m = " << dec(res.m_used) << ")";
    *inv.out << "\n";
  } else {
    emit(inv, j);
  }
  return res.status == reduction::Status::success ? kExitOk
                                                  : kExitReductionFailed;
}

// --- oracle-dump ---------------------------------------------------------

int cmd_oracle_dump(const Invocation& inv, const std::string& n_str,
                    const std::string& m_str, const std::string& mode,
                    bool relaxed) {
  nt::Int n = parse_n(n_str);
  nt::Int m = jsonio::parse_int(m_str);
  if (!mpz_fits_ulong_p(n.get_mpz_t()))
    throw std::domain_error("oracle-dump: n too large");
  oracle::ProbeEncoding probe = oracle::encode_probe(n.get_ui(), m);
  oracle::OracleResponse resp =
      mode == "structured"
          ? oracle::structured_query(probe, rsa::from_n(n),
                                     inv.oracle_cfg(relaxed))
          : oracle::honest_query(probe, inv.oracle_cfg(relaxed));
  Json j;
  j["n"] = dec(n);
  j["m"] = dec(m);
  j["mode"] = mode;
  Json body = jsonio::to_json(resp);
  for (auto& [k, v] : body.items()) j[k] = v;
  emit(inv, j);
  return kExitOk;
}

// --- stats ---------------------------------------------------------------

int cmd_stats_gcd(const Invocation& inv, std::uint64_t z,
                  std::optional<double> threshold) {
  analytics::SurveyReport rep =
      analytics::survey_gcd_pairs(z, threshold, inv.exec, inv.cfg.sieve_limit);
  if (inv.cfg.output == OutputMode::csv) {
    *inv.out << "d,pi,error,exceeding_pairs\n";
    for (std::size_t d = 1; d < rep.pi_table.size(); ++d) {
      auto it = rep.exceed_by_gcd.find(d);
      std::uint64_t ex = it == rep.exceed_by_gcd.end() ? 0 : it->second;
      *inv.out << d << ',' << rep.pi_table[d] << ',' << rep.error_table[d]
               << ',' << ex << "\n";
    }
  } else {
    emit(inv, jsonio::to_json(rep));
  }
  return kExitOk;
}

int cmd_stats_bdh(const Invocation& inv, std::uint64_t z, std::uint64_t dmax,
                  double A, double eps) {
  analytics::BdhResult res =
      analytics::bdh_error_sum(z, dmax, A, eps, inv.exec, inv.cfg.sieve_limit);
  if (inv.cfg.output == OutputMode::csv) {
    *inv.out << "z,d_max,A,epsilon,sum_sq,reference,ratio\n"
             << res.z << ',' << res.d_max << ',' << res.A << ',' << res.epsilon
             << ',' << res.sum_sq << ',' << res.reference << ','
             << res.sum_sq / res.reference << "\n";
  } else {
    emit(inv, jsonio::to_json(res));
  }
  return kExitOk;
}

int cmd_stats_primroot(const Invocation& inv, std::uint64_t limit, double eps) {
  if (inv.cfg.output == OutputMode::csv) {
    // The flat table wants one record per prime; the survey keeps only
    // aggregates, so recompute the per-prime roots here.
    std::vector<std::uint64_t> primes =
        nt::sieve_primes(3, limit + 1, std::max(inv.cfg.sieve_limit, limit + 1));
    std::vector<std::uint32_t> g = kernels::least_primitive_roots(primes, inv.exec);
    *inv.out << "p,g\n";
    for (std::size_t i = 0; i < primes.size(); ++i)
      *inv.out << primes[i] << ',' << g[i] << "\n";
    return kExitOk;
  }
  analytics::PrimRootSurvey s =
      analytics::primroot_survey(limit, eps, inv.exec, inv.cfg.sieve_limit);
  emit(inv, jsonio::to_json(s));
  return kExitOk;
}

int cmd_stats_density(const Invocation& inv, std::uint64_t q, double C,
                      std::uint64_t trials) {
  analytics::DensityResult res =
      analytics::density_montecarlo(q, C, trials, inv.cfg.seed, inv.exec);
  if (inv.cfg.output == OutputMode::csv) {
    *inv.out << "q,C,trials,set_size,seed,misses,fraction,exact,reference\n"
             << res.q << ',' << res.C << ',' << res.trials << ','
             << res.set_size << ',' << res.seed << ',' << res.misses << ','
             << res.fraction << ',' << res.exact << ',' << res.reference
             << "\n";
  } else {
    emit(inv, jsonio::to_json(res));
  }
  return kExitOk;
}

// --- demo ----------------------------------------------------------------

struct DemoRow {
  rsa::Modulus mod;
  reduction::ReductionResult res;
};

int cmd_demo(const Invocation& inv, std::uint64_t max_prime) {
  if (max_prime < 7) throw std::domain_error("demo: --max-prime must be >= 7");
  std::vector<std::uint64_t> primes =
      nt::sieve_primes(5, max_prime + 1, inv.cfg.sieve_limit);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      pairs.emplace_back(primes[i], primes[j]);

  std::vector<DemoRow> rows(pairs.size());
  bool serial = inv.exec == kernels::Exec::serial;
  // Runs are independent; the hunt cache is shared and thread-safe, and
  // every row is a pure function of its pair, so the merged report does
  // not depend on the schedule.
#pragma omp parallel for schedule(dynamic) if (!serial)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(pairs.size()); ++k) {
    rsa::Modulus m = rsa::make_modulus(nt::Int(static_cast<unsigned long>(pairs[k].first)),
                                       nt::Int(static_cast<unsigned long>(pairs[k].second)));
    oracle::QueryFn handle =
        oracle::make_structured_handle(m, inv.oracle_cfg(false));
    rows[k] = {m, reduction::reduce_general(m.n, handle, inv.cfg.m_cap)};
  }

  std::uint64_t successes = 0, total_queries = 0, max_m = 0;
  for (const auto& r : rows) {
    if (r.res.status == reduction::Status::success) ++successes;
    total_queries += r.res.queries;
    if (mpz_fits_ulong_p(r.res.m_used.get_mpz_t()))
      max_m = std::max(max_m, r.res.m_used.get_ui());
  }

  if (inv.cfg.output == OutputMode::csv) {
    *inv.out << "n,p,q,D,particular_case,status,m,d,queries\n";
    for (const auto& r : rows)
      *inv.out << dec(r.mod.n) << ',' << dec(r.mod.p) << ',' << dec(r.mod.q)
               << ',' << dec(r.mod.D) << ',' << (r.mod.particular_case ? 1 : 0)
               << ',' << reduction::status_name(r.res.status) << ','
               << dec(r.res.m_used) << ',' << dec(r.res.d) << ','
               << r.res.queries << "\n";
  } else if (inv.cfg.output == OutputMode::human) {
    for (const auto& r : rows)
      *inv.out << "n = " << dec(r.mod.n) << " -> "
               << reduction::status_name(r.res.status) << " d = " << dec(r.res.d)
               << " (m = " << dec(r.res.m_used) << ")\n";
    *inv.out << successes << "/" << rows.size() << " succeeded, max m = "
             << max_m << "\n";
  } else {
    Json moduli = Json::array();
    for (const auto& r : rows) {
      Json row = jsonio::to_json(r.mod);
      row["status"] = reduction::status_name(r.res.status);
      row["m"] = dec(r.res.m_used);
      row["d"] = dec(r.res.d);
      row["queries"] = r.res.queries;
      moduli.push_back(std::move(row));
    }
    Json j;
    j["max_prime"] = max_prime;
    j["moduli"] = std::move(moduli);
    j["summary"] = Json{{"count", rows.size()},
                        {"successes", successes},
                        {"max_m", max_m},
                        {"total_queries", total_queries}};
    emit(inv, j);
  }
  return successes == rows.size() ? kExitOk : kExitReductionFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Desk-scale RSA factoring reductions against a simulated "
               "factoring oracle, plus number-theoretic surveys"};
  app.require_subcommand(1);

  Invocation inv;
  inv.out = &out;
  inv.err = &err;

  // Defaults, then $MALLE_CONFIG, then --config, then explicit flags.
  std::string config_path;
  std::optional<std::uint64_t> f_seed, f_sieve, f_budget, f_mcap, f_ncap;
  std::string f_output;
  bool f_serial = false;

  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--seed", f_seed, "RNG seed");
  app.add_option("--sieve-limit", f_sieve, "prime sieve upper limit");
  app.add_option("--oracle-budget", f_budget,
                 "factor-hunt effort (trial candidates + rho iterations)");
  app.add_option("--m-cap", f_mcap, "cap for the general algorithm's m loop");
  app.add_option("--honest-n-cap", f_ncap, "largest n the honest oracle accepts");
  app.add_option("--output", f_output, "json | csv | human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_flag("--serial", f_serial, "force the serial reference kernels");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random desk-scale modulus");
  unsigned bits = 8, bits_lo = 0;
  int req_particular = -1;
  gen->add_option("--bits", bits, "bit length per prime")->required();
  gen->add_option("--bits-lo", bits_lo, "lower bit bound (defaults to --bits)");
  gen->add_option("--require-particular", req_particular,
                  "1 = particular case only, 0 = complement only")
      ->check(CLI::Range(0, 1));

  // reduce
  auto* red = app.add_subcommand("reduce", "factor n through the oracle");
  std::string r_n, r_mode, r_oracle = "structured";
  bool r_relaxed = false;
  red->add_option("--n", r_n, "modulus to factor")->required();
  red->add_option("--mode", r_mode, "particular | general")
      ->required()
      ->check(CLI::IsMember({"particular", "general"}));
  red->add_option("--oracle", r_oracle, "structured | honest")
      ->check(CLI::IsMember({"structured", "honest"}));
  red->add_flag("--relaxed", r_relaxed, "relaxed oracle size rule");
  bool r_json = false;
  red->add_flag("--json", r_json, "force JSON output (default)");

  // oracle-dump
  auto* dump = app.add_subcommand("oracle-dump", "emit one oracle response");
  std::string d_n, d_m = "2", d_mode = "structured";
  bool d_relaxed = false;
  dump->add_option("--n", d_n, "modulus")->required();
  dump->add_option("--m", d_m, "probe base");
  dump->add_option("--mode", d_mode, "structured | honest")
      ->check(CLI::IsMember({"structured", "honest"}));
  dump->add_flag("--relaxed", d_relaxed, "relaxed oracle size rule");

  // stats-gcd
  auto* sg = app.add_subcommand("stats-gcd", "gcd(p-1,q-1) pair survey");
  std::uint64_t sg_z = 100;
  double sg_threshold = -1;
  bool sg_csv = false;
  sg->add_option("--z", sg_z, "survey window [z, 2z)")->required();
  sg->add_option("--threshold", sg_threshold, "override the log z threshold");
  sg->add_flag("--csv", sg_csv, "flat per-d table");

  // stats-bdh
  auto* sb = app.add_subcommand("stats-bdh", "mean-square progression errors");
  std::uint64_t sb_z = 1000, sb_dmax = 0;
  double sb_A = 4.0, sb_eps = 0.25;
  bool sb_csv = false;
  sb->add_option("--z", sb_z, "survey window [z, 2z)")->required();
  sb->add_option("--dmax", sb_dmax, "largest modulus d (default z^(1-eps))");
  sb->add_option("--A", sb_A, "reference exponent");
  sb->add_option("--eps", sb_eps, "epsilon in d_max <= z^(1-eps)");
  sb->add_flag("--csv", sb_csv, "flat single-record table");

  // stats-primroot
  auto* sp = app.add_subcommand("stats-primroot", "least primitive root scan");
  std::uint64_t sp_limit = 1000;
  double sp_eps = 0.5;
  bool sp_csv = false;
  sp->add_option("--limit", sp_limit, "scan odd primes up to this bound")
      ->required();
  sp->add_option("--eps", sp_eps, "epsilon in the heuristic bound");
  sp->add_flag("--csv", sp_csv, "flat per-prime table");

  // stats-density
  auto* sd = app.add_subcommand("stats-density", "primitive-root density trials");
  std::uint64_t sd_q = 101, sd_trials = 100000;
  double sd_C = 1.0;
  bool sd_csv = false;
  sd->add_option("--q", sd_q, "odd prime")->required();
  sd->add_option("--C", sd_C, "set-size constant");
  sd->add_option("--trials", sd_trials, "Monte Carlo trials");
  sd->add_option("--seed", f_seed, "RNG seed");
  sd->add_flag("--csv", sd_csv, "flat single-record table");

  // demo
  auto* demo = app.add_subcommand("demo", "sweep all moduli up to a prime bound");
  std::uint64_t demo_max = 47;
  demo->add_option("--max-prime", demo_max, "largest prime in the sweep");

  try {
    // CLI11's vector overload wants the arguments reversed.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (auto env = env_config_path()) inv.cfg = load_config_file(*env, inv.cfg);
    if (!config_path.empty()) inv.cfg = load_config_file(config_path, inv.cfg);
    if (f_seed) inv.cfg.seed = *f_seed;
    if (f_sieve) inv.cfg.sieve_limit = *f_sieve;
    if (f_budget) inv.cfg.oracle_budget = *f_budget;
    if (f_mcap) inv.cfg.m_cap = *f_mcap;
    if (f_ncap) inv.cfg.honest_n_cap = *f_ncap;
    if (!f_output.empty()) inv.cfg.output = parse_output_mode(f_output);
    if (sg_csv || sb_csv || sp_csv || sd_csv) inv.cfg.output = OutputMode::csv;
    if (f_serial) inv.exec = kernels::Exec::serial;
    inv.cfg.validate();

    if (gen->parsed())
      return cmd_gen(inv, bits_lo ? bits_lo : bits, bits, req_particular);
    if (red->parsed()) {
      if (r_json) inv.cfg.output = OutputMode::json;
      return cmd_reduce(inv, r_n, r_mode, r_oracle, r_relaxed);
    }
    if (dump->parsed()) return cmd_oracle_dump(inv, d_n, d_m, d_mode, d_relaxed);
    if (sg->parsed())
      return cmd_stats_gcd(inv, sg_z,
                           sg_threshold < 0
                               ? std::nullopt
                               : std::optional<double>(sg_threshold));
    if (sb->parsed()) {
      std::uint64_t dmax = sb_dmax;
      if (dmax == 0)
        dmax = static_cast<std::uint64_t>(
            std::pow(static_cast<double>(sb_z), 1.0 - sb_eps));
      return cmd_stats_bdh(inv, sb_z, dmax, sb_A, sb_eps);
    }
    if (sp->parsed()) return cmd_stats_primroot(inv, sp_limit, sp_eps);
    if (sd->parsed()) return cmd_stats_density(inv, sd_q, sd_C, sd_trials);
    if (demo->parsed()) return cmd_demo(inv, demo_max);
    err << "no subcommand\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  }
}

}  // namespace malle::cli
