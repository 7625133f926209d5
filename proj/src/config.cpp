#include "malle/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace malle {

void RunConfig::validate() const {
  if (sieve_limit == 0 || oracle_budget == 0 || honest_n_cap == 0)
    throw std::domain_error("config: limits must be positive");
  if (honest_n_cap > 64)
    throw std::domain_error("config: honest_n_cap must be <= 64");
}

const char* output_mode_name(OutputMode m) {
  switch (m) {
    case OutputMode::json: return "json";
    case OutputMode::csv: return "csv";
    case OutputMode::human: return "human";
  }
  return "json";
}

OutputMode parse_output_mode(const std::string& name) {
  if (name == "json") return OutputMode::json;
  if (name == "csv") return OutputMode::csv;
  if (name == "human") return OutputMode::human;
  throw std::domain_error("config: unknown output mode '" + name + "'");
}

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::domain_error("config: bad value for " + key + ": '" + value + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "seed")
    cfg.seed = parse_u64(key, value);
  else if (key == "sieve_limit")
    cfg.sieve_limit = parse_u64(key, value);
  else if (key == "oracle_budget")
    cfg.oracle_budget = parse_u64(key, value);
  else if (key == "m_cap")
    cfg.m_cap = parse_u64(key, value);
  else if (key == "honest_n_cap")
    cfg.honest_n_cap = parse_u64(key, value);
  else if (key == "output")
    cfg.output = parse_output_mode(value);
  else
    throw std::domain_error("config: unknown key '" + key + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("config: cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::domain_error("config: expected key = value, got '" + t + "'");
    apply_config_entry(base, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  base.validate();
  return base;
}

std::optional<std::string> env_config_path() {
  const char* p = std::getenv(kConfigEnvVar);
  if (p && *p) return std::string(p);
  return std::nullopt;
}

}  // namespace malle
