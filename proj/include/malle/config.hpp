#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "malle/numtheory.hpp"

namespace malle {

enum class OutputMode { json, csv, human };

struct RunConfig {
  std::uint64_t seed = 42;
  std::uint64_t sieve_limit = nt::kDefaultSieveLimit;
  std::uint64_t oracle_budget = nt::kDefaultFactorBudget;
  std::uint64_t m_cap = 0;  // 0 derives the cap from n
  std::uint64_t honest_n_cap = 64;
  OutputMode output = OutputMode::json;

  void validate() const;  // throws std::domain_error on bad limits
};

/// Name of the environment variable holding the default config path.
inline constexpr const char* kConfigEnvVar = "MALLE_CONFIG";

/// Applies one `key = value` setting; throws std::domain_error for unknown
/// keys or unparsable values.
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

/// Reads a simple key = value file ('#' comments, blank lines allowed).
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Path from $MALLE_CONFIG, when set and nonempty.
std::optional<std::string> env_config_path();

const char* output_mode_name(OutputMode m);
OutputMode parse_output_mode(const std::string& name);

}  // namespace malle
