// Experiment configuration: parsing, defaults, validation, and the
// canonical hash that stamps every output row.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace levydim {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
    std::string kind; // simulate | dimension | tailindex | synth-gap | mlp-gap | bound
    nlohmann::json params = nlohmann::json::object(); // resolved, defaults filled
    std::uint64_t seed = 1;
    int repetitions = 1;
    int threads = 1;
    std::string out_dir = "out";
    std::string format = "csv"; // csv | json
};

// Fully resolved defaults for one experiment kind.
ExperimentConfig default_experiment_config(const std::string& kind);

// Parses a config document ({"kind": ..., "seed": ..., "params": {...}}),
// fills defaults, and validates every parameter against the target module's
// invariants (dry-running the bound calculators, constructing stable specs,
// and so on).  Throws ConfigError with an explanatory message.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);

// Canonical JSON rendering (sorted keys, shortest float form); two configs
// hash equal iff this string is equal.
std::string canonical_config_json(const ExperimentConfig& config);

// FNV-1a of the canonical rendering, as 16 hex digits.
std::string config_hash_hex(const ExperimentConfig& config);

} // namespace levydim
