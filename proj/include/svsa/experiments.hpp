#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace svsa {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A registry-validated experiment request: id, seed, output directory and a
/// module-specific parameter record.
struct ExperimentConfig {
    std::string id;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string outdir; // empty means <output root>/<id>
    nlohmann::json params = nlohmann::json::object();

    /// Validates against the registry; throws ConfigError for unknown ids,
    /// bad parameters, or a missing seed on a stochastic experiment.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_toml_file(const std::string& path);
    nlohmann::json to_json() const;

    /// Canonical JSON fingerprint of (id, seed, params).
    std::string hash() const;
};

struct SummaryRecord {
    std::string id;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::map<std::string, double> metrics;
    std::map<std::string, bool> checks;
    double wall_time_s = 0.0;

    nlohmann::json to_json() const;
    bool all_checks_pass() const;
};

struct ExperimentInfo {
    std::string id;
    std::string description;
    bool stochastic = true;
};

const std::vector<ExperimentInfo>& experiment_registry();

/// SVSA_OUT overrides the output root; falls back to "out".
std::string resolve_output_root();

/// Runs the experiment, writing trace CSV, summary JSON, plot-data CSV and a
/// canonical config.json into the output directory (created if missing).
SummaryRecord run_experiment(const ExperimentConfig& config);

/// Runs one experiment config across a seed range, one output directory per
/// seed, optionally in parallel.
std::vector<SummaryRecord> run_sweep(const ExperimentConfig& base, std::uint64_t seed_begin,
                                     std::uint64_t seed_end, unsigned jobs = 1);

} // namespace svsa
