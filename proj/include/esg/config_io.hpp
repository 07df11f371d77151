#pragma once

#include <string>
#include <vector>

#include "esg/dilemma.hpp"
#include "esg/env.hpp"
#include "esg/training.hpp"

namespace esg {

inline constexpr int kEnvConfigSchemaVersion = 1;
inline constexpr int kTrainConfigSchemaVersion = 1;

// JSON round-trip for the two config types. Parsing is strict: a missing or
// wrong schema_version and any unknown key raise ConfigError naming the key,
// because silent typos in sweep configs are the main operational hazard.
EnvConfig env_config_from_json_text(const std::string& text);
EnvConfig load_env_config(const std::string& path);
std::string env_config_to_json(const EnvConfig& config);
void save_env_config(const EnvConfig& config, const std::string& path);

TrainConfig train_config_from_json_text(const std::string& text);
TrainConfig load_train_config(const std::string& path);
std::string train_config_to_json(const TrainConfig& config);
void save_train_config(const TrainConfig& config, const std::string& path);

// FNV-1a over the canonical JSON dumps; identifies a fully resolved run
// configuration in artifacts.
std::string config_hash(const EnvConfig& env, const TrainConfig& train);

// Grid description for the threshold analyzer; lives in an optional
// "analyzer" block of the env config file.
struct AnalyzerSpec {
  int t = 50;
  int num_lags = 0;  // 0 = all lags k in [0, t)
  std::vector<double> lambdas = {1.0};
  ExpectationMode mode = ExpectationMode::ExactEnumeration;
};
AnalyzerSpec load_analyzer_spec(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace esg
