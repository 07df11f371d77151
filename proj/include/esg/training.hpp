#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esg/env.hpp"
#include "esg/nets.hpp"
#include "esg/rollout.hpp"

namespace esg {

enum class Algorithm { IPPO, MAPPO, SumReward, AdAlign };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

// Hyperparameters. paper_defaults() carries the full-scale reproduction
// profile; desk_profile() is the documented reduced configuration used by CI
// and the stochastic acceptance checks.
struct TrainConfig {
  Algorithm algorithm = Algorithm::IPPO;
  bool self_play = false;
  long long total_env_steps = 70'000'000;
  int num_envs = 64;
  double discount = 0.99;
  double gae_lambda = 0.95;
  double policy_lr = 1e-4;
  double value_lr = 1e-4;
  double entropy_coef = 0.05;
  double clip_ratio = 0.2;
  double value_clip = 10.0;
  int ppo_epochs = 4;  // AdAlign uses 1
  int num_minibatches = 20;
  double grad_clip = 10.0;
  int hidden_size = 64;  // 256 available via config
  double adalign_beta = 0.2;
  double adalign_gamma = 0.9;
  double log_std_init = -1.0;
  std::uint64_t seed = 0;
  int checkpoint_every = 0;  // iterations between periodic checkpoints; 0 = final only

  void validate() const;  // throws ConfigError
  bool uses_self_play() const { return self_play || algorithm == Algorithm::AdAlign; }
  bool centralized_critic() const { return algorithm == Algorithm::MAPPO; }

  static TrainConfig paper_defaults(Algorithm a);
  static TrainConfig desk_profile(Algorithm a);
};

// delta_t = r_t + gamma * V_{t+1} * (1 - done_t) - V_t accumulated into
// exponentially weighted advantages; returns = advantages + values. The
// bootstrap beyond the horizon is zero.
void compute_gae(RolloutBuffer& buffer, double gamma, double gae_lambda);

// A*_i(t) = A_i(t) + beta * gamma_aa * (sum_{k<t} gamma_aa^{t-k} A_i(k)) *
//           sum_{j != i} A_j(t), with an incrementally maintained past sum
// (empty at t = 0). Results land in buffer.aligned.
void align_advantages(RolloutBuffer& buffer, double beta, double gamma_aa);

// Empirical mean over (env, t) of the discounted past-advantage sum, per
// agent: the cooperative-bias estimate b^i.
std::vector<double> cooperative_bias(const RolloutBuffer& buffer, double gamma_aa);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double policy_grad_norm = 0.0;
  long long minibatches = 0;
};

struct ParamSets {
  PolicyBank bank;
  std::vector<AdamState> actor_opt;
  std::vector<AdamState> critic_opt;
};

ParamSets make_param_sets(const EnvConfig& env_config, const AgentWiring& wiring,
                          const TrainConfig& config);

// One full pass of clipped-surrogate optimization over the buffer:
// ppo_epochs x num_minibatches minibatch updates per parameter set, with
// per-minibatch advantage normalization, clipped value loss, entropy bonus
// and global-norm gradient clipping. `use_aligned` selects buffer.aligned.
UpdateStats ppo_update(ParamSets& sets, const AgentWiring& wiring,
                       const RolloutBuffer& buffer, const TrainConfig& config,
                       std::uint64_t shuffle_seed, bool use_aligned);

struct MetricsRow {
  long long iteration = 0;
  long long env_steps = 0;
  double market_total_wealth = 0.0;
  double final_mitigation = 0.0;
  double climate_risk = 0.0;
  double gini_investment = 0.0;
  double gini_capital = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double bias_mean = 0.0;  // cooperative-bias estimate averaged over agents
};

class Trainer {
 public:
  Trainer(EnvConfig env_config, TrainConfig train_config);

  // One collect -> GAE -> (align) -> update cycle.
  const MetricsRow& iterate();
  void run();  // all remaining iterations

  long long iteration() const { return iteration_; }
  long long total_iterations() const { return total_iterations_; }
  bool finished() const { return iteration_ >= total_iterations_; }
  const std::vector<MetricsRow>& history() const { return history_; }
  const EnvConfig& env_config() const { return env_config_; }
  const TrainConfig& train_config() const { return train_config_; }
  const AgentWiring& wiring() const { return wiring_; }
  ParamSets& params() { return sets_; }
  const ParamSets& params() const { return sets_; }

  // Versioned binary dump of every parameter/optimizer tensor plus the
  // iteration counter; round-trips bit-exactly and supports mid-run resume.
  void save_checkpoint(const std::string& path) const;
  void load_checkpoint(const std::string& path);

 private:
  EnvConfig env_config_;
  TrainConfig train_config_;
  AgentWiring wiring_;
  ParamSets sets_;
  std::vector<MetricsRow> history_;
  long long iteration_ = 0;
  long long total_iterations_ = 0;
};

struct TrainResult {
  std::vector<MetricsRow> history;
};

// Convenience wrapper: full training loop, metrics history returned.
TrainResult train(const EnvConfig& env_config, const TrainConfig& train_config);

}  // namespace esg
