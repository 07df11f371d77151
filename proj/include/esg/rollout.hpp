#pragma once

#include <cstdint>
#include <vector>

#include "esg/env.hpp"
#include "esg/nets.hpp"

namespace esg {

// Maps agents onto parameter sets. Under self-play all companies share one
// actor/critic pair and all investors another; otherwise every agent owns its
// pair. Centralized critics consume only the shared global block of the
// observation.
struct AgentWiring {
  std::vector<int> actor_of_agent;
  std::vector<int> critic_of_agent;
  bool centralized_critic = false;

  int num_actor_sets() const;
  int num_critic_sets() const;
};

AgentWiring make_wiring(int num_companies, int num_investors, bool self_play,
                        bool centralized_critic);

struct PolicyBank {
  std::vector<Policy> actors;
  std::vector<ValueNet> critics;
};

PolicyBank make_policy_bank(const EnvConfig& env_config, const AgentWiring& wiring,
                            int hidden, double log_std_init, std::uint64_t seed);

// Trajectories of one iteration: full fixed-length episodes from every
// environment instance, env-major so parallel writers never share a slot.
struct RolloutBuffer {
  int num_envs = 0;
  int steps = 0;
  int num_agents = 0;
  int num_companies = 0;  // agents [0, num_companies) are companies
  int obs_dim = 0;
  double max_mitigation = 1.0;  // action-space bound the logged actions used
  std::vector<int> act_dim;     // per agent
  std::vector<int> act_offset;  // prefix sum of act_dim
  int total_act = 0;

  std::vector<double> obs;      // [env][step][agent][obs_dim]
  std::vector<double> actions;  // [env][step][total_act], raw Gaussian draws
  std::vector<double> logp;     // [env][step][agent]
  std::vector<double> rewards;  // [env][step][agent]
  std::vector<double> values;   // [env][step][agent]
  std::vector<std::uint8_t> done;  // [env][step]
  std::vector<double> advantages;  // [env][step][agent]
  std::vector<double> returns;     // [env][step][agent]
  std::vector<double> aligned;     // [env][step][agent]

  // episode summaries, one episode per env
  std::vector<double> episode_mtw;
  std::vector<double> episode_mitigation;
  std::vector<double> episode_risk;
  std::vector<double> episode_investment;  // [env][company]
  std::vector<double> episode_capital;     // [env][company]

  size_t slot(int e, int t, int a) const {
    return (static_cast<size_t>(e) * steps + t) * num_agents + a;
  }
  double* obs_at(int e, int t, int a) {
    return obs.data() + slot(e, t, a) * obs_dim;
  }
  const double* obs_at(int e, int t, int a) const {
    return obs.data() + slot(e, t, a) * obs_dim;
  }
  double* act_at(int e, int t, int a) {
    return actions.data() + (static_cast<size_t>(e) * steps + t) * total_act +
           act_offset[static_cast<size_t>(a)];
  }
  const double* act_at(int e, int t, int a) const {
    return actions.data() + (static_cast<size_t>(e) * steps + t) * total_act +
           act_offset[static_cast<size_t>(a)];
  }
};

// Collects full episodes from `num_envs` independent environment instances.
// Every instance owns its RNG streams (derived from run_seed and iteration),
// so the result is identical regardless of scheduling; the parallel variant
// fans the loop out with OpenMP and the serial variant is the reference the
// tests compare against.
RolloutBuffer collect_rollouts(const EnvConfig& env_config, const PolicyBank& bank,
                               const AgentWiring& wiring, int num_envs,
                               std::uint64_t run_seed, std::uint64_t iteration);
RolloutBuffer collect_rollouts_serial(const EnvConfig& env_config,
                                      const PolicyBank& bank, const AgentWiring& wiring,
                                      int num_envs, std::uint64_t run_seed,
                                      std::uint64_t iteration);

}  // namespace esg
