#include "esg/rollout.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "esg/errors.hpp"
#include "esg/metrics.hpp"

namespace esg {

int AgentWiring::num_actor_sets() const {
  return 1 + *std::max_element(actor_of_agent.begin(), actor_of_agent.end());
}

int AgentWiring::num_critic_sets() const {
  return 1 + *std::max_element(critic_of_agent.begin(), critic_of_agent.end());
}

AgentWiring make_wiring(int num_companies, int num_investors, bool self_play,
                        bool centralized_critic) {
  AgentWiring w;
  w.centralized_critic = centralized_critic;
  const int agents = num_companies + num_investors;
  w.actor_of_agent.resize(static_cast<size_t>(agents));
  for (int a = 0; a < agents; ++a) {
    if (self_play)
      w.actor_of_agent[static_cast<size_t>(a)] = a < num_companies ? 0 : 1;
    else
      w.actor_of_agent[static_cast<size_t>(a)] = a;
  }
  w.critic_of_agent = w.actor_of_agent;
  return w;
}

PolicyBank make_policy_bank(const EnvConfig& env_config, const AgentWiring& wiring,
                            int hidden, double log_std_init, std::uint64_t seed) {
  const int M = env_config.num_companies;
  const int N = env_config.num_investors;
  const int obs_dim = Environment::observation_size(M, N);
  const int critic_dim =
      wiring.centralized_critic ? Environment::global_size(M, N) : obs_dim;
  PolicyBank bank;
  bank.actors.resize(static_cast<size_t>(wiring.num_actor_sets()));
  bank.critics.resize(static_cast<size_t>(wiring.num_critic_sets()));
  const int agents = M + N;
  for (int a = 0; a < agents; ++a) {
    const int act_dim = a < M ? 1 : M;
    const int set = wiring.actor_of_agent[static_cast<size_t>(a)];
    if (bank.actors[static_cast<size_t>(set)].params.empty()) {
      Policy policy(obs_dim, hidden, act_dim, log_std_init);
      Rng rng(hash_combine(seed, static_cast<std::uint64_t>(set) * 2 + 1));
      policy.init(rng);
      if (a < M) {
        // A zero-centered tanh head would start companies at u ~ u_bar/2,
        // burning half their capital every step. Bias the initial mean toward
        // (but not onto) the low end of the mitigation range.
        policy.mlp_w()[policy.dims.b3()] = -2.0;
      }
      bank.actors[static_cast<size_t>(set)] = std::move(policy);
    }
    const int cset = wiring.critic_of_agent[static_cast<size_t>(a)];
    if (bank.critics[static_cast<size_t>(cset)].params.empty()) {
      bank.critics[static_cast<size_t>(cset)] = ValueNet(critic_dim, hidden);
      Rng rng(hash_combine(seed, static_cast<std::uint64_t>(cset) * 2 + 2));
      bank.critics[static_cast<size_t>(cset)].init(rng);
    }
  }
  return bank;
}

namespace {

RolloutBuffer make_buffer(const EnvConfig& cfg, int num_envs) {
  const int M = cfg.num_companies;
  const int N = cfg.num_investors;
  RolloutBuffer b;
  b.num_envs = num_envs;
  b.steps = cfg.episode_length;
  b.num_agents = M + N;
  b.num_companies = M;
  b.obs_dim = Environment::observation_size(M, N);
  b.max_mitigation = cfg.max_mitigation;
  b.act_dim.resize(static_cast<size_t>(b.num_agents));
  b.act_offset.resize(static_cast<size_t>(b.num_agents));
  int off = 0;
  for (int a = 0; a < b.num_agents; ++a) {
    b.act_dim[static_cast<size_t>(a)] = a < M ? 1 : M;
    b.act_offset[static_cast<size_t>(a)] = off;
    off += b.act_dim[static_cast<size_t>(a)];
  }
  b.total_act = off;
  const size_t cells = static_cast<size_t>(num_envs) * b.steps * b.num_agents;
  b.obs.resize(cells * b.obs_dim);
  b.actions.resize(static_cast<size_t>(num_envs) * b.steps * b.total_act);
  b.logp.resize(cells);
  b.rewards.resize(cells);
  b.values.resize(cells);
  b.done.assign(static_cast<size_t>(num_envs) * b.steps, 0);
  b.advantages.assign(cells, 0.0);
  b.returns.assign(cells, 0.0);
  b.aligned.assign(cells, 0.0);
  b.episode_mtw.resize(static_cast<size_t>(num_envs));
  b.episode_mitigation.resize(static_cast<size_t>(num_envs));
  b.episode_risk.resize(static_cast<size_t>(num_envs));
  b.episode_investment.resize(static_cast<size_t>(num_envs) * M);
  b.episode_capital.resize(static_cast<size_t>(num_envs) * M);
  return b;
}

void rollout_one_env(const EnvConfig& cfg, const PolicyBank& bank,
                     const AgentWiring& wiring, int env_index, std::uint64_t run_seed,
                     std::uint64_t iteration, RolloutBuffer& buffer) {
  const int M = cfg.num_companies;
  const int N = cfg.num_investors;
  const int agents = M + N;
  const int global_dim = Environment::global_size(M, N);

  Environment env(cfg);
  env.reset(stream_seed(run_seed, iteration, static_cast<std::uint64_t>(env_index) * 2));
  Rng action_rng(
      stream_seed(run_seed, iteration, static_cast<std::uint64_t>(env_index) * 2 + 1));

  MlpTape tape;
  std::vector<double> mean(static_cast<size_t>(M));
  std::vector<double> log_std(static_cast<size_t>(M));
  JointAction action;
  action.mitigation.resize(static_cast<size_t>(M));
  action.portfolio.resize(static_cast<size_t>(N) * M);
  StepOutcome outcome;

  for (int t = 0; t < cfg.episode_length; ++t) {
    for (int a = 0; a < agents; ++a) {
      double* obs = buffer.obs_at(env_index, t, a);
      env.write_observation(a, obs);
      const int dim = buffer.act_dim[static_cast<size_t>(a)];
      const Policy& actor =
          bank.actors[static_cast<size_t>(wiring.actor_of_agent[static_cast<size_t>(a)])];
      policy_forward(actor, std::span<const double>(obs, static_cast<size_t>(buffer.obs_dim)),
                     tape, mean.data(), log_std.data());
      GaussianSample sample = sample_and_logprob(
          std::span<const double>(mean.data(), static_cast<size_t>(dim)),
          std::span<const double>(log_std.data(), static_cast<size_t>(dim)), action_rng);
      double logp = sample.log_prob;
      if (a < M) {
        action.mitigation[static_cast<size_t>(a)] =
            squash_mitigation(sample.value[0], cfg.max_mitigation);
        logp -= squash_log_det(sample.value[0], cfg.max_mitigation);
      } else {
        const int j = a - M;
        for (int i = 0; i < M; ++i)
          action.portfolio[static_cast<size_t>(j) * M + i] =
              portfolio_bit(sample.value[static_cast<size_t>(i)]) ? 1 : 0;
      }
      std::copy(sample.value.begin(), sample.value.end(), buffer.act_at(env_index, t, a));
      buffer.logp[buffer.slot(env_index, t, a)] = logp;

      const ValueNet& critic =
          bank.critics[static_cast<size_t>(wiring.critic_of_agent[static_cast<size_t>(a)])];
      const int critic_dim = wiring.centralized_critic ? global_dim : buffer.obs_dim;
      buffer.values[buffer.slot(env_index, t, a)] = value_forward(
          critic, std::span<const double>(obs, static_cast<size_t>(critic_dim)), tape);
    }
    env.step(action, outcome);
    for (int a = 0; a < agents; ++a)
      buffer.rewards[buffer.slot(env_index, t, a)] = outcome.rewards[static_cast<size_t>(a)];
    buffer.done[static_cast<size_t>(env_index) * buffer.steps + t] = outcome.done ? 1 : 0;
  }

  const EnvState& st = env.state();
  buffer.episode_mtw[static_cast<size_t>(env_index)] = market_total_wealth(st, cfg);
  buffer.episode_mitigation[static_cast<size_t>(env_index)] = st.cumulative_mitigation;
  buffer.episode_risk[static_cast<size_t>(env_index)] = st.total_risk;
  for (int i = 0; i < M; ++i) {
    buffer.episode_investment[static_cast<size_t>(env_index) * M + i] =
        st.company_investment[static_cast<size_t>(i)];
    buffer.episode_capital[static_cast<size_t>(env_index) * M + i] =
        st.company_capital[static_cast<size_t>(i)];
  }
}

}  // namespace

RolloutBuffer collect_rollouts(const EnvConfig& env_config, const PolicyBank& bank,
                               const AgentWiring& wiring, int num_envs,
                               std::uint64_t run_seed, std::uint64_t iteration) {
  if (num_envs < 1) throw ConfigError("invalid config field 'num_envs': must be >= 1");
  RolloutBuffer buffer = make_buffer(env_config, num_envs);
  // Exceptions must not unwind out of the parallel region; the first failure
  // is rethrown afterwards annotated with its environment index.
  std::exception_ptr failure;
  int failed_env = -1;
#pragma omp parallel for schedule(static)
  for (int e = 0; e < num_envs; ++e) {
    try {
      rollout_one_env(env_config, bank, wiring, e, run_seed, iteration, buffer);
    } catch (...) {
#pragma omp critical
      if (!failure) {
        failure = std::current_exception();
        failed_env = e;
      }
    }
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& err) {
      std::ostringstream os;
      os << "rollout env " << failed_env << ": " << err.what();
      throw ActionError(os.str());
    }
  }
  return buffer;
}

RolloutBuffer collect_rollouts_serial(const EnvConfig& env_config,
                                      const PolicyBank& bank, const AgentWiring& wiring,
                                      int num_envs, std::uint64_t run_seed,
                                      std::uint64_t iteration) {
  if (num_envs < 1) throw ConfigError("invalid config field 'num_envs': must be >= 1");
  RolloutBuffer buffer = make_buffer(env_config, num_envs);
  for (int e = 0; e < num_envs; ++e)
    rollout_one_env(env_config, bank, wiring, e, run_seed, iteration, buffer);
  return buffer;
}

}  // namespace esg
