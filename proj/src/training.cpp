#include "esg/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "esg/errors.hpp"
#include "esg/metrics.hpp"

namespace esg {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::IPPO: return "ippo";
    case Algorithm::MAPPO: return "mappo";
    case Algorithm::SumReward: return "sum_reward";
    case Algorithm::AdAlign: return "adalign";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "ippo") return Algorithm::IPPO;
  if (name == "mappo") return Algorithm::MAPPO;
  if (name == "sum_reward") return Algorithm::SumReward;
  if (name == "adalign") return Algorithm::AdAlign;
  throw ConfigError("invalid config field 'algorithm': unknown value '" + name + "'");
}

void TrainConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& what) {
    throw ConfigError("invalid config field '" + field + "': " + what);
  };
  if (total_env_steps < 1) bad("total_env_steps", "must be >= 1");
  if (num_envs < 1) bad("num_envs", "must be >= 1");
  if (!(discount >= 0.0 && discount <= 1.0)) bad("discount", "must be in [0,1]");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) bad("gae_lambda", "must be in [0,1]");
  if (!(policy_lr > 0.0)) bad("policy_lr", "must be > 0");
  if (!(value_lr > 0.0)) bad("value_lr", "must be > 0");
  if (entropy_coef < 0.0) bad("entropy_coef", "must be >= 0");
  if (!(clip_ratio > 0.0 && clip_ratio < 1.0)) bad("clip_ratio", "must be in (0,1)");
  if (!(value_clip > 0.0)) bad("value_clip", "must be > 0");
  if (ppo_epochs < 1) bad("ppo_epochs", "must be >= 1");
  if (num_minibatches < 1) bad("num_minibatches", "must be >= 1");
  if (!(grad_clip > 0.0)) bad("grad_clip", "must be > 0");
  if (hidden_size < 1) bad("hidden_size", "must be >= 1");
  if (adalign_beta < 0.0) bad("adalign_beta", "must be >= 0");
  if (!(adalign_gamma >= 0.0 && adalign_gamma <= 1.0))
    bad("adalign_gamma", "must be in [0,1]");
}

TrainConfig TrainConfig::paper_defaults(Algorithm a) {
  TrainConfig c;
  c.algorithm = a;
  c.total_env_steps = 70'000'000;
  c.num_envs = 64;
  c.discount = 0.99;
  c.gae_lambda = 0.95;
  c.policy_lr = 1e-4;
  c.value_lr = 1e-4;
  c.entropy_coef = 0.05;
  c.clip_ratio = 0.2;
  c.value_clip = 10.0;
  c.num_minibatches = 20;
  c.grad_clip = 10.0;
  c.hidden_size = 64;
  c.adalign_beta = 0.2;
  c.adalign_gamma = 0.9;
  if (a == Algorithm::AdAlign) {
    c.ppo_epochs = 1;
    c.self_play = true;
  } else {
    c.ppo_epochs = 4;
    c.self_play = false;
  }
  return c;
}

TrainConfig TrainConfig::desk_profile(Algorithm a) {
  TrainConfig c = paper_defaults(a);
  c.num_envs = 8;
  c.total_env_steps = 400'000;
  c.policy_lr = 3e-4;
  c.value_lr = 1e-3;
  c.entropy_coef = 0.01;
  c.num_minibatches = 8;
  return c;
}

void compute_gae(RolloutBuffer& b, double gamma, double gae_lambda) {
  for (int e = 0; e < b.num_envs; ++e) {
    for (int a = 0; a < b.num_agents; ++a) {
      double acc = 0.0;
      for (int t = b.steps - 1; t >= 0; --t) {
        const size_t idx = b.slot(e, t, a);
        const double nonterminal =
            b.done[static_cast<size_t>(e) * b.steps + t] ? 0.0 : 1.0;
        const double next_value =
            t + 1 < b.steps ? b.values[b.slot(e, t + 1, a)] : 0.0;
        const double delta =
            b.rewards[idx] + gamma * next_value * nonterminal - b.values[idx];
        acc = delta + gamma * gae_lambda * nonterminal * acc;
        b.advantages[idx] = acc;
        b.returns[idx] = acc + b.values[idx];
      }
    }
  }
}

void align_advantages(RolloutBuffer& b, double beta, double gamma_aa) {
  std::vector<double> past(static_cast<size_t>(b.num_agents));
  for (int e = 0; e < b.num_envs; ++e) {
    std::fill(past.begin(), past.end(), 0.0);
    for (int t = 0; t < b.steps; ++t) {
      double sum_all = 0.0;
      for (int a = 0; a < b.num_agents; ++a) sum_all += b.advantages[b.slot(e, t, a)];
      for (int a = 0; a < b.num_agents; ++a) {
        const size_t idx = b.slot(e, t, a);
        const double own = b.advantages[idx];
        const double others = sum_all - own;
        b.aligned[idx] = own + beta * gamma_aa * past[static_cast<size_t>(a)] * others;
      }
      for (int a = 0; a < b.num_agents; ++a)
        past[static_cast<size_t>(a)] =
            gamma_aa * (past[static_cast<size_t>(a)] + b.advantages[b.slot(e, t, a)]);
    }
  }
}

std::vector<double> cooperative_bias(const RolloutBuffer& b, double gamma_aa) {
  std::vector<double> bias(static_cast<size_t>(b.num_agents), 0.0);
  std::vector<double> past(static_cast<size_t>(b.num_agents));
  for (int e = 0; e < b.num_envs; ++e) {
    std::fill(past.begin(), past.end(), 0.0);
    for (int t = 0; t < b.steps; ++t) {
      for (int a = 0; a < b.num_agents; ++a) {
        bias[static_cast<size_t>(a)] += past[static_cast<size_t>(a)];
        past[static_cast<size_t>(a)] =
            gamma_aa * (past[static_cast<size_t>(a)] + b.advantages[b.slot(e, t, a)]);
      }
    }
  }
  const double inv = 1.0 / (static_cast<double>(b.num_envs) * b.steps);
  for (double& v : bias) v *= inv;
  return bias;
}

ParamSets make_param_sets(const EnvConfig& env_config, const AgentWiring& wiring,
                          const TrainConfig& config) {
  ParamSets sets;
  sets.bank = make_policy_bank(env_config, wiring, config.hidden_size,
                               config.log_std_init, hash_combine(config.seed, 0x1217));
  sets.actor_opt.resize(sets.bank.actors.size());
  sets.critic_opt.resize(sets.bank.critics.size());
  for (size_t i = 0; i < sets.bank.actors.size(); ++i)
    sets.actor_opt[i].init(sets.bank.actors[i].params.size());
  for (size_t i = 0; i < sets.bank.critics.size(); ++i)
    sets.critic_opt[i].init(sets.bank.critics[i].params.size());
  return sets;
}

namespace {

struct SampleRef {
  int env;
  int step;
  int agent;
};

void shuffle_samples(std::vector<SampleRef>& samples, Rng& rng) {
  for (size_t i = samples.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(samples[i - 1], samples[std::min(j, i - 1)]);
  }
}

constexpr double kHalfLog2Pi = 0.9189385332046727;

}  // namespace

UpdateStats ppo_update(ParamSets& sets, const AgentWiring& wiring,
                       const RolloutBuffer& buffer, const TrainConfig& config,
                       std::uint64_t shuffle_seed, bool use_aligned) {
  UpdateStats stats;
  const std::vector<double>& adv_source =
      use_aligned ? buffer.aligned : buffer.advantages;
  MlpTape tape;

  // ---- actors ----
  for (int set = 0; set < static_cast<int>(sets.bank.actors.size()); ++set) {
    Policy& policy = sets.bank.actors[static_cast<size_t>(set)];
    const int act_dim = policy.action_dim();
    std::vector<SampleRef> samples;
    for (int a = 0; a < buffer.num_agents; ++a) {
      if (wiring.actor_of_agent[static_cast<size_t>(a)] != set) continue;
      for (int e = 0; e < buffer.num_envs; ++e)
        for (int t = 0; t < buffer.steps; ++t) samples.push_back({e, t, a});
    }
    if (samples.empty()) continue;

    Rng shuffle_rng(hash_combine(shuffle_seed, static_cast<std::uint64_t>(set) * 2 + 1));
    std::vector<double> grad(policy.params.size());
    std::vector<double> mean(static_cast<size_t>(act_dim));
    std::vector<double> log_std(static_cast<size_t>(act_dim));
    std::vector<double> dmean(static_cast<size_t>(act_dim));

    for (int epoch = 0; epoch < config.ppo_epochs; ++epoch) {
      shuffle_samples(samples, shuffle_rng);
      const size_t n = samples.size();
      for (int mb = 0; mb < config.num_minibatches; ++mb) {
        const size_t lo = n * static_cast<size_t>(mb) / static_cast<size_t>(config.num_minibatches);
        const size_t hi =
            n * (static_cast<size_t>(mb) + 1) / static_cast<size_t>(config.num_minibatches);
        if (hi <= lo) continue;
        const double count = static_cast<double>(hi - lo);

        // per-minibatch advantage standardization
        double adv_mean = 0.0;
        for (size_t s = lo; s < hi; ++s) {
          const auto& r = samples[s];
          adv_mean += adv_source[buffer.slot(r.env, r.step, r.agent)];
        }
        adv_mean /= count;
        double adv_var = 0.0;
        for (size_t s = lo; s < hi; ++s) {
          const auto& r = samples[s];
          const double d = adv_source[buffer.slot(r.env, r.step, r.agent)] - adv_mean;
          adv_var += d * d;
        }
        const double adv_std = std::sqrt(adv_var / count);

        std::fill(grad.begin(), grad.end(), 0.0);
        double pg_loss = 0.0;
        double entropy_sum = 0.0;
        for (size_t s = lo; s < hi; ++s) {
          const auto& r = samples[s];
          const size_t idx = buffer.slot(r.env, r.step, r.agent);
          const double adv =
              (adv_source[idx] - adv_mean) / (adv_std + 1e-8);
          const double* obs = buffer.obs_at(r.env, r.step, r.agent);
          const double* z = buffer.act_at(r.env, r.step, r.agent);
          policy_forward(policy,
                         std::span<const double>(obs, static_cast<size_t>(buffer.obs_dim)),
                         tape, mean.data(), log_std.data());

          double new_logp = 0.0;
          for (int d = 0; d < act_dim; ++d) {
            const double sigma = std::exp(log_std[static_cast<size_t>(d)]);
            const double xi = (z[d] - mean[static_cast<size_t>(d)]) / sigma;
            new_logp += -0.5 * xi * xi - log_std[static_cast<size_t>(d)] - kHalfLog2Pi;
          }
          // The company head's squash correction depends only on the logged
          // draw, so it appears identically in the stored and the recomputed
          // log-probability.
          if (r.agent < buffer.num_companies)
            new_logp -= squash_log_det(z[0], buffer.max_mitigation);
          const double ratio = std::exp(new_logp - buffer.logp[idx]);
          const double clipped =
              std::clamp(ratio, 1.0 - config.clip_ratio, 1.0 + config.clip_ratio);
          const double l1 = -ratio * adv;
          const double l2 = -clipped * adv;
          const bool unclipped_active = l1 >= l2;
          pg_loss += std::max(l1, l2);

          const double coef = unclipped_active ? -ratio * adv : 0.0;
          double sample_entropy = 0.0;
          for (int d = 0; d < act_dim; ++d) {
            const auto di = static_cast<size_t>(d);
            const double sigma = std::exp(log_std[di]);
            const double xi = (z[d] - mean[di]) / sigma;
            dmean[di] = coef * (xi / sigma);
            const double raw = policy.log_std_raw()[d];
            const bool in_range =
                raw > policy.log_std_min && raw < policy.log_std_max;
            sample_entropy += log_std[di] + 0.5 + kHalfLog2Pi;
            if (in_range) {
              const double dlogp_dls = xi * xi - 1.0;
              grad[static_cast<size_t>(policy.dims.param_count()) + di] +=
                  (coef * dlogp_dls - config.entropy_coef) / count;
            }
          }
          entropy_sum += sample_entropy;
          for (int d = 0; d < act_dim; ++d) dmean[static_cast<size_t>(d)] /= count;
          mlp_backward(policy.dims, policy.mlp_w(), tape, dmean.data(), grad.data());
        }

        const double norm = clip_grad_norm(std::span<double>(grad), config.grad_clip);
        stats.policy_grad_norm += norm;
        stats.policy_loss += pg_loss / count;
        stats.entropy += entropy_sum / count;
        AdamConfig adam{config.policy_lr, 0.9, 0.999, 1e-8};
        try {
          adam_step(std::span<double>(policy.params), std::span<const double>(grad),
                    sets.actor_opt[static_cast<size_t>(set)], adam);
        } catch (const TrainingError& err) {
          std::ostringstream os;
          os << err.what() << " (actor set " << set << ", epoch " << epoch
             << ", minibatch " << mb << ")";
          throw TrainingError(os.str());
        }
        stats.minibatches += 1;
      }
    }
  }

  // ---- critics ----
  const int critic_obs_dim = wiring.centralized_critic
                                 ? sets.bank.critics.front().dims.in
                                 : buffer.obs_dim;
  for (int set = 0; set < static_cast<int>(sets.bank.critics.size()); ++set) {
    ValueNet& critic = sets.bank.critics[static_cast<size_t>(set)];
    std::vector<SampleRef> samples;
    for (int a = 0; a < buffer.num_agents; ++a) {
      if (wiring.critic_of_agent[static_cast<size_t>(a)] != set) continue;
      for (int e = 0; e < buffer.num_envs; ++e)
        for (int t = 0; t < buffer.steps; ++t) samples.push_back({e, t, a});
    }
    if (samples.empty()) continue;

    Rng shuffle_rng(hash_combine(shuffle_seed, static_cast<std::uint64_t>(set) * 2 + 2));
    std::vector<double> grad(critic.params.size());

    for (int epoch = 0; epoch < config.ppo_epochs; ++epoch) {
      shuffle_samples(samples, shuffle_rng);
      const size_t n = samples.size();
      for (int mb = 0; mb < config.num_minibatches; ++mb) {
        const size_t lo = n * static_cast<size_t>(mb) / static_cast<size_t>(config.num_minibatches);
        const size_t hi =
            n * (static_cast<size_t>(mb) + 1) / static_cast<size_t>(config.num_minibatches);
        if (hi <= lo) continue;
        const double count = static_cast<double>(hi - lo);

        std::fill(grad.begin(), grad.end(), 0.0);
        double v_loss = 0.0;
        for (size_t s = lo; s < hi; ++s) {
          const auto& r = samples[s];
          const size_t idx = buffer.slot(r.env, r.step, r.agent);
          const double* obs = buffer.obs_at(r.env, r.step, r.agent);
          const double v = value_forward(
              critic, std::span<const double>(obs, static_cast<size_t>(critic_obs_dim)),
              tape);
          const double ret = buffer.returns[idx];
          const double v_old = buffer.values[idx];
          const double raw_diff = v - ret;
          const double v_clipped =
              v_old + std::clamp(v - v_old, -config.value_clip, config.value_clip);
          const double clip_diff = v_clipped - ret;
          double dv;
          if (raw_diff * raw_diff >= clip_diff * clip_diff) {
            v_loss += 0.5 * raw_diff * raw_diff;
            dv = raw_diff;
          } else {
            v_loss += 0.5 * clip_diff * clip_diff;
            dv = std::abs(v - v_old) < config.value_clip ? clip_diff : 0.0;
          }
          const double dout = dv / count;
          mlp_backward(critic.dims, critic.params.data(), tape, &dout, grad.data());
        }

        clip_grad_norm(std::span<double>(grad), config.grad_clip);
        stats.value_loss += v_loss / count;
        AdamConfig adam{config.value_lr, 0.9, 0.999, 1e-8};
        try {
          adam_step(std::span<double>(critic.params), std::span<const double>(grad),
                    sets.critic_opt[static_cast<size_t>(set)], adam);
        } catch (const TrainingError& err) {
          std::ostringstream os;
          os << err.what() << " (critic set " << set << ", epoch " << epoch
             << ", minibatch " << mb << ")";
          throw TrainingError(os.str());
        }
      }
    }
  }

  if (stats.minibatches > 0) {
    stats.policy_loss /= static_cast<double>(stats.minibatches);
    stats.value_loss /= static_cast<double>(stats.minibatches);
    stats.entropy /= static_cast<double>(stats.minibatches);
    stats.policy_grad_norm /= static_cast<double>(stats.minibatches);
  }
  return stats;
}

Trainer::Trainer(EnvConfig env_config, TrainConfig train_config)
    : env_config_(std::move(env_config)), train_config_(train_config) {
  env_config_.validate();
  train_config_.validate();
  wiring_ = make_wiring(env_config_.num_companies, env_config_.num_investors,
                        train_config_.uses_self_play(), train_config_.centralized_critic());
  const long long batch =
      static_cast<long long>(train_config_.num_envs) * env_config_.episode_length;
  // Every parameter set sees at least num_envs * episode_length samples; more
  // minibatches than samples cannot be formed.
  if (train_config_.num_minibatches > batch)
    throw ConfigError(
        "invalid config field 'num_minibatches': exceeds the per-set batch size");
  sets_ = make_param_sets(env_config_, wiring_, train_config_);
  total_iterations_ = (train_config_.total_env_steps + batch - 1) / batch;
}

const MetricsRow& Trainer::iterate() {
  RolloutBuffer buffer =
      collect_rollouts(env_config_, sets_.bank, wiring_, train_config_.num_envs,
                       train_config_.seed, static_cast<std::uint64_t>(iteration_));

  if (train_config_.algorithm == Algorithm::SumReward) {
    for (int e = 0; e < buffer.num_envs; ++e) {
      for (int t = 0; t < buffer.steps; ++t) {
        double sum = 0.0;
        for (int a = 0; a < buffer.num_agents; ++a)
          sum += buffer.rewards[buffer.slot(e, t, a)];
        for (int a = 0; a < buffer.num_agents; ++a)
          buffer.rewards[buffer.slot(e, t, a)] = sum;
      }
    }
  }

  compute_gae(buffer, train_config_.discount, train_config_.gae_lambda);
  const std::vector<double> bias = cooperative_bias(buffer, train_config_.adalign_gamma);
  const bool aligned = train_config_.algorithm == Algorithm::AdAlign;
  if (aligned) {
    // The alignment product is quadratic in the advantage scale, so the raw
    // advantages are brought to unit variance first; beta then weighs the
    // shaping term against the plain advantage independent of reward units.
    // The per-minibatch standardization later in the update makes this
    // rescaling a no-op for the beta = 0 path.
    double mean = 0.0, sq = 0.0;
    for (double a : buffer.advantages) mean += a;
    mean /= static_cast<double>(buffer.advantages.size());
    for (double a : buffer.advantages) sq += (a - mean) * (a - mean);
    const double scale =
        1.0 / (std::sqrt(sq / static_cast<double>(buffer.advantages.size())) + 1e-8);
    for (double& a : buffer.advantages) a *= scale;
    align_advantages(buffer, train_config_.adalign_beta, train_config_.adalign_gamma);
  }

  UpdateStats stats = ppo_update(
      sets_, wiring_, buffer, train_config_,
      stream_seed(train_config_.seed, static_cast<std::uint64_t>(iteration_), 0x50F1),
      aligned);

  MetricsRow row;
  row.iteration = iteration_;
  const long long batch =
      static_cast<long long>(train_config_.num_envs) * env_config_.episode_length;
  row.env_steps = (iteration_ + 1) * batch;
  const double inv_envs = 1.0 / buffer.num_envs;
  for (int e = 0; e < buffer.num_envs; ++e) {
    row.market_total_wealth += buffer.episode_mtw[static_cast<size_t>(e)] * inv_envs;
    row.final_mitigation += buffer.episode_mitigation[static_cast<size_t>(e)] * inv_envs;
    row.climate_risk += buffer.episode_risk[static_cast<size_t>(e)] * inv_envs;
    const int M = env_config_.num_companies;
    std::vector<double> inv(buffer.episode_investment.begin() + e * M,
                            buffer.episode_investment.begin() + (e + 1) * M);
    std::vector<double> cap(buffer.episode_capital.begin() + e * M,
                            buffer.episode_capital.begin() + (e + 1) * M);
    row.gini_investment += gini_or_zero(inv) * inv_envs;
    row.gini_capital += gini_or_zero(cap) * inv_envs;
  }
  row.policy_loss = stats.policy_loss;
  row.value_loss = stats.value_loss;
  row.entropy = stats.entropy;
  double b = 0.0;
  for (double v : bias) b += v;
  row.bias_mean = b / static_cast<double>(bias.size());

  history_.push_back(row);
  iteration_ += 1;
  return history_.back();
}

void Trainer::run() {
  while (!finished()) iterate();
}

namespace {

void write_u64(std::ofstream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::ifstream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

void write_vec(std::ofstream& os, const std::vector<double>& v) {
  write_u64(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_vec(std::ifstream& is, std::vector<double>& v) {
  const std::uint64_t n = read_u64(is);
  if (n != v.size()) throw IoError("checkpoint: tensor size mismatch");
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

constexpr std::uint64_t kCheckpointMagic = 0x45534754524e3031ULL;  // "ESGTRN01"

}  // namespace

void Trainer::save_checkpoint(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write checkpoint: " + path);
  write_u64(os, kCheckpointMagic);
  write_u64(os, 1);  // format version
  write_u64(os, static_cast<std::uint64_t>(kObservationLayoutVersion));
  write_u64(os, static_cast<std::uint64_t>(iteration_));
  write_u64(os, sets_.bank.actors.size());
  write_u64(os, sets_.bank.critics.size());
  for (size_t i = 0; i < sets_.bank.actors.size(); ++i) {
    write_vec(os, sets_.bank.actors[i].params);
    write_vec(os, sets_.actor_opt[i].m);
    write_vec(os, sets_.actor_opt[i].v);
    write_u64(os, static_cast<std::uint64_t>(sets_.actor_opt[i].step));
  }
  for (size_t i = 0; i < sets_.bank.critics.size(); ++i) {
    write_vec(os, sets_.bank.critics[i].params);
    write_vec(os, sets_.critic_opt[i].m);
    write_vec(os, sets_.critic_opt[i].v);
    write_u64(os, static_cast<std::uint64_t>(sets_.critic_opt[i].step));
  }
  if (!os) throw IoError("failed while writing checkpoint: " + path);
}

void Trainer::load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read checkpoint: " + path);
  if (read_u64(is) != kCheckpointMagic) throw IoError("not a checkpoint file: " + path);
  if (read_u64(is) != 1) throw IoError("unsupported checkpoint version: " + path);
  if (read_u64(is) != static_cast<std::uint64_t>(kObservationLayoutVersion))
    throw IoError("checkpoint uses a different observation layout: " + path);
  iteration_ = static_cast<long long>(read_u64(is));
  if (read_u64(is) != sets_.bank.actors.size() ||
      read_u64(is) != sets_.bank.critics.size())
    throw IoError("checkpoint does not match the configured parameter sets");
  for (size_t i = 0; i < sets_.bank.actors.size(); ++i) {
    read_vec(is, sets_.bank.actors[i].params);
    read_vec(is, sets_.actor_opt[i].m);
    read_vec(is, sets_.actor_opt[i].v);
    sets_.actor_opt[i].step = static_cast<long>(read_u64(is));
  }
  for (size_t i = 0; i < sets_.bank.critics.size(); ++i) {
    read_vec(is, sets_.bank.critics[i].params);
    read_vec(is, sets_.critic_opt[i].m);
    read_vec(is, sets_.critic_opt[i].v);
    sets_.critic_opt[i].step = static_cast<long>(read_u64(is));
  }
  if (!is) throw IoError("failed while reading checkpoint: " + path);
}

TrainResult train(const EnvConfig& env_config, const TrainConfig& train_config) {
  Trainer trainer(env_config, train_config);
  trainer.run();
  return TrainResult{trainer.history()};
}

}  // namespace esg
