#include "esg/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "esg/errors.hpp"

namespace esg {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

void check_schema(const json& obj, int expected, const std::string& where) {
  if (!obj.contains("schema_version"))
    throw ConfigError("missing 'schema_version' in " + where);
  if (obj.at("schema_version").get<int>() != expected) {
    std::ostringstream os;
    os << where << ": schema_version must be " << expected;
    throw ConfigError(os.str());
  }
}

// Accepts either a scalar (broadcast) or an array of exactly `n` numbers.
std::vector<double> broadcast(const json& value, int n, const std::string& field) {
  std::vector<double> out;
  if (value.is_number()) {
    out.assign(static_cast<size_t>(n), value.get<double>());
  } else if (value.is_array()) {
    out = value.get<std::vector<double>>();
    if (static_cast<int>(out.size()) != n)
      throw ConfigError("invalid config field '" + field + "': expected " +
                        std::to_string(n) + " entries");
  } else {
    throw ConfigError("invalid config field '" + field + "': number or array expected");
  }
  return out;
}

json parse(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON in " + where);
  return j;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open file: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write file: " + path);
  os << text;
  if (!os) throw IoError("failed while writing file: " + path);
}

EnvConfig env_config_from_json_text(const std::string& text) {
  const json j = parse(text, "env config");
  check_schema(j, kEnvConfigSchemaVersion, "env config");
  check_keys(j,
             {"schema_version", "num_companies", "num_investors", "episode_length",
              "alpha", "event_params", "loss_coefficients", "market_growth",
              "max_mitigation", "initial_company_capital", "initial_investor_cash",
              "esg_weights", "analyzer"},
             "env config");
  EnvConfig c;
  if (j.contains("num_companies")) c.num_companies = j.at("num_companies").get<int>();
  if (j.contains("num_investors")) c.num_investors = j.at("num_investors").get<int>();
  if (j.contains("episode_length")) c.episode_length = j.at("episode_length").get<int>();
  if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
  if (j.contains("event_params")) {
    const json& ev = j.at("event_params");
    check_keys(ev, {"heat", "precipitation", "drought"}, "event_params");
    for (int e = 0; e < kNumEventTypes; ++e) {
      if (!ev.contains(kEventNames[e])) continue;
      const json& one = ev.at(kEventNames[e]);
      check_keys(one, {"mu", "lambda_tilde", "p0"},
                 std::string("event_params.") + kEventNames[e]);
      auto& dst = c.events[static_cast<size_t>(e)];
      if (one.contains("mu")) dst.mu = one.at("mu").get<double>();
      if (one.contains("lambda_tilde")) dst.lambda_tilde = one.at("lambda_tilde").get<double>();
      if (one.contains("p0")) dst.p0 = one.at("p0").get<double>();
    }
  }
  if (j.contains("loss_coefficients"))
    c.loss_coefficients = broadcast(j.at("loss_coefficients"), c.num_companies,
                                    "loss_coefficients");
  else
    c.loss_coefficients.assign(static_cast<size_t>(c.num_companies), 0.1);
  if (j.contains("market_growth")) c.market_growth = j.at("market_growth").get<double>();
  if (j.contains("max_mitigation")) c.max_mitigation = j.at("max_mitigation").get<double>();
  if (j.contains("initial_company_capital"))
    c.initial_company_capital = broadcast(j.at("initial_company_capital"),
                                          c.num_companies, "initial_company_capital");
  else
    c.initial_company_capital.assign(static_cast<size_t>(c.num_companies), 20.0);
  if (j.contains("initial_investor_cash"))
    c.initial_investor_cash = broadcast(j.at("initial_investor_cash"), c.num_investors,
                                        "initial_investor_cash");
  else
    c.initial_investor_cash.assign(static_cast<size_t>(c.num_investors), 20.0);
  if (j.contains("esg_weights"))
    c.esg_weights = broadcast(j.at("esg_weights"), c.num_investors, "esg_weights");
  else
    c.esg_weights.assign(static_cast<size_t>(c.num_investors), 0.0);
  c.validate();
  return c;
}

EnvConfig load_env_config(const std::string& path) {
  try {
    return env_config_from_json_text(read_text_file(path));
  } catch (const ConfigError& err) {
    throw ConfigError(path + ": " + err.what());
  } catch (const IoError& err) {
    throw ConfigError(err.what());
  }
}

std::string env_config_to_json(const EnvConfig& c) {
  json j;
  j["schema_version"] = kEnvConfigSchemaVersion;
  j["num_companies"] = c.num_companies;
  j["num_investors"] = c.num_investors;
  j["episode_length"] = c.episode_length;
  j["alpha"] = c.alpha;
  for (int e = 0; e < kNumEventTypes; ++e) {
    const auto& ev = c.events[static_cast<size_t>(e)];
    j["event_params"][kEventNames[e]] = {
        {"mu", ev.mu}, {"lambda_tilde", ev.lambda_tilde}, {"p0", ev.p0}};
  }
  j["loss_coefficients"] = c.loss_coefficients;
  j["market_growth"] = c.market_growth;
  j["max_mitigation"] = c.max_mitigation;
  j["initial_company_capital"] = c.initial_company_capital;
  j["initial_investor_cash"] = c.initial_investor_cash;
  j["esg_weights"] = c.esg_weights;
  return j.dump(2) + "\n";
}

void save_env_config(const EnvConfig& config, const std::string& path) {
  write_text_file(path, env_config_to_json(config));
}

TrainConfig train_config_from_json_text(const std::string& text) {
  const json j = parse(text, "train config");
  check_schema(j, kTrainConfigSchemaVersion, "train config");
  check_keys(j,
             {"schema_version", "algorithm", "self_play", "total_env_steps", "num_envs",
              "discount", "gae_lambda", "policy_lr", "value_lr", "entropy_coef",
              "clip_ratio", "value_clip", "ppo_epochs", "num_minibatches", "grad_clip",
              "hidden_size", "adalign_beta", "adalign_gamma", "log_std_init", "seed",
              "checkpoint_every"},
             "train config");
  TrainConfig c;
  if (j.contains("algorithm"))
    c.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  c = TrainConfig::paper_defaults(c.algorithm);
  if (j.contains("self_play")) c.self_play = j.at("self_play").get<bool>();
  if (j.contains("total_env_steps"))
    c.total_env_steps = j.at("total_env_steps").get<long long>();
  if (j.contains("num_envs")) c.num_envs = j.at("num_envs").get<int>();
  if (j.contains("discount")) c.discount = j.at("discount").get<double>();
  if (j.contains("gae_lambda")) c.gae_lambda = j.at("gae_lambda").get<double>();
  if (j.contains("policy_lr")) c.policy_lr = j.at("policy_lr").get<double>();
  if (j.contains("value_lr")) c.value_lr = j.at("value_lr").get<double>();
  if (j.contains("entropy_coef")) c.entropy_coef = j.at("entropy_coef").get<double>();
  if (j.contains("clip_ratio")) c.clip_ratio = j.at("clip_ratio").get<double>();
  if (j.contains("value_clip")) c.value_clip = j.at("value_clip").get<double>();
  if (j.contains("ppo_epochs")) c.ppo_epochs = j.at("ppo_epochs").get<int>();
  if (j.contains("num_minibatches"))
    c.num_minibatches = j.at("num_minibatches").get<int>();
  if (j.contains("grad_clip")) c.grad_clip = j.at("grad_clip").get<double>();
  if (j.contains("hidden_size")) c.hidden_size = j.at("hidden_size").get<int>();
  if (j.contains("adalign_beta")) c.adalign_beta = j.at("adalign_beta").get<double>();
  if (j.contains("adalign_gamma")) c.adalign_gamma = j.at("adalign_gamma").get<double>();
  if (j.contains("log_std_init")) c.log_std_init = j.at("log_std_init").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("checkpoint_every"))
    c.checkpoint_every = j.at("checkpoint_every").get<int>();
  c.validate();
  return c;
}

TrainConfig load_train_config(const std::string& path) {
  try {
    return train_config_from_json_text(read_text_file(path));
  } catch (const ConfigError& err) {
    throw ConfigError(path + ": " + err.what());
  } catch (const IoError& err) {
    throw ConfigError(err.what());
  }
}

std::string train_config_to_json(const TrainConfig& c) {
  json j;
  j["schema_version"] = kTrainConfigSchemaVersion;
  j["algorithm"] = to_string(c.algorithm);
  j["self_play"] = c.self_play;
  j["total_env_steps"] = c.total_env_steps;
  j["num_envs"] = c.num_envs;
  j["discount"] = c.discount;
  j["gae_lambda"] = c.gae_lambda;
  j["policy_lr"] = c.policy_lr;
  j["value_lr"] = c.value_lr;
  j["entropy_coef"] = c.entropy_coef;
  j["clip_ratio"] = c.clip_ratio;
  j["value_clip"] = c.value_clip;
  j["ppo_epochs"] = c.ppo_epochs;
  j["num_minibatches"] = c.num_minibatches;
  j["grad_clip"] = c.grad_clip;
  j["hidden_size"] = c.hidden_size;
  j["adalign_beta"] = c.adalign_beta;
  j["adalign_gamma"] = c.adalign_gamma;
  j["log_std_init"] = c.log_std_init;
  j["seed"] = c.seed;
  j["checkpoint_every"] = c.checkpoint_every;
  return j.dump(2) + "\n";
}

void save_train_config(const TrainConfig& config, const std::string& path) {
  write_text_file(path, train_config_to_json(config));
}

std::string config_hash(const EnvConfig& env, const TrainConfig& train) {
  const std::string text = env_config_to_json(env) + train_config_to_json(train);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

AnalyzerSpec load_analyzer_spec(const std::string& path) {
  const json j = parse(read_text_file(path), path);
  AnalyzerSpec spec;
  if (!j.contains("analyzer")) return spec;
  const json& a = j.at("analyzer");
  check_keys(a, {"t", "num_lags", "lambdas", "mode"}, "analyzer");
  if (a.contains("t")) spec.t = a.at("t").get<int>();
  if (a.contains("num_lags")) spec.num_lags = a.at("num_lags").get<int>();
  if (a.contains("lambdas")) spec.lambdas = a.at("lambdas").get<std::vector<double>>();
  if (a.contains("mode")) {
    const std::string mode = a.at("mode").get<std::string>();
    if (mode == "enumeration")
      spec.mode = ExpectationMode::ExactEnumeration;
    else if (mode == "bernoulli")
      spec.mode = ExpectationMode::BernoulliApprox;
    else
      throw ConfigError("analyzer.mode must be 'enumeration' or 'bernoulli'");
  }
  if (spec.t < 1) throw ConfigError("analyzer.t must be >= 1");
  if (spec.lambdas.empty()) throw ConfigError("analyzer.lambdas must be non-empty");
  return spec;
}

}  // namespace esg
