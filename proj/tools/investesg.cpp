// Experiment driver: seeded training runs, fixed-policy simulation, alpha
// sweeps, analytic threshold reports, Schelling curves and metric summaries.
// All outputs are CSV (schemas documented in the README) plus the fully
// resolved configs for reproducibility.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esg/config_io.hpp"
#include "esg/dilemma.hpp"
#include "esg/env.hpp"
#include "esg/errors.hpp"
#include "esg/metrics.hpp"
#include "esg/rollout.hpp"
#include "esg/training.hpp"

namespace fs = std::filesystem;
using namespace esg;

namespace {

constexpr int kSummarySchemaVersion = 1;

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;
constexpr int kExitPartialFailure = 4;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

fs::path default_out_root() {
  if (const char* env = std::getenv("INVESTESG_OUT")) return fs::path(env);
  return fs::path("runs");
}

struct RunPaths {
  fs::path dir;
  fs::path metrics;
  fs::path checkpoint;
  fs::path summary;
};

RunPaths run_paths(const fs::path& out, const std::string& name) {
  RunPaths p;
  p.dir = out / name;
  p.metrics = p.dir / "metrics.csv";
  p.checkpoint = p.dir / "checkpoint.bin";
  p.summary = p.dir / "summary.csv";
  return p;
}

std::string run_name(Algorithm algo, const EnvConfig& env, std::uint64_t seed) {
  std::ostringstream os;
  os << to_string(algo) << "_alpha" << env.alpha;
  double esg = 0.0;
  for (double w : env.esg_weights) esg = std::max(esg, w);
  if (esg > 0.0) os << "_esg" << esg;
  os << "_seed" << seed;
  return os.str();
}

const char* metrics_header() {
  return "iteration,env_steps,seed,algorithm,market_total_wealth,final_mitigation,"
         "climate_risk,gini_investment,gini_capital,policy_loss,value_loss,entropy,"
         "bias_mean";
}

void write_metrics_row(std::ofstream& os, const MetricsRow& row, std::uint64_t seed,
                       Algorithm algo) {
  os << row.iteration << ',' << row.env_steps << ',' << seed << ',' << to_string(algo)
     << ',' << fmt(row.market_total_wealth) << ',' << fmt(row.final_mitigation) << ','
     << fmt(row.climate_risk) << ',' << fmt(row.gini_investment) << ','
     << fmt(row.gini_capital) << ',' << fmt(row.policy_loss) << ','
     << fmt(row.value_loss) << ',' << fmt(row.entropy) << ',' << fmt(row.bias_mean)
     << '\n';
}

// Drops metrics rows at or past `from_iteration` so a resumed run appends a
// contiguous history.
void truncate_metrics(const fs::path& path, long long from_iteration) {
  if (!fs::exists(path)) return;
  std::ifstream is(path);
  std::vector<std::string> keep;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (keep.empty()) {
      keep.push_back(line);  // header
      continue;
    }
    const long long iter = std::stoll(line.substr(0, line.find(',')));
    if (iter < from_iteration) keep.push_back(line);
  }
  std::ofstream os(path, std::ios::trunc);
  for (const auto& l : keep) os << l << '\n';
}

// Mean episode summary of the trained policies over one evaluation batch;
// fills the per-agent undiscounted returns as well.
RunSummary evaluate_policies(const EnvConfig& env_cfg, const TrainConfig& train_cfg,
                             const Trainer& trainer) {
  // episode-level wealth has heavy variance (climate shocks hit the whole
  // economy at once), so the summary averages a larger evaluation batch
  const int eval_envs = std::max(64, train_cfg.num_envs);
  RolloutBuffer buf =
      collect_rollouts(env_cfg, trainer.params().bank, trainer.wiring(), eval_envs,
                       hash_combine(train_cfg.seed, 0xE7A1), 1u << 20);
  RunSummary s;
  s.seed = train_cfg.seed;
  s.config_hash = config_hash(env_cfg, train_cfg);
  const double inv = 1.0 / buf.num_envs;
  s.agent_returns.assign(static_cast<size_t>(buf.num_agents), 0.0);
  std::vector<double> cell(static_cast<size_t>(env_cfg.num_companies));
  for (int e = 0; e < buf.num_envs; ++e) {
    s.market_total_wealth += buf.episode_mtw[e] * inv;
    s.final_mitigation += buf.episode_mitigation[e] * inv;
    s.final_climate_risk += buf.episode_risk[e] * inv;
    for (int i = 0; i < env_cfg.num_companies; ++i)
      cell[i] = buf.episode_investment[e * env_cfg.num_companies + i];
    s.gini_investment += gini_or_zero(cell) * inv;
    for (int i = 0; i < env_cfg.num_companies; ++i)
      cell[i] = buf.episode_capital[e * env_cfg.num_companies + i];
    s.gini_capital += gini_or_zero(cell) * inv;
    for (int a = 0; a < buf.num_agents; ++a) {
      double ret = 0.0;
      for (int t = 0; t < buf.steps; ++t) ret += buf.rewards[buf.slot(e, t, a)];
      s.agent_returns[a] += ret * inv;
    }
  }
  return s;
}

void write_summary(const fs::path& path, const RunSummary& s, Algorithm algo) {
  std::ofstream os(path, std::ios::trunc);
  os << "schema_version,seed,algorithm,config_hash,market_total_wealth,"
        "final_mitigation,final_climate_risk,gini_investment,gini_capital";
  for (size_t a = 0; a < s.agent_returns.size(); ++a) os << ",return_agent_" << a;
  os << '\n';
  os << kSummarySchemaVersion << ',' << s.seed << ',' << to_string(algo) << ','
     << s.config_hash << ',' << fmt(s.market_total_wealth) << ','
     << fmt(s.final_mitigation) << ',' << fmt(s.final_climate_risk) << ','
     << fmt(s.gini_investment) << ',' << fmt(s.gini_capital);
  for (double r : s.agent_returns) os << ',' << fmt(r);
  os << '\n';
}

struct RunOutcome {
  RunSummary summary;
  std::vector<MetricsRow> history;
};

// One seeded training run with artifact management and optional resume.
RunOutcome run_one_training(EnvConfig env_cfg, TrainConfig train_cfg,
                            const fs::path& out_dir, bool resume) {
  const std::string name = run_name(train_cfg.algorithm, env_cfg, train_cfg.seed);
  const RunPaths paths = run_paths(out_dir, name);
  fs::create_directories(paths.dir);
  save_env_config(env_cfg, (paths.dir / "env.json").string());
  save_train_config(train_cfg, (paths.dir / "train.json").string());

  Trainer trainer(env_cfg, train_cfg);
  bool append = false;
  if (resume && fs::exists(paths.checkpoint)) {
    trainer.load_checkpoint(paths.checkpoint.string());
    truncate_metrics(paths.metrics, trainer.iteration());
    append = true;
  }
  std::ofstream metrics(paths.metrics, append ? std::ios::app : std::ios::trunc);
  if (!append) metrics << metrics_header() << '\n';

  const int every = train_cfg.checkpoint_every;
  while (!trainer.finished()) {
    const MetricsRow& row = trainer.iterate();
    write_metrics_row(metrics, row, train_cfg.seed, train_cfg.algorithm);
    metrics.flush();
    if (every > 0 && trainer.iteration() % every == 0)
      trainer.save_checkpoint(paths.checkpoint.string());
  }
  trainer.save_checkpoint(paths.checkpoint.string());

  RunOutcome outcome;
  outcome.summary = evaluate_policies(env_cfg, train_cfg, trainer);
  outcome.history = trainer.history();
  write_summary(paths.summary, outcome.summary, train_cfg.algorithm);
  return outcome;
}

void apply_desk_overrides(TrainConfig& cfg) {
  const TrainConfig desk = TrainConfig::desk_profile(cfg.algorithm);
  cfg.num_envs = desk.num_envs;
  cfg.total_env_steps = desk.total_env_steps;
  cfg.policy_lr = desk.policy_lr;
  cfg.value_lr = desk.value_lr;
  cfg.entropy_coef = desk.entropy_coef;
  cfg.num_minibatches = desk.num_minibatches;
}

struct CommonArgs {
  std::string config_path;
  std::string train_config_path;
  std::vector<std::uint64_t> seeds = {0};
  std::vector<double> alphas;
  std::string out;
  bool desk_scale = false;
  bool resume = false;
};

EnvConfig load_env_or_default(const std::string& path) {
  if (path.empty()) {
    EnvConfig cfg;
    cfg.validate();
    return cfg;
  }
  return load_env_config(path);
}

TrainConfig load_train_or_default(const std::string& path) {
  if (path.empty()) return TrainConfig::desk_profile(Algorithm::IPPO);
  return load_train_config(path);
}

fs::path resolve_out(const std::string& out) {
  return out.empty() ? default_out_root() : fs::path(out);
}

int cmd_train(const CommonArgs& args) {
  EnvConfig env_cfg = load_env_or_default(args.config_path);
  TrainConfig base = load_train_or_default(args.train_config_path);
  if (args.desk_scale) apply_desk_overrides(base);
  const fs::path out = resolve_out(args.out);
  const std::vector<double> alphas =
      args.alphas.empty() ? std::vector<double>{env_cfg.alpha} : args.alphas;
  for (double alpha : alphas) {
    EnvConfig cfg = env_cfg;
    cfg.alpha = alpha;
    for (std::uint64_t seed : args.seeds) {
      TrainConfig tc = base;
      tc.seed = seed;
      const RunOutcome outcome = run_one_training(cfg, tc, out, args.resume);
      std::cout << run_name(tc.algorithm, cfg, seed)
                << ": mtw=" << outcome.summary.market_total_wealth
                << " mitigation=" << outcome.summary.final_mitigation
                << " risk=" << outcome.summary.final_climate_risk << '\n';
    }
  }
  return 0;
}

struct CellStats {
  int n = 0;
  double mtw_mean = 0, mtw_m2 = 0;
  double mit_mean = 0, mit_m2 = 0;
  double risk_mean = 0, risk_m2 = 0;

  void add(double mtw, double mit, double risk) {
    n += 1;
    auto push = [this](double& mean, double& m2, double x) {
      const double d = x - mean;
      mean += d / n;
      m2 += d * (x - mean);
    };
    push(mtw_mean, mtw_m2, mtw);
    push(mit_mean, mit_m2, mit);
    push(risk_mean, risk_m2, risk);
  }
  double sd(double m2) const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
};

int cmd_sweep(const CommonArgs& args) {
  if (args.alphas.empty())
    throw ConfigError("sweep requires a non-empty --alphas list");
  EnvConfig env_cfg = load_env_or_default(args.config_path);
  TrainConfig base = load_train_or_default(args.train_config_path);
  if (args.desk_scale) apply_desk_overrides(base);
  const fs::path out = resolve_out(args.out);
  fs::create_directories(out);

  std::map<double, CellStats> cells;
  std::vector<std::string> failures;
  for (double alpha : args.alphas) {
    for (std::uint64_t seed : args.seeds) {
      EnvConfig cfg = env_cfg;
      cfg.alpha = alpha;
      TrainConfig tc = base;
      tc.seed = seed;
      try {
        const RunOutcome outcome = run_one_training(cfg, tc, out, args.resume);
        cells[alpha].add(outcome.summary.market_total_wealth,
                         outcome.summary.final_mitigation,
                         outcome.summary.final_climate_risk);
      } catch (const std::exception& err) {
        failures.push_back(run_name(tc.algorithm, cfg, seed) + ": " + err.what());
        std::cerr << "cell failed, continuing: " << failures.back() << '\n';
      }
    }
  }

  std::ofstream os(out / "sweep_summary.csv", std::ios::trunc);
  os << "alpha,algorithm,num_seeds,mtw_mean,mtw_std,mitigation_mean,mitigation_std,"
        "risk_mean,risk_std\n";
  for (const auto& [alpha, c] : cells) {
    os << fmt(alpha) << ',' << to_string(base.algorithm) << ',' << c.n << ','
       << fmt(c.mtw_mean) << ',' << fmt(c.sd(c.mtw_m2)) << ',' << fmt(c.mit_mean) << ','
       << fmt(c.sd(c.mit_m2)) << ',' << fmt(c.risk_mean) << ',' << fmt(c.sd(c.risk_m2))
       << '\n';
  }
  if (!failures.empty()) {
    std::ofstream flog(out / "sweep_failures.log", std::ios::trunc);
    for (const auto& f : failures) flog << f << '\n';
    return kExitPartialFailure;
  }
  return 0;
}

int cmd_simulate(const CommonArgs& args, double mitigation, const std::string& ckpt) {
  EnvConfig env_cfg = load_env_or_default(args.config_path);
  if (!args.alphas.empty()) env_cfg.alpha = args.alphas.front();
  const fs::path out = resolve_out(args.out);
  fs::create_directories(out);
  save_env_config(env_cfg, (out / "env.json").string());

  std::optional<Trainer> trainer;
  TrainConfig tc = load_train_or_default(args.train_config_path);
  if (!ckpt.empty()) {
    trainer.emplace(env_cfg, tc);
    trainer->load_checkpoint(ckpt);
  }

  const int M = env_cfg.num_companies;
  const int N = env_cfg.num_investors;
  std::vector<Trajectory> trajectories;
  for (std::uint64_t seed : args.seeds) {
    std::ofstream os(out / ("trajectory_seed" + std::to_string(seed) + ".csv"),
                     std::ios::trunc);
    os << "step,agent,role,mitigation,portfolio_mask,reward,capital_or_cash,"
          "cumulative_mitigation,total_risk\n";
    Environment env(env_cfg);
    env.reset(hash_combine(seed, 0x51));
    Rng action_rng(hash_combine(seed, 0x52));
    MlpTape tape;
    JointAction act;
    act.mitigation.assign(static_cast<size_t>(M), mitigation);
    act.portfolio.assign(static_cast<size_t>(N) * M, 1);
    std::vector<double> mean(static_cast<size_t>(M)), log_std(static_cast<size_t>(M));
    std::vector<double> obs(static_cast<size_t>(env.observation_size()));
    Trajectory tr;
    for (int t = 0; t < env_cfg.episode_length; ++t) {
      if (trainer) {
        for (int a = 0; a < M + N; ++a) {
          env.write_observation(a, obs.data());
          const Policy& actor =
              trainer->params().bank.actors[trainer->wiring().actor_of_agent[a]];
          const int dim = a < M ? 1 : M;
          policy_forward(actor, obs, tape, mean.data(), log_std.data());
          GaussianSample s = sample_and_logprob(
              std::span<const double>(mean.data(), static_cast<size_t>(dim)),
              std::span<const double>(log_std.data(), static_cast<size_t>(dim)),
              action_rng);
          if (a < M)
            act.mitigation[a] = squash_mitigation(s.value[0], env_cfg.max_mitigation);
          else
            for (int i = 0; i < M; ++i)
              act.portfolio[(a - M) * M + i] = portfolio_bit(s.value[i]) ? 1 : 0;
        }
      }
      StepOutcome outcome = env.step(act);
      tr.rewards.push_back(outcome.rewards);
      const EnvState& st = env.state();
      for (int a = 0; a < M + N; ++a) {
        const bool company = a < M;
        long mask = 0;
        if (!company)
          for (int i = 0; i < M; ++i)
            if (act.portfolio[(a - M) * M + i]) mask |= 1L << i;
        os << t << ',' << a << ',' << (company ? "company" : "investor") << ','
           << (company ? fmt(act.mitigation[a]) : std::string()) << ','
           << (company ? std::string() : std::to_string(mask)) << ','
           << fmt(outcome.rewards[a]) << ','
           << fmt(company ? st.company_capital[a] : st.investor_cash[a - M]) << ','
           << fmt(st.cumulative_mitigation) << ',' << fmt(st.total_risk) << '\n';
      }
    }
    tr.final_state = env.state();
    trajectories.push_back(std::move(tr));
  }
  const RunSummary summary = summarize_run(trajectories, env_cfg);
  RunSummary with_hash = summary;
  with_hash.seed = args.seeds.front();
  with_hash.config_hash = config_hash(env_cfg, tc);
  write_summary(out / "summary.csv", with_hash, tc.algorithm);
  std::cout << "simulate: mtw=" << summary.market_total_wealth
            << " mitigation=" << summary.final_mitigation
            << " risk=" << summary.final_climate_risk << '\n';
  return 0;
}

int cmd_analyze(const CommonArgs& args) {
  if (args.config_path.empty())
    throw ConfigError("analyze requires --config with an analyzer block");
  EnvConfig env_cfg = load_env_config(args.config_path);
  const AnalyzerSpec spec = load_analyzer_spec(args.config_path);
  const fs::path out = resolve_out(args.out);
  fs::create_directories(out);

  SimplifiedWorld world = world_from_env(env_cfg, spec.t);
  world.mode = spec.mode;
  const int lags = spec.num_lags > 0 ? std::min(spec.num_lags, spec.t) : spec.t;

  std::ofstream thresholds(out / "thresholds.csv", std::ios::trunc);
  thresholds << "lambda,lambda_low,lambda_critical,zone\n";
  std::ofstream gradients(out / "gradients.csv", std::ios::trunc);
  gradients << "lambda,company,lag,private_grad,social_grad\n";
  std::ofstream cross(out / "cross_gradients.csv", std::ios::trunc);
  cross << "lambda,company_i,company_j,cross_grad\n";

  for (double lambda : spec.lambdas) {
    const ThresholdResult res = classify_zone(world, lambda);
    thresholds << fmt(lambda) << ',' << fmt(res.lambda_low) << ','
               << fmt(res.lambda_critical) << ',' << to_string(res.zone) << '\n';
    const GradientReport rep =
        compute_gradient_report(world.with_lambda_scale(lambda), lags);
    for (int i = 0; i < world.num_companies(); ++i) {
      for (int k = 0; k < lags; ++k)
        gradients << fmt(lambda) << ',' << i << ',' << k << ','
                  << fmt(rep.private_grads[i][k]) << ',' << fmt(rep.social_grads[i][k])
                  << '\n';
      for (int j = 0; j < world.num_companies(); ++j)
        if (j != i)
          cross << fmt(lambda) << ',' << i << ',' << j << ','
                << fmt(rep.cross_grads[i][j]) << '\n';
    }
  }
  std::cout << "analyze: " << spec.lambdas.size() << " lambda points, t=" << spec.t
            << '\n';
  return 0;
}

int cmd_schelling(const CommonArgs& args, double rate, int num_seeds) {
  EnvConfig env_cfg = load_env_or_default(args.config_path);
  if (!args.alphas.empty()) env_cfg.alpha = args.alphas.front();
  const fs::path out = resolve_out(args.out);
  fs::create_directories(out);
  const auto points = schelling_curve(env_cfg, rate, 0, env_cfg.num_companies - 1,
                                      num_seeds, args.seeds.front());
  std::ofstream os(out / "schelling.csv", std::ios::trunc);
  os << "num_other_cooperators,welfare_cooperate,welfare_defect\n";
  for (const auto& p : points)
    os << p.num_other_cooperators << ',' << fmt(p.welfare_cooperate) << ','
       << fmt(p.welfare_defect) << '\n';
  std::cout << "schelling: " << points.size() << " rows -> " << (out / "schelling.csv")
            << '\n';
  return 0;
}

struct GroupKey {
  std::string algorithm;
  double alpha;
  bool operator<(const GroupKey& o) const {
    return std::tie(algorithm, alpha) < std::tie(o.algorithm, o.alpha);
  }
};

int cmd_summarize(const std::string& runs_dir, const std::string& out_path) {
  std::map<GroupKey, CellStats> groups;
  for (const auto& entry : fs::directory_iterator(runs_dir)) {
    if (!entry.is_directory()) continue;
    const fs::path summary = entry.path() / "summary.csv";
    if (!fs::exists(summary)) continue;
    std::ifstream is(summary);
    std::string header, row;
    std::getline(is, header);
    if (!std::getline(is, row)) continue;
    std::vector<std::string> cols;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() < 9) continue;
    // recover alpha from the resolved env config
    const EnvConfig cfg = load_env_config((entry.path() / "env.json").string());
    GroupKey key{cols[2], cfg.alpha};
    groups[key].add(std::stod(cols[4]), std::stod(cols[5]), std::stod(cols[6]));
  }
  if (groups.empty()) throw IoError("no run summaries found under " + runs_dir);

  double best_mtw = 0.0;
  for (const auto& [key, c] : groups) best_mtw = std::max(best_mtw, c.mtw_mean);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::trunc);
    os = &file;
  }
  *os << "algorithm,alpha,num_seeds,mtw_mean,mtw_std,mitigation_mean,mitigation_std,"
         "risk_mean,risk_std,poa_vs_best\n";
  for (const auto& [key, c] : groups) {
    *os << key.algorithm << ',' << fmt(key.alpha) << ',' << c.n << ','
        << fmt(c.mtw_mean) << ',' << fmt(c.sd(c.mtw_m2)) << ',' << fmt(c.mit_mean)
        << ',' << fmt(c.sd(c.mit_m2)) << ',' << fmt(c.risk_mean) << ','
        << fmt(c.sd(c.risk_m2)) << ','
        << fmt(empirical_price_of_anarchy(best_mtw, c.mtw_mean)) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"InvestESG market-climate game: training, simulation and analysis"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd, bool with_train) {
    cmd->add_option("--config", args.config_path, "env config JSON");
    if (with_train)
      cmd->add_option("--train-config", args.train_config_path, "train config JSON");
    cmd->add_option("--seeds", args.seeds, "seed list")->delimiter(',');
    cmd->add_option("--alphas", args.alphas, "mitigation-effectiveness scale list")
        ->delimiter(',');
    cmd->add_option("--out", args.out,
                    "output directory (default $INVESTESG_OUT or ./runs)");
    cmd->add_flag("--desk-scale", args.desk_scale,
                  "reduced profile: 8 envs, 400k steps");
    cmd->add_flag("--resume", args.resume, "resume runs from their checkpoints");
  };

  CLI::App* train = app.add_subcommand("train", "train policies, one run per seed");
  add_common(train, true);

  CLI::App* sweep = app.add_subcommand("sweep", "alpha x seed grid of training runs");
  add_common(sweep, true);

  double sim_mitigation = 0.0;
  std::string sim_checkpoint;
  CLI::App* simulate =
      app.add_subcommand("simulate", "roll out fixed or checkpointed policies");
  add_common(simulate, true);
  simulate->add_option("--mitigation", sim_mitigation,
                       "fixed company mitigation fraction");
  simulate->add_option("--checkpoint", sim_checkpoint,
                       "policy checkpoint to load (requires matching configs)");

  CLI::App* analyze =
      app.add_subcommand("analyze", "thresholds and gradient grids for the analyzer");
  add_common(analyze, false);

  double schelling_rate = 0.005;
  int schelling_seeds = 10;
  CLI::App* schelling =
      app.add_subcommand("schelling", "welfare of fixed cooperator/defector profiles");
  add_common(schelling, false);
  schelling->add_option("--rate", schelling_rate, "cooperator mitigation fraction");
  schelling->add_option("--num-seeds", schelling_seeds, "episodes per profile");

  std::string runs_dir, summarize_out;
  CLI::App* summarize =
      app.add_subcommand("summarize", "aggregate run summaries into one table");
  summarize->add_option("--runs", runs_dir, "directory of run subdirectories")
      ->required();
  summarize->add_option("--out", summarize_out, "output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (simulate->parsed()) return cmd_simulate(args, sim_mitigation, sim_checkpoint);
    if (analyze->parsed()) return cmd_analyze(args);
    if (schelling->parsed()) return cmd_schelling(args, schelling_rate, schelling_seeds);
    if (summarize->parsed()) return cmd_summarize(runs_dir, summarize_out);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitRuntimeError;
  }
  return 0;
}
