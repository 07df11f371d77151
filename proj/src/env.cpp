#include "esg/env.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "esg/errors.hpp"

namespace esg {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("invalid config field '" + field + "': " + what);
}

}  // namespace

void EnvConfig::validate() const {
  require(num_companies >= 1, "num_companies", "must be >= 1");
  require(num_investors >= 1, "num_investors", "must be >= 1");
  require(episode_length >= 1, "episode_length", "must be >= 1");
  require(alpha >= 0.0 && std::isfinite(alpha), "alpha", "must be >= 0");
  for (int e = 0; e < kNumEventTypes; ++e) {
    const auto& ev = events[static_cast<size_t>(e)];
    const std::string base = std::string("event_params.") + kEventNames[e];
    require(ev.mu >= 0.0 && std::isfinite(ev.mu), base + ".mu", "must be >= 0");
    require(ev.lambda_tilde >= 0.0 && std::isfinite(ev.lambda_tilde),
            base + ".lambda_tilde", "must be >= 0");
    require(ev.p0 >= 0.0 && ev.p0 <= 1.0, base + ".p0", "must be in [0,1]");
  }
  require(static_cast<int>(loss_coefficients.size()) == num_companies,
          "loss_coefficients", "size must equal num_companies");
  for (double l : loss_coefficients)
    require(l >= 0.0 && l <= 1.0, "loss_coefficients", "entries must be in [0,1]");
  require(market_growth >= 0.0 && std::isfinite(market_growth), "market_growth",
          "must be >= 0");
  require(max_mitigation > 0.0 && max_mitigation <= 1.0, "max_mitigation",
          "must be in (0,1]");
  require(static_cast<int>(initial_company_capital.size()) == num_companies,
          "initial_company_capital", "size must equal num_companies");
  for (double k : initial_company_capital)
    require(k >= 0.0 && std::isfinite(k), "initial_company_capital",
            "entries must be >= 0");
  require(static_cast<int>(initial_investor_cash.size()) == num_investors,
          "initial_investor_cash", "size must equal num_investors");
  for (double c : initial_investor_cash)
    require(c >= 0.0 && std::isfinite(c), "initial_investor_cash",
            "entries must be >= 0");
  require(static_cast<int>(esg_weights.size()) == num_investors, "esg_weights",
          "size must equal num_investors");
  for (double w : esg_weights)
    require(w >= 0.0 && std::isfinite(w), "esg_weights", "entries must be >= 0");
}

double EnvConfig::initial_total_wealth() const {
  double s = 0.0;
  for (double k : initial_company_capital) s += k;
  for (double c : initial_investor_cash) s += c;
  return s;
}

std::pair<std::array<double, kNumEventTypes>, double> climate_event_probs(
    int t, double cumulative_mitigation, const EnvConfig& config) {
  std::array<double, kNumEventTypes> probs{};
  double keep = 1.0;
  for (int e = 0; e < kNumEventTypes; ++e) {
    const auto& ev = config.events[static_cast<size_t>(e)];
    const double lam = config.lambda(e);
    double p = ev.mu * t / (1.0 + lam * cumulative_mitigation) + ev.p0;
    p = std::clamp(p, 0.0, 1.0);
    probs[static_cast<size_t>(e)] = p;
    keep *= 1.0 - p;
  }
  return {probs, 1.0 - keep};
}

std::pair<std::array<std::uint8_t, kNumEventTypes>, int> sample_events(
    const std::array<double, kNumEventTypes>& probs, Rng& rng) {
  std::array<std::uint8_t, kNumEventTypes> ind{};
  int count = 0;
  for (int e = 0; e < kNumEventTypes; ++e) {
    ind[static_cast<size_t>(e)] = rng.bernoulli(probs[static_cast<size_t>(e)]) ? 1 : 0;
    count += ind[static_cast<size_t>(e)];
  }
  return {ind, count};
}

std::vector<double> compute_interim_capital(const EnvState& state,
                                            const std::vector<std::uint8_t>& portfolio,
                                            const EnvConfig& config) {
  const int M = config.num_companies;
  const int N = config.num_investors;
  std::vector<double> interim(state.company_capital.begin(), state.company_capital.end());
  for (int j = 0; j < N; ++j) {
    int selected = 0;
    for (int i = 0; i < M; ++i) selected += portfolio[static_cast<size_t>(j) * M + i];
    for (int i = 0; i < M; ++i) {
      interim[static_cast<size_t>(i)] -= state.holding(j, i, M);
      if (selected > 0 && portfolio[static_cast<size_t>(j) * M + i]) {
        interim[static_cast<size_t>(i)] += state.investor_cash[static_cast<size_t>(j)] / selected;
      }
    }
  }
  return interim;
}

Environment::Environment(EnvConfig config) : config_(std::move(config)) {
  config_.validate();
  w0_ = config_.initial_total_wealth();
  const int M = config_.num_companies;
  const int N = config_.num_investors;
  liquidation_cash_.resize(static_cast<size_t>(N));
  interim_.resize(static_cast<size_t>(M));
  invested_.resize(static_cast<size_t>(N) * M);
  wealth_before_.resize(static_cast<size_t>(N));
}

std::vector<double> Environment::reset(std::uint64_t seed) {
  rng_.seed(seed);
  const int M = config_.num_companies;
  const int N = config_.num_investors;
  state_.t = 0;
  state_.company_capital = config_.initial_company_capital;
  state_.investor_cash = config_.initial_investor_cash;
  state_.holdings.assign(static_cast<size_t>(N) * M, 0.0);
  state_.cumulative_mitigation = 0.0;
  state_.company_mitigation.assign(static_cast<size_t>(M), 0.0);
  state_.company_investment.assign(static_cast<size_t>(M), 0.0);
  refresh_risk();
  return observe();
}

void Environment::refresh_risk() {
  auto [probs, total] =
      climate_event_probs(state_.t, state_.cumulative_mitigation, config_);
  state_.event_probs = probs;
  state_.total_risk = total;
}

void Environment::validate_action(const JointAction& action) const {
  const int M = config_.num_companies;
  const int N = config_.num_investors;
  if (static_cast<int>(action.mitigation.size()) != M)
    throw ActionError("mitigation vector must have one entry per company");
  for (int i = 0; i < M; ++i) {
    const double u = action.mitigation[static_cast<size_t>(i)];
    if (!(u >= 0.0 && u <= config_.max_mitigation)) {
      std::ostringstream os;
      os << "mitigation[" << i << "]=" << u << " outside [0, " << config_.max_mitigation
         << "]";
      throw ActionError(os.str());
    }
  }
  if (static_cast<int>(action.portfolio.size()) != N * M)
    throw ActionError("portfolio matrix must be num_investors x num_companies");
  for (std::uint8_t a : action.portfolio)
    if (a != 0 && a != 1) throw ActionError("portfolio entries must be binary");
}

StepOutcome Environment::step(const JointAction& action) {
  StepOutcome out;
  step(action, out);
  return out;
}

void Environment::step(const JointAction& action, StepOutcome& out) {
  validate_action(action);
  const int M = config_.num_companies;
  const int N = config_.num_investors;
  const double gamma = config_.market_growth;

  // 1. Liquidate: every holding returns to its investor as cash; the same
  //    money leaves the companies. Wealth before the step is recorded for the
  //    investor reward.
  for (int j = 0; j < N; ++j) {
    double held = 0.0;
    for (int i = 0; i < M; ++i) held += state_.holding(j, i, M);
    wealth_before_[static_cast<size_t>(j)] = state_.investor_cash[static_cast<size_t>(j)] + held;
    liquidation_cash_[static_cast<size_t>(j)] = wealth_before_[static_cast<size_t>(j)];
  }
  for (int i = 0; i < M; ++i) {
    double returned = 0.0;
    for (int j = 0; j < N; ++j) returned += state_.holding(j, i, M);
    interim_[static_cast<size_t>(i)] =
        std::max(0.0, state_.company_capital[static_cast<size_t>(i)] - returned);
  }

  // 2. Reinvest: each investor splits their liquid cash equally across the
  //    selected companies; an empty selection keeps the cash idle this step.
  std::fill(invested_.begin(), invested_.end(), 0.0);
  for (int j = 0; j < N; ++j) {
    int selected = 0;
    for (int i = 0; i < M; ++i) selected += action.portfolio[static_cast<size_t>(j) * M + i];
    if (selected == 0) {
      state_.investor_cash[static_cast<size_t>(j)] = liquidation_cash_[static_cast<size_t>(j)];
      continue;
    }
    const double per = liquidation_cash_[static_cast<size_t>(j)] / selected;
    state_.investor_cash[static_cast<size_t>(j)] = 0.0;
    for (int i = 0; i < M; ++i) {
      if (action.portfolio[static_cast<size_t>(j) * M + i]) {
        invested_[static_cast<size_t>(j) * M + i] = per;
        interim_[static_cast<size_t>(i)] += per;
        state_.company_investment[static_cast<size_t>(i)] += per;
      }
    }
  }

  // 3. Mitigation spend updates the cumulative pool before the climate draw.
  for (int i = 0; i < M; ++i) {
    const double spend =
        action.mitigation[static_cast<size_t>(i)] * interim_[static_cast<size_t>(i)];
    state_.cumulative_mitigation += spend;
    state_.company_mitigation[static_cast<size_t>(i)] += spend;
  }

  // 4. Climate events at (t, updated U).
  auto [probs, total] =
      climate_event_probs(state_.t, state_.cumulative_mitigation, config_);
  (void)total;
  auto [indicators, count] = sample_events(probs, rng_);
  out.events_realized = indicators;
  out.event_count = count;

  // 5. Growth and company rewards.
  out.rewards.assign(static_cast<size_t>(M + N), 0.0);
  for (int i = 0; i < M; ++i) {
    const double u = action.mitigation[static_cast<size_t>(i)];
    const double shock =
        std::max(0.0, 1.0 - count * config_.loss_coefficients[static_cast<size_t>(i)]);
    const double rho = (1.0 - u) * (1.0 + gamma) * shock - 1.0;
    const double next = std::max(0.0, (1.0 + rho) * interim_[static_cast<size_t>(i)]);
    out.rewards[static_cast<size_t>(i)] = next - interim_[static_cast<size_t>(i)];
    state_.company_capital[static_cast<size_t>(i)] = next;
    // 6. Holdings carry the invested amount through the same growth.
    for (int j = 0; j < N; ++j) {
      state_.holdings[static_cast<size_t>(j) * M + i] =
          invested_[static_cast<size_t>(j) * M + i] * std::max(0.0, 1.0 + rho);
    }
  }

  // Investor reward: change in total wealth plus the ESG shaping term
  // w_j * sum_i (share of company i held) * (mitigation spend_i / W0).
  for (int j = 0; j < N; ++j) {
    double held = 0.0;
    double esg = 0.0;
    for (int i = 0; i < M; ++i) {
      const double h = state_.holding(j, i, M);
      held += h;
      const double cap = state_.company_capital[static_cast<size_t>(i)];
      if (cap > 0.0)
        esg += (h / cap) * (state_.company_mitigation[static_cast<size_t>(i)] / w0_);
    }
    const double wealth_after = state_.investor_cash[static_cast<size_t>(j)] + held;
    out.rewards[static_cast<size_t>(M + j)] =
        wealth_after - wealth_before_[static_cast<size_t>(j)] +
        config_.esg_weights[static_cast<size_t>(j)] * esg;
  }

  // 7. Advance time, rebuild observations.
  state_.t += 1;
  refresh_risk();
  out.done = state_.t == config_.episode_length;
  const int obs_dim = observation_size();
  out.observations.resize(static_cast<size_t>(num_agents()) * obs_dim);
  for (int a = 0; a < num_agents(); ++a)
    write_observation(a, out.observations.data() + static_cast<size_t>(a) * obs_dim);
}

int Environment::global_size(int num_companies, int num_investors) {
  // capitals + cash + holdings + U + event probs + t/T + per-company mitigation
  return num_companies + num_investors + num_investors * num_companies + 1 +
         kNumEventTypes + 1 + num_companies;
}

int Environment::observation_size(int num_companies, int num_investors) {
  return global_size(num_companies, num_investors) + num_companies + num_investors;
}

void Environment::write_global(double* dst) const {
  const int M = config_.num_companies;
  const int N = config_.num_investors;
  const double inv_w0 = 1.0 / w0_;
  int k = 0;
  for (int i = 0; i < M; ++i) dst[k++] = state_.company_capital[static_cast<size_t>(i)] * inv_w0;
  for (int j = 0; j < N; ++j) dst[k++] = state_.investor_cash[static_cast<size_t>(j)] * inv_w0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < M; ++i) dst[k++] = state_.holding(j, i, M) * inv_w0;
  dst[k++] = state_.cumulative_mitigation * inv_w0;
  for (int e = 0; e < kNumEventTypes; ++e) dst[k++] = state_.event_probs[static_cast<size_t>(e)];
  dst[k++] = static_cast<double>(state_.t) / config_.episode_length;
  for (int i = 0; i < M; ++i)
    dst[k++] = state_.company_mitigation[static_cast<size_t>(i)] * inv_w0;
}

void Environment::write_observation(int agent, double* dst) const {
  const int g = global_size();
  write_global(dst);
  const int agents = num_agents();
  for (int a = 0; a < agents; ++a) dst[g + a] = a == agent ? 1.0 : 0.0;
}

std::vector<double> Environment::observe() const {
  const int obs_dim = observation_size();
  std::vector<double> obs(static_cast<size_t>(num_agents()) * obs_dim);
  for (int a = 0; a < num_agents(); ++a)
    write_observation(a, obs.data() + static_cast<size_t>(a) * obs_dim);
  return obs;
}

}  // namespace esg
