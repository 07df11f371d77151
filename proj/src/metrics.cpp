#include "esg/metrics.hpp"

#include <cmath>
#include <numeric>

#include "esg/errors.hpp"

namespace esg {

double market_total_wealth(const EnvState& state, const EnvConfig& config) {
  double total = 0.0;
  for (double k : state.company_capital) total += k;
  for (int j = 0; j < config.num_investors; ++j) {
    total += state.investor_cash[static_cast<size_t>(j)];
    for (int i = 0; i < config.num_companies; ++i)
      total += state.holding(j, i, config.num_companies);
  }
  return total;
}

double gini(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("gini: empty input");
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) throw DomainError("gini: values must be >= 0");
    sum += v;
  }
  if (sum == 0.0) throw DomainError("gini: undefined for an all-zero vector");
  const auto n = values.size();
  double abs_diff = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) abs_diff += std::abs(values[i] - values[j]);
  const double mean = sum / static_cast<double>(n);
  return abs_diff / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mean);
}

double empirical_price_of_anarchy(double best_welfare, double equilibrium_welfare) {
  if (!(best_welfare > 0.0) || !(equilibrium_welfare > 0.0))
    throw DomainError("price of anarchy: welfares must be > 0");
  return best_welfare / equilibrium_welfare;
}

double gini_or_zero(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  if (values.size() < 2 || sum == 0.0) return 0.0;
  return gini(values);
}

RunSummary summarize_run(const std::vector<Trajectory>& trajectories,
                         const EnvConfig& config) {
  if (trajectories.empty()) throw DomainError("summarize_run: no trajectories");
  RunSummary s;
  const int agents = config.num_companies + config.num_investors;
  s.agent_returns.assign(static_cast<size_t>(agents), 0.0);
  const double inv_n = 1.0 / static_cast<double>(trajectories.size());
  for (const auto& tr : trajectories) {
    s.market_total_wealth += market_total_wealth(tr.final_state, config) * inv_n;
    s.final_mitigation += tr.final_state.cumulative_mitigation * inv_n;
    s.final_climate_risk += tr.final_state.total_risk * inv_n;
    s.gini_investment += gini_or_zero(tr.final_state.company_investment) * inv_n;
    s.gini_capital += gini_or_zero(tr.final_state.company_capital) * inv_n;
    for (const auto& step_rewards : tr.rewards)
      for (int a = 0; a < agents; ++a)
        s.agent_returns[static_cast<size_t>(a)] += step_rewards[static_cast<size_t>(a)] * inv_n;
  }
  return s;
}

}  // namespace esg
