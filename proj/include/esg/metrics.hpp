#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esg/env.hpp"

namespace esg {

// End-of-run aggregate for one seeded episode set.
struct RunSummary {
  double market_total_wealth = 0.0;
  double final_mitigation = 0.0;    // U_T
  double final_climate_risk = 0.0;  // P_T
  double gini_investment = 0.0;     // over cumulative equity received per company
  double gini_capital = 0.0;        // over final company capitals
  std::vector<double> agent_returns;  // undiscounted episode return per agent
  std::uint64_t seed = 0;
  std::string config_hash;
};

// sum_i K_i + sum_j (cash_j + sum_i H_ji).
double market_total_wealth(const EnvState& state, const EnvConfig& config);

// Mean absolute difference over twice the mean. Requires nonnegative values,
// not all zero.
double gini(const std::vector<double>& values);

// Same, but degenerate vectors (fewer than two entries or no mass) count as
// perfectly equal instead of erroring; used by run aggregation.
double gini_or_zero(const std::vector<double>& values);

// best / equilibrium; both must be > 0. A ratio > 1 signals a dilemma; the
// caller is expected to flag ratios < 1 (best worse than equilibrium).
double empirical_price_of_anarchy(double best_welfare, double equilibrium_welfare);

// One trajectory as recorded by the simulator: final state plus the per-step
// per-agent rewards.
struct Trajectory {
  EnvState final_state;
  std::vector<std::vector<double>> rewards;  // [step][agent]
};

// Aggregates the headline metrics over one or more seeded trajectories
// (fields are means across trajectories).
RunSummary summarize_run(const std::vector<Trajectory>& trajectories,
                         const EnvConfig& config);

}  // namespace esg
