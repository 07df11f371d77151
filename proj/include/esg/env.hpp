#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "esg/rng.hpp"

namespace esg {

inline constexpr int kNumEventTypes = 3;
inline constexpr const char* kEventNames[kNumEventTypes] = {"heat", "precipitation",
                                                            "drought"};

// Fixed feature order of the per-agent observation vector. Bumped whenever the
// layout changes; persisted artifacts record it.
inline constexpr int kObservationLayoutVersion = 1;

struct EventParams {
  double mu = 0.0;            // risk growth rate per step
  double lambda_tilde = 0.0;  // base mitigation responsiveness (scaled by alpha)
  double p0 = 0.0;            // initial event probability
};

// Full parameterization of the market/climate game.
//
// The numeric defaults are this project's shipped calibration: the paper-level
// structure (5 companies, 3 investors, 100 steps, binary portfolios) is fixed,
// and the climate/market constants are chosen so that
//   * the best achievable total climate risk is 1 - prod_e(1 - p0_e) = 0.48,
//   * a zero-mitigation economy still grows over the full horizon,
//   * the mitigation-effectiveness scale alpha has its interesting regime
//     in the tens (see README).
struct EnvConfig {
  int num_companies = 5;
  int num_investors = 3;
  int episode_length = 100;

  // Scaling on mitigation effectiveness: lambda_e = alpha * lambda_tilde_e.
  double alpha = 1.0;

  std::array<EventParams, kNumEventTypes> events{
      EventParams{0.002, 3.5e-5, 0.2},
      EventParams{0.002, 3.5e-5, 0.1875},
      EventParams{0.002, 3.5e-5, 0.2},
  };

  std::vector<double> loss_coefficients = {0.1, 0.1, 0.1, 0.1, 0.1};  // L_i
  double market_growth = 0.1295;                                        // gamma_market
  double max_mitigation = 1.0;                                        // u_bar

  std::vector<double> initial_company_capital = {20.0, 20.0, 20.0, 20.0, 20.0};
  std::vector<double> initial_investor_cash = {20.0, 20.0, 20.0};
  std::vector<double> esg_weights = {0.0, 0.0, 0.0};  // w_j; 0 = "status quo"

  double lambda(int e) const { return alpha * events[static_cast<size_t>(e)].lambda_tilde; }

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  double initial_total_wealth() const;
};

// Mutable state of the game at one step.
struct EnvState {
  int t = 0;
  std::vector<double> company_capital;  // K_t^i
  std::vector<double> investor_cash;    // cash of investor j
  std::vector<double> holdings;         // H[j*M + i]: stake of investor j in company i
  double cumulative_mitigation = 0.0;   // U_t
  std::array<double, kNumEventTypes> event_probs{};
  double total_risk = 0.0;
  std::vector<double> company_mitigation;  // lifetime mitigation spend per company
  std::vector<double> company_investment;  // lifetime equity inflow per company

  double holding(int j, int i, int num_companies) const {
    return holdings[static_cast<size_t>(j) * num_companies + i];
  }
};

struct JointAction {
  std::vector<double> mitigation;   // u_t^i in [0, u_bar], size M
  std::vector<std::uint8_t> portfolio;  // a[j*M + i] in {0,1}, size N*M
};

struct StepOutcome {
  std::vector<double> rewards;  // size M+N, companies first
  std::array<std::uint8_t, kNumEventTypes> events_realized{};
  int event_count = 0;  // X_t
  std::vector<double> observations;  // (M+N) x obs_dim, agent-major
  bool done = false;
};

// Per-event probabilities and total risk at step t with cumulative mitigation
// U: P_t^e = mu_e * t / (1 + lambda_e * U) + p0_e clamped to [0,1];
// total = 1 - prod_e (1 - P_t^e).
std::pair<std::array<double, kNumEventTypes>, double> climate_event_probs(
    int t, double cumulative_mitigation, const EnvConfig& config);

// Independent Bernoulli draw per event type; returns indicators and their sum.
std::pair<std::array<std::uint8_t, kNumEventTypes>, int> sample_events(
    const std::array<double, kNumEventTypes>& probs, Rng& rng);

// One-equation capital flow: K_i - sum_j H_ji + sum_j a_ji * cash_j / |a_j|.
// Investors with an empty portfolio row contribute nothing (they keep their
// cash); holdings are taken from `state` as-is.
std::vector<double> compute_interim_capital(const EnvState& state,
                                            const std::vector<std::uint8_t>& portfolio,
                                            const EnvConfig& config);

class Environment {
 public:
  explicit Environment(EnvConfig config);

  // Returns the flat (M+N) x obs_dim observation block.
  std::vector<double> reset(std::uint64_t seed);

  StepOutcome step(const JointAction& action);
  // Allocation-free variant for hot loops; `out` buffers are reused.
  void step(const JointAction& action, StepOutcome& out);

  const EnvState& state() const { return state_; }
  const EnvConfig& config() const { return config_; }
  double initial_total_wealth() const { return w0_; }
  int num_agents() const { return config_.num_companies + config_.num_investors; }

  // Observation layout v1, identical global block for every agent:
  //   [K_i / W0] * M, [cash_j / W0] * N, [H_ji / W0] * (N*M, investor-major),
  //   U / W0, P_e * 3, t / T, [company mitigation spend_i / W0] * M,
  // followed by a one-hot agent identity of width M+N.
  static int global_size(int num_companies, int num_investors);
  static int observation_size(int num_companies, int num_investors);
  int global_size() const { return global_size(config_.num_companies, config_.num_investors); }
  int observation_size() const {
    return observation_size(config_.num_companies, config_.num_investors);
  }

  // Writes the shared global feature block (global_size() doubles).
  void write_global(double* dst) const;
  // Writes the full observation of one agent (observation_size() doubles).
  void write_observation(int agent, double* dst) const;
  std::vector<double> observe() const;  // all agents, flat

 private:
  void validate_action(const JointAction& action) const;
  void refresh_risk();

  EnvConfig config_;
  EnvState state_;
  Rng rng_;
  double w0_ = 0.0;

  // step scratch
  std::vector<double> liquidation_cash_;
  std::vector<double> interim_;
  std::vector<double> invested_;  // N*M
  std::vector<double> wealth_before_;
};

}  // namespace esg
