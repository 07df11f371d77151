#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "esg/env.hpp"

namespace esg {

// How expectations over the step-t climate events are evaluated.
//   ExactEnumeration: sum over the 8 joint outcomes of the three independent
//     event indicators (default; exact and cheap).
//   BernoulliApprox: collapse the event count to a single Bernoulli with
//     p = min(1, sum_e P_e). Agrees with enumeration to O(P^2) for small
//     probabilities and degrades once sum_e P_e exceeds 1.
enum class ExpectationMode { ExactEnumeration, BernoulliApprox };

// Analytic model of the game under three structural restrictions: static
// investor portfolios (interim capital equals capital), one investor per
// firm, and no mitigation before step t. Capitals are the expected values at
// the current step; earlier steps of the expected path are reconstructed by
// dividing out the expected growth factors. Event probabilities are NOT
// clamped here, so validate() requires them to stay inside [0,1] over the
// whole horizon.
struct SimplifiedWorld {
  std::vector<double> capital;  // E[K_t^i] at the current step
  std::vector<double> loss;     // L_i
  std::array<double, kNumEventTypes> mu{};
  std::array<double, kNumEventTypes> lambda{};  // absolute responsiveness
  std::array<double, kNumEventTypes> p0{};
  double market_growth = 0.0;
  int t = 0;
  // Mitigation fraction every company plays at step t; all earlier steps are
  // zero by assumption. The zone/threshold machinery requires 0.
  double action = 0.0;
  ExpectationMode mode = ExpectationMode::ExactEnumeration;

  int num_companies() const { return static_cast<int>(capital.size()); }
  void validate() const;  // throws DomainError

  SimplifiedWorld with_uniform_lambda(double lam) const;
  SimplifiedWorld with_lambda_scale(double scale) const;
};

// Builds the analytic world implied by an environment config at step t:
// lambda_e = alpha * lambda_tilde_e, investor cash folded into firms
// round-robin (one firm per investor), capitals grown along the expected
// zero-mitigation path.
SimplifiedWorld world_from_env(const EnvConfig& config, int t, double action = 0.0);

// E[f(X)] for the event count X at the given per-event probabilities.
template <typename F>
double expect_over_events(const std::array<double, kNumEventTypes>& probs,
                          ExpectationMode mode, F&& f) {
  if (mode == ExpectationMode::BernoulliApprox) {
    double p = probs[0] + probs[1] + probs[2];
    if (p > 1.0) p = 1.0;
    return (1.0 - p) * f(0) + p * f(1);
  }
  double acc = 0.0;
  for (int outcome = 0; outcome < 8; ++outcome) {
    double w = 1.0;
    int count = 0;
    for (int e = 0; e < kNumEventTypes; ++e) {
      const bool hit = (outcome >> e) & 1;
      w *= hit ? probs[static_cast<size_t>(e)] : 1.0 - probs[static_cast<size_t>(e)];
      count += hit;
    }
    acc += w * f(count);
  }
  return acc;
}

double mean_event_count(const std::array<double, kNumEventTypes>& probs,
                        ExpectationMode mode);

// d E[K_{t+1}^i] / d u_{t-k}^i evaluated on the expected path. Lags up to and
// including t are defined (the mitigation at step t-k must exist); k > t is a
// domain error.
double private_gradient(const SimplifiedWorld& world, int company, int lag);

// d E[K_{t+1}^j] / d u_t^i for j != i. Nonnegative for every valid world.
double cross_gradient(const SimplifiedWorld& world, int company_i, int company_j);

// d E[sum_l K_{t+1}^l] / d u_{t-k}^i = private + sum of cross terms.
double social_gradient(const SimplifiedWorld& world, int company, int lag);

// Magnitudes of the two opposing k=0 terms; gradient = benefit - cost. Used
// to express tolerances relative to the natural scale of the expression.
struct PrivateGradientTerms {
  double cost = 0.0;     // E[K_{t+1}]/(1-u)
  double benefit = 0.0;  // responsiveness-driven term
};
PrivateGradientTerms private_gradient_terms(const SimplifiedWorld& world, int company);

// Uniform-lambda value at which the k=0 private gradient of `company` changes
// sign under the zero-mitigation policy. Requires a uniform lambda profile or
// a single event with nonzero growth rate; degenerate worlds (no capital,
// t = 0, zero loss, zero growth rates) raise NoFlipError.
double signflip_lambda(const SimplifiedWorld& world, int company);

enum class DilemmaZone { NoDilemmaLow, Dilemma, NoDilemmaHigh };

struct ThresholdResult {
  double lambda_low = 0.0;       // first social gradient turns positive
  double lambda_critical = 0.0;  // first private gradient turns positive
  DilemmaZone zone = DilemmaZone::NoDilemmaLow;
};

const char* to_string(DilemmaZone zone);

// Treats the world's lambda vector as the unit responsiveness profile and
// classifies the scale `lambda` against the two sign-change thresholds found
// by bisection over all companies and lags k in [0, t). Requires action == 0.
ThresholdResult classify_zone(const SimplifiedWorld& world, double lambda);

// Full gradient table for one world.
struct GradientReport {
  std::vector<std::vector<double>> private_grads;  // [company][lag]
  std::vector<std::vector<double>> social_grads;   // [company][lag]
  std::vector<std::vector<double>> cross_grads;    // [i][j], zero diagonal
};
GradientReport compute_gradient_report(const SimplifiedWorld& world, int num_lags);

// Market total wealth reached by a fixed action profile in the full
// environment: companies below `num_cooperators` spend `cooperator_rate` of
// interim capital every step, the rest spend zero; investors hold the full
// market every step.
double fixed_profile_welfare(const EnvConfig& config, int num_cooperators,
                             double cooperator_rate, std::uint64_t seed);

struct SchellingPoint {
  int num_other_cooperators = 0;
  double welfare_cooperate = 0.0;  // MTW if the focal company cooperates
  double welfare_defect = 0.0;     // MTW if the focal company defects
};

// Monte-Carlo Schelling diagram over cooperator counts in [n_lo, n_hi]
// (welfares averaged over `num_seeds` seeded episodes).
std::vector<SchellingPoint> schelling_curve(const EnvConfig& config,
                                            double cooperator_rate, int n_lo, int n_hi,
                                            int num_seeds, std::uint64_t base_seed);

}  // namespace esg
