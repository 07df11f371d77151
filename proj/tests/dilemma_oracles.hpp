// Test-only oracles for the analytic gradient engine. Everything here
// recomputes expectations from first principles (enumeration over event
// outcomes, brute-force path perturbation, Monte-Carlo sampling) without
// touching the gradient code paths under test.
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "esg/dilemma.hpp"
#include "esg/rng.hpp"

namespace esg::oracle {

// Expected next-step capital of one company when `perturbed` company's step-t
// mitigation is `u_i` and everyone else plays the world's candidate action.
// Exact enumeration over the 8 joint event outcomes; capitals at step t are
// the world's (deterministic) values.
inline double expected_next_capital(const SimplifiedWorld& w, int company,
                                    int perturbed, double u_perturbed) {
  const int M = w.num_companies();
  double pool = 0.0;
  for (int l = 0; l < M; ++l)
    pool += (l == perturbed ? u_perturbed : w.action) * w.capital[l];

  std::array<double, 3> probs{};
  for (int e = 0; e < 3; ++e)
    probs[e] = w.mu[e] * w.t / (1.0 + w.lambda[e] * pool) + w.p0[e];

  const double u_own = company == perturbed ? u_perturbed : w.action;
  const double scale = (1.0 - u_own) * (1.0 + w.market_growth) * w.capital[company];

  double acc = 0.0;
  for (int outcome = 0; outcome < 8; ++outcome) {
    double weight = 1.0;
    int x = 0;
    for (int e = 0; e < 3; ++e) {
      const bool hit = (outcome >> e) & 1;
      weight *= hit ? probs[e] : 1.0 - probs[e];
      x += hit;
    }
    acc += weight * scale * (1.0 - x * w.loss[company]);
  }
  return acc;
}

// Central finite difference of the enumeration oracle w.r.t. u_t^i.
inline double fd_private_k0(const SimplifiedWorld& w, int company, double h = 1e-6) {
  const double up = expected_next_capital(w, company, company, w.action + h);
  const double dn = expected_next_capital(w, company, company, w.action - h);
  return (up - dn) / (2.0 * h);
}

inline double fd_cross_k0(const SimplifiedWorld& w, int i, int j, double h = 1e-6) {
  const double up = expected_next_capital(w, j, i, w.action + h);
  const double dn = expected_next_capital(w, j, i, w.action - h);
  return (up - dn) / (2.0 * h);
}

inline double fd_social_k0(const SimplifiedWorld& w, int i, double h = 1e-6) {
  double acc = 0.0;
  for (int j = 0; j < w.num_companies(); ++j) {
    const double up = expected_next_capital(w, j, i, w.action + h);
    const double dn = expected_next_capital(w, j, i, w.action - h);
    acc += (up - dn) / (2.0 * h);
  }
  return acc;
}

// Expected final capital when company i additionally spends `u_lag` at step
// t-k (everything else zero-mitigation history): brute-force walk of the
// expected path, used to validate the lag recurrence independently.
inline double expected_final_capital_lagged(const SimplifiedWorld& w, int company,
                                            int spender, int lag, double u_lag) {
  const int M = w.num_companies();
  const int s0 = w.t - lag;
  // reconstruct capitals at s0 by dividing out expected zero-history growth
  std::vector<std::vector<double>> caps(static_cast<size_t>(w.t) + 1,
                                        std::vector<double>(static_cast<size_t>(M)));
  caps[static_cast<size_t>(w.t)] = w.capital;
  for (int s = w.t - 1; s >= s0; --s) {
    std::array<double, 3> probs{};
    double mean_x = 0.0;
    for (int e = 0; e < 3; ++e) {
      probs[e] = w.mu[e] * s + w.p0[e];
      mean_x += probs[e];
    }
    for (int l = 0; l < M; ++l)
      caps[static_cast<size_t>(s)][static_cast<size_t>(l)] =
          caps[static_cast<size_t>(s) + 1][static_cast<size_t>(l)] /
          ((1.0 + w.market_growth) * (1.0 - w.loss[l] * mean_x));
  }
  // now walk forward with the perturbed action at s0 and the candidate at t
  std::vector<double> k = caps[static_cast<size_t>(s0)];
  double pool = 0.0;
  for (int s = s0; s <= w.t; ++s) {
    std::vector<double> u(static_cast<size_t>(M), s == w.t ? w.action : 0.0);
    if (s == s0) u[static_cast<size_t>(spender)] += u_lag;
    for (int l = 0; l < M; ++l) pool += u[static_cast<size_t>(l)] * k[static_cast<size_t>(l)];
    double mean_x = 0.0;
    for (int e = 0; e < 3; ++e)
      mean_x += w.mu[e] * s / (1.0 + w.lambda[e] * pool) + w.p0[e];
    for (int l = 0; l < M; ++l)
      k[static_cast<size_t>(l)] *= (1.0 - u[static_cast<size_t>(l)]) *
                                   (1.0 + w.market_growth) *
                                   (1.0 - w.loss[l] * mean_x);
  }
  return k[static_cast<size_t>(company)];
}

inline double fd_private_lag(const SimplifiedWorld& w, int company, int lag,
                             double h = 1e-6) {
  const double up = expected_final_capital_lagged(w, company, company, lag, h);
  const double dn = expected_final_capital_lagged(w, company, company, lag, -h);
  return (up - dn) / (2.0 * h);
}

inline double fd_social_lag(const SimplifiedWorld& w, int i, int lag, double h = 1e-6) {
  double acc = 0.0;
  for (int j = 0; j < w.num_companies(); ++j) {
    const double up = expected_final_capital_lagged(w, j, i, lag, h);
    const double dn = expected_final_capital_lagged(w, j, i, lag, -h);
    acc += (up - dn) / (2.0 * h);
  }
  return acc;
}

// Monte-Carlo estimate of E[K_{t+1}^company] with sampled events at step t.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

inline McEstimate mc_next_capital(const SimplifiedWorld& w, int company, int perturbed,
                                  double u_perturbed, long samples, Rng& rng) {
  const int M = w.num_companies();
  double pool = 0.0;
  for (int l = 0; l < M; ++l)
    pool += (l == perturbed ? u_perturbed : w.action) * w.capital[l];
  std::array<double, 3> probs{};
  for (int e = 0; e < 3; ++e)
    probs[e] = w.mu[e] * w.t / (1.0 + w.lambda[e] * pool) + w.p0[e];
  const double u_own = company == perturbed ? u_perturbed : w.action;
  const double scale = (1.0 - u_own) * (1.0 + w.market_growth) * w.capital[company];

  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    int x = 0;
    for (int e = 0; e < 3; ++e) x += rng.bernoulli(probs[e]) ? 1 : 0;
    const double v = scale * (1.0 - x * w.loss[company]);
    sum += v;
    sum_sq += v * v;
  }
  McEstimate est;
  est.mean = sum / static_cast<double>(samples);
  const double var =
      (sum_sq / static_cast<double>(samples) - est.mean * est.mean) /
      static_cast<double>(samples - 1);
  est.std_error = std::sqrt(std::max(0.0, var));
  return est;
}

// Central MC finite difference with independent draws per side; the standard
// error combines both estimates.
inline McEstimate mc_fd_private_k0(const SimplifiedWorld& w, int company, double h,
                                   long samples, Rng& rng) {
  const McEstimate up = mc_next_capital(w, company, company, w.action + h, samples, rng);
  const McEstimate dn = mc_next_capital(w, company, company, w.action - h, samples, rng);
  McEstimate est;
  est.mean = (up.mean - dn.mean) / (2.0 * h);
  est.std_error = std::sqrt(up.std_error * up.std_error + dn.std_error * dn.std_error) /
                  (2.0 * h);
  return est;
}

// Uniformly random valid worlds for property checks.
inline SimplifiedWorld random_world(Rng& rng, int min_companies = 1,
                                    int max_companies = 4, int min_t = 1,
                                    int max_t = 40) {
  SimplifiedWorld w;
  const int m = min_companies +
                static_cast<int>(rng.uniform() * (max_companies - min_companies + 1));
  w.t = min_t + static_cast<int>(rng.uniform() * (max_t - min_t + 1));
  for (int i = 0; i < m; ++i) {
    w.capital.push_back(5.0 + 195.0 * rng.uniform());
    w.loss.push_back(0.02 + 0.28 * rng.uniform());
  }
  for (int e = 0; e < 3; ++e) {
    w.p0[e] = 0.01 + 0.2 * rng.uniform();
    w.mu[e] = rng.uniform() * (1.0 - w.p0[e]) / w.t * 0.9;
    w.lambda[e] = std::pow(10.0, -5.0 + 3.0 * rng.uniform());
  }
  w.market_growth = 0.01 + 0.1 * rng.uniform();
  w.action = 0.0;
  w.validate();
  return w;
}

}  // namespace esg::oracle
