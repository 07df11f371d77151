#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esg/errors.hpp"
#include "esg/metrics.hpp"
#include "esg/rng.hpp"

using namespace esg;

namespace {

// brute-force pairwise definition
double gini_oracle(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double a : v)
    for (double b : v) acc += std::abs(a - b);
  return acc / (2.0 * static_cast<double>(v.size() * v.size()) * mean);
}

}  // namespace

TEST_CASE("gini closed cases") {
  CHECK(gini({3.0, 3.0, 3.0, 3.0}) == 0.0);
  CHECK(gini({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(gini({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(gini_oracle({1.0, 0.0, 0.0, 0.0})));
  CHECK_THROWS_AS(gini({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(gini({}), DomainError);
  CHECK_THROWS_AS(gini({1.0, -0.5}), DomainError);
}

TEST_CASE("gini properties on random vectors") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 8);
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(rng.uniform() * 10.0);
    v[0] += 1e-6;  // ensure mass
    const double g = gini(v);
    CHECK(g == doctest::Approx(gini_oracle(v)).epsilon(1e-12));
    CHECK(g >= 0.0);
    CHECK(g < 1.0);
    CHECK(g <= (n - 1.0) / n + 1e-12);
    // scale invariance
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= 37.5;
    CHECK(gini(scaled) == doctest::Approx(g).epsilon(1e-12));
    // permutation invariance
    std::vector<double> shuffled(v.rbegin(), v.rend());
    CHECK(gini(shuffled) == doctest::Approx(g).epsilon(1e-12));
  }
}

TEST_CASE("price of anarchy") {
  CHECK(empirical_price_of_anarchy(4000.0, 4000.0) == 1.0);
  CHECK(empirical_price_of_anarchy(4000.0, 2000.0) == 2.0);
  CHECK_THROWS_AS(empirical_price_of_anarchy(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(empirical_price_of_anarchy(1.0, -2.0), DomainError);
}

TEST_CASE("market total wealth") {
  EnvConfig cfg;
  cfg.num_companies = 2;
  cfg.num_investors = 1;
  cfg.loss_coefficients = {0.1, 0.1};
  cfg.initial_company_capital = {10.0, 5.0};
  cfg.initial_investor_cash = {3.0};
  cfg.esg_weights = {0.0};
  EnvState st;
  st.company_capital = {10.0, 5.0};
  st.investor_cash = {3.0};
  st.holdings = {2.0, 1.0};
  CHECK(market_total_wealth(st, cfg) == doctest::Approx(21.0));
  EnvState zero;
  zero.company_capital = {0.0, 0.0};
  zero.investor_cash = {0.0};
  zero.holdings = {0.0, 0.0};
  CHECK(market_total_wealth(zero, cfg) == 0.0);
}

TEST_CASE("summarize_run aggregates and is seed-stable") {
  EnvConfig cfg;
  cfg.num_companies = 2;
  cfg.num_investors = 1;
  cfg.episode_length = 5;
  cfg.loss_coefficients = {0.1, 0.1};
  cfg.initial_company_capital = {10.0, 10.0};
  cfg.initial_investor_cash = {4.0};
  cfg.esg_weights = {0.0};

  auto run_one = [&](std::uint64_t seed) {
    Environment env(cfg);
    env.reset(seed);
    Trajectory tr;
    JointAction act;
    act.mitigation = {0.01, 0.0};
    act.portfolio = {1, 1};
    for (int t = 0; t < cfg.episode_length; ++t) {
      StepOutcome out = env.step(act);
      tr.rewards.push_back(out.rewards);
    }
    tr.final_state = env.state();
    return tr;
  };

  const Trajectory a = run_one(3);
  const RunSummary s1 = summarize_run({a}, cfg);
  CHECK(s1.market_total_wealth ==
        doctest::Approx(market_total_wealth(a.final_state, cfg)));
  CHECK(s1.final_mitigation == doctest::Approx(a.final_state.cumulative_mitigation));
  CHECK(s1.final_climate_risk == doctest::Approx(a.final_state.total_risk));
  double ret0 = 0.0;
  for (const auto& r : a.rewards) ret0 += r[0];
  CHECK(s1.agent_returns[0] == doctest::Approx(ret0));

  const RunSummary s2 = summarize_run({run_one(3)}, cfg);
  CHECK(s1.market_total_wealth == s2.market_total_wealth);
  CHECK(s1.gini_investment == s2.gini_investment);

  // multi-trajectory mean equals external aggregation
  const Trajectory b = run_one(4);
  const RunSummary both = summarize_run({a, b}, cfg);
  const RunSummary sb = summarize_run({b}, cfg);
  CHECK(both.market_total_wealth ==
        doctest::Approx(0.5 * (s1.market_total_wealth + sb.market_total_wealth)));
  CHECK_THROWS_AS(summarize_run({}, cfg), DomainError);
}

TEST_CASE("risk floor bound holds on any trajectory") {
  EnvConfig cfg;
  double floor = 1.0;
  for (const auto& ev : cfg.events) floor *= 1.0 - ev.p0;
  floor = 1.0 - floor;
  CHECK(floor == doctest::Approx(0.48).epsilon(1e-12));
  Environment env(cfg);
  env.reset(9);
  JointAction act;
  act.mitigation.assign(5, 0.3);
  act.portfolio.assign(15, 1);
  for (int t = 0; t < 40; ++t) {
    env.step(act);
    CHECK(env.state().total_risk >= floor - 1e-12);
  }
}
