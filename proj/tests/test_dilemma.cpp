#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dilemma_oracles.hpp"
#include "esg/dilemma.hpp"
#include "esg/errors.hpp"
#include "esg/metrics.hpp"

using namespace esg;

namespace {

SimplifiedWorld base_world() {
  SimplifiedWorld w;
  w.capital = {40.0, 25.0, 60.0};
  w.loss = {0.1, 0.15, 0.08};
  w.mu = {0.002, 0.0015, 0.002};
  w.lambda = {0.003, 0.002, 0.004};
  w.p0 = {0.2, 0.1875, 0.2};
  w.market_growth = 0.05;
  w.t = 20;
  w.validate();
  return w;
}

}  // namespace

TEST_CASE("analytic k=0 gradients match enumeration finite differences") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    SimplifiedWorld w = oracle::random_world(rng);
    for (int i = 0; i < w.num_companies(); ++i) {
      const double analytic = private_gradient(w, i, 0);
      const double fd = oracle::fd_private_k0(w, i);
      CHECK(analytic == doctest::Approx(fd).epsilon(1e-8));
      const double analytic_social = social_gradient(w, i, 0);
      const double fd_social = oracle::fd_social_k0(w, i);
      CHECK(analytic_social == doctest::Approx(fd_social).epsilon(1e-8));
    }
  }
}

TEST_CASE("analytic lag gradients match expected-path finite differences") {
  Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    SimplifiedWorld w = oracle::random_world(rng, 1, 3, 3, 25);
    const int lags[] = {1, 2, w.t / 2, w.t};
    for (int lag : lags) {
      for (int i = 0; i < w.num_companies(); ++i) {
        const double analytic = private_gradient(w, i, lag);
        const double fd = oracle::fd_private_lag(w, i, lag);
        CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
        const double analytic_social = social_gradient(w, i, lag);
        const double fd_social = oracle::fd_social_lag(w, i, lag);
        CHECK(analytic_social == doctest::Approx(fd_social).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("gradients match Monte-Carlo finite differences within 3 SE") {
  Rng rng(11);
  Rng mc_rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    SimplifiedWorld w = oracle::random_world(rng);
    const int i = 0;
    const double analytic = private_gradient(w, i, 0);
    const auto est = oracle::mc_fd_private_k0(w, i, 1e-4, 200000, mc_rng);
    CHECK(std::abs(analytic - est.mean) <= 3.0 * est.std_error);
  }
}

TEST_CASE("zero responsiveness makes every gradient negative") {
  SimplifiedWorld w = base_world();
  w.lambda = {0.0, 0.0, 0.0};
  for (int i = 0; i < w.num_companies(); ++i) {
    for (int k = 0; k <= w.t; ++k) {
      CHECK(private_gradient(w, i, k) < 0.0);
      CHECK(social_gradient(w, i, k) < 0.0);
    }
  }
  // the k=0 value is exactly -E[K_{t+1}]/(1-u)
  const double expected =
      -oracle::expected_next_capital(w, 0, 0, 0.0) / (1.0 - w.action);
  CHECK(private_gradient(w, 0, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("t = 0 gradient is strictly negative (no responsiveness term yet)") {
  SimplifiedWorld w = base_world();
  w.t = 0;
  const double g = private_gradient(w, 0, 0);
  CHECK(g < 0.0);
  CHECK(g == doctest::Approx(-oracle::expected_next_capital(w, 0, 0, 0.0)).epsilon(1e-12));
}

TEST_CASE("lag beyond the first step is a domain error") {
  SimplifiedWorld w = base_world();
  CHECK_THROWS_AS(private_gradient(w, 0, w.t + 1), DomainError);
  CHECK_THROWS_AS(social_gradient(w, 0, -1), DomainError);
  CHECK_THROWS_AS(private_gradient(w, 99, 0), DomainError);
}

TEST_CASE("cross gradients") {
  SimplifiedWorld w = base_world();
  SUBCASE("zero responsiveness gives exactly zero") {
    SimplifiedWorld z = w.with_uniform_lambda(0.0);
    CHECK(cross_gradient(z, 0, 1) == 0.0);
  }
  SUBCASE("positive responsiveness and capital give strictly positive") {
    CHECK(cross_gradient(w, 0, 1) > 0.0);
    CHECK(cross_gradient(w, 2, 0) > 0.0);
  }
  SUBCASE("matches the enumeration oracle") {
    CHECK(cross_gradient(w, 0, 2) ==
          doctest::Approx(oracle::fd_cross_k0(w, 0, 2)).epsilon(1e-8));
  }
  SUBCASE("symmetric worlds have symmetric cross terms") {
    SimplifiedWorld s = w;
    s.capital = {50.0, 50.0};
    s.loss = {0.1, 0.1};
    CHECK(cross_gradient(s, 0, 1) == doctest::Approx(cross_gradient(s, 1, 0)).epsilon(1e-12));
  }
  SUBCASE("same company is a domain error") {
    CHECK_THROWS_AS(cross_gradient(w, 1, 1), DomainError);
  }
}

TEST_CASE("social exceeds private strictly on random worlds") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    SimplifiedWorld w = oracle::random_world(rng, 2, 4);
    for (int i = 0; i < w.num_companies(); ++i) {
      for (int k : {0, w.t / 2, w.t}) {
        CHECK(social_gradient(w, i, k) > private_gradient(w, i, k));
      }
    }
  }
}

TEST_CASE("single company: social equals private") {
  Rng rng(5);
  SimplifiedWorld w = oracle::random_world(rng, 1, 1);
  for (int k : {0, 1, w.t}) {
    CHECK(social_gradient(w, 0, k) == doctest::Approx(private_gradient(w, 0, k)).epsilon(1e-15));
  }
}

TEST_CASE("gradient report decomposition identity") {
  SimplifiedWorld w = base_world();
  GradientReport rep = compute_gradient_report(w, w.t);
  for (int i = 0; i < w.num_companies(); ++i) {
    double cross_sum = 0.0;
    for (int j = 0; j < w.num_companies(); ++j) {
      CHECK(rep.cross_grads[i][j] >= 0.0);
      cross_sum += rep.cross_grads[i][j];
    }
    CHECK(rep.social_grads[i][0] ==
          doctest::Approx(rep.private_grads[i][0] + cross_sum).epsilon(1e-12));
  }
}

TEST_CASE("positive combinations preserve the social-private inequality") {
  // sum_l alpha_l dE[K^l]/du_i > alpha_i dE[K^i]/du_i for random alpha > 0
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    SimplifiedWorld w = oracle::random_world(rng, 2, 4);
    const int i = static_cast<int>(rng.uniform() * w.num_companies());
    std::vector<double> alpha;
    for (int l = 0; l < w.num_companies(); ++l) alpha.push_back(0.1 + 5.0 * rng.uniform());
    double weighted = alpha[i] * private_gradient(w, i, 0);
    for (int j = 0; j < w.num_companies(); ++j)
      if (j != i) weighted += alpha[j] * cross_gradient(w, i, j);
    CHECK(weighted > alpha[i] * private_gradient(w, i, 0));
  }
}

TEST_CASE("enumeration and Bernoulli approximation agree to O(P^2)") {
  // quadratic functional where the two expectations differ
  const auto f = [](int x) { return (1.0 - 0.2 * x) * (1.0 - 0.2 * x); };
  double prev_gap = 0.0;
  for (double scale : {1.0, 0.1, 0.01}) {
    std::array<double, 3> probs = {0.3 * scale, 0.25 * scale, 0.2 * scale};
    const double exact = expect_over_events(probs, ExpectationMode::ExactEnumeration, f);
    const double approx = expect_over_events(probs, ExpectationMode::BernoulliApprox, f);
    const double gap = std::abs(exact / approx - 1.0);
    if (prev_gap > 0.0) CHECK(gap < prev_gap * 0.015);  // two orders per decade
    prev_gap = gap;
  }
  // and the means agree exactly while the total probability stays below 1
  std::array<double, 3> probs = {0.3, 0.25, 0.2};
  CHECK(mean_event_count(probs, ExpectationMode::ExactEnumeration) ==
        doctest::Approx(mean_event_count(probs, ExpectationMode::BernoulliApprox))
            .epsilon(1e-14));
}

TEST_CASE("sign-flip lambda") {
  SimplifiedWorld w = base_world().with_uniform_lambda(0.001);
  const int i = 1;
  const double flip = signflip_lambda(w, i);
  const PrivateGradientTerms terms = private_gradient_terms(w, i);
  const double scale = std::max(std::abs(terms.cost), std::abs(terms.benefit));

  SUBCASE("defining equation holds at the returned value") {
    const double at_flip = private_gradient(w.with_uniform_lambda(flip), i, 0);
    CHECK(std::abs(at_flip) <= 1e-9 * scale);
  }
  SUBCASE("sign is negative just below and positive just above") {
    CHECK(private_gradient(w.with_uniform_lambda(flip * (1.0 - 1e-4)), i, 0) < 0.0);
    CHECK(private_gradient(w.with_uniform_lambda(flip * (1.0 + 1e-4)), i, 0) > 0.0);
  }
  SUBCASE("doubling the capitals halves the flip point") {
    SimplifiedWorld big = w;
    for (double& k : big.capital) k *= 2.0;
    CHECK(signflip_lambda(big, i) == doctest::Approx(flip / 2.0).epsilon(1e-9));
  }
  SUBCASE("degenerate worlds have no flip") {
    SimplifiedWorld z = w;
    z.t = 0;
    CHECK_THROWS_AS(signflip_lambda(z, i), NoFlipError);
    SimplifiedWorld zero_cap = w;
    zero_cap.capital[i] = 0.0;
    CHECK_THROWS_AS(signflip_lambda(zero_cap, i), NoFlipError);
  }
}

TEST_CASE("zone classification produces the three-zone ordering") {
  SimplifiedWorld w = base_world().with_uniform_lambda(1.0);  // unit profile
  const ThresholdResult low = classify_zone(w, 1e-9);
  CHECK(low.zone == DilemmaZone::NoDilemmaLow);
  CHECK(low.lambda_low > 0.0);
  CHECK(low.lambda_low <= low.lambda_critical);

  const double mid = 0.5 * (low.lambda_low + low.lambda_critical);
  CHECK(classify_zone(w, mid).zone == DilemmaZone::Dilemma);
  CHECK(classify_zone(w, low.lambda_critical * 1.5).zone == DilemmaZone::NoDilemmaHigh);

  SUBCASE("just below lambda_critical is still a dilemma") {
    const double eps = low.lambda_critical * 1e-5;
    CHECK(classify_zone(w, low.lambda_critical - eps).zone == DilemmaZone::Dilemma);
  }
  SUBCASE("thresholds agree with the k=0 sign-flip when t=...") {
    // the critical threshold cannot exceed the smallest k=0 flip over firms
    double min_flip = 1e300;
    for (int i = 0; i < w.num_companies(); ++i)
      min_flip = std::min(min_flip, signflip_lambda(w, i));
    CHECK(low.lambda_critical <= min_flip * (1.0 + 1e-6));
  }
}

TEST_CASE("dilemma zone is nonempty for a family of random multi-company worlds") {
  Rng rng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 20; ++trial) {
    SimplifiedWorld w = oracle::random_world(rng, 2, 4, 5, 30).with_uniform_lambda(1.0);
    const ThresholdResult r = classify_zone(w, 1.0);
    CHECK(r.lambda_low <= r.lambda_critical * (1.0 + 1e-9));
    if (r.lambda_low < r.lambda_critical * (1.0 - 1e-6)) ++nonempty;
  }
  CHECK(nonempty == 20);
}

TEST_CASE("zone classification rejects ill-posed inputs") {
  SimplifiedWorld w = base_world();
  w.action = 0.05;
  CHECK_THROWS_AS(classify_zone(w, 1.0), DomainError);
  SimplifiedWorld none = base_world();
  none.mu = {0.0, 0.0, 0.0};  // responsiveness can never flip a gradient
  CHECK_THROWS_AS(classify_zone(none, 1.0), SearchError);
}

TEST_CASE("world_from_env folds investors and grows capital") {
  EnvConfig cfg;  // 5 companies, 3 investors, defaults
  SimplifiedWorld w0 = world_from_env(cfg, 0);
  CHECK(w0.capital[0] == doctest::Approx(40.0));  // 20 + investor 0's 20
  CHECK(w0.capital[3] == doctest::Approx(20.0));
  SimplifiedWorld w10 = world_from_env(cfg, 10);
  CHECK(w10.t == 10);
  CHECK(w10.capital[0] > 0.0);
}

TEST_CASE("schelling curve") {
  EnvConfig cfg;
  cfg.episode_length = 30;  // keep the test quick
  const auto points = schelling_curve(cfg, 0.005, 0, 4, 3, 7);
  CHECK(points.size() == 5);

  SUBCASE("all-defect column equals the no-mitigation simulation") {
    double acc = 0.0;
    for (int s = 0; s < 3; ++s)
      acc += fixed_profile_welfare(cfg, 0, 0.005, hash_combine(7, s));
    CHECK(points[0].welfare_defect == doctest::Approx(acc / 3.0).epsilon(1e-12));
  }
  SUBCASE("deterministic under a fixed seed set") {
    const auto again = schelling_curve(cfg, 0.005, 0, 4, 3, 7);
    for (size_t i = 0; i < points.size(); ++i) {
      CHECK(points[i].welfare_cooperate == again[i].welfare_cooperate);
      CHECK(points[i].welfare_defect == again[i].welfare_defect);
    }
  }
  SUBCASE("cooperator columns shift by one cooperator count") {
    CHECK(points[1].welfare_defect == doctest::Approx(points[0].welfare_cooperate));
  }
}

TEST_CASE("fixed-profile welfare at the shipped defaults" * doctest::timeout(300)) {
  // Stochastic smoke test of the calibration: a zero-mitigation economy ends
  // near MTW 4000, and the flat 0.5%-of-capital cooperative profile lands
  // below it at the default responsiveness (that profile only pays off once
  // alpha scales the responsiveness up).
  EnvConfig cfg;  // full default game, alpha = 1
  // exact expectation: every unit of invested wealth compounds by
  // (1+gamma)(1 - L * E[X_t]) per step, and the climate draws are
  // independent across steps
  double expected_defect = cfg.initial_total_wealth();
  for (int j = 0; j < cfg.num_investors; ++j)
    expected_defect += cfg.initial_investor_cash[j];  // holdings counted as wealth too
  for (int t = 0; t < cfg.episode_length; ++t) {
    double mean_x = 0.0;
    for (const auto& ev : cfg.events) mean_x += std::min(1.0, ev.mu * t + ev.p0);
    expected_defect *= (1.0 + cfg.market_growth) * (1.0 - 0.1 * mean_x);
  }
  CHECK(expected_defect == doctest::Approx(4000.0).epsilon(0.15));

  double defect = 0.0, coop = 0.0;
  const int seeds = 16;
  for (int s = 0; s < seeds; ++s) {
    defect += fixed_profile_welfare(cfg, 0, 0.005, hash_combine(41, s)) / seeds;
    coop += fixed_profile_welfare(cfg, cfg.num_companies, 0.005, hash_combine(41, s)) /
            seeds;
  }
  // episode wealth is heavy-tailed; the paired sample comparison is the
  // stable part of the check
  CHECK(defect == doctest::Approx(expected_defect).epsilon(0.5));
  CHECK(coop < defect);

  // at alpha = 70 the same flat profile beats defection: mitigation is now
  // socially worthwhile
  EnvConfig strong = cfg;
  strong.alpha = 70.0;
  double coop70 = 0.0, defect70 = 0.0;
  for (int s = 0; s < seeds; ++s) {
    defect70 += fixed_profile_welfare(strong, 0, 0.005, hash_combine(42, s)) / seeds;
    coop70 +=
        fixed_profile_welfare(strong, cfg.num_companies, 0.005, hash_combine(42, s)) /
        seeds;
  }
  CHECK(coop70 > defect70);
}
