#include "esg/dilemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "esg/errors.hpp"
#include "esg/metrics.hpp"

namespace esg {

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) throw DomainError("simplified world: " + what);
}

// Expected path quantities at every step s in [0, t]. Prior mitigation is
// zero by assumption, so U_s = 0 for s < t and only the candidate action at
// step t moves the mitigation pool.
struct Path {
  int t = 0;
  double action = 0.0;
  std::vector<double> mean_events;          // E[X_s]
  std::vector<double> responsiveness;       // S(s) = sum_e lambda_e mu_e s / (1+lambda_e U_s)^2
  std::vector<std::vector<double>> capital; // [s][company]

  double u_at(int s) const { return s == t ? action : 0.0; }
};

std::array<double, kNumEventTypes> probs_at(const SimplifiedWorld& w, int s, double u_pool) {
  std::array<double, kNumEventTypes> p{};
  for (int e = 0; e < kNumEventTypes; ++e) {
    const auto ei = static_cast<size_t>(e);
    p[ei] = w.mu[ei] * s / (1.0 + w.lambda[ei] * u_pool) + w.p0[ei];
  }
  return p;
}

Path build_path(const SimplifiedWorld& w) {
  const int M = w.num_companies();
  Path path;
  path.t = w.t;
  path.action = w.action;
  path.mean_events.resize(static_cast<size_t>(w.t) + 1);
  path.responsiveness.resize(static_cast<size_t>(w.t) + 1);
  path.capital.assign(static_cast<size_t>(w.t) + 1, std::vector<double>(static_cast<size_t>(M)));

  path.capital[static_cast<size_t>(w.t)] = w.capital;
  double pool_t = 0.0;
  for (double k : w.capital) pool_t += w.action * k;

  for (int s = w.t; s >= 0; --s) {
    const double pool = s == w.t ? pool_t : 0.0;
    const auto probs = probs_at(w, s, pool);
    path.mean_events[static_cast<size_t>(s)] = mean_event_count(probs, w.mode);
    double resp = 0.0;
    for (int e = 0; e < kNumEventTypes; ++e) {
      const auto ei = static_cast<size_t>(e);
      const double d = 1.0 + w.lambda[ei] * pool;
      resp += w.lambda[ei] * w.mu[ei] * s / (d * d);
    }
    path.responsiveness[static_cast<size_t>(s)] = resp;
    if (s < w.t) {
      // reconstruct the earlier expected capitals by dividing out growth
      for (int i = 0; i < M; ++i) {
        const double growth = (1.0 + w.market_growth) *
                              (1.0 - w.loss[static_cast<size_t>(i)] *
                                         path.mean_events[static_cast<size_t>(s)]);
        path.capital[static_cast<size_t>(s)][static_cast<size_t>(i)] =
            path.capital[static_cast<size_t>(s) + 1][static_cast<size_t>(i)] / growth;
      }
    }
  }
  return path;
}

double growth_factor(const SimplifiedWorld& w, const Path& p, int company, int s) {
  return (1.0 - p.u_at(s)) * (1.0 + w.market_growth) *
         (1.0 - w.loss[static_cast<size_t>(company)] * p.mean_events[static_cast<size_t>(s)]);
}

// d E[K_{s+1}^i] / d u_s^i contributions at the base step s0 of the
// recurrence: the direct cost of diverting capital plus the event-probability
// channel of the same step.
double base_private(const SimplifiedWorld& w, const Path& p, int i, int s0) {
  const double u = p.u_at(s0);
  const double c = (1.0 - u) * (1.0 + w.market_growth);
  const double k = p.capital[static_cast<size_t>(s0)][static_cast<size_t>(i)];
  const double li = w.loss[static_cast<size_t>(i)];
  const double cost = (1.0 + w.market_growth) *
                      (1.0 - li * p.mean_events[static_cast<size_t>(s0)]) * k;
  const double benefit = c * li * k * k * p.responsiveness[static_cast<size_t>(s0)];
  return -cost + benefit;
}

// Probability channel of step s for capital j, opened by mitigation spent at
// step s0 (dU/du is the interim capital of the spender at s0).
double channel(const SimplifiedWorld& w, const Path& p, int spender, int j, int s,
               int s0) {
  const double c = (1.0 - p.u_at(s)) * (1.0 + w.market_growth);
  return c * w.loss[static_cast<size_t>(j)] *
         p.capital[static_cast<size_t>(s)][static_cast<size_t>(j)] *
         p.capital[static_cast<size_t>(s0)][static_cast<size_t>(spender)] *
         p.responsiveness[static_cast<size_t>(s)];
}

double private_gradient_impl(const SimplifiedWorld& w, const Path& p, int i, int lag) {
  const int s0 = w.t - lag;
  double g = base_private(w, p, i, s0);
  for (int s = s0 + 1; s <= w.t; ++s)
    g = channel(w, p, i, i, s, s0) + growth_factor(w, p, i, s) * g;
  return g;
}

double cross_gradient_impl(const SimplifiedWorld& w, const Path& p, int i, int j,
                           int lag) {
  const int s0 = w.t - lag;
  double g = channel(w, p, i, j, s0, s0);
  for (int s = s0 + 1; s <= w.t; ++s)
    g = channel(w, p, i, j, s, s0) + growth_factor(w, p, j, s) * g;
  return g;
}

void check_company(const SimplifiedWorld& w, int company) {
  need(company >= 0 && company < w.num_companies(), "company index out of range");
}

void check_lag(const SimplifiedWorld& w, int lag) {
  if (lag < 0 || lag > w.t) {
    std::ostringstream os;
    os << "lag " << lag << " has no action step (t = " << w.t << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

void SimplifiedWorld::validate() const {
  need(!capital.empty(), "needs at least one company");
  need(loss.size() == capital.size(), "loss vector size mismatch");
  for (double k : capital) need(k >= 0.0 && std::isfinite(k), "capital must be >= 0");
  for (double l : loss) need(l >= 0.0 && l <= 1.0, "loss must be in [0,1]");
  need(market_growth >= 0.0 && std::isfinite(market_growth), "market growth must be >= 0");
  need(t >= 0, "t must be >= 0");
  need(action >= 0.0 && action < 1.0, "action must be in [0,1)");
  double sum_p_end = 0.0;
  for (int e = 0; e < kNumEventTypes; ++e) {
    const auto ei = static_cast<size_t>(e);
    need(mu[ei] >= 0.0 && std::isfinite(mu[ei]), "mu must be >= 0");
    need(lambda[ei] >= 0.0 && std::isfinite(lambda[ei]), "lambda must be >= 0");
    need(p0[ei] >= 0.0 && p0[ei] <= 1.0, "p0 must be in [0,1]");
    // No clamping in the analytic model: the unmitigated probabilities must
    // stay valid over the whole horizon.
    need(mu[ei] * t + p0[ei] <= 1.0, "mu*t + p0 exceeds 1 over the horizon");
    sum_p_end += mu[ei] * t + p0[ei];
  }
  for (double l : loss)
    need(1.0 - l * sum_p_end > 0.0, "expected growth factor not positive over horizon");
}

SimplifiedWorld SimplifiedWorld::with_uniform_lambda(double lam) const {
  SimplifiedWorld w = *this;
  w.lambda = {lam, lam, lam};
  return w;
}

SimplifiedWorld SimplifiedWorld::with_lambda_scale(double scale) const {
  SimplifiedWorld w = *this;
  for (auto& l : w.lambda) l *= scale;
  return w;
}

SimplifiedWorld world_from_env(const EnvConfig& config, int t, double action) {
  config.validate();
  SimplifiedWorld w;
  const int M = config.num_companies;
  w.capital = config.initial_company_capital;
  for (int j = 0; j < config.num_investors; ++j)
    w.capital[static_cast<size_t>(j % M)] += config.initial_investor_cash[static_cast<size_t>(j)];
  w.loss = config.loss_coefficients;
  for (int e = 0; e < kNumEventTypes; ++e) {
    const auto ei = static_cast<size_t>(e);
    w.mu[ei] = config.events[ei].mu;
    w.lambda[ei] = config.lambda(e);
    w.p0[ei] = config.events[ei].p0;
  }
  w.market_growth = config.market_growth;
  w.t = t;
  w.action = action;
  w.validate();
  // grow the capitals forward along the expected zero-mitigation path
  for (int s = 0; s < t; ++s) {
    const auto probs = probs_at(w, s, 0.0);
    const double mean_x = mean_event_count(probs, w.mode);
    for (int i = 0; i < M; ++i)
      w.capital[static_cast<size_t>(i)] *=
          (1.0 + w.market_growth) * (1.0 - w.loss[static_cast<size_t>(i)] * mean_x);
  }
  return w;
}

double mean_event_count(const std::array<double, kNumEventTypes>& probs,
                        ExpectationMode mode) {
  return expect_over_events(probs, mode, [](int x) { return static_cast<double>(x); });
}

double private_gradient(const SimplifiedWorld& world, int company, int lag) {
  world.validate();
  check_company(world, company);
  check_lag(world, lag);
  const Path path = build_path(world);
  return private_gradient_impl(world, path, company, lag);
}

double cross_gradient(const SimplifiedWorld& world, int company_i, int company_j) {
  world.validate();
  check_company(world, company_i);
  check_company(world, company_j);
  if (company_i == company_j)
    throw DomainError("cross gradient needs two distinct companies");
  const Path path = build_path(world);
  return cross_gradient_impl(world, path, company_i, company_j, 0);
}

double social_gradient(const SimplifiedWorld& world, int company, int lag) {
  world.validate();
  check_company(world, company);
  check_lag(world, lag);
  const Path path = build_path(world);
  double g = private_gradient_impl(world, path, company, lag);
  for (int j = 0; j < world.num_companies(); ++j)
    if (j != company) g += cross_gradient_impl(world, path, company, j, lag);
  return g;
}

PrivateGradientTerms private_gradient_terms(const SimplifiedWorld& world, int company) {
  world.validate();
  check_company(world, company);
  const Path path = build_path(world);
  const double u = world.action;
  const double c = (1.0 - u) * (1.0 + world.market_growth);
  const double k = path.capital[static_cast<size_t>(world.t)][static_cast<size_t>(company)];
  const double li = world.loss[static_cast<size_t>(company)];
  PrivateGradientTerms terms;
  terms.cost = (1.0 + world.market_growth) *
               (1.0 - li * path.mean_events[static_cast<size_t>(world.t)]) * k;
  terms.benefit = c * li * k * k * path.responsiveness[static_cast<size_t>(world.t)];
  return terms;
}

double signflip_lambda(const SimplifiedWorld& world, int company) {
  world.validate();
  check_company(world, company);
  if (world.action != 0.0)
    throw DomainError("sign-flip is defined under the zero-mitigation policy");
  // A single lambda must control the responsiveness: either a uniform profile
  // or exactly one event with a nonzero growth rate.
  int active = 0;
  for (int e = 0; e < kNumEventTypes; ++e)
    if (world.mu[static_cast<size_t>(e)] > 0.0) ++active;
  const bool uniform = world.lambda[0] == world.lambda[1] && world.lambda[1] == world.lambda[2];
  if (!uniform && active > 1)
    throw DomainError("sign-flip needs a uniform lambda profile or a single event");

  const double k = world.capital[static_cast<size_t>(company)];
  const double li = world.loss[static_cast<size_t>(company)];
  double sum_mu_t = 0.0;
  for (int e = 0; e < kNumEventTypes; ++e) sum_mu_t += world.mu[static_cast<size_t>(e)] * world.t;
  const auto probs = probs_at(world, world.t, 0.0);
  const double mean_x = mean_event_count(probs, world.mode);
  const double expected_shock = 1.0 - li * mean_x;
  if (k <= 0.0 || world.t == 0 || li <= 0.0 || sum_mu_t <= 0.0 || expected_shock <= 0.0) {
    std::ostringstream os;
    os << "no sign flip: capital=" << k << " t=" << world.t << " loss=" << li
       << " sum(mu)*t=" << sum_mu_t;
    throw NoFlipError(os.str());
  }
  return expected_shock / (li * k * sum_mu_t);
}

const char* to_string(DilemmaZone zone) {
  switch (zone) {
    case DilemmaZone::NoDilemmaLow: return "NoDilemmaLow";
    case DilemmaZone::Dilemma: return "Dilemma";
    case DilemmaZone::NoDilemmaHigh: return "NoDilemmaHigh";
  }
  return "?";
}

namespace {

// Worst (largest) gradient over all companies and lags k in [0, t) at a given
// lambda scale.
template <bool Social>
double worst_gradient(const SimplifiedWorld& base, double scale) {
  const SimplifiedWorld w = base.with_lambda_scale(scale);
  const Path path = build_path(w);
  const int lags = std::max(1, w.t);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < w.num_companies(); ++i) {
    for (int k = 0; k < lags; ++k) {
      double g = private_gradient_impl(w, path, i, k);
      if constexpr (Social) {
        for (int j = 0; j < w.num_companies(); ++j)
          if (j != i) g += cross_gradient_impl(w, path, i, j, k);
      }
      worst = std::max(worst, g);
    }
  }
  return worst;
}

// Root of an increasing sign-changing function of the lambda scale: bracket
// by geometric expansion, then plain bisection. Relative tolerance 1e-8,
// at most 200 halvings.
template <typename F>
double bisect_scale(F&& f, const char* label) {
  double lo = 0.0;
  double f_lo = f(lo);
  if (f_lo >= 0.0) {
    std::ostringstream os;
    os << label << ": no bracket, f(0) = " << f_lo << " >= 0";
    throw SearchError(os.str());
  }
  double hi = 1.0;
  double f_hi = f(hi);
  int expansions = 0;
  while (f_hi <= 0.0) {
    if (++expansions > 200) {
      std::ostringstream os;
      os << label << ": no bracket after expansion, f(0) = " << f_lo << ", f(" << hi
         << ") = " << f_hi;
      throw SearchError(os.str());
    }
    lo = hi;
    hi *= 2.0;
    f_hi = f(hi);
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-8 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ThresholdResult classify_zone(const SimplifiedWorld& world, double lambda) {
  world.validate();
  if (world.action != 0.0)
    throw DomainError("zone classification is defined under the zero-mitigation policy");
  if (world.t < 1) throw DomainError("zone classification needs t >= 1");
  if (lambda < 0.0) throw DomainError("lambda must be >= 0");

  ThresholdResult result;
  result.lambda_low =
      bisect_scale([&](double s) { return worst_gradient<true>(world, s); }, "lambda_low");
  result.lambda_critical = bisect_scale(
      [&](double s) { return worst_gradient<false>(world, s); }, "lambda_critical");

  const double worst_private = worst_gradient<false>(world, lambda);
  const double worst_social = worst_gradient<true>(world, lambda);
  if (worst_private > 0.0)
    result.zone = DilemmaZone::NoDilemmaHigh;
  else if (worst_social > 0.0)
    result.zone = DilemmaZone::Dilemma;
  else
    result.zone = DilemmaZone::NoDilemmaLow;
  return result;
}

GradientReport compute_gradient_report(const SimplifiedWorld& world, int num_lags) {
  world.validate();
  if (num_lags < 1 || num_lags > world.t + 1)
    throw DomainError("num_lags must be in [1, t+1]");
  const Path path = build_path(world);
  const int M = world.num_companies();
  GradientReport report;
  report.private_grads.assign(static_cast<size_t>(M),
                              std::vector<double>(static_cast<size_t>(num_lags)));
  report.social_grads = report.private_grads;
  report.cross_grads.assign(static_cast<size_t>(M),
                            std::vector<double>(static_cast<size_t>(M), 0.0));
  for (int i = 0; i < M; ++i) {
    for (int k = 0; k < num_lags; ++k) {
      double priv = private_gradient_impl(world, path, i, k);
      double social = priv;
      for (int j = 0; j < M; ++j)
        if (j != i) social += cross_gradient_impl(world, path, i, j, k);
      report.private_grads[static_cast<size_t>(i)][static_cast<size_t>(k)] = priv;
      report.social_grads[static_cast<size_t>(i)][static_cast<size_t>(k)] = social;
    }
    for (int j = 0; j < M; ++j)
      if (j != i)
        report.cross_grads[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            cross_gradient_impl(world, path, i, j, 0);
  }
  return report;
}

double fixed_profile_welfare(const EnvConfig& config, int num_cooperators,
                             double cooperator_rate, std::uint64_t seed) {
  Environment env(config);
  env.reset(seed);
  const int M = config.num_companies;
  const int N = config.num_investors;
  JointAction action;
  action.mitigation.assign(static_cast<size_t>(M), 0.0);
  for (int i = 0; i < std::min(M, num_cooperators); ++i)
    action.mitigation[static_cast<size_t>(i)] = cooperator_rate;
  action.portfolio.assign(static_cast<size_t>(N) * M, 1);
  StepOutcome out;
  for (int t = 0; t < config.episode_length; ++t) env.step(action, out);
  return market_total_wealth(env.state(), config);
}

std::vector<SchellingPoint> schelling_curve(const EnvConfig& config,
                                            double cooperator_rate, int n_lo, int n_hi,
                                            int num_seeds, std::uint64_t base_seed) {
  config.validate();
  if (cooperator_rate < 0.0 || cooperator_rate > config.max_mitigation)
    throw DomainError("cooperator rate outside the mitigation bounds");
  const int M = config.num_companies;
  if (n_lo < 0 || n_hi >= M || n_lo > n_hi)
    throw DomainError("cooperator count range must fit inside [0, M-1]");
  if (num_seeds < 1) throw DomainError("need at least one seed");

  // welfare as a function of the total cooperator count, averaged over seeds
  std::vector<double> welfare(static_cast<size_t>(M) + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (int c = 0; c <= M; ++c) {
    double acc = 0.0;
    for (int s = 0; s < num_seeds; ++s)
      acc += fixed_profile_welfare(config, c, cooperator_rate,
                                   hash_combine(base_seed, static_cast<std::uint64_t>(s)));
    welfare[static_cast<size_t>(c)] = acc / num_seeds;
  }

  std::vector<SchellingPoint> points;
  for (int n = n_lo; n <= n_hi; ++n) {
    SchellingPoint p;
    p.num_other_cooperators = n;
    p.welfare_cooperate = welfare[static_cast<size_t>(n) + 1];
    p.welfare_defect = welfare[static_cast<size_t>(n)];
    points.push_back(p);
  }
  return points;
}

}  // namespace esg
