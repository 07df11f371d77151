#include "esg/nets.hpp"

#include <algorithm>
#include <cmath>

#include "esg/errors.hpp"

namespace esg {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * log(2*pi)

void linear(const double* w, const double* b, const double* x, int rows, int cols,
            double* y) {
  for (int r = 0; r < rows; ++r) {
    const double* wr = w + static_cast<size_t>(r) * cols;
    double acc = b[r];
    for (int c = 0; c < cols; ++c) acc += wr[c] * x[c];
    y[r] = acc;
  }
}

// y = W^T * d accumulated into dx; dW += outer(d, x); db += d.
void linear_backward(const double* w, const double* x, const double* d, int rows,
                     int cols, double* dw, double* db, double* dx) {
  for (int r = 0; r < rows; ++r) {
    const double dr = d[r];
    double* dwr = dw + static_cast<size_t>(r) * cols;
    const double* wr = w + static_cast<size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) {
      dwr[c] += dr * x[c];
      if (dx) dx[c] += dr * wr[c];
    }
    db[r] += dr;
  }
}

}  // namespace

void mlp_forward(const MlpDims& dims, const double* w, std::span<const double> x,
                 MlpTape& tape) {
  if (static_cast<int>(x.size()) != dims.in)
    throw DomainError("mlp_forward: observation length mismatch");
  tape.input.assign(x.begin(), x.end());
  tape.pre1.resize(static_cast<size_t>(dims.hidden));
  tape.act1.resize(static_cast<size_t>(dims.hidden));
  tape.pre2.resize(static_cast<size_t>(dims.hidden));
  tape.act2.resize(static_cast<size_t>(dims.hidden));
  tape.out.resize(static_cast<size_t>(dims.out));

  linear(w + dims.w1(), w + dims.b1(), tape.input.data(), dims.hidden, dims.in,
         tape.pre1.data());
  for (int i = 0; i < dims.hidden; ++i) tape.act1[static_cast<size_t>(i)] = std::max(0.0, tape.pre1[static_cast<size_t>(i)]);
  linear(w + dims.w2(), w + dims.b2(), tape.act1.data(), dims.hidden, dims.hidden,
         tape.pre2.data());
  for (int i = 0; i < dims.hidden; ++i) tape.act2[static_cast<size_t>(i)] = std::max(0.0, tape.pre2[static_cast<size_t>(i)]);
  linear(w + dims.w3(), w + dims.b3(), tape.act2.data(), dims.out, dims.hidden,
         tape.out.data());
}

void mlp_backward(const MlpDims& dims, const double* w, MlpTape& tape,
                  const double* dloss_dout, double* grad) {
  tape.delta1.assign(static_cast<size_t>(dims.hidden), 0.0);
  tape.delta2.assign(static_cast<size_t>(dims.hidden), 0.0);
  double* d1 = tape.delta1.data();
  double* d2 = tape.delta2.data();

  linear_backward(w + dims.w3(), tape.act2.data(), dloss_dout, dims.out, dims.hidden,
                  grad + dims.w3(), grad + dims.b3(), d2);
  for (int i = 0; i < dims.hidden; ++i)
    if (tape.pre2[static_cast<size_t>(i)] <= 0.0) d2[i] = 0.0;

  linear_backward(w + dims.w2(), tape.act1.data(), d2, dims.hidden, dims.hidden,
                  grad + dims.w2(), grad + dims.b2(), d1);
  for (int i = 0; i < dims.hidden; ++i)
    if (tape.pre1[static_cast<size_t>(i)] <= 0.0) d1[i] = 0.0;

  linear_backward(w + dims.w1(), tape.input.data(), d1, dims.hidden, dims.in,
                  grad + dims.w1(), grad + dims.b1(), nullptr);
}

void orthogonal_init(double* w, int rows, int cols, double gain, Rng& rng) {
  // Gaussian rows orthonormalized with modified Gram-Schmidt. When there are
  // more rows than columns full orthogonality is impossible, so the
  // orthogonalization restarts every `cols` rows; a row is redrawn if the
  // residual degenerates.
  for (int r = 0; r < rows; ++r) {
    double* row = w + static_cast<size_t>(r) * cols;
    const int block_start = r - (r % cols);
    for (int attempt = 0; attempt < 16; ++attempt) {
      for (int c = 0; c < cols; ++c) row[c] = rng.normal();
      for (int p = block_start; p < r; ++p) {
        const double* rp = w + static_cast<size_t>(p) * cols;
        double dot = 0.0;
        for (int c = 0; c < cols; ++c) dot += row[c] * rp[c];
        for (int c = 0; c < cols; ++c) row[c] -= dot * rp[c];
      }
      double norm = 0.0;
      for (int c = 0; c < cols; ++c) norm += row[c] * row[c];
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (int c = 0; c < cols; ++c) row[c] /= norm;
        break;
      }
    }
    for (int c = 0; c < cols; ++c) row[c] *= gain;
  }
}

Policy::Policy(int obs_dim, int hidden, int act_dim, double log_std_init) {
  dims = MlpDims{obs_dim, hidden, act_dim};
  params.assign(static_cast<size_t>(dims.param_count()) + act_dim, 0.0);
  std::fill(log_std_raw(), log_std_raw() + act_dim, log_std_init);
}

double Policy::log_std(int d) const {
  return std::clamp(log_std_raw()[d], log_std_min, log_std_max);
}

void Policy::init(Rng& rng) {
  orthogonal_init(mlp_w() + dims.w1(), dims.hidden, dims.in, std::sqrt(2.0), rng);
  orthogonal_init(mlp_w() + dims.w2(), dims.hidden, dims.hidden, std::sqrt(2.0), rng);
  orthogonal_init(mlp_w() + dims.w3(), dims.out, dims.hidden, 0.01, rng);
}

ValueNet::ValueNet(int obs_dim, int hidden) {
  dims = MlpDims{obs_dim, hidden, 1};
  params.assign(static_cast<size_t>(dims.param_count()), 0.0);
}

void ValueNet::init(Rng& rng) {
  double* w = params.data();
  orthogonal_init(w + dims.w1(), dims.hidden, dims.in, std::sqrt(2.0), rng);
  orthogonal_init(w + dims.w2(), dims.hidden, dims.hidden, std::sqrt(2.0), rng);
  orthogonal_init(w + dims.w3(), dims.out, dims.hidden, 1.0, rng);
}

void policy_forward(const Policy& policy, std::span<const double> obs, MlpTape& tape,
                    double* mean, double* log_std) {
  mlp_forward(policy.dims, policy.mlp_w(), obs, tape);
  for (int d = 0; d < policy.action_dim(); ++d) {
    mean[d] = tape.out[static_cast<size_t>(d)];
    log_std[d] = policy.log_std(d);
  }
}

double value_forward(const ValueNet& net, std::span<const double> features,
                     MlpTape& tape) {
  mlp_forward(net.dims, net.params.data(), features, tape);
  return tape.out[0];
}

GaussianSample sample_and_logprob(std::span<const double> mean,
                                  std::span<const double> log_std, Rng& rng) {
  GaussianSample s;
  s.value.resize(mean.size());
  for (size_t d = 0; d < mean.size(); ++d) {
    const double sigma = std::exp(log_std[d]);
    const double xi = rng.normal();
    s.value[d] = mean[d] + sigma * xi;
    s.log_prob += -0.5 * xi * xi - log_std[d] - kHalfLog2Pi;
  }
  return s;
}

double gaussian_log_prob(std::span<const double> mean, std::span<const double> log_std,
                         std::span<const double> z) {
  double lp = 0.0;
  for (size_t d = 0; d < mean.size(); ++d) {
    const double xi = (z[d] - mean[d]) / std::exp(log_std[d]);
    lp += -0.5 * xi * xi - log_std[d] - kHalfLog2Pi;
  }
  return lp;
}

double gaussian_entropy(std::span<const double> log_std) {
  double h = 0.0;
  for (double ls : log_std) h += ls + 0.5 + kHalfLog2Pi;
  return h;
}

double squash_mitigation(double z, double u_bar) {
  return u_bar * (std::tanh(z) + 1.0) * 0.5;
}

double squash_log_det(double z, double u_bar) {
  const double th = std::tanh(z);
  return std::log(u_bar * 0.5 * (1.0 - th * th) + 1e-12);
}

void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state,
               const AdamConfig& config) {
  if (params.size() != grad.size() || state.m.size() != params.size())
    throw TrainingError("adam_step: shape mismatch");
  for (double g : grad)
    if (!std::isfinite(g)) throw TrainingError("adam_step: non-finite gradient");
  state.step += 1;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / c1;
    const double vhat = state.v[i] / c2;
    params[i] -= config.lr * mhat / (std::sqrt(vhat) + config.eps);
  }
}

double clip_grad_norm(std::span<double> grad, double max_norm) {
  double sq = 0.0;
  for (double g : grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (double& g : grad) g *= scale;
  }
  return norm;
}

}  // namespace esg
