#pragma once

#include <span>
#include <vector>

#include "esg/rng.hpp"

namespace esg {

// Two hidden layers with rectified-linear activations; weights live in one
// flat buffer owned by the caller so a parameter set can be updated, clipped
// and checkpointed as a unit.
struct MlpDims {
  int in = 0;
  int hidden = 0;
  int out = 0;

  int param_count() const { return hidden * in + hidden + hidden * hidden + hidden + out * hidden + out; }
  int w1() const { return 0; }
  int b1() const { return hidden * in; }
  int w2() const { return b1() + hidden; }
  int b2() const { return w2() + hidden * hidden; }
  int w3() const { return b2() + hidden; }
  int b3() const { return w3() + out * hidden; }
};

// Activations cached by the forward pass for reuse in backward, plus the
// backward pass's scratch deltas (kept here so hot loops stay allocation-free).
struct MlpTape {
  std::vector<double> input;
  std::vector<double> pre1, act1;
  std::vector<double> pre2, act2;
  std::vector<double> out;
  std::vector<double> delta1, delta2;
};

void mlp_forward(const MlpDims& dims, const double* w, std::span<const double> x,
                 MlpTape& tape);

// Accumulates dL/dw into `grad` (same layout as the weights) given dL/dout.
void mlp_backward(const MlpDims& dims, const double* w, MlpTape& tape,
                  const double* dloss_dout, double* grad);

// Rows of each weight matrix come from an orthonormalized Gaussian draw;
// `gain` scales the result. Biases are zeroed by the callers.
void orthogonal_init(double* w, int rows, int cols, double gain, Rng& rng);

// Diagonal-Gaussian policy head: the MLP produces the action mean and a free
// log-standard-deviation vector (clamped to [log_std_min, log_std_max] at
// use) covers the spread.
struct Policy {
  MlpDims dims;  // dims.out == action dimension
  std::vector<double> params;  // mlp weights followed by log_std
  double log_std_min = -5.0;
  double log_std_max = 2.0;

  Policy() = default;
  Policy(int obs_dim, int hidden, int act_dim, double log_std_init = 0.0);

  int action_dim() const { return dims.out; }
  int param_count() const { return static_cast<int>(params.size()); }
  const double* mlp_w() const { return params.data(); }
  double* mlp_w() { return params.data(); }
  const double* log_std_raw() const { return params.data() + dims.param_count(); }
  double* log_std_raw() { return params.data() + dims.param_count(); }
  double log_std(int d) const;  // clamped

  void init(Rng& rng);
};

struct ValueNet {
  MlpDims dims;  // dims.out == 1
  std::vector<double> params;

  ValueNet() = default;
  ValueNet(int obs_dim, int hidden);
  int param_count() const { return static_cast<int>(params.size()); }
  void init(Rng& rng);
};

// mean and clamped log_std for one observation; throws DomainError on a
// length mismatch.
void policy_forward(const Policy& policy, std::span<const double> obs, MlpTape& tape,
                    double* mean, double* log_std);

double value_forward(const ValueNet& net, std::span<const double> features,
                     MlpTape& tape);

struct GaussianSample {
  std::vector<double> value;  // raw Gaussian draw, before any squashing
  double log_prob = 0.0;
};

// Draws z ~ N(mean, diag(exp(log_std)^2)) and returns the diagonal-Gaussian
// log-density at z. Squashing to the executed action space is applied by the
// role-specific helpers below.
GaussianSample sample_and_logprob(std::span<const double> mean,
                                  std::span<const double> log_std, Rng& rng);

double gaussian_log_prob(std::span<const double> mean, std::span<const double> log_std,
                         std::span<const double> z);
double gaussian_entropy(std::span<const double> log_std);

// Company head: u = u_bar * (tanh(z) + 1) / 2 in [0, u_bar]; the sampler's
// log-probability gets the change-of-variables correction subtracted.
double squash_mitigation(double z, double u_bar);
double squash_log_det(double z, double u_bar);

// Investor head: the executed portfolio bit is sigmoid(z) thresholded at 0.5
// (equivalently z > 0); training uses the continuous relaxation's density.
inline bool portfolio_bit(double z) { return z > 0.0; }

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m, v;
  long step = 0;

  void init(size_t n) {
    m.assign(n, 0.0);
    v.assign(n, 0.0);
    step = 0;
  }
};

// Standard adaptive-moment update with bias correction. Throws TrainingError
// on non-finite gradients.
void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state,
               const AdamConfig& config);

// Scales `grad` in place so its L2 norm does not exceed `max_norm`; returns
// the pre-clip norm.
double clip_grad_norm(std::span<double> grad, double max_norm);

}  // namespace esg
