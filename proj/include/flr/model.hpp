#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flr/errors.hpp"
#include "flr/prob.hpp"
#include "flr/rng.hpp"

namespace flr {

// Counts how often the log-safety clamps fired; purely diagnostic.
struct ClampStats {
  long long prob_clamps = 0;   // p[y] floored at kProbFloor inside -log
  long long inner_clamps = 0;  // 1 - <p,t> floored at kProbFloor inside log
};

// Fully-connected ReLU network with linear output layer, parameters stored as
// one flat vector in canonical order (per layer: weight matrix row-major
// out x in, then bias). The flat layout is what clients exchange with the
// server and what the optimizer and finite-difference oracle walk over.
class MlpParams {
 public:
  MlpParams() = default;

  explicit MlpParams(std::vector<int> layer_sizes)
      : layer_sizes_(std::move(layer_sizes)) {
    validate_shape();
    values_.assign(param_count(layer_sizes_), 0.0);
  }

  static MlpParams random_init(std::vector<int> layer_sizes, std::uint64_t seed) {
    MlpParams p(std::move(layer_sizes));
    std::mt19937_64 rng(seed);
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < p.layer_sizes_.size(); ++l) {
      const int fan_in = p.layer_sizes_[l];
      const int fan_out = p.layer_sizes_[l + 1];
      const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
      std::uniform_real_distribution<double> dist(-limit, limit);
      for (int i = 0; i < fan_out * fan_in; ++i) p.values_[off + static_cast<std::size_t>(i)] = dist(rng);
      off += static_cast<std::size_t>(fan_out) * static_cast<std::size_t>(fan_in);
      off += static_cast<std::size_t>(fan_out);  // biases stay zero
    }
    return p;
  }

  static std::size_t param_count(const std::vector<int>& layer_sizes) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
      n += static_cast<std::size_t>(layer_sizes[l + 1]) * (static_cast<std::size_t>(layer_sizes[l]) + 1);
    return n;
  }

  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  int input_dim() const { return layer_sizes_.front(); }
  int output_dim() const { return layer_sizes_.back(); }
  std::size_t size() const { return values_.size(); }
  std::size_t num_layers() const { return layer_sizes_.size() - 1; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  // Offset of layer l's weight block / bias block in the flat vector.
  std::size_t weight_offset(std::size_t l) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < l; ++k)
      off += static_cast<std::size_t>(layer_sizes_[k + 1]) * (static_cast<std::size_t>(layer_sizes_[k]) + 1);
    return off;
  }
  std::size_t bias_offset(std::size_t l) const {
    return weight_offset(l) +
           static_cast<std::size_t>(layer_sizes_[l + 1]) * static_cast<std::size_t>(layer_sizes_[l]);
  }

  bool all_finite() const {
    for (double v : values_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  void validate_shape() const {
    if (layer_sizes_.size() < 2) throw ConfigError("MlpParams: need at least input and output layers");
    for (int s : layer_sizes_)
      if (s <= 0) throw ConfigError("MlpParams: layer sizes must be positive");
  }

  std::vector<int> layer_sizes_;
  std::vector<double> values_;
};

// Same flat layout as the parameters it differentiates.
using GradientVector = std::vector<double>;

// Activations of one forward pass: z[0] = input, z[l] = post-ReLU output of
// layer l for hidden layers, z.back() = logits. ReLU masks are recovered from
// z[l] > 0 during backprop.
struct ForwardTrace {
  std::vector<std::vector<double>> z;
  const std::vector<double>& logits() const { return z.back(); }
};

inline void forward_trace(const MlpParams& params, const std::vector<double>& x, ForwardTrace& trace) {
  if (static_cast<int>(x.size()) != params.input_dim())
    throw ConfigError("forward: input has dim " + std::to_string(x.size()) + ", model expects " +
                      std::to_string(params.input_dim()));
  const auto& sizes = params.layer_sizes();
  const auto& v = params.values();
  trace.z.resize(sizes.size());
  trace.z[0] = x;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int in = sizes[l];
    const int out = sizes[l + 1];
    const std::size_t w_off = params.weight_offset(l);
    const std::size_t b_off = params.bias_offset(l);
    const std::vector<double>& zin = trace.z[l];
    std::vector<double>& zout = trace.z[l + 1];
    zout.assign(static_cast<std::size_t>(out), 0.0);
    const bool hidden = (l + 2 < sizes.size());
    for (int o = 0; o < out; ++o) {
      double acc = v[b_off + static_cast<std::size_t>(o)];
      const double* w = &v[w_off + static_cast<std::size_t>(o) * static_cast<std::size_t>(in)];
      for (int i = 0; i < in; ++i) acc += w[i] * zin[static_cast<std::size_t>(i)];
      zout[static_cast<std::size_t>(o)] = (hidden && acc < 0.0) ? 0.0 : acc;
    }
  }
}

inline std::vector<double> forward(const MlpParams& params, const std::vector<double>& x) {
  ForwardTrace trace;
  forward_trace(params, x, trace);
  return trace.z.back();
}

inline ProbVector softmax(const std::vector<double>& logits) {
  ProbVector p(logits.size());
  double max_logit = logits[0];
  for (double v : logits) {
    if (std::isnan(v)) throw NumericError("softmax: NaN logit");
    max_logit = std::max(max_logit, v);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - max_logit);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

inline int argmax_class(const std::vector<double>& scores) {
  // Ties break toward the lowest class index.
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

inline int predict_class(const MlpParams& params, const std::vector<double>& x) {
  return argmax_class(forward(params, x));
}

inline double ce_loss(const ProbVector& p, const OneHotLabel& y, ClampStats* stats = nullptr) {
  double py = p[static_cast<std::size_t>(y.class_index)];
  if (py < kProbFloor) {
    py = kProbFloor;
    if (stats) ++stats->prob_clamps;
  }
  return -std::log(py);
}

inline double flr_regularizer(const ProbVector& p, const ProbVector& t, ClampStats* stats = nullptr) {
  double gap = 1.0 - inner(p, t);
  if (gap < kProbFloor) {
    gap = kProbFloor;
    if (stats) ++stats->inner_clamps;
  }
  return std::log(gap);
}

// Per-logit gradient of log(1 - <p,t>) through the softmax. Computed in the
// reduced form p_c (<p,t> - t_c) / (1 - <p,t>), algebraically equal to the
// double-sum p_c / (1-<p,t>) * sum_r (t_r - t_c) p_r; entries sum to zero.
inline std::vector<double> flr_g_term(const ProbVector& p, const ProbVector& t,
                                      ClampStats* stats = nullptr) {
  const double ip = inner(p, t);
  double gap = 1.0 - ip;
  if (gap < kProbFloor) {
    gap = kProbFloor;
    if (stats) ++stats->inner_clamps;
  }
  std::vector<double> g(p.size());
  for (std::size_t c = 0; c < p.size(); ++c) g[c] = p[c] * (ip - t[c]) / gap;
  return g;
}

// One labeled example plus its regularization target; pointers reference
// caller-owned storage that must outlive the loss call.
struct LossExample {
  const std::vector<double>* x = nullptr;
  int label = 0;
  const ProbVector* target = nullptr;  // t; ignored arithmetically when lambda == 0
};

struct LossAndGrad {
  double loss = 0.0;
  GradientVector grad;
};

namespace detail {

// Accumulates the unscaled gradient of one example from its logit-space error.
inline void backprop_logit_error(const MlpParams& params, const ForwardTrace& trace,
                                 std::vector<double> delta, GradientVector& grad) {
  const auto& sizes = params.layer_sizes();
  const auto& v = params.values();
  for (std::size_t l = sizes.size() - 1; l-- > 0;) {
    const int in = sizes[l];
    const int out = sizes[l + 1];
    const std::size_t w_off = params.weight_offset(l);
    const std::size_t b_off = params.bias_offset(l);
    const std::vector<double>& zin = trace.z[l];
    for (int o = 0; o < out; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      double* gw = &grad[w_off + static_cast<std::size_t>(o) * static_cast<std::size_t>(in)];
      for (int i = 0; i < in; ++i) gw[i] += d * zin[static_cast<std::size_t>(i)];
      grad[b_off + static_cast<std::size_t>(o)] += d;
    }
    if (l == 0) break;
    std::vector<double> next(static_cast<std::size_t>(in), 0.0);
    for (int i = 0; i < in; ++i) {
      if (zin[static_cast<std::size_t>(i)] <= 0.0) continue;  // ReLU mask
      double acc = 0.0;
      for (int o = 0; o < out; ++o)
        acc += v[w_off + static_cast<std::size_t>(o) * static_cast<std::size_t>(in) +
                 static_cast<std::size_t>(i)] *
               delta[static_cast<std::size_t>(o)];
      next[static_cast<std::size_t>(i)] = acc;
    }
    delta = std::move(next);
  }
}

}  // namespace detail

// Mean cross-entropy plus lambda times the mean regularizer over the batch,
// with the analytic gradient backpropagated from the per-example logit error
// (p - y + lambda * g). With lambda = 0 this is cross-entropy training,
// bit-for-bit: the lambda terms contribute exact floating-point zeros.
inline LossAndGrad flr_loss_and_grad(const MlpParams& params, const std::vector<LossExample>& batch,
                                     double lambda, ClampStats* stats = nullptr) {
  if (batch.empty()) throw ConfigError("flr_loss_and_grad: empty batch");
  LossAndGrad out;
  out.grad.assign(params.size(), 0.0);
  double ce_sum = 0.0;
  double reg_sum = 0.0;
  ForwardTrace trace;
  const std::size_t num_classes = static_cast<std::size_t>(params.output_dim());
  std::vector<double> err(num_classes);
  for (const LossExample& ex : batch) {
    forward_trace(params, *ex.x, trace);
    const ProbVector p = softmax(trace.logits());
    ce_sum += ce_loss(p, OneHotLabel{ex.label}, stats);
    reg_sum += flr_regularizer(p, *ex.target, stats);
    const std::vector<double> g = flr_g_term(p, *ex.target, nullptr);
    for (std::size_t c = 0; c < num_classes; ++c) err[c] = p[c] + lambda * g[c];
    err[static_cast<std::size_t>(ex.label)] -= 1.0;
    detail::backprop_logit_error(params, trace, err, out.grad);
  }
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (double& gv : out.grad) gv *= inv_n;
  out.loss = ce_sum * inv_n + lambda * (reg_sum * inv_n);
  return out;
}

// Loss-only evaluation for the finite-difference oracle.
inline double flr_loss(const MlpParams& params, const std::vector<LossExample>& batch, double lambda) {
  if (batch.empty()) throw ConfigError("flr_loss: empty batch");
  double ce_sum = 0.0;
  double reg_sum = 0.0;
  for (const LossExample& ex : batch) {
    const ProbVector p = softmax(forward(params, *ex.x));
    ce_sum += ce_loss(p, OneHotLabel{ex.label});
    reg_sum += flr_regularizer(p, *ex.target);
  }
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  return ce_sum * inv_n + lambda * (reg_sum * inv_n);
}

inline void sgd_step(MlpParams& params, const GradientVector& grad, double eta) {
  if (grad.size() != params.size()) throw ConfigError("sgd_step: gradient/parameter shape mismatch");
  for (double gv : grad)
    if (!std::isfinite(gv)) throw NumericError("sgd_step: non-finite gradient entry");
  auto& v = params.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= eta * grad[i];
}

// Central-difference check of the analytic gradient, entrywise relative error
// with denominator max(|analytic|, |numeric|, 1e-8). Meant for small nets.
inline double fd_check(const MlpParams& params, const std::vector<LossExample>& batch, double lambda,
                       double step) {
  const LossAndGrad analytic = flr_loss_and_grad(params, batch, lambda);
  MlpParams probe = params;
  double max_rel = 0.0;
  for (std::size_t j = 0; j < probe.size(); ++j) {
    const double orig = probe.values()[j];
    probe.values()[j] = orig + step;
    const double lp = flr_loss(probe, batch, lambda);
    probe.values()[j] = orig - step;
    const double lm = flr_loss(probe, batch, lambda);
    probe.values()[j] = orig;
    const double numeric = (lp - lm) / (2.0 * step);
    const double a = analytic.grad[j];
    const double rel = std::abs(numeric - a) / std::max({std::abs(numeric), std::abs(a), 1e-8});
    max_rel = std::max(max_rel, rel);
  }
  return max_rel;
}

}  // namespace flr
