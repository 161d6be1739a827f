#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "flr/data.hpp"
#include "flr/errors.hpp"
#include "flr/metrics.hpp"
#include "flr/model.hpp"
#include "flr/prob.hpp"
#include "flr/pseudo_label.hpp"
#include "flr/rng.hpp"

namespace flr {

enum class Phase { kWarmup, kFlr };

inline const char* phase_name(Phase p) { return p == Phase::kWarmup ? "warmup" : "flr"; }

struct RoundPlan {
  int round = 0;
  std::vector<int> participants;  // distinct, ascending
  Phase phase = Phase::kWarmup;
};

struct TrainerConfig {
  int local_epochs = 5;
  int batch_size = 32;
  double learning_rate = 0.1;
  double fedprox_mu = 0.0;
  double participation = 1.0;
  double momentum = 0.0;      // off by default
  double weight_decay = 0.0;  // off by default

  void validate() const {
    if (local_epochs < 1) throw ConfigError("trainer: local_epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("trainer: batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("trainer: learning_rate must be > 0");
    if (fedprox_mu < 0.0) throw ConfigError("trainer: fedprox_mu must be >= 0");
    if (!(participation > 0.0) || participation > 1.0)
      throw ConfigError("trainer: participation must lie in (0, 1]");
    if (momentum < 0.0 || momentum >= 1.0) throw ConfigError("trainer: momentum must lie in [0, 1)");
    if (weight_decay < 0.0) throw ConfigError("trainer: weight_decay must be >= 0");
  }
};

struct ClientUpdateResult {
  int client_id = 0;
  MlpParams params;
  std::size_t num_examples = 0;
  std::vector<double> loss_trace;  // mean minibatch loss per local epoch
};

// Observation point for the s/m/t updates; used by tests to pin the exact
// algebra of the special configurations.
struct MixEvent {
  int round = 0;
  int client_id = 0;
  std::uint64_t example_id = 0;
  const ProbVector* s = nullptr;
  const ProbVector* m = nullptr;
  const ProbVector* t = nullptr;
  double alpha_r = 0.0;
};
using MixHook = std::function<void(const MixEvent&)>;

// Uniform sample without replacement, size max(1, round(participation * N)),
// deterministic in (seed, round).
inline RoundPlan sample_clients(int round, int num_clients, double participation, std::uint64_t seed) {
  if (!(participation > 0.0) || participation > 1.0)
    throw ConfigError("sample_clients: participation must lie in (0, 1]");
  auto k = static_cast<int>(std::llround(participation * static_cast<double>(num_clients)));
  k = std::max(1, std::min(k, num_clients));
  std::vector<int> ids(static_cast<std::size_t>(num_clients));
  std::iota(ids.begin(), ids.end(), 0);
  auto rng = make_engine(seed, {stream::kSampling, static_cast<std::uint64_t>(round)});
  std::shuffle(ids.begin(), ids.end(), rng);
  RoundPlan plan;
  plan.round = round;
  plan.participants.assign(ids.begin(), ids.begin() + k);
  std::sort(plan.participants.begin(), plan.participants.end());
  return plan;
}

namespace detail {

// Per-round coefficients as the engine resolved them. Warmup rounds carry
// lambda = mu = 0 and skip the state updates; everything else is shared, so
// every preset runs the same code path.
struct RoundContext {
  int round = 0;
  Phase phase = Phase::kWarmup;
  double lambda = 0.0;
  double alpha_r = 0.0;
  double beta_r = 0.0;
  double gamma_r = 0.0;
  double mu = 0.0;
};

inline ClientUpdateResult local_update(const MlpParams& server_params, const ClientShard& shard,
                                       PseudoLabelStore& store, const TrainerConfig& cfg,
                                       const RoundContext& ctx, std::uint64_t master_seed,
                                       const MixHook& hook) {
  const std::size_t n_k = shard.examples.size();
  if (n_k == 0) throw ConfigError("local_update: client " + std::to_string(shard.client_id) + " has no data");
  const auto num_classes = static_cast<std::size_t>(server_params.output_dim());

  // Global running averages refresh once per round from the server snapshot.
  if (ctx.phase == Phase::kFlr) {
    ForwardTrace scratch;
    for (const Example& ex : shard.examples) {
      forward_trace(server_params, ex.features, scratch);
      const ProbVector p_server = softmax(scratch.logits());
      store.update_global_avg(ex.example_id, p_server, ctx.beta_r);
    }
  }

  MlpParams local = server_params;
  auto rng = make_engine(master_seed, {stream::kClientRound, static_cast<std::uint64_t>(shard.client_id),
                                       static_cast<std::uint64_t>(ctx.round)});
  std::vector<std::size_t> order(n_k);
  std::iota(order.begin(), order.end(), 0);

  const ProbVector uniform_target = uniform_prob(num_classes);
  const bool extended_sgd = cfg.momentum > 0.0 || cfg.weight_decay > 0.0;
  std::vector<double> velocity;
  if (extended_sgd) velocity.assign(local.size(), 0.0);

  ClientUpdateResult result;
  result.client_id = shard.client_id;
  result.num_examples = n_k;

  ForwardTrace scratch;
  std::vector<ProbVector> targets;
  std::vector<LossExample> batch;
  for (int epoch = 0; epoch < cfg.local_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    int num_batches = 0;
    for (std::size_t start = 0; start < n_k; start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop = std::min(n_k, start + static_cast<std::size_t>(cfg.batch_size));
      batch.clear();
      targets.clear();
      targets.reserve(stop - start);
      for (std::size_t j = start; j < stop; ++j) {
        const Example& ex = shard.examples[order[j]];
        if (ctx.phase == Phase::kFlr) {
          forward_trace(local, ex.features, scratch);
          const ProbVector p = softmax(scratch.logits());
          store.update_local_avg(ex.example_id, p, ctx.gamma_r);
          targets.push_back(store.mixed(ex.example_id, ctx.alpha_r));
          if (hook) {
            const PseudoLabelStore::Entry* entry = store.find(ex.example_id);
            MixEvent ev{ctx.round, shard.client_id, ex.example_id,
                        &entry->s,  &entry->m,      &targets.back(),
                        ctx.alpha_r};
            hook(ev);
          }
        } else {
          targets.push_back(uniform_target);
        }
      }
      for (std::size_t j = start; j < stop; ++j) {
        const Example& ex = shard.examples[order[j]];
        batch.push_back(LossExample{&ex.features, ex.given_label, &targets[j - start]});
      }
      LossAndGrad lg = flr_loss_and_grad(local, batch, ctx.lambda);
      if (!std::isfinite(lg.loss))
        throw NumericError("local training diverged: non-finite loss on client " +
                           std::to_string(shard.client_id));
      if (ctx.mu > 0.0)
        for (std::size_t i = 0; i < lg.grad.size(); ++i)
          lg.grad[i] += ctx.mu * (local.values()[i] - server_params.values()[i]);
      if (extended_sgd) {
        for (std::size_t i = 0; i < lg.grad.size(); ++i) {
          const double g = lg.grad[i] + cfg.weight_decay * local.values()[i];
          velocity[i] = cfg.momentum * velocity[i] + g;
        }
        sgd_step(local, velocity, cfg.learning_rate);
      } else {
        sgd_step(local, lg.grad, cfg.learning_rate);
      }
      epoch_loss += lg.loss;
      ++num_batches;
    }
    result.loss_trace.push_back(num_batches > 0 ? epoch_loss / num_batches : 0.0);
  }
  result.params = std::move(local);
  return result;
}

}  // namespace detail

// Phase-1 update: plain cross-entropy minibatch SGD from the server snapshot.
inline ClientUpdateResult client_update_warmup(const MlpParams& server_params, const ClientShard& shard,
                                               const TrainerConfig& cfg, std::uint64_t master_seed,
                                               int round) {
  PseudoLabelStore unused;
  detail::RoundContext ctx;
  ctx.round = round;
  ctx.phase = Phase::kWarmup;
  return detail::local_update(server_params, shard, unused, cfg, ctx, master_seed, nullptr);
}

// Phase-2 update: refresh s from the server snapshot, then per minibatch
// refresh m, mix t and take one step on the regularized loss (plus the
// proximal term when mu > 0).
inline ClientUpdateResult client_update_flr(const MlpParams& server_params, const ClientShard& shard,
                                            PseudoLabelStore& store, const TrainerConfig& cfg,
                                            const ScheduleParams& sp, int round,
                                            std::uint64_t master_seed, const MixHook& hook = nullptr) {
  detail::RoundContext ctx;
  ctx.round = round;
  ctx.phase = Phase::kFlr;
  ctx.lambda = sp.lambda;
  ctx.alpha_r = alpha_at(round, sp);
  ctx.beta_r = beta_at(round, sp);
  ctx.gamma_r = gamma_at(round, sp);
  ctx.mu = cfg.fedprox_mu;
  return detail::local_update(server_params, shard, store, cfg, ctx, master_seed, hook);
}

// Dataset-size-weighted parameter mean over the participants, reduced in
// ascending client id order regardless of input order.
inline MlpParams aggregate(const std::vector<ClientUpdateResult>& results) {
  if (results.empty()) throw ProtocolError("aggregate: no client updates");
  std::vector<const ClientUpdateResult*> ordered;
  ordered.reserve(results.size());
  for (const auto& r : results) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const ClientUpdateResult* a, const ClientUpdateResult* b) { return a->client_id < b->client_id; });
  std::size_t total = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (i > 0 && ordered[i]->client_id == ordered[i - 1]->client_id)
      throw ProtocolError("aggregate: duplicate client id " + std::to_string(ordered[i]->client_id));
    if (ordered[i]->params.layer_sizes() != ordered[0]->params.layer_sizes())
      throw ProtocolError("aggregate: parameter shape mismatch");
    total += ordered[i]->num_examples;
  }
  if (total == 0) throw ProtocolError("aggregate: zero total examples");
  MlpParams out(ordered[0]->params.layer_sizes());
  auto& acc = out.values();
  for (const ClientUpdateResult* r : ordered) {
    const double w = static_cast<double>(r->num_examples) / static_cast<double>(total);
    const auto& v = r->params.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
  }
  return out;
}

struct ExperimentSetup {
  std::vector<ClientShard> shards;  // client ids must be 0..N-1 in order
  std::vector<Example> test_set;
  std::vector<int> layer_sizes;
  TrainerConfig trainer;
  ScheduleParams schedule;
  std::uint64_t master_seed = 1;
  bool local_metric_weight_by_size = false;

  MixHook mix_hook;  // optional instrumentation
  std::function<void(const RoundMetrics&)> metrics_sink;
  // Called after a completed round when checkpoint_every divides (round + 1).
  std::function<void(int, const MlpParams&, const std::vector<PseudoLabelStore>&)> checkpoint_sink;
  int checkpoint_every = 0;

  // Resume support: start at this round with the given state instead of a
  // fresh seeded init. stop_after_round (exclusive) truncates the run.
  int start_round = 0;
  const MlpParams* initial_params = nullptr;
  const std::vector<PseudoLabelStore>* initial_stores = nullptr;
  int stop_after_round = -1;
};

struct ExperimentResult {
  MlpParams final_params;
  std::vector<RoundMetrics> metrics;
  std::vector<PseudoLabelStore> stores;
  std::uint64_t path_hash = 0;  // structural execution trace, coefficient-free
  int rounds_completed = 0;
};

// Algorithm: warmup rounds of CE FedAvg, then regularized rounds, weighted
// aggregation after each. Deterministic given the master seed; every stream
// is derived from (seed, purpose, ids, round).
inline ExperimentResult run_experiment(const ExperimentSetup& setup) {
  setup.trainer.validate();
  setup.schedule.validate();
  if (setup.shards.empty()) throw ConfigError("run_experiment: no client shards");
  const int num_clients = static_cast<int>(setup.shards.size());
  for (int k = 0; k < num_clients; ++k)
    if (setup.shards[static_cast<std::size_t>(k)].client_id != k)
      throw ConfigError("run_experiment: shard client ids must be 0..N-1 in order");

  ExperimentResult out;
  if (setup.initial_params != nullptr) {
    out.final_params = *setup.initial_params;
  } else {
    out.final_params = MlpParams::random_init(setup.layer_sizes,
                                              derive_seed(setup.master_seed, {stream::kModelInit}));
  }
  if (setup.initial_stores != nullptr) {
    if (static_cast<int>(setup.initial_stores->size()) != num_clients)
      throw ConfigError("run_experiment: resume state has wrong client count");
    out.stores = *setup.initial_stores;
  } else {
    out.stores.resize(static_cast<std::size_t>(num_clients));
  }

  TraceHash trace;
  const int last_round =
      setup.stop_after_round >= 0 ? std::min(setup.stop_after_round, setup.schedule.total_rounds)
                                  : setup.schedule.total_rounds;

  for (int r = setup.start_round; r < last_round; ++r) {
    const Phase phase = r < setup.schedule.warmup_rounds ? Phase::kWarmup : Phase::kFlr;
    RoundPlan plan = sample_clients(r, num_clients, setup.trainer.participation, setup.master_seed);
    plan.phase = phase;

    trace.fold(static_cast<std::uint64_t>(r));
    trace.fold(phase == Phase::kWarmup ? 0x11u : 0x22u);
    for (int k : plan.participants) trace.fold(static_cast<std::uint64_t>(k));

    std::vector<ClientUpdateResult> results;
    results.reserve(plan.participants.size());
    try {
      for (int k : plan.participants) {
        const ClientShard& shard = setup.shards[static_cast<std::size_t>(k)];
        if (phase == Phase::kWarmup) {
          results.push_back(client_update_warmup(out.final_params, shard, setup.trainer,
                                                 setup.master_seed, r));
        } else {
          results.push_back(client_update_flr(out.final_params, shard,
                                              out.stores[static_cast<std::size_t>(k)], setup.trainer,
                                              setup.schedule, r, setup.master_seed, setup.mix_hook));
        }
      }
      out.final_params = aggregate(results);
    } catch (const NumericError& e) {
      throw NumericError("round " + std::to_string(r) + ": " + e.what());
    } catch (const StateError& e) {
      throw StateError("round " + std::to_string(r) + ": " + e.what());
    } catch (const ProtocolError& e) {
      throw ProtocolError("round " + std::to_string(r) + ": " + e.what());
    }
    if (!out.final_params.all_finite())
      throw NumericError("round " + std::to_string(r) + ": aggregated parameters not finite");

    RoundMetrics rm;
    rm.round = r;
    rm.phase = phase_name(phase);
    rm.global = global_breakdown(out.final_params, setup.shards, r);
    std::vector<LocalEvaluation> evals;
    evals.reserve(results.size());
    for (const auto& res : results)
      evals.push_back(LocalEvaluation{&res.params, &setup.shards[static_cast<std::size_t>(res.client_id)]});
    rm.local = local_breakdown(evals, r, setup.local_metric_weight_by_size);
    rm.test_acc = test_accuracy(out.final_params, setup.test_set);
    double loss_sum = 0.0;
    int loss_count = 0;
    for (const auto& res : results)
      if (!res.loss_trace.empty()) {
        loss_sum += res.loss_trace.back();
        ++loss_count;
      }
    rm.train_loss = loss_count > 0 ? loss_sum / loss_count : 0.0;

    if (setup.metrics_sink) setup.metrics_sink(rm);
    out.metrics.push_back(std::move(rm));
    out.rounds_completed = r + 1;

    if (setup.checkpoint_sink && setup.checkpoint_every > 0 && (r + 1) % setup.checkpoint_every == 0)
      setup.checkpoint_sink(r, out.final_params, out.stores);
  }
  out.path_hash = trace.value();
  return out;
}

}  // namespace flr
