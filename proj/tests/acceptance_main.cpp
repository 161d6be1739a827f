// Acceptance suite: runs every gate end to end and prints one pass/fail line
// per criterion. Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flr/flr.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct CheckResult {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, const char* spec = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: analytic FLR gradient vs central finite differences
// ---------------------------------------------------------------------------

// A finite-difference probe is only meaningful where the loss is
// differentiable: if any ReLU preactivation sits within the probe window of
// zero, the centered quotient measures the kink, not the gradient. Instances
// that degenerate this way are redrawn.
bool relu_margin_ok(const flr::MlpParams& params, const std::vector<std::vector<double>>& xs,
                    double margin) {
  flr::ForwardTrace trace;
  for (const auto& x : xs) {
    flr::forward_trace(params, x, trace);
    const auto& sizes = params.layer_sizes();
    for (std::size_t l = 1; l + 1 < sizes.size(); ++l) {
      // hidden activations: z == 0 means the preactivation was <= 0; its
      // magnitude is not recoverable, so recompute the affine part
      const int in = sizes[l - 1];
      const int out = sizes[l];
      const std::size_t w_off = params.weight_offset(l - 1);
      const std::size_t b_off = params.bias_offset(l - 1);
      for (int o = 0; o < out; ++o) {
        double acc = params.values()[b_off + static_cast<std::size_t>(o)];
        for (int i = 0; i < in; ++i)
          acc += params.values()[w_off + static_cast<std::size_t>(o) * static_cast<std::size_t>(in) +
                                 static_cast<std::size_t>(i)] *
                 trace.z[l - 1][static_cast<std::size_t>(i)];
        if (std::abs(acc) < margin) return false;
      }
    }
  }
  return true;
}

CheckResult criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240901);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  const std::vector<double> lambdas = {0.0, 1.0, 3.0};
  double worst = 0.0;
  int redraws = 0;
  for (int trial = 0; trial < 50; ++trial) {
    flr::MlpParams params({2, 8, 8, 4});
    std::vector<std::vector<double>> xs;
    std::vector<flr::ProbVector> ts;
    for (int attempt = 0;; ++attempt) {
      params = flr::MlpParams::random_init({2, 8, 8, 4}, rng());
      xs.clear();
      ts.clear();
      for (int i = 0; i < 5; ++i) {
        xs.push_back({normal(rng), normal(rng)});
        flr::ProbVector t(4);
        double sum = 0.0;
        for (double& v : t) {
          v = unit(rng);
          sum += v;
        }
        for (double& v : t) v /= sum;
        ts.push_back(t);
      }
      if (relu_margin_ok(params, xs, 1e-3)) break;
      ++redraws;
      if (attempt > 200) break;
    }
    std::vector<flr::LossExample> batch;
    for (int i = 0; i < 5; ++i)
      batch.push_back(flr::LossExample{&xs[static_cast<std::size_t>(i)],
                                       static_cast<int>(rng() % 4),
                                       &ts[static_cast<std::size_t>(i)]});
    const double lambda = lambdas[static_cast<std::size_t>(trial) % lambdas.size()];
    worst = std::max(worst, flr::fd_check(params, batch, lambda, 1e-5));
  }
  const double secs = seconds_since(t0);
  CheckResult r;
  r.pass = worst <= 1e-5 && secs < 30.0;
  r.detail = "max rel err " + fmt(worst) + " over 50 instances (" + std::to_string(redraws) +
             " kink redraws), " + fmt(secs, "%.1f") + " s";
  return r;
}

// ---------------------------------------------------------------------------
// criterion 2: g-term sums to zero and matches the closed lemma form
// ---------------------------------------------------------------------------

CheckResult criterion2() {
  std::mt19937_64 rng(77001);
  std::uniform_real_distribution<double> unit(0.001, 1.0);
  double worst_sum = 0.0;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int classes = 2 + static_cast<int>(rng() % 15);
    flr::ProbVector p(static_cast<std::size_t>(classes)), t(static_cast<std::size_t>(classes));
    double sp = 0.0, st = 0.0;
    for (int c = 0; c < classes; ++c) {
      p[static_cast<std::size_t>(c)] = unit(rng);
      t[static_cast<std::size_t>(c)] = unit(rng);
      sp += p[static_cast<std::size_t>(c)];
      st += t[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < classes; ++c) {
      p[static_cast<std::size_t>(c)] /= sp;
      t[static_cast<std::size_t>(c)] /= st;
    }
    const auto g = flr::flr_g_term(p, t);
    double sum = 0.0;
    for (double v : g) sum += v;
    worst_sum = std::max(worst_sum, std::abs(sum));
    const double ip = flr::inner(p, t);
    for (int c = 0; c < classes; ++c) {
      const double lemma = -(p[static_cast<std::size_t>(c)] * t[static_cast<std::size_t>(c)] -
                             ip * p[static_cast<std::size_t>(c)]) /
                           (1.0 - ip);
      worst_gap = std::max(worst_gap, std::abs(lemma - g[static_cast<std::size_t>(c)]));
    }
  }
  CheckResult r;
  r.pass = worst_sum <= 1e-9 && worst_gap <= 1e-12;
  r.detail = "max |sum g| " + fmt(worst_sum) + ", max lemma gap " + fmt(worst_gap) + " over 10^4 pairs";
  return r;
}

// ---------------------------------------------------------------------------
// shared benchmark machinery
// ---------------------------------------------------------------------------

struct BenchSpec {
  std::string preset = "flr";
  std::uint64_t seed = 1;
  bool noniid = false;
  double rho = 0.8;
  int rounds = 200;
  int warmup = 50;
  // small-variant knobs for the structural criteria
  int classes = 4, dim = 16, n_per_class = 1000, test_n_per_class = 250, clients = 20;
  std::string schedule_extra;
};

std::string bench_ini(const BenchSpec& b) {
  std::string ini = "[dataset]\n";
  ini += "classes = " + std::to_string(b.classes) + "\n";
  ini += "dim = " + std::to_string(b.dim) + "\n";
  ini += "n_per_class = " + std::to_string(b.n_per_class) + "\n";
  ini += "test_n_per_class = " + std::to_string(b.test_n_per_class) + "\n";
  ini += "\n[partition]\n";
  ini += b.noniid ? "mode = noniid\nbernoulli_p = 0.7\ndirichlet_alpha = 1.0\n" : "mode = iid\n";
  ini += "clients = " + std::to_string(b.clients) + "\n";
  ini += "\n[noise]\nkind = symmetric\nrho = " + flr::format_double(b.rho) + "\ntau = 0.0\n";
  ini += "\n[schedule]\n";
  ini += "rounds = " + std::to_string(b.rounds) + "\n";
  ini += "warmup_rounds = " + std::to_string(b.warmup) + "\n";
  ini += b.schedule_extra;
  ini += "\n[run]\npreset = " + b.preset + "\nmaster_seed = " + std::to_string(b.seed) + "\n";
  return ini;
}

struct BenchResult {
  std::string csv;
  std::vector<double> final_params;
  double best_test_acc = 0.0;
  double final_global_memorized = 0.0;
  double final_local_memorized = 0.0;
  // per-round local noisy_memorized; NaN where the local row is absent
  std::vector<double> local_memorized;
};

BenchResult run_bench(const std::string& ini, flr::MixHook hook = nullptr) {
  const auto parsed = flr::parse_and_validate(ini);
  const flr::BuiltData data = flr::build_data(parsed.config);
  flr::ExperimentSetup setup = flr::make_setup(parsed.config, data);
  setup.mix_hook = std::move(hook);
  const flr::ExperimentResult result = flr::run_experiment(setup);

  BenchResult out;
  out.csv = flr::metrics_csv(result.metrics);
  out.final_params = result.final_params.values();
  out.local_memorized.assign(result.metrics.size(), std::nan(""));
  for (const auto& rm : result.metrics) {
    out.best_test_acc = std::max(out.best_test_acc, rm.test_acc);
    out.final_global_memorized = rm.global.noisy_memorized;
    if (rm.local.has_value()) {
      out.final_local_memorized = rm.local->noisy_memorized;
      out.local_memorized[static_cast<std::size_t>(rm.round)] = rm.local->noisy_memorized;
    }
  }
  return out;
}

// Launches one task per config; the runs are independent and deterministic,
// so the schedule cannot change any result.
std::vector<BenchResult> run_benches(const std::vector<std::string>& inis) {
  std::vector<std::future<BenchResult>> futures;
  futures.reserve(inis.size());
  for (const auto& ini : inis)
    futures.push_back(std::async(std::launch::async, [ini] { return run_bench(ini); }));
  std::vector<BenchResult> out;
  out.reserve(inis.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

// ---------------------------------------------------------------------------
// criterion 3: preset reduction exactness
// ---------------------------------------------------------------------------

CheckResult criterion3() {
  BenchSpec small;
  small.classes = 4;
  small.dim = 8;
  small.n_per_class = 32;
  small.test_n_per_class = 16;
  small.clients = 4;
  small.rounds = 10;
  small.warmup = 3;
  small.rho = 0.75;
  small.seed = 5;

  small.preset = "ce";
  const BenchResult ce = run_bench(bench_ini(small));

  BenchSpec zeros = small;
  zeros.preset = "flr";
  zeros.schedule_extra = "lambda = 0\nalpha = 0\nbeta = 0\ngamma = 0\n";
  const BenchResult zero_coef = run_bench(bench_ini(zeros));

  const bool bitwise = ce.csv == zero_coef.csv && ce.final_params == zero_coef.final_params;

  // elr: t must equal m at every instrumented step; slr: t must equal s
  long long elr_events = 0, elr_bad = 0;
  {
    BenchSpec elr = small;
    elr.preset = "elr";
    run_bench(bench_ini(elr), [&](const flr::MixEvent& ev) {
      ++elr_events;
      if (*ev.t != *ev.m) ++elr_bad;
    });
  }
  long long slr_events = 0, slr_bad = 0;
  {
    BenchSpec slr = small;
    slr.preset = "slr";
    run_bench(bench_ini(slr), [&](const flr::MixEvent& ev) {
      ++slr_events;
      if (*ev.t != *ev.s) ++slr_bad;
    });
  }

  CheckResult r;
  r.pass = bitwise && elr_events > 0 && elr_bad == 0 && slr_events > 0 && slr_bad == 0;
  r.detail = std::string("ce == zero-coefficient engine: ") + (bitwise ? "bitwise" : "DIFFERS") +
             "; elr t==m " + std::to_string(elr_events - elr_bad) + "/" + std::to_string(elr_events) +
             "; slr t==s " + std::to_string(slr_events - slr_bad) + "/" + std::to_string(slr_events);
  return r;
}

// ---------------------------------------------------------------------------
// criterion 4: aggregation equals the independent weighted mean bit for bit
// ---------------------------------------------------------------------------

CheckResult criterion4() {
  std::mt19937_64 rng(88311);
  std::normal_distribution<double> normal(0.0, 1.0);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 8);
    std::vector<int> ids(16);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(static_cast<std::size_t>(k));

    std::vector<flr::ClientUpdateResult> results;
    for (int id : ids) {
      flr::ClientUpdateResult r;
      r.client_id = id;
      r.num_examples = 1 + rng() % 50;
      r.params = flr::MlpParams({2, 3});
      for (double& v : r.params.values()) v = normal(rng);
      results.push_back(std::move(r));
    }

    // independent oracle, fixed summation order: ascending client id
    std::vector<const flr::ClientUpdateResult*> ordered;
    for (const auto& r : results) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->client_id < b->client_id; });
    std::size_t total = 0;
    for (const auto* r : ordered) total += r->num_examples;
    std::vector<double> expect(results[0].params.size(), 0.0);
    for (const auto* r : ordered) {
      const double w = static_cast<double>(r->num_examples) / static_cast<double>(total);
      for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += w * r->params.values()[i];
    }

    const auto got = flr::aggregate(results).values();
    std::shuffle(results.begin(), results.end(), rng);
    const auto got_permuted = flr::aggregate(results).values();
    if (got != expect || got_permuted != expect) ++failures;
  }
  CheckResult r;
  r.pass = failures == 0;
  r.detail = std::to_string(100 - failures) + "/100 random participant sets bit-exact and order-free";
  return r;
}

// ---------------------------------------------------------------------------
// criterion 5: noise protocol exactness
// ---------------------------------------------------------------------------

flr::ClientShard protocol_shard(int client_id, int n, int classes) {
  flr::ClientShard shard;
  shard.client_id = client_id;
  for (int i = 0; i < n; ++i) {
    flr::Example ex;
    ex.example_id = static_cast<std::uint64_t>(client_id) * 1000000u + static_cast<std::uint64_t>(i);
    ex.true_label = i % classes;
    ex.given_label = ex.true_label;
    ex.features = {0.0, 0.0};
    shard.examples.push_back(ex);
  }
  return shard;
}

CheckResult criterion5() {
  std::mt19937_64 rng(5150);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n_clients = 1 + static_cast<int>(rng() % 40);
    flr::NoiseSpec spec;
    spec.kind = flr::NoiseKind::kSymmetric;
    spec.rho = std::generate_canonical<double, 53>(rng);
    spec.tau = 0.9 * std::generate_canonical<double, 53>(rng);
    spec.seed = rng();
    const auto levels = flr::assign_noise_levels(n_clients, spec);

    int noisy = 0;
    for (const auto& [id, r] : levels) {
      if (r > 0.0) {
        ++noisy;
        if (r < spec.tau || r >= 1.0) ++violations;
      }
    }
    if (noisy != static_cast<int>(std::floor(spec.rho * n_clients))) ++violations;

    for (const auto& [id, rate] : levels) {
      const int n_k = 10 + static_cast<int>(rng() % 191);
      auto shard = protocol_shard(id, n_k, 4);
      shard.noise_rate = rate;
      flr::CorruptionLog log;
      flr::inject_noise(shard, spec, 4, log);
      const auto expected = static_cast<std::size_t>(std::llround(rate * n_k));
      if (log.selected_per_client.at(id) != expected) ++violations;
    }
  }

  // realized symmetric transitions at 10^4 selections: every off-diagonal
  // cell within 3 sigma of the binomial expectation
  auto big = protocol_shard(0, 12500, 4);
  big.noise_rate = 0.8;  // round(0.8 * 12500) = 10^4 selections
  flr::NoiseSpec spec;
  spec.kind = flr::NoiseKind::kSymmetric;
  spec.seed = 424242;
  flr::CorruptionLog log;
  flr::inject_noise(big, spec, 4, log);
  const auto matrix = log.transition_matrix(4);
  int cells_out = 0;
  for (int c = 0; c < 4; ++c) {
    std::size_t row = 0;
    for (int d = 0; d < 4; ++d) row += matrix[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
    const double p = 0.25;
    const double mean = static_cast<double>(row) * p;
    const double sigma = std::sqrt(static_cast<double>(row) * p * (1.0 - p));
    for (int d = 0; d < 4; ++d) {
      if (d == c) continue;
      const double v = static_cast<double>(matrix[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)]);
      if (std::abs(v - mean) > 3.0 * sigma) ++cells_out;
    }
  }

  CheckResult r;
  r.pass = violations == 0 && cells_out == 0;
  r.detail = std::to_string(violations) + " count violations over 100 configs; " +
             std::to_string(cells_out) + " transition cells outside 3 sigma at 10^4 selections";
  return r;
}

// ---------------------------------------------------------------------------
// criterion 6: non-iid partition invariants
// ---------------------------------------------------------------------------

CheckResult criterion6() {
  const std::vector<double> ps = {0.4, 0.7, 1.0};
  const std::vector<double> alphas = {1.0, 10.0};
  int violations = 0;
  int done = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = flr::generate_synthetic(8, 2, 50, 5.0, 900 + static_cast<std::uint64_t>(trial));
    flr::PartitionSpec spec;
    spec.mode = flr::PartitionMode::kNonIid;
    spec.num_clients = 20;
    spec.bernoulli_p = ps[static_cast<std::size_t>(trial) % ps.size()];
    spec.dirichlet_alpha = alphas[static_cast<std::size_t>(trial / 3) % alphas.size()];
    spec.seed = 7000 + static_cast<std::uint64_t>(trial);
    const auto result = flr::partition_noniid(data, spec);
    ++done;

    std::multiset<std::uint64_t> in_ids, out_ids;
    for (const auto& ex : data) in_ids.insert(ex.example_id);
    for (const auto& s : result.shards)
      for (const auto& ex : s.examples) out_ids.insert(ex.example_id);
    if (in_ids != out_ids) ++violations;

    for (int c = 0; c < 8; ++c) {
      int eligible = 0;
      for (int k = 0; k < 20; ++k) eligible += result.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      if (eligible == 0) ++violations;
    }
    for (int k = 0; k < 20; ++k) {
      std::map<int, int> per_class;
      for (const auto& ex : result.shards[static_cast<std::size_t>(k)].examples) ++per_class[ex.true_label];
      for (int c = 0; c < 8; ++c) {
        const bool eligible = result.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] == 1;
        if (eligible && per_class[c] < 1) ++violations;
        if (!eligible && per_class[c] > 0) ++violations;
      }
      if (result.shards[static_cast<std::size_t>(k)].examples.empty()) ++violations;
    }
  }
  CheckResult r;
  r.pass = violations == 0 && done == 100;
  r.detail = std::to_string(violations) + " violations over " + std::to_string(done) + " partitions";
  return r;
}

// ---------------------------------------------------------------------------
// criteria 7/8/9 + the memorization-dynamics property (shared heavy runs)
// ---------------------------------------------------------------------------

struct HeavyRuns {
  // [seed][0]=ce, [seed][1]=flr for the iid benchmark
  std::vector<std::vector<BenchResult>> iid;
  // [seed][0]=flr, [seed][1]=slr, [seed][2]=elr for the non-iid benchmark
  std::vector<std::vector<BenchResult>> noniid;
  double iid_seconds = 0.0;
};

HeavyRuns run_heavy() {
  const std::vector<std::uint64_t> seeds = {1, 2, 3};

  std::vector<std::string> iid_inis;
  for (std::uint64_t seed : seeds)
    for (const char* preset : {"ce", "flr"}) {
      BenchSpec b;
      b.preset = preset;
      b.seed = seed;
      iid_inis.push_back(bench_ini(b));
    }
  const auto t0 = Clock::now();
  auto iid_results = run_benches(iid_inis);
  const double iid_seconds = seconds_since(t0);

  std::vector<std::string> noniid_inis;
  for (std::uint64_t seed : seeds)
    for (const char* preset : {"flr", "slr", "elr"}) {
      BenchSpec b;
      b.preset = preset;
      b.seed = seed;
      b.noniid = true;
      b.rho = 1.0;
      noniid_inis.push_back(bench_ini(b));
    }
  auto noniid_results = run_benches(noniid_inis);

  HeavyRuns out;
  out.iid_seconds = iid_seconds;
  for (std::size_t s = 0; s < seeds.size(); ++s)
    out.iid.push_back({std::move(iid_results[s * 2]), std::move(iid_results[s * 2 + 1])});
  for (std::size_t s = 0; s < seeds.size(); ++s)
    out.noniid.push_back({std::move(noniid_results[s * 3]), std::move(noniid_results[s * 3 + 1]),
                          std::move(noniid_results[s * 3 + 2])});
  return out;
}

CheckResult criterion7(const HeavyRuns& heavy) {
  bool pass = true;
  std::string detail;
  for (std::size_t s = 0; s < heavy.iid.size(); ++s) {
    const BenchResult& ce = heavy.iid[s][0];
    const BenchResult& reg = heavy.iid[s][1];
    const double mem_gap = ce.final_global_memorized - reg.final_global_memorized;
    const double acc_gap = reg.best_test_acc - ce.best_test_acc;
    const bool ok = mem_gap >= 0.30 && acc_gap >= 0.05 && ce.final_local_memorized >= 0.9;
    pass = pass && ok;
    detail += "seed" + std::to_string(s + 1) + "[mem gap " + fmt(mem_gap, "%.3f") + ", acc gap " +
              fmt(acc_gap, "%.3f") + ", ce local mem " + fmt(ce.final_local_memorized, "%.3f") + "] ";
  }
  pass = pass && heavy.iid_seconds <= 600.0;
  CheckResult r;
  r.pass = pass;
  r.detail = detail + fmt(heavy.iid_seconds, "%.0f") + " s for 6 runs";
  return r;
}

CheckResult criterion8(const HeavyRuns& heavy) {
  int good_seeds = 0;
  std::string detail;
  for (std::size_t s = 0; s < heavy.noniid.size(); ++s) {
    const BenchResult& mix = heavy.noniid[s][0];
    const BenchResult& global_only = heavy.noniid[s][1];
    const BenchResult& local_only = heavy.noniid[s][2];
    const double best_other_mem =
        std::min(global_only.final_global_memorized, local_only.final_global_memorized);
    const double best_other_acc = std::max(global_only.best_test_acc, local_only.best_test_acc);
    const bool strictly_below = mix.final_global_memorized < global_only.final_global_memorized &&
                                mix.final_global_memorized < local_only.final_global_memorized;
    const bool close_but_more_accurate = mix.final_global_memorized <= best_other_mem + 0.03 &&
                                         mix.best_test_acc >= best_other_acc;
    if (strictly_below || close_but_more_accurate) ++good_seeds;
    detail += "seed" + std::to_string(s + 1) + "[mix " + fmt(mix.final_global_memorized, "%.3f") +
              " vs slr " + fmt(global_only.final_global_memorized, "%.3f") + " elr " +
              fmt(local_only.final_global_memorized, "%.3f") + "; acc " + fmt(mix.best_test_acc, "%.3f") +
              " vs " + fmt(best_other_acc, "%.3f") + "] ";
  }
  CheckResult r;
  r.pass = good_seeds >= 2;
  r.detail = detail + std::to_string(good_seeds) + "/3 seeds ordered";
  return r;
}

CheckResult criterion9(const HeavyRuns& heavy) {
  BenchSpec b;
  b.preset = "flr";
  b.seed = 1;
  const BenchResult repeat = run_bench(bench_ini(b));
  const std::string& original = heavy.iid[0][1].csv;

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "flr_acceptance_determinism";
  fs::create_directories(dir);
  flr::write_text_file(dir / "a.csv", original);
  flr::write_text_file(dir / "b.csv", repeat.csv);
  const bool equal = flr::read_text_file(dir / "a.csv") == flr::read_text_file(dir / "b.csv");
  fs::remove_all(dir);

  CheckResult r;
  r.pass = equal && !original.empty();
  r.detail = equal ? "repeated run reproduced metrics CSV byte-for-byte"
                   : "metrics CSV differs between repeated runs";
  return r;
}

// Desk-scale analog of the memorization dynamics: under CE the local
// memorized fraction keeps climbing and ends >= 0.9; under the mixture loss
// it stays below the CE trajectory at every round past the warmup boundary.
CheckResult dynamics_property(const HeavyRuns& heavy) {
  bool pass = true;
  std::string detail;
  const int warmup = 50;
  for (std::size_t s = 0; s < heavy.iid.size(); ++s) {
    const auto& ce = heavy.iid[s][0].local_memorized;
    const auto& reg = heavy.iid[s][1].local_memorized;
    bool nondecreasing = true;
    double running_max = 0.0;
    bool active = false;
    for (double v : ce) {
      if (std::isnan(v)) continue;
      if (!active && v >= 0.5) active = true;
      if (active) {
        running_max = std::max(running_max, v);
        if (running_max - v > 0.05) nondecreasing = false;
      }
    }
    const double ce_final = heavy.iid[s][0].final_local_memorized;
    bool below = true;
    int compared = 0;
    for (std::size_t r = static_cast<std::size_t>(warmup) + 1; r < ce.size(); ++r) {
      if (std::isnan(ce[r]) || std::isnan(reg[r])) continue;
      ++compared;
      if (!(reg[r] < ce[r])) below = false;
    }
    const bool ok = nondecreasing && ce_final >= 0.9 && below && compared > 0;
    pass = pass && ok;
    detail += "seed" + std::to_string(s + 1) + "[climb " + (nondecreasing ? "ok" : "DROPS") +
              ", final " + fmt(ce_final, "%.3f") + ", flr below ce " + (below ? "ok" : "NO") + "] ";
  }
  CheckResult r;
  r.pass = pass;
  r.detail = detail;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&selected](int id) { return selected.empty() || selected.count(id) > 0; };

  const bool heavy_needed = wanted(7) || wanted(8) || wanted(9) || wanted(10);

  int failures = 0;
  auto report = [&failures](int id, const std::string& name, const CheckResult& r) {
    std::printf("[%s] criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", id, name.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  };

  if (wanted(1)) report(1, "gradient oracle", criterion1());
  if (wanted(2)) report(2, "g-term identities", criterion2());
  if (wanted(3)) report(3, "reduction exactness", criterion3());
  if (wanted(4)) report(4, "aggregation exactness", criterion4());
  if (wanted(5)) report(5, "noise protocol exactness", criterion5());
  if (wanted(6)) report(6, "partition invariants", criterion6());

  if (heavy_needed) {
    const HeavyRuns heavy = run_heavy();
    if (wanted(7)) report(7, "desk-scale ordering (iid, ce vs flr)", criterion7(heavy));
    if (wanted(8)) report(8, "heterogeneity ordering (non-iid, mixture vs endpoints)", criterion8(heavy));
    if (wanted(9)) report(9, "determinism of acceptance runs", criterion9(heavy));
    if (wanted(10)) report(10, "memorization dynamics property", dynamics_property(heavy));
  }

  if (failures == 0) std::printf("all selected criteria passed\n");
  return failures;
}
