#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flr/config.hpp"
#include "flr/data.hpp"
#include "flr/errors.hpp"
#include "flr/federation.hpp"
#include "flr/io.hpp"
#include "flr/metrics.hpp"
#include "flr/model.hpp"
#include "flr/version.hpp"

namespace flr {

inline constexpr const char* kOutRootEnvVar = "FLRSIM_OUT_ROOT";

inline std::filesystem::path resolve_out_dir(const std::string& out_dir) {
  std::filesystem::path p(out_dir);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv(kOutRootEnvVar); root != nullptr && *root != '\0')
    return std::filesystem::path(root) / p;
  return p;
}

struct BuiltData {
  std::vector<ClientShard> shards;  // noise injected, noise rates assigned
  std::vector<Example> test_set;
  CorruptionLog corruption;
};

// Dataset construction is independent of the training method: generation,
// partitioning and noise draw only from their own seeds.
inline BuiltData build_data(const ExperimentConfig& cfg) {
  BuiltData data;
  const std::vector<Example> train =
      generate_synthetic(cfg.classes, cfg.dim, cfg.n_per_class, cfg.spread, cfg.dataset_seed);
  data.test_set = generate_synthetic(cfg.classes, cfg.dim, cfg.test_n_per_class, cfg.spread,
                                     cfg.dataset_seed, /*first_id=*/train.size(),
                                     /*sample_stream=*/stream::kTestSet);

  if (cfg.partition.mode == PartitionMode::kIid) {
    data.shards = partition_iid(train, cfg.partition.num_clients, cfg.partition.seed);
  } else {
    data.shards = partition_noniid(train, cfg.partition).shards;
  }

  const auto levels = assign_noise_levels(cfg.partition.num_clients, cfg.noise);
  for (const auto& [client_id, rate] : levels)
    data.shards[static_cast<std::size_t>(client_id)].noise_rate = rate;
  for (auto& shard : data.shards) inject_noise(shard, cfg.noise, cfg.classes, data.corruption);
  return data;
}

struct RunManifest {
  std::string resolved_config;
  std::string out_dir;
  std::uint64_t dataset_hash = 0;
  int rounds_completed = 0;
  double best_test_acc = 0.0;
  double duration_seconds = 0.0;
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["library_version"] = kLibraryVersion;
    j["artifact_format_version"] = kArtifactFormatVersion;
    j["out_dir"] = out_dir;
    j["dataset_hash"] = dataset_hash;
    j["rounds_completed"] = rounds_completed;
    j["best_test_acc"] = best_test_acc;
    j["duration_seconds"] = duration_seconds;
    j["artifacts"] = {{"config", "config_resolved.ini"},
                      {"dataset_train", "dataset_train.csv"},
                      {"dataset_test", "dataset_test.csv"},
                      {"corruption_log", "corruption_log.csv"},
                      {"metrics", "metrics.csv"},
                      {"final_checkpoint", "checkpoints/final"}};
    j["resolved_config"] = resolved_config;
    return j;
  }
};

struct RunOptions {
  bool resume = false;
  int stop_after_round = -1;  // exclusive; < 0 means run to completion
  MixHook mix_hook;           // test instrumentation, forwarded to the engine
};

// Engine wiring shared by the file-emitting runner and in-memory callers.
inline ExperimentSetup make_setup(const ExperimentConfig& cfg, const BuiltData& data) {
  ExperimentSetup setup;
  setup.shards = data.shards;
  setup.test_set = data.test_set;
  setup.layer_sizes = cfg.layer_sizes();
  setup.trainer = cfg.trainer;
  setup.schedule = cfg.schedule;
  setup.master_seed = cfg.master_seed;
  setup.local_metric_weight_by_size = cfg.local_metric_weight_by_size;
  return setup;
}

inline std::string metrics_csv(const std::vector<RoundMetrics>& metrics) {
  std::string out = std::string(kMetricsHeader) + "\n";
  for (const auto& rm : metrics) out += metrics_rows(rm);
  return out;
}

namespace detail {

inline std::string model_csv(const MlpParams& params) {
  std::string out = "value\n";
  for (double v : params.values()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

inline void load_model_csv(const std::string& text, MlpParams& params) {
  std::size_t pos = 0;
  bool header = true;
  std::size_t i = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    if (i >= params.size()) throw IoError("checkpoint model: too many values");
    params.values()[i++] = parse_double(line, "checkpoint model");
  }
  if (i != params.size()) throw IoError("checkpoint model: expected " + std::to_string(params.size()) +
                                        " values, got " + std::to_string(i));
}

inline void write_checkpoint(const std::filesystem::path& dir, int round, const ExperimentConfig& cfg,
                             const MlpParams& params, const std::vector<PseudoLabelStore>& stores) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["round"] = round;
  meta["layer_sizes"] = cfg.layer_sizes();
  meta["num_clients"] = cfg.partition.num_clients;
  std::vector<std::string> state_files;
  for (std::size_t k = 0; k < stores.size(); ++k) {
    const std::string name = "state_client_" + std::to_string(k) + ".csv";
    state_files.push_back(name);
    write_text_file(dir / name, stores[k].snapshot_csv(cfg.classes));
  }
  meta["state_files"] = state_files;
  write_text_file(dir / "model.csv", model_csv(params));
  write_text_file(dir / "meta.json", meta.dump(2) + "\n");
}

struct Checkpoint {
  int round = 0;
  MlpParams params;
  std::vector<PseudoLabelStore> stores;
};

inline Checkpoint load_checkpoint(const std::filesystem::path& dir, const ExperimentConfig& cfg) {
  const auto meta = nlohmann::json::parse(read_text_file(dir / "meta.json"));
  Checkpoint ckpt;
  ckpt.round = meta.at("round").get<int>();
  const auto layer_sizes = meta.at("layer_sizes").get<std::vector<int>>();
  if (layer_sizes != cfg.layer_sizes())
    throw ConfigError("checkpoint at " + dir.string() + " was written for a different model shape");
  ckpt.params = MlpParams(layer_sizes);
  load_model_csv(read_text_file(dir / "model.csv"), ckpt.params);
  const auto state_files = meta.at("state_files").get<std::vector<std::string>>();
  for (const auto& name : state_files)
    ckpt.stores.push_back(PseudoLabelStore::from_snapshot_csv(read_text_file(dir / name), cfg.classes));
  return ckpt;
}

inline std::optional<std::filesystem::path> latest_checkpoint_dir(const std::filesystem::path& run_dir) {
  const auto root = run_dir / "checkpoints";
  if (!std::filesystem::exists(root)) return std::nullopt;
  std::optional<std::filesystem::path> best;
  int best_round = -1;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("round_", 0) != 0) continue;
    const int r = static_cast<int>(parse_int(name.substr(6), "checkpoint dir"));
    if (r > best_round) {
      best_round = r;
      best = entry.path();
    }
  }
  return best;
}

// Keeps the header plus all rows with round <= cutoff, byte-for-byte.
inline void truncate_metrics(const std::filesystem::path& metrics_path, int cutoff) {
  if (!std::filesystem::exists(metrics_path)) {
    write_text_file(metrics_path, std::string(kMetricsHeader) + "\n");
    return;
  }
  const std::string text = read_text_file(metrics_path);
  std::string kept;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      kept += line + "\n";
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    const int round = static_cast<int>(parse_int(line.substr(0, comma), "metrics"));
    if (round <= cutoff) kept += line + "\n";
  }
  write_text_file(metrics_path, kept);
}

}  // namespace detail

// Executes one configured run end to end and emits all artifacts under the
// run directory. Re-running the same config with the same seed rewrites the
// data and metrics artifacts with identical bytes.
inline RunManifest run(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::filesystem::path dir = resolve_out_dir(cfg.out_dir);
  std::filesystem::create_directories(dir);

  const BuiltData data = build_data(cfg);

  write_text_file(dir / "config_resolved.ini", resolved_ini(cfg));
  const std::string train_csv = dataset_csv(data.shards, cfg.dim);
  const std::string test_csv = dataset_csv(data.test_set, cfg.dim);
  write_text_file(dir / "dataset_train.csv", train_csv);
  write_text_file(dir / "dataset_test.csv", test_csv);
  write_text_file(dir / "corruption_log.csv", corruption_csv(data.corruption));
  const std::uint64_t dataset_hash = fnv1a64(train_csv + test_csv);

  ExperimentSetup setup = make_setup(cfg, data);
  setup.mix_hook = opts.mix_hook;
  setup.stop_after_round = opts.stop_after_round;

  detail::Checkpoint resume_state;
  if (opts.resume) {
    const auto latest = detail::latest_checkpoint_dir(dir);
    if (!latest.has_value())
      throw ConfigError("resume requested but no checkpoint found under " + (dir / "checkpoints").string());
    resume_state = detail::load_checkpoint(*latest, cfg);
    setup.start_round = resume_state.round + 1;
    setup.initial_params = &resume_state.params;
    setup.initial_stores = &resume_state.stores;
    detail::truncate_metrics(dir / "metrics.csv", resume_state.round);
  } else {
    write_text_file(dir / "metrics.csv", std::string(kMetricsHeader) + "\n");
  }

  std::ofstream metrics_out(dir / "metrics.csv", std::ios::binary | std::ios::app);
  if (!metrics_out) throw IoError("cannot open " + (dir / "metrics.csv").string());
  setup.metrics_sink = [&metrics_out](const RoundMetrics& rm) {
    metrics_out << metrics_rows(rm);
    metrics_out.flush();
  };
  setup.checkpoint_every = cfg.checkpoint_every;
  setup.checkpoint_sink = [&dir, &cfg](int round, const MlpParams& params,
                                       const std::vector<PseudoLabelStore>& stores) {
    detail::write_checkpoint(dir / "checkpoints" / ("round_" + std::to_string(round)), round, cfg, params,
                             stores);
  };

  const ExperimentResult result = run_experiment(setup);
  metrics_out.close();

  detail::write_checkpoint(dir / "checkpoints" / "final", result.rounds_completed - 1, cfg,
                           result.final_params, result.stores);

  RunManifest manifest;
  manifest.resolved_config = resolved_ini(cfg);
  manifest.out_dir = dir.string();
  manifest.dataset_hash = dataset_hash;
  manifest.rounds_completed = result.rounds_completed;
  for (const auto& rm : result.metrics) manifest.best_test_acc = std::max(manifest.best_test_acc, rm.test_acc);
  // Picks up pre-resume rounds as well.
  for (const auto& row : parse_metrics_csv(read_text_file(dir / "metrics.csv")))
    manifest.best_test_acc = std::max(manifest.best_test_acc, row.test_acc);
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_text_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return manifest;
}

// --- run comparison --------------------------------------------------------

struct RunSummary {
  std::string dir;
  std::string preset;
  std::uint64_t dataset_hash = 0;
  MemorizationBreakdown final_global;
  std::optional<MemorizationBreakdown> final_local;
  double best_test_acc = 0.0;
};

inline RunSummary load_run_summary(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir / "manifest.json"))
    throw ConfigError("run dir " + dir.string() + ": missing manifest.json");
  if (!std::filesystem::exists(dir / "metrics.csv"))
    throw ConfigError("run dir " + dir.string() + ": missing metrics.csv");
  RunSummary s;
  s.dir = dir.string();
  const auto manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
  s.dataset_hash = manifest.at("dataset_hash").get<std::uint64_t>();
  {
    // preset comes from the embedded resolved config
    const auto cfg = parse_and_validate(manifest.at("resolved_config").get<std::string>());
    s.preset = cfg.config.preset;
  }
  const auto rows = parse_metrics_csv(read_text_file(dir / "metrics.csv"));
  if (rows.empty()) throw ConfigError("run dir " + dir.string() + ": metrics.csv has no rows");
  int last_round = 0;
  for (const auto& r : rows) last_round = std::max(last_round, r.round);
  for (const auto& r : rows) {
    s.best_test_acc = std::max(s.best_test_acc, r.test_acc);
    if (r.round == last_round && r.scope == "global") s.final_global = r.breakdown;
    if (r.round == last_round && r.scope == "local") s.final_local = r.breakdown;
  }
  return s;
}

// Final-round breakdowns side by side, clean/noisy columns in the same order
// the memorization table uses, plus best test accuracy.
inline std::vector<RunSummary> load_and_check_summaries(const std::vector<std::string>& dirs) {
  if (dirs.size() < 2) throw ConfigError("compare: need at least two run directories");
  std::vector<RunSummary> summaries;
  for (const auto& d : dirs) summaries.push_back(load_run_summary(d));
  for (std::size_t i = 1; i < summaries.size(); ++i)
    if (summaries[i].dataset_hash != summaries[0].dataset_hash)
      throw ConfigError("compare: dataset hash of " + summaries[i].dir + " differs from " +
                        summaries[0].dir + "; comparison refused");
  return summaries;
}

inline const std::vector<std::string>& compare_columns() {
  static const std::vector<std::string> cols = {
      "run",
      "preset",
      "global_clean_correct",
      "global_clean_wrong",
      "global_noisy_correct",
      "global_noisy_wrong",
      "global_noisy_memorized",
      "local_clean_correct",
      "local_clean_wrong",
      "local_noisy_correct",
      "local_noisy_wrong",
      "local_noisy_memorized",
      "best_test_acc",
  };
  return cols;
}

inline std::vector<std::string> summary_cells(const RunSummary& s) {
  std::vector<std::string> cells{std::filesystem::path(s.dir).filename().string(), s.preset};
  const auto& g = s.final_global;
  for (double v : {g.clean_correct, g.clean_wrong, g.noisy_correct, g.noisy_wrong, g.noisy_memorized})
    cells.push_back(format_fixed6(v));
  if (s.final_local.has_value()) {
    const auto& l = *s.final_local;
    for (double v : {l.clean_correct, l.clean_wrong, l.noisy_correct, l.noisy_wrong, l.noisy_memorized})
      cells.push_back(format_fixed6(v));
  } else {
    for (int i = 0; i < 5; ++i) cells.push_back("-");
  }
  cells.push_back(format_fixed6(s.best_test_acc));
  return cells;
}

inline std::string compare_csv(const std::vector<RunSummary>& summaries) {
  std::string out;
  for (std::size_t i = 0; i < compare_columns().size(); ++i) {
    if (i > 0) out += ',';
    out += compare_columns()[i];
  }
  out += '\n';
  for (const auto& s : summaries) {
    const auto cells = summary_cells(s);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  }
  return out;
}

inline std::string compare_text(const std::vector<RunSummary>& summaries) {
  std::vector<std::vector<std::string>> table;
  table.push_back(compare_columns());
  for (const auto& s : summaries) table.push_back(summary_cells(s));
  std::vector<std::size_t> width(table[0].size(), 0);
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::string out;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += "  ";
      out += row[i];
      out.append(width[i] - row[i].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

}  // namespace flr
