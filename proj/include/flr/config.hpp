#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flr/data.hpp"
#include "flr/errors.hpp"
#include "flr/federation.hpp"
#include "flr/io.hpp"
#include "flr/pseudo_label.hpp"

namespace flr {

// Fully resolved run description: every default expanded, every seed pinned.
struct ExperimentConfig {
  // dataset
  int classes = 4;
  int dim = 16;
  int n_per_class = 1000;
  int test_n_per_class = 250;
  double spread = 3.0;
  std::uint64_t dataset_seed = 0;

  PartitionSpec partition;
  NoiseSpec noise;

  std::vector<int> hidden = {64, 64};

  TrainerConfig trainer;
  ScheduleParams schedule;

  std::string preset = "flr";
  std::string out_dir;
  std::uint64_t master_seed = 1;
  int checkpoint_every = 0;
  bool local_metric_weight_by_size = false;

  std::vector<int> layer_sizes() const {
    std::vector<int> sizes;
    sizes.push_back(dim);
    for (int h : hidden) sizes.push_back(h);
    sizes.push_back(classes);
    return sizes;
  }
};

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<std::string> warnings;  // preset-override notices
};

// Optional command-line overrides applied before resolution.
struct ConfigOverrides {
  std::optional<std::uint64_t> master_seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> preset;
};

namespace detail {

struct RawConfig {
  // section -> key -> value, insertion order preserved for error reporting
  std::map<std::string, std::map<std::string, std::string>> values;

  bool has(const std::string& section, const std::string& key) const {
    auto s = values.find(section);
    return s != values.end() && s->second.count(key) > 0;
  }
  const std::string& get(const std::string& section, const std::string& key) const {
    return values.at(section).at(key);
  }
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat INI: [section] headers, key = value lines, full-line # or ; comments.
inline RawConfig parse_ini(const std::string& text) {
  RawConfig raw;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (raw.values[section].count(key) > 0)
      throw ConfigError("config: duplicate key " + section + "." + key);
    raw.values[section][key] = value;
  }
  return raw;
}

inline const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"dataset", {"classes", "dim", "n_per_class", "test_n_per_class", "spread", "seed"}},
      {"partition", {"mode", "clients", "bernoulli_p", "dirichlet_alpha", "seed"}},
      {"noise", {"kind", "rho", "tau", "pair_map", "pair_classes", "seed"}},
      {"model", {"hidden"}},
      {"trainer",
       {"local_epochs", "batch_size", "learning_rate", "participation", "fedprox_mu", "momentum",
        "weight_decay"}},
      {"schedule",
       {"rounds", "warmup_rounds", "alpha", "beta", "gamma", "lambda", "alpha_mode", "gamma_round"}},
      {"run",
       {"preset", "out_dir", "master_seed", "checkpoint_every", "local_metric_weighting"}},
  };
  return keys;
}

class ConfigReader {
 public:
  explicit ConfigReader(RawConfig raw) : raw_(std::move(raw)) {
    for (const auto& [section, kv] : raw_.values) {
      auto it = known_keys().find(section);
      if (it == known_keys().end()) {
        errors_.push_back("unknown section [" + section + "]");
        continue;
      }
      for (const auto& [key, value] : kv)
        if (it->second.count(key) == 0) errors_.push_back("unknown key " + section + "." + key);
    }
  }

  bool has(const std::string& section, const std::string& key) const { return raw_.has(section, key); }

  std::string str(const std::string& section, const std::string& key, const std::string& fallback) {
    return has(section, key) ? raw_.get(section, key) : fallback;
  }

  std::string required_str(const std::string& section, const std::string& key) {
    if (!has(section, key)) {
      errors_.push_back("missing required key " + section + "." + key);
      return "";
    }
    return raw_.get(section, key);
  }

  long long integer(const std::string& section, const std::string& key, long long fallback) {
    if (!has(section, key)) return fallback;
    try {
      return parse_int(raw_.get(section, key), section + "." + key);
    } catch (const IoError& e) {
      errors_.push_back(e.what());
      return fallback;
    }
  }

  long long required_integer(const std::string& section, const std::string& key) {
    if (!has(section, key)) {
      errors_.push_back("missing required key " + section + "." + key);
      return 0;
    }
    return integer(section, key, 0);
  }

  std::uint64_t uinteger(const std::string& section, const std::string& key, std::uint64_t fallback) {
    if (!has(section, key)) return fallback;
    try {
      return parse_uint64(raw_.get(section, key), section + "." + key);
    } catch (const IoError& e) {
      errors_.push_back(e.what());
      return fallback;
    }
  }

  double real(const std::string& section, const std::string& key, double fallback) {
    if (!has(section, key)) return fallback;
    try {
      return parse_double(raw_.get(section, key), section + "." + key);
    } catch (const IoError& e) {
      errors_.push_back(e.what());
      return fallback;
    }
  }

  double required_real(const std::string& section, const std::string& key) {
    if (!has(section, key)) {
      errors_.push_back("missing required key " + section + "." + key);
      return 0.0;
    }
    return real(section, key, 0.0);
  }

  void check(bool ok, const std::string& message) {
    if (!ok) errors_.push_back(message);
  }

  void finish() const {
    if (errors_.empty()) return;
    std::string what = "invalid configuration:";
    for (const auto& e : errors_) what += "\n  - " + e;
    throw ConfigError(what);
  }

  std::vector<std::string>& errors() { return errors_; }

 private:
  RawConfig raw_;
  std::vector<std::string> errors_;
};

inline std::vector<int> parse_int_list(const std::string& s, const std::string& context,
                                       std::vector<std::string>& errors) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    const std::string item = trim(cur);
    cur.clear();
    if (item.empty()) return;
    try {
      out.push_back(static_cast<int>(parse_int(item, context)));
    } catch (const IoError& e) {
      errors.push_back(e.what());
    }
  };
  for (char ch : s) {
    if (ch == ',') flush();
    else cur.push_back(ch);
  }
  flush();
  return out;
}

inline std::map<int, int> parse_pair_map(const std::string& s, const std::string& context,
                                         std::vector<std::string>& errors) {
  std::map<int, int> out;
  std::string cur;
  auto flush = [&] {
    const std::string item = trim(cur);
    cur.clear();
    if (item.empty()) return;
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      errors.push_back(context + ": expected 'from:to' entries, got '" + item + "'");
      return;
    }
    try {
      const int from = static_cast<int>(parse_int(trim(item.substr(0, colon)), context));
      const int to = static_cast<int>(parse_int(trim(item.substr(colon + 1)), context));
      if (out.count(from) > 0) errors.push_back(context + ": duplicate map entry for class " + std::to_string(from));
      out[from] = to;
    } catch (const IoError& e) {
      errors.push_back(e.what());
    }
  };
  for (char ch : s) {
    if (ch == ',') flush();
    else cur.push_back(ch);
  }
  flush();
  return out;
}

// Coefficient settings a preset implies; explicit keys win with a warning.
struct PresetDefaults {
  std::optional<double> lambda;  // unset -> per-noise-kind default
  double alpha = 0.9;
  double beta = 0.7;
  double gamma = 0.5;
  AlphaMode alpha_mode = AlphaMode::kLinear;
  double fedprox_mu = 0.0;
};

inline PresetDefaults preset_defaults(const std::string& preset, std::vector<std::string>& errors) {
  PresetDefaults d;
  if (preset == "ce") {
    d.lambda = 0.0;
  } else if (preset == "flr") {
    // per-noise-kind lambda
  } else if (preset == "elr") {
    d.alpha = 0.0;
    d.alpha_mode = AlphaMode::kConstant;
  } else if (preset == "slr") {
    d.alpha = 1.0;
    d.alpha_mode = AlphaMode::kConstant;
  } else if (preset == "er") {
    d.alpha = 0.0;
    d.gamma = 0.0;
    d.alpha_mode = AlphaMode::kConstant;
  } else if (preset == "fedprox") {
    d.lambda = 0.0;
    d.fedprox_mu = 0.001;
  } else if (preset == "fedprox+flr") {
    d.fedprox_mu = 0.001;
  } else {
    errors.push_back("run.preset: unknown preset '" + preset +
                     "' (expected ce, flr, elr, slr, er, fedprox, fedprox+flr)");
  }
  return d;
}

}  // namespace detail

inline ParsedConfig parse_and_validate(const std::string& text, const ConfigOverrides& overrides = {}) {
  detail::ConfigReader reader(detail::parse_ini(text));
  auto& errors = reader.errors();
  ParsedConfig parsed;
  ExperimentConfig& cfg = parsed.config;

  // run block first: the preset steers coefficient defaults
  cfg.preset = overrides.preset.value_or(reader.str("run", "preset", "flr"));
  cfg.master_seed = overrides.master_seed.value_or(reader.uinteger("run", "master_seed", 1));
  cfg.checkpoint_every = static_cast<int>(reader.integer("run", "checkpoint_every", 0));
  reader.check(cfg.checkpoint_every >= 0, "run.checkpoint_every: must be >= 0");
  {
    const std::string w = reader.str("run", "local_metric_weighting", "unweighted");
    if (w == "by_size") cfg.local_metric_weight_by_size = true;
    else if (w != "unweighted")
      errors.push_back("run.local_metric_weighting: expected 'unweighted' or 'by_size'");
  }
  const detail::PresetDefaults preset = detail::preset_defaults(cfg.preset, errors);

  // dataset
  cfg.classes = static_cast<int>(reader.required_integer("dataset", "classes"));
  cfg.dim = static_cast<int>(reader.required_integer("dataset", "dim"));
  cfg.n_per_class = static_cast<int>(reader.required_integer("dataset", "n_per_class"));
  cfg.test_n_per_class =
      static_cast<int>(reader.integer("dataset", "test_n_per_class", std::max(1, cfg.n_per_class / 4)));
  cfg.spread = reader.real("dataset", "spread", cfg.spread);
  reader.check(cfg.classes >= 2, "dataset.classes: must be >= 2");
  reader.check(cfg.dim >= 2, "dataset.dim: must be >= 2");
  reader.check(cfg.n_per_class >= 1, "dataset.n_per_class: must be >= 1");
  reader.check(cfg.test_n_per_class >= 1, "dataset.test_n_per_class: must be >= 1");
  reader.check(cfg.spread > 0.0, "dataset.spread: must be > 0");
  cfg.dataset_seed = reader.uinteger("dataset", "seed", derive_seed(cfg.master_seed, {stream::kDataset}));

  // partition
  {
    const std::string mode = reader.required_str("partition", "mode");
    if (mode == "iid") cfg.partition.mode = PartitionMode::kIid;
    else if (mode == "noniid") cfg.partition.mode = PartitionMode::kNonIid;
    else if (!mode.empty()) errors.push_back("partition.mode: expected 'iid' or 'noniid'");
  }
  cfg.partition.num_clients = static_cast<int>(reader.required_integer("partition", "clients"));
  cfg.partition.bernoulli_p = reader.real("partition", "bernoulli_p", 1.0);
  cfg.partition.dirichlet_alpha = reader.real("partition", "dirichlet_alpha", 1.0);
  reader.check(cfg.partition.num_clients >= 1, "partition.clients: must be >= 1");
  if (cfg.partition.mode == PartitionMode::kNonIid) {
    reader.check(cfg.partition.bernoulli_p > 0.0 && cfg.partition.bernoulli_p <= 1.0,
                 "partition.bernoulli_p: must lie in (0, 1]");
    reader.check(cfg.partition.dirichlet_alpha > 0.0, "partition.dirichlet_alpha: must be > 0");
  }
  cfg.partition.seed = reader.uinteger("partition", "seed", derive_seed(cfg.master_seed, {stream::kPartition}));

  // noise
  {
    const std::string kind = reader.required_str("noise", "kind");
    if (kind == "symmetric") cfg.noise.kind = NoiseKind::kSymmetric;
    else if (kind == "asymmetric") cfg.noise.kind = NoiseKind::kAsymmetric;
    else if (!kind.empty()) errors.push_back("noise.kind: expected 'symmetric' or 'asymmetric'");
  }
  cfg.noise.rho = reader.required_real("noise", "rho");
  cfg.noise.tau = reader.real("noise", "tau", 0.0);
  reader.check(cfg.noise.rho >= 0.0 && cfg.noise.rho <= 1.0, "noise.rho: must lie in [0, 1]");
  reader.check(cfg.noise.tau >= 0.0 && cfg.noise.tau < 1.0,
               "noise.tau: must lie in [0, 1) so U(tau, 1) is nondegenerate");
  if (reader.has("noise", "pair_map")) {
    cfg.noise.pair_map = detail::parse_pair_map(reader.str("noise", "pair_map", ""), "noise.pair_map", errors);
  } else if (cfg.noise.kind == NoiseKind::kAsymmetric) {
    // Default cyclic shift c -> (c+1) mod C, restricted to noise.pair_classes when given.
    std::vector<int> classes_in_map;
    if (reader.has("noise", "pair_classes")) {
      classes_in_map = detail::parse_int_list(reader.str("noise", "pair_classes", ""), "noise.pair_classes", errors);
    } else {
      for (int c = 0; c < cfg.classes; ++c) classes_in_map.push_back(c);
    }
    for (int c : classes_in_map) cfg.noise.pair_map[c] = (c + 1) % cfg.classes;
  }
  for (const auto& [from, to] : cfg.noise.pair_map) {
    reader.check(from >= 0 && from < cfg.classes,
                 "noise.pair_map: source class " + std::to_string(from) + " out of range");
    reader.check(to >= 0 && to < cfg.classes,
                 "noise.pair_map: target class " + std::to_string(to) + " out of range");
  }
  if (cfg.noise.kind == NoiseKind::kAsymmetric)
    reader.check(!cfg.noise.pair_map.empty(), "noise.pair_map: required nonempty for asymmetric noise");
  cfg.noise.seed = reader.uinteger("noise", "seed", derive_seed(cfg.master_seed, {stream::kNoiseInject}));

  // model
  if (reader.has("model", "hidden")) {
    cfg.hidden = detail::parse_int_list(reader.str("model", "hidden", ""), "model.hidden", errors);
    for (int h : cfg.hidden) reader.check(h >= 1, "model.hidden: layer sizes must be >= 1");
  }

  // trainer
  cfg.trainer.local_epochs = static_cast<int>(reader.integer("trainer", "local_epochs", cfg.trainer.local_epochs));
  cfg.trainer.batch_size = static_cast<int>(reader.integer("trainer", "batch_size", cfg.trainer.batch_size));
  cfg.trainer.learning_rate = reader.real("trainer", "learning_rate", cfg.trainer.learning_rate);
  cfg.trainer.participation = reader.real("trainer", "participation", cfg.trainer.participation);
  cfg.trainer.momentum = reader.real("trainer", "momentum", cfg.trainer.momentum);
  cfg.trainer.weight_decay = reader.real("trainer", "weight_decay", cfg.trainer.weight_decay);

  // schedule, with preset-aware defaults and override warnings
  cfg.schedule.total_rounds = static_cast<int>(reader.required_integer("schedule", "rounds"));
  cfg.schedule.warmup_rounds = static_cast<int>(reader.integer("schedule", "warmup_rounds", 50));
  cfg.schedule.gamma_activation_round = static_cast<int>(reader.integer("schedule", "gamma_round", -1));

  const double lambda_default =
      preset.lambda.has_value() ? *preset.lambda
                                : (cfg.noise.kind == NoiseKind::kAsymmetric ? 3.0 : 2.0);
  auto preset_controlled = [&](const char* key, double value, double preset_value) {
    if (reader.has("schedule", key) && value != preset_value)
      parsed.warnings.push_back("schedule." + std::string(key) + " = " + format_double(value) +
                                " overrides preset '" + cfg.preset + "' (preset implies " +
                                format_double(preset_value) + ")");
    return value;
  };
  cfg.schedule.lambda = preset_controlled("lambda", reader.real("schedule", "lambda", lambda_default),
                                          lambda_default);
  cfg.schedule.alpha = preset_controlled("alpha", reader.real("schedule", "alpha", preset.alpha), preset.alpha);
  cfg.schedule.beta = preset_controlled("beta", reader.real("schedule", "beta", preset.beta), preset.beta);
  cfg.schedule.gamma = preset_controlled("gamma", reader.real("schedule", "gamma", preset.gamma), preset.gamma);
  {
    const std::string mode_default = preset.alpha_mode == AlphaMode::kLinear ? "linear" : "constant";
    const std::string mode = reader.str("schedule", "alpha_mode", mode_default);
    if (mode == "linear") cfg.schedule.alpha_mode = AlphaMode::kLinear;
    else if (mode == "constant") cfg.schedule.alpha_mode = AlphaMode::kConstant;
    else errors.push_back("schedule.alpha_mode: expected 'linear' or 'constant'");
    if (reader.has("schedule", "alpha_mode") && mode != mode_default && (mode == "linear" || mode == "constant"))
      parsed.warnings.push_back("schedule.alpha_mode = " + mode + " overrides preset '" + cfg.preset + "'");
  }
  {
    const double mu = reader.real("trainer", "fedprox_mu", preset.fedprox_mu);
    if (reader.has("trainer", "fedprox_mu") && mu != preset.fedprox_mu)
      parsed.warnings.push_back("trainer.fedprox_mu = " + format_double(mu) + " overrides preset '" +
                                cfg.preset + "' (preset implies " + format_double(preset.fedprox_mu) + ")");
    cfg.trainer.fedprox_mu = mu;
  }

  reader.check(cfg.schedule.total_rounds >= 1, "schedule.rounds: must be >= 1");
  reader.check(cfg.schedule.warmup_rounds >= 0 && cfg.schedule.warmup_rounds <= cfg.schedule.total_rounds,
               "schedule.warmup_rounds: must lie in [0, rounds]");
  reader.check(cfg.schedule.alpha >= 0.0 && cfg.schedule.alpha <= 1.0, "schedule.alpha: must lie in [0, 1]");
  reader.check(cfg.schedule.beta >= 0.0 && cfg.schedule.beta <= 1.0, "schedule.beta: must lie in [0, 1]");
  reader.check(cfg.schedule.gamma >= 0.0 && cfg.schedule.gamma <= 1.0, "schedule.gamma: must lie in [0, 1]");
  reader.check(cfg.schedule.lambda >= 0.0, "schedule.lambda: must be >= 0");
  reader.check(cfg.trainer.local_epochs >= 1, "trainer.local_epochs: must be >= 1");
  reader.check(cfg.trainer.batch_size >= 1, "trainer.batch_size: must be >= 1");
  reader.check(cfg.trainer.learning_rate > 0.0, "trainer.learning_rate: must be > 0");
  reader.check(cfg.trainer.participation > 0.0 && cfg.trainer.participation <= 1.0,
               "trainer.participation: must lie in (0, 1]");
  reader.check(cfg.trainer.fedprox_mu >= 0.0, "trainer.fedprox_mu: must be >= 0");
  reader.check(cfg.trainer.momentum >= 0.0 && cfg.trainer.momentum < 1.0,
               "trainer.momentum: must lie in [0, 1)");
  reader.check(cfg.trainer.weight_decay >= 0.0, "trainer.weight_decay: must be >= 0");

  // iid partitioning needs per-class divisibility
  if (cfg.partition.mode == PartitionMode::kIid && cfg.partition.num_clients >= 1 && cfg.n_per_class >= 1)
    reader.check(cfg.n_per_class % cfg.partition.num_clients == 0,
                 "partition.clients: iid mode needs dataset.n_per_class divisible by the client count");

  cfg.out_dir = overrides.out_dir.value_or(
      reader.str("run", "out_dir", "runs/" + cfg.preset + "-seed" + std::to_string(cfg.master_seed)));

  reader.finish();
  return parsed;
}

// Canonical emission of a resolved config; parsing it back yields the same
// resolved config without warnings.
inline std::string resolved_ini(const ExperimentConfig& cfg) {
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  out += "[dataset]\n";
  kv("classes", std::to_string(cfg.classes));
  kv("dim", std::to_string(cfg.dim));
  kv("n_per_class", std::to_string(cfg.n_per_class));
  kv("test_n_per_class", std::to_string(cfg.test_n_per_class));
  kv("spread", format_double(cfg.spread));
  kv("seed", std::to_string(cfg.dataset_seed));
  out += "\n[partition]\n";
  kv("mode", cfg.partition.mode == PartitionMode::kIid ? "iid" : "noniid");
  kv("clients", std::to_string(cfg.partition.num_clients));
  kv("bernoulli_p", format_double(cfg.partition.bernoulli_p));
  kv("dirichlet_alpha", format_double(cfg.partition.dirichlet_alpha));
  kv("seed", std::to_string(cfg.partition.seed));
  out += "\n[noise]\n";
  kv("kind", cfg.noise.kind == NoiseKind::kSymmetric ? "symmetric" : "asymmetric");
  kv("rho", format_double(cfg.noise.rho));
  kv("tau", format_double(cfg.noise.tau));
  if (!cfg.noise.pair_map.empty()) {
    std::string pm;
    for (const auto& [from, to] : cfg.noise.pair_map) {
      if (!pm.empty()) pm += ',';
      pm += std::to_string(from) + ":" + std::to_string(to);
    }
    kv("pair_map", pm);
  }
  kv("seed", std::to_string(cfg.noise.seed));
  out += "\n[model]\n";
  {
    std::string h;
    for (int v : cfg.hidden) {
      if (!h.empty()) h += ',';
      h += std::to_string(v);
    }
    kv("hidden", h);
  }
  out += "\n[trainer]\n";
  kv("local_epochs", std::to_string(cfg.trainer.local_epochs));
  kv("batch_size", std::to_string(cfg.trainer.batch_size));
  kv("learning_rate", format_double(cfg.trainer.learning_rate));
  kv("participation", format_double(cfg.trainer.participation));
  kv("fedprox_mu", format_double(cfg.trainer.fedprox_mu));
  kv("momentum", format_double(cfg.trainer.momentum));
  kv("weight_decay", format_double(cfg.trainer.weight_decay));
  out += "\n[schedule]\n";
  kv("rounds", std::to_string(cfg.schedule.total_rounds));
  kv("warmup_rounds", std::to_string(cfg.schedule.warmup_rounds));
  kv("gamma_round", std::to_string(cfg.schedule.gamma_round()));
  kv("alpha", format_double(cfg.schedule.alpha));
  kv("beta", format_double(cfg.schedule.beta));
  kv("gamma", format_double(cfg.schedule.gamma));
  kv("lambda", format_double(cfg.schedule.lambda));
  kv("alpha_mode", cfg.schedule.alpha_mode == AlphaMode::kLinear ? "linear" : "constant");
  out += "\n[run]\n";
  kv("preset", cfg.preset);
  kv("out_dir", cfg.out_dir);
  kv("master_seed", std::to_string(cfg.master_seed));
  kv("checkpoint_every", std::to_string(cfg.checkpoint_every));
  kv("local_metric_weighting", cfg.local_metric_weight_by_size ? "by_size" : "unweighted");
  return out;
}

}  // namespace flr
