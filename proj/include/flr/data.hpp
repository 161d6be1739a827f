#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "flr/errors.hpp"
#include "flr/io.hpp"
#include "flr/rng.hpp"

namespace flr {

struct Example {
  std::uint64_t example_id = 0;
  std::vector<double> features;
  int given_label = 0;  // post-corruption label used for training
  int true_label = 0;   // hidden ground truth, used only by metrics
};

struct ClientShard {
  int client_id = 0;
  std::vector<Example> examples;
  double noise_rate = 0.0;  // r_k, 0 for clean clients

  std::size_t size() const { return examples.size(); }
};

enum class PartitionMode { kIid, kNonIid };

struct PartitionSpec {
  PartitionMode mode = PartitionMode::kIid;
  int num_clients = 1;
  double bernoulli_p = 1.0;     // class-presence probability, non-iid only
  double dirichlet_alpha = 1.0; // concentration, non-iid only
  std::uint64_t seed = 0;
};

enum class NoiseKind { kSymmetric, kAsymmetric };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kSymmetric;
  double rho = 0.0;  // fraction of noisy clients
  double tau = 0.0;  // lower bound of per-client noise rate
  // class -> class; fixed points mean "never corrupted". Asymmetric only.
  std::map<int, int> pair_map;
  std::uint64_t seed = 0;
};

struct CorruptionEntry {
  std::uint64_t example_id = 0;
  int old_class = 0;
  int new_class = 0;
  int client_id = 0;
};

// Symmetric noise logs every selected example (old == new when the resample
// landed on the original class); asymmetric logs actual reassignments only.
// selected_per_client keeps round(r_k * n_k) observable either way.
struct CorruptionLog {
  std::vector<CorruptionEntry> entries;
  std::map<int, std::size_t> selected_per_client;

  std::vector<std::vector<std::size_t>> transition_matrix(int num_classes) const {
    std::vector<std::vector<std::size_t>> m(static_cast<std::size_t>(num_classes),
                                            std::vector<std::size_t>(static_cast<std::size_t>(num_classes), 0));
    for (const auto& e : entries)
      ++m[static_cast<std::size_t>(e.old_class)][static_cast<std::size_t>(e.new_class)];
    return m;
  }
};

// --- synthetic dataset -------------------------------------------------

// C isotropic unit-variance Gaussian clusters with unit-norm random centers
// scaled by `spread`; labels are the cluster index. The centers depend only
// on (seed), the samples on (seed, sample_stream): a held-out split drawn
// with a different sample_stream shares the class structure but none of the
// noise. `first_id` lets the test set continue the id space of the train set.
inline std::vector<Example> generate_synthetic(int num_classes, int dim, int n_per_class,
                                               double spread, std::uint64_t seed,
                                               std::uint64_t first_id = 0,
                                               std::uint64_t sample_stream = 0) {
  if (num_classes < 2) throw ConfigError("generate_synthetic: need at least 2 classes");
  if (dim < 2) throw ConfigError("generate_synthetic: need dim >= 2");
  if (n_per_class < 1) throw ConfigError("generate_synthetic: need n_per_class >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);

  std::mt19937_64 center_rng(derive_seed(seed, {0xce17ULL}));
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(num_classes));
  for (auto& c : centers) {
    c.resize(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& v : c) {
        v = normal(center_rng);
        norm2 += v * v;
      }
    } while (norm2 == 0.0);
    const double scale = spread / std::sqrt(norm2);
    for (double& v : c) v *= scale;
  }

  std::mt19937_64 rng(derive_seed(seed, {0x5a3eULL, sample_stream}));
  std::vector<Example> out;
  out.reserve(static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(n_per_class));
  std::uint64_t id = first_id;
  for (int c = 0; c < num_classes; ++c) {
    for (int i = 0; i < n_per_class; ++i) {
      Example ex;
      ex.example_id = id++;
      ex.features.resize(static_cast<std::size_t>(dim));
      for (int j = 0; j < dim; ++j)
        ex.features[static_cast<std::size_t>(j)] = centers[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] + normal(rng);
      ex.given_label = c;
      ex.true_label = c;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

// --- partitioning -------------------------------------------------------

namespace detail {

inline std::map<int, std::vector<std::size_t>> indices_by_class(const std::vector<Example>& examples) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < examples.size(); ++i) by_class[examples[i].true_label].push_back(i);
  return by_class;
}

}  // namespace detail

// Equal shard sizes with equal per-class counts; requires divisibility.
inline std::vector<ClientShard> partition_iid(const std::vector<Example>& examples, int num_clients,
                                              std::uint64_t seed) {
  if (num_clients < 1) throw ConfigError("partition_iid: need at least one client");
  auto by_class = detail::indices_by_class(examples);
  for (const auto& [cls, idxs] : by_class) {
    if (idxs.size() % static_cast<std::size_t>(num_clients) != 0)
      throw ConfigError("partition_iid: class " + std::to_string(cls) + " has " +
                        std::to_string(idxs.size()) + " samples, not divisible by " +
                        std::to_string(num_clients) + " clients");
  }
  std::mt19937_64 rng(seed);
  std::vector<ClientShard> shards(static_cast<std::size_t>(num_clients));
  for (int k = 0; k < num_clients; ++k) shards[static_cast<std::size_t>(k)].client_id = k;
  for (auto& [cls, idxs] : by_class) {
    std::shuffle(idxs.begin(), idxs.end(), rng);
    const std::size_t per_client = idxs.size() / static_cast<std::size_t>(num_clients);
    for (int k = 0; k < num_clients; ++k)
      for (std::size_t j = 0; j < per_client; ++j)
        shards[static_cast<std::size_t>(k)].examples.push_back(
            examples[idxs[static_cast<std::size_t>(k) * per_client + j]]);
  }
  return shards;
}

struct NonIidPartition {
  std::vector<ClientShard> shards;
  // phi[k][c] = 1 iff client k is eligible for class c (after resampling).
  std::vector<std::vector<int>> phi;
};

// Bernoulli class-presence matrix plus Dirichlet shares per class, converted
// to integer counts by largest-remainder apportionment with an at-least-one
// floor for every eligible client.
inline NonIidPartition partition_noniid(const std::vector<Example>& examples, const PartitionSpec& spec) {
  if (spec.mode != PartitionMode::kNonIid) throw ConfigError("partition_noniid: spec.mode must be noniid");
  const int n_clients = spec.num_clients;
  if (n_clients < 1) throw ConfigError("partition_noniid: need at least one client");
  if (!(spec.bernoulli_p > 0.0) || spec.bernoulli_p > 1.0)
    throw ConfigError("partition_noniid: bernoulli_p must lie in (0, 1]");
  if (!(spec.dirichlet_alpha > 0.0)) throw ConfigError("partition_noniid: dirichlet_alpha must be > 0");

  auto by_class = detail::indices_by_class(examples);
  const int n_classes = static_cast<int>(by_class.size());
  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution coin(spec.bernoulli_p);
  constexpr int kMaxResamples = 1000;

  // Eligibility matrix, then bounded repair: every class needs one eligible
  // client, every client needs one eligible class.
  std::vector<std::vector<int>> phi(static_cast<std::size_t>(n_clients),
                                    std::vector<int>(static_cast<std::size_t>(n_classes), 0));
  for (int c = 0; c < n_classes; ++c)
    for (int k = 0; k < n_clients; ++k) phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = coin(rng) ? 1 : 0;

  int attempts = 0;
  for (bool dirty = true; dirty;) {
    dirty = false;
    for (int c = 0; c < n_classes; ++c) {
      int count = 0;
      for (int k = 0; k < n_clients; ++k) count += phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      if (count == 0) {
        if (++attempts > kMaxResamples)
          throw ConfigError("partition_noniid: eligibility resampling exceeded 1000 attempts (p too small)");
        for (int k = 0; k < n_clients; ++k) phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = coin(rng) ? 1 : 0;
        dirty = true;
      }
    }
    for (int k = 0; k < n_clients; ++k) {
      int count = 0;
      for (int c = 0; c < n_classes; ++c) count += phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      if (count == 0) {
        if (++attempts > kMaxResamples)
          throw ConfigError("partition_noniid: eligibility resampling exceeded 1000 attempts (p too small)");
        for (int c = 0; c < n_classes; ++c) phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = coin(rng) ? 1 : 0;
        dirty = true;
      }
    }
  }

  NonIidPartition result;
  result.phi = phi;
  result.shards.resize(static_cast<std::size_t>(n_clients));
  for (int k = 0; k < n_clients; ++k) result.shards[static_cast<std::size_t>(k)].client_id = k;

  std::gamma_distribution<double> gamma(spec.dirichlet_alpha, 1.0);
  int class_pos = 0;
  for (auto& [cls, idxs] : by_class) {
    const int c = class_pos++;
    std::vector<int> eligible;
    for (int k = 0; k < n_clients; ++k)
      if (phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] == 1) eligible.push_back(k);

    const std::size_t n_c = idxs.size();
    if (n_c < eligible.size())
      throw ConfigError("partition_noniid: class " + std::to_string(cls) + " has " + std::to_string(n_c) +
                        " samples but " + std::to_string(eligible.size()) +
                        " eligible clients; at-least-one rule unsatisfiable");

    // Dirichlet share per eligible client via normalized gammas.
    std::vector<double> share(eligible.size());
    double total = 0.0;
    for (double& s : share) {
      s = gamma(rng);
      total += s;
    }
    if (total <= 0.0) total = 1.0;
    for (double& s : share) s /= total;

    // Largest-remainder apportionment of n_c among the eligible clients.
    std::vector<std::size_t> count(eligible.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainder(eligible.size());
    std::size_t assigned = 0;
    for (std::size_t e = 0; e < eligible.size(); ++e) {
      const double quota = share[e] * static_cast<double>(n_c);
      count[e] = static_cast<std::size_t>(std::floor(quota));
      remainder[e] = {quota - std::floor(quota), e};
      assigned += count[e];
    }
    std::sort(remainder.begin(), remainder.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (std::size_t j = 0; assigned < n_c; ++j, ++assigned) ++count[remainder[j % remainder.size()].second];

    // At-least-one floor, funded by the currently largest holder.
    for (std::size_t e = 0; e < eligible.size(); ++e) {
      while (count[e] == 0) {
        std::size_t donor = 0;
        for (std::size_t f = 1; f < eligible.size(); ++f)
          if (count[f] > count[donor]) donor = f;
        if (count[donor] <= 1) throw ConfigError("partition_noniid: cannot satisfy at-least-one rule");
        --count[donor];
        ++count[e];
      }
    }

    std::shuffle(idxs.begin(), idxs.end(), rng);
    std::size_t cursor = 0;
    for (std::size_t e = 0; e < eligible.size(); ++e) {
      auto& shard = result.shards[static_cast<std::size_t>(eligible[e])];
      for (std::size_t j = 0; j < count[e]; ++j) shard.examples.push_back(examples[idxs[cursor++]]);
    }
  }
  return result;
}

// --- label noise ---------------------------------------------------------

// floor(rho * N) distinct noisy clients, each with r_k ~ U(tau, 1).
inline std::vector<std::pair<int, double>> assign_noise_levels(int num_clients, const NoiseSpec& spec) {
  if (spec.rho < 0.0 || spec.rho > 1.0) throw ConfigError("assign_noise_levels: rho must lie in [0, 1]");
  if (spec.tau < 0.0 || !(spec.tau < 1.0)) throw ConfigError("assign_noise_levels: tau must lie in [0, 1)");
  std::mt19937_64 rng(derive_seed(spec.seed, {stream::kNoiseLevels}));
  const int n_noisy = static_cast<int>(std::floor(spec.rho * static_cast<double>(num_clients)));
  std::vector<int> ids(static_cast<std::size_t>(num_clients));
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<bool> noisy(static_cast<std::size_t>(num_clients), false);
  for (int j = 0; j < n_noisy; ++j) noisy[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])] = true;
  std::uniform_real_distribution<double> rate(spec.tau, 1.0);
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(num_clients));
  for (int k = 0; k < num_clients; ++k) out.emplace_back(k, noisy[static_cast<std::size_t>(k)] ? rate(rng) : 0.0);
  return out;
}

// Corrupts exactly round(r_k * n_k) examples of the shard in place and
// appends to the log. Selection order and label draws come from a stream
// derived from (spec.seed, client_id), so clients are independent.
inline void inject_noise(ClientShard& shard, const NoiseSpec& spec, int num_classes, CorruptionLog& log) {
  if (spec.kind == NoiseKind::kAsymmetric && spec.pair_map.empty())
    throw ConfigError("inject_noise: asymmetric noise requires a nonempty pair_map");
  const std::size_t n_k = shard.examples.size();
  const auto n_sel = static_cast<std::size_t>(std::llround(shard.noise_rate * static_cast<double>(n_k)));
  log.selected_per_client[shard.client_id] = n_sel;
  if (n_sel == 0) return;

  std::mt19937_64 rng(derive_seed(spec.seed, {stream::kNoiseInject, static_cast<std::uint64_t>(shard.client_id)}));
  std::vector<std::size_t> order(n_k);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> selected(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_sel));
  std::sort(selected.begin(), selected.end());

  std::uniform_int_distribution<int> any_class(0, num_classes - 1);
  for (std::size_t idx : selected) {
    Example& ex = shard.examples[idx];
    if (spec.kind == NoiseKind::kSymmetric) {
      const int new_label = any_class(rng);
      log.entries.push_back({ex.example_id, ex.given_label, new_label, shard.client_id});
      ex.given_label = new_label;
    } else {
      auto it = spec.pair_map.find(ex.true_label);
      if (it == spec.pair_map.end() || it->second == ex.true_label) continue;  // fixed point
      log.entries.push_back({ex.example_id, ex.given_label, it->second, shard.client_id});
      ex.given_label = it->second;
    }
  }
}

// --- tabular export / import ---------------------------------------------

inline std::string dataset_csv(const std::vector<ClientShard>& shards, int dim) {
  std::string out = "example_id,client_id";
  for (int j = 0; j < dim; ++j) out += ",f_" + std::to_string(j);
  out += ",given_label,true_label\n";
  for (const auto& shard : shards) {
    for (const auto& ex : shard.examples) {
      out += std::to_string(ex.example_id);
      out += ',';
      out += std::to_string(shard.client_id);
      for (double f : ex.features) {
        out += ',';
        out += format_double(f);
      }
      out += ',';
      out += std::to_string(ex.given_label);
      out += ',';
      out += std::to_string(ex.true_label);
      out += '\n';
    }
  }
  return out;
}

// Test sets are exported as a single pseudo-shard with client_id -1.
inline std::string dataset_csv(const std::vector<Example>& examples, int dim, int client_id = -1) {
  ClientShard shard;
  shard.client_id = client_id;
  shard.examples = examples;
  return dataset_csv(std::vector<ClientShard>{std::move(shard)}, dim);
}

inline std::vector<ClientShard> parse_dataset_csv(const std::string& text) {
  std::map<int, ClientShard> shards;
  std::size_t pos = 0;
  bool header = true;
  int dim = -1;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      const auto cols = split_csv(line);
      if (cols.size() < 5 || cols[0] != "example_id" || cols[1] != "client_id")
        throw IoError("dataset: unexpected header '" + line + "'");
      dim = static_cast<int>(cols.size()) - 4;
      header = false;
      continue;
    }
    const auto cols = split_csv(line);
    if (static_cast<int>(cols.size()) != dim + 4) throw IoError("dataset: malformed row '" + line + "'");
    Example ex;
    ex.example_id = static_cast<std::uint64_t>(parse_int(cols[0], "dataset"));
    const int client = static_cast<int>(parse_int(cols[1], "dataset"));
    ex.features.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) ex.features[static_cast<std::size_t>(j)] = parse_double(cols[static_cast<std::size_t>(j) + 2], "dataset");
    ex.given_label = static_cast<int>(parse_int(cols[cols.size() - 2], "dataset"));
    ex.true_label = static_cast<int>(parse_int(cols[cols.size() - 1], "dataset"));
    auto& shard = shards[client];
    shard.client_id = client;
    shard.examples.push_back(std::move(ex));
  }
  std::vector<ClientShard> out;
  out.reserve(shards.size());
  for (auto& [id, shard] : shards) out.push_back(std::move(shard));
  return out;
}

inline std::string corruption_csv(const CorruptionLog& log) {
  std::string out = "example_id,client_id,old_class,new_class\n";
  for (const auto& e : log.entries) {
    out += std::to_string(e.example_id);
    out += ',';
    out += std::to_string(e.client_id);
    out += ',';
    out += std::to_string(e.old_class);
    out += ',';
    out += std::to_string(e.new_class);
    out += '\n';
  }
  return out;
}

}  // namespace flr
