#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flr/data.hpp"
#include "flr/io.hpp"
#include "flr/model.hpp"

namespace flr {

enum class Category { kCleanCorrect, kCleanWrong, kNoisyCorrect, kNoisyWrong, kNoisyMemorized };

// Clean examples (given == true) split into correct/wrong; corrupted examples
// into correct (predicts truth), memorized (predicts the corrupted label) and
// wrong (anything else).
inline Category classify_example(int pred_class, int given_label, int true_label) {
  if (given_label == true_label)
    return pred_class == true_label ? Category::kCleanCorrect : Category::kCleanWrong;
  if (pred_class == true_label) return Category::kNoisyCorrect;
  if (pred_class == given_label) return Category::kNoisyMemorized;
  return Category::kNoisyWrong;
}

enum class BreakdownScope { kGlobal, kLocal };

struct MemorizationBreakdown {
  double clean_correct = 0.0;
  double clean_wrong = 0.0;
  double noisy_correct = 0.0;
  double noisy_wrong = 0.0;
  double noisy_memorized = 0.0;
  BreakdownScope scope = BreakdownScope::kGlobal;
  int round = 0;
};

namespace detail {

struct CategoryCounts {
  std::size_t clean_correct = 0, clean_wrong = 0;
  std::size_t noisy_correct = 0, noisy_wrong = 0, noisy_memorized = 0;

  void add(Category c) {
    switch (c) {
      case Category::kCleanCorrect: ++clean_correct; break;
      case Category::kCleanWrong: ++clean_wrong; break;
      case Category::kNoisyCorrect: ++noisy_correct; break;
      case Category::kNoisyWrong: ++noisy_wrong; break;
      case Category::kNoisyMemorized: ++noisy_memorized; break;
    }
  }

  // Fractions over their own denominators; an empty denominator yields zeros.
  MemorizationBreakdown fractions(BreakdownScope scope, int round) const {
    MemorizationBreakdown b;
    b.scope = scope;
    b.round = round;
    const double clean_total = static_cast<double>(clean_correct + clean_wrong);
    const double noisy_total = static_cast<double>(noisy_correct + noisy_wrong + noisy_memorized);
    if (clean_total > 0.0) {
      b.clean_correct = static_cast<double>(clean_correct) / clean_total;
      b.clean_wrong = static_cast<double>(clean_wrong) / clean_total;
    }
    if (noisy_total > 0.0) {
      b.noisy_correct = static_cast<double>(noisy_correct) / noisy_total;
      b.noisy_wrong = static_cast<double>(noisy_wrong) / noisy_total;
      b.noisy_memorized = static_cast<double>(noisy_memorized) / noisy_total;
    }
    return b;
  }
};

inline CategoryCounts count_shard(const MlpParams& params, const ClientShard& shard) {
  CategoryCounts counts;
  for (const Example& ex : shard.examples)
    counts.add(classify_example(predict_class(params, ex.features), ex.given_label, ex.true_label));
  return counts;
}

}  // namespace detail

// Server-model taxonomy over every training example of every client.
inline MemorizationBreakdown global_breakdown(const MlpParams& server_params,
                                              const std::vector<ClientShard>& shards, int round) {
  detail::CategoryCounts counts;
  for (const ClientShard& shard : shards) {
    const detail::CategoryCounts c = detail::count_shard(server_params, shard);
    counts.clean_correct += c.clean_correct;
    counts.clean_wrong += c.clean_wrong;
    counts.noisy_correct += c.noisy_correct;
    counts.noisy_wrong += c.noisy_wrong;
    counts.noisy_memorized += c.noisy_memorized;
  }
  return counts.fractions(BreakdownScope::kGlobal, round);
}

struct LocalEvaluation {
  const MlpParams* params = nullptr;  // the client's freshly updated local model
  const ClientShard* shard = nullptr;
};

// Per-client fractions of participating noisy clients (r_k > 0), combined
// either as an unweighted mean or weighted by shard size. Absent when no
// noisy client participated this round.
inline std::optional<MemorizationBreakdown> local_breakdown(const std::vector<LocalEvaluation>& participants,
                                                            int round, bool weight_by_size = false) {
  MemorizationBreakdown acc;
  acc.scope = BreakdownScope::kLocal;
  acc.round = round;
  double total_weight = 0.0;
  for (const LocalEvaluation& ev : participants) {
    if (!(ev.shard->noise_rate > 0.0)) continue;
    const MemorizationBreakdown b =
        detail::count_shard(*ev.params, *ev.shard).fractions(BreakdownScope::kLocal, round);
    const double w = weight_by_size ? static_cast<double>(ev.shard->size()) : 1.0;
    acc.clean_correct += w * b.clean_correct;
    acc.clean_wrong += w * b.clean_wrong;
    acc.noisy_correct += w * b.noisy_correct;
    acc.noisy_wrong += w * b.noisy_wrong;
    acc.noisy_memorized += w * b.noisy_memorized;
    total_weight += w;
  }
  if (total_weight == 0.0) return std::nullopt;
  acc.clean_correct /= total_weight;
  acc.clean_wrong /= total_weight;
  acc.noisy_correct /= total_weight;
  acc.noisy_wrong /= total_weight;
  acc.noisy_memorized /= total_weight;
  return acc;
}

inline double test_accuracy(const MlpParams& server_params, const std::vector<Example>& test_set) {
  if (test_set.empty()) return 0.0;
  std::size_t hits = 0;
  for (const Example& ex : test_set)
    if (predict_class(server_params, ex.features) == ex.true_label) ++hits;
  return static_cast<double>(hits) / static_cast<double>(test_set.size());
}

struct RoundMetrics {
  int round = 0;
  std::string phase;  // "warmup" or "flr"
  MemorizationBreakdown global;
  std::optional<MemorizationBreakdown> local;
  double test_acc = 0.0;
  double train_loss = 0.0;
};

inline constexpr const char* kMetricsHeader =
    "round,phase,scope,clean_correct,clean_wrong,noisy_correct,noisy_wrong,noisy_memorized,"
    "test_acc,train_loss";

inline std::string metrics_rows(const RoundMetrics& rm) {
  auto row = [&rm](const MemorizationBreakdown& b, const char* scope) {
    std::string out = std::to_string(rm.round);
    out += ',';
    out += rm.phase;
    out += ',';
    out += scope;
    for (double v : {b.clean_correct, b.clean_wrong, b.noisy_correct, b.noisy_wrong, b.noisy_memorized,
                     rm.test_acc, rm.train_loss}) {
      out += ',';
      out += format_fixed6(v);
    }
    out += '\n';
    return out;
  };
  std::string out = row(rm.global, "global");
  if (rm.local.has_value()) out += row(*rm.local, "local");
  return out;
}

// Reads a metrics stream back for comparison tooling; local rows may be absent.
struct MetricsRow {
  int round = 0;
  std::string phase;
  std::string scope;
  MemorizationBreakdown breakdown;
  double test_acc = 0.0;
  double train_loss = 0.0;
};

inline std::vector<MetricsRow> parse_metrics_csv(const std::string& text) {
  std::vector<MetricsRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != kMetricsHeader) throw IoError("metrics: unexpected header '" + line + "'");
      header = false;
      continue;
    }
    const auto cols = split_csv(line);
    if (cols.size() != 10) throw IoError("metrics: malformed row '" + line + "'");
    MetricsRow r;
    r.round = static_cast<int>(parse_int(cols[0], "metrics"));
    r.phase = cols[1];
    r.scope = cols[2];
    r.breakdown.round = r.round;
    r.breakdown.scope = r.scope == "local" ? BreakdownScope::kLocal : BreakdownScope::kGlobal;
    r.breakdown.clean_correct = parse_double(cols[3], "metrics");
    r.breakdown.clean_wrong = parse_double(cols[4], "metrics");
    r.breakdown.noisy_correct = parse_double(cols[5], "metrics");
    r.breakdown.noisy_wrong = parse_double(cols[6], "metrics");
    r.breakdown.noisy_memorized = parse_double(cols[7], "metrics");
    r.test_acc = parse_double(cols[8], "metrics");
    r.train_loss = parse_double(cols[9], "metrics");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace flr
