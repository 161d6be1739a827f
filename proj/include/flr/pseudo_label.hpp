#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "flr/errors.hpp"
#include "flr/io.hpp"
#include "flr/prob.hpp"

namespace flr {

enum class AlphaMode { kLinear, kConstant };

// Mixing coefficients and their activation schedule. alpha ramps linearly
// over the full horizon (or stays constant for the global-only / local-only
// configurations); beta switches on at R/2; gamma at the warmup boundary.
struct ScheduleParams {
  double alpha = 0.9;
  double beta = 0.7;
  double gamma = 0.5;
  double lambda = 2.0;
  int total_rounds = 0;            // R
  int warmup_rounds = 50;          // R_w, also the phase split
  int gamma_activation_round = -1; // defaults to warmup_rounds when negative
  AlphaMode alpha_mode = AlphaMode::kLinear;

  int gamma_round() const { return gamma_activation_round < 0 ? warmup_rounds : gamma_activation_round; }

  void validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(alpha) || !in_unit(beta) || !in_unit(gamma))
      throw ConfigError("schedule: alpha, beta, gamma must lie in [0, 1]");
    if (lambda < 0.0) throw ConfigError("schedule: lambda must be nonnegative");
    if (total_rounds < 1) throw ConfigError("schedule: rounds must be >= 1");
    if (warmup_rounds < 0 || warmup_rounds > total_rounds)
      throw ConfigError("schedule: warmup_rounds must lie in [0, rounds]");
  }
};

inline double alpha_at(int round, const ScheduleParams& sp) {
  if (sp.alpha_mode == AlphaMode::kConstant) return sp.alpha;
  return sp.alpha * static_cast<double>(round) / static_cast<double>(sp.total_rounds);
}

inline double beta_at(int round, const ScheduleParams& sp) {
  return round < sp.total_rounds / 2 ? 0.0 : sp.beta;
}

inline double gamma_at(int round, const ScheduleParams& sp) {
  return round < sp.gamma_round() ? 0.0 : sp.gamma;
}

// t = alpha * s + (1 - alpha) * m. At alpha = 0 or 1 the result is bitwise
// m or s respectively.
inline ProbVector mix(const ProbVector& s, const ProbVector& m, double alpha_r) {
  ProbVector t(s.size());
  for (std::size_t c = 0; c < s.size(); ++c) t[c] = alpha_r * s[c] + (1.0 - alpha_r) * m[c];
  return t;
}

// Per-example running averages for one client, keyed by example id. Values
// are held client-side only and survive rounds the client sits out.
class PseudoLabelStore {
 public:
  struct Entry {
    ProbVector s;  // global running average, lazily set to the first p_server
    ProbVector m;  // local running average, lazily set to the first p
    bool s_init = false;
    bool m_init = false;
  };

  // s <- beta_r * s + (1 - beta_r) * p_server, first call initializes s = p_server.
  const ProbVector& update_global_avg(std::uint64_t example_id, const ProbVector& p_server, double beta_r) {
    Entry& e = entries_[example_id];
    if (!e.s_init) {
      e.s = p_server;
      e.s_init = true;
    } else {
      for (std::size_t c = 0; c < e.s.size(); ++c) e.s[c] = beta_r * e.s[c] + (1.0 - beta_r) * p_server[c];
    }
    return e.s;
  }

  // m <- gamma_r * m + (1 - gamma_r) * p, first call initializes m = p.
  const ProbVector& update_local_avg(std::uint64_t example_id, const ProbVector& p, double gamma_r) {
    Entry& e = entries_[example_id];
    if (!e.m_init) {
      e.m = p;
      e.m_init = true;
    } else {
      for (std::size_t c = 0; c < e.m.size(); ++c) e.m[c] = gamma_r * e.m[c] + (1.0 - gamma_r) * p[c];
    }
    return e.m;
  }

  ProbVector mixed(std::uint64_t example_id, double alpha_r) const {
    const Entry* e = find(example_id);
    if (e == nullptr || !e->s_init || !e->m_init)
      throw StateError("pseudo-label state: mix requested before s and m were initialized (example " +
                       std::to_string(example_id) + ")");
    return mix(e->s, e->m, alpha_r);
  }

  const Entry* find(std::uint64_t example_id) const {
    auto it = entries_.find(example_id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Snapshot rows: example_id, s_0..s_{C-1}, m_0..m_{C-1}, sorted by id.
  std::string snapshot_csv(int num_classes) const {
    std::string out = "example_id";
    for (int c = 0; c < num_classes; ++c) out += ",s_" + std::to_string(c);
    for (int c = 0; c < num_classes; ++c) out += ",m_" + std::to_string(c);
    out += '\n';
    std::vector<std::uint64_t> ids;
    ids.reserve(entries_.size());
    for (const auto& [id, e] : entries_)
      if (e.s_init && e.m_init) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (std::uint64_t id : ids) {
      const Entry& e = entries_.at(id);
      out += std::to_string(id);
      for (double v : e.s) {
        out += ',';
        out += format_double(v);
      }
      for (double v : e.m) {
        out += ',';
        out += format_double(v);
      }
      out += '\n';
    }
    return out;
  }

  static PseudoLabelStore from_snapshot_csv(const std::string& text, int num_classes) {
    PseudoLabelStore store;
    std::size_t pos = 0;
    bool header = true;
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
      const auto cols = split_csv(line);
      if (static_cast<int>(cols.size()) != 1 + 2 * num_classes)
        throw IoError("state snapshot: malformed row '" + line + "'");
      Entry e;
      e.s.resize(static_cast<std::size_t>(num_classes));
      e.m.resize(static_cast<std::size_t>(num_classes));
      const auto id = static_cast<std::uint64_t>(parse_int(cols[0], "state snapshot"));
      for (int c = 0; c < num_classes; ++c) {
        e.s[static_cast<std::size_t>(c)] = parse_double(cols[static_cast<std::size_t>(c) + 1], "state snapshot");
        e.m[static_cast<std::size_t>(c)] = parse_double(cols[static_cast<std::size_t>(c + num_classes) + 1], "state snapshot");
      }
      e.s_init = true;
      e.m_init = true;
      store.entries_[id] = std::move(e);
    }
    return store;
  }

 private:
  std::unordered_map<std::uint64_t, Entry> entries_;
};

}  // namespace flr
