#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "flr/errors.hpp"

namespace flr {

// A probability vector over C classes: entries in [0,1], summing to 1 within
// kProbSumTol. Kept as a plain vector; validation is explicit where contracts
// demand it.
using ProbVector = std::vector<double>;

inline constexpr double kProbSumTol = 1e-9;
// Floor for probabilities entering a log, and the matching ceiling for inner
// products <p,t>; the <p,t> -> 1 singularity is clamped, never trapped.
inline constexpr double kProbFloor = 1e-12;

inline bool is_prob_vector(const ProbVector& p, double tol = kProbSumTol) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !(v <= 1.0 + tol) || std::isnan(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

inline void require_prob_vector(const ProbVector& p, const char* what) {
  if (!is_prob_vector(p)) throw ConfigError(std::string(what) + ": not a probability vector");
}

struct OneHotLabel {
  int class_index = 0;

  std::vector<double> as_vector(std::size_t num_classes) const {
    std::vector<double> v(num_classes, 0.0);
    v[static_cast<std::size_t>(class_index)] = 1.0;
    return v;
  }
};

inline ProbVector uniform_prob(std::size_t num_classes) {
  return ProbVector(num_classes, 1.0 / static_cast<double>(num_classes));
}

inline double inner(const ProbVector& a, const ProbVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace flr
