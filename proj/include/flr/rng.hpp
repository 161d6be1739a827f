#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace flr {

// All randomness in a run is drawn from streams derived purely from the master
// seed plus structural tags (purpose, client id, round). A stream never depends
// on which other streams were consumed, so runs are reproducible and resumable
// without persisting generator state.

namespace stream {
inline constexpr std::uint64_t kDataset = 0x01;
inline constexpr std::uint64_t kTestSet = 0x02;
inline constexpr std::uint64_t kPartition = 0x03;
inline constexpr std::uint64_t kNoiseLevels = 0x04;
inline constexpr std::uint64_t kNoiseInject = 0x05;
inline constexpr std::uint64_t kSampling = 0x06;
inline constexpr std::uint64_t kModelInit = 0x07;
inline constexpr std::uint64_t kClientRound = 0x08;
}  // namespace stream

// splitmix64 finalizer; good avalanche, cheap, stable across platforms.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                           std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t t : tags) h = mix64(h ^ t);
  return h;
}

inline std::mt19937_64 make_engine(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> tags) {
  return std::mt19937_64(derive_seed(seed, tags));
}

// Order-insensitive-free accumulator for structural execution traces. Folding
// happens in program order, which is part of the determinism contract.
class TraceHash {
 public:
  void fold(std::uint64_t v) { h_ = mix64(h_ ^ v); }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0x5ca1ab1eULL;
};

}  // namespace flr
