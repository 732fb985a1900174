// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_RNG_HPP_
#define SPOOFAUG_RNG_HPP_

#include <cstdint>
#include <random>

namespace spoofaug {

// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
// is fixed by the standard) and maps draws to ranges without touching
// std::uniform_*_distribution, which is implementation-defined. Identical
// seeds therefore give identical streams on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 bits of precision.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(next_u64() % span);
  }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a 64-bit hash of a byte string.
inline uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= static_cast<uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Per-file seed: FNV-1a of the relative path XORed with the master seed.
inline uint64_t derive_file_seed(uint64_t master_seed,
                                 const std::string& relative_path) {
  return fnv1a64(relative_path) ^ master_seed;
}

}  // namespace spoofaug

#endif  // SPOOFAUG_RNG_HPP_
