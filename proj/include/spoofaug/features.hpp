// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_FEATURES_HPP_
#define SPOOFAUG_FEATURES_HPP_

#include <cstddef>
#include <filesystem>
#include <vector>

namespace spoofaug {

// T x D real matrix of latent features, row-major.
struct FeatureMatrix {
  std::size_t rows = 0;  // T time steps
  std::size_t cols = 0;  // D feature dimensions
  std::vector<float> values;

  float& at(std::size_t t, std::size_t d) { return values[t * cols + d]; }
  float at(std::size_t t, std::size_t d) const { return values[t * cols + d]; }
};

// Binary ".safm": magic "SAFM", version u16, T u32, D u32 (little-endian),
// then row-major float32 payload.
FeatureMatrix load_features(const std::filesystem::path& path);
void save_features(const FeatureMatrix& features,
                   const std::filesystem::path& path);

FeatureMatrix load_features_csv(const std::filesystem::path& path);
void save_features_csv(const FeatureMatrix& features,
                       const std::filesystem::path& path);

// Loads .safm or .csv based on extension.
FeatureMatrix load_features_auto(const std::filesystem::path& path);
void save_features_auto(const FeatureMatrix& features,
                        const std::filesystem::path& path);

// Global min-max map onto [-1, 1]; constant matrices map to all zeros.
// per_dimension applies the same map independently per column.
FeatureMatrix normalize_features(const FeatureMatrix& features,
                                 bool per_dimension = false);

double feature_mean(const FeatureMatrix& features);

}  // namespace spoofaug

#endif  // SPOOFAUG_FEATURES_HPP_
