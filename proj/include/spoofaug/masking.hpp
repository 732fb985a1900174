// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_MASKING_HPP_
#define SPOOFAUG_MASKING_HPP_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "spoofaug/features.hpp"
#include "spoofaug/rng.hpp"
#include "spoofaug/stft.hpp"

namespace spoofaug {

enum class MaskShape { Squares, Bands, Singles, Gauss };

std::string to_string(MaskShape shape);
MaskShape mask_shape_from_string(const std::string& name);

// Stochastic recipe for a mask plan. Intervals are fractions of the
// respective axis, except patch_count which is an absolute count.
struct MaskParams {
  MaskShape shape = MaskShape::Squares;
  std::size_t count_min = 1;
  std::size_t count_max = 5;
  double time_extent_min = 0.05, time_extent_max = 0.15;  // Squares
  double freq_extent_min = 0.05, freq_extent_max = 0.15;  // Squares, Bands
  double sigma_min = 0.02, sigma_max = 0.10;              // Gauss
  double peak_alpha_min = 0.5, peak_alpha_max = 1.0;      // Gauss
};

// Rectangular time x frequency block, inclusive bounds.
struct SquarePatch {
  std::size_t t0, t1, k0, k1;
};

// Frequency range spanning every frame.
struct BandPatch {
  std::size_t k0, k1;
};

// One frequency row spanning every frame.
struct SinglePatch {
  std::size_t k;
};

// Soft Gaussian blend toward the fill value, peak alpha at the center.
struct GaussPatch {
  double tc, kc;
  double sigma_t, sigma_k;
  double peak_alpha;
};

using Patch = std::variant<SquarePatch, BandPatch, SinglePatch, GaussPatch>;

struct MaskPlan {
  std::size_t frames = 0;  // M
  std::size_t bins = 0;    // K
  std::vector<Patch> patches;
};

MaskPlan generate_mask_plan(const MaskParams& params, std::size_t frames,
                            std::size_t bins, Rng& rng);

// Hard patches set cells exactly to the fill; Gauss patches blend
// (1-a)*X + a*fill with summed, clamped alpha. Hard fill wins on overlap.
ComplexSpectrogram apply_mask_spectrogram(const ComplexSpectrogram& spec,
                                          const MaskPlan& plan,
                                          const ComplexMean& fill);

FeatureMatrix apply_mask_features(const FeatureMatrix& features,
                                  const MaskPlan& plan, double fill);

// Full raw-audio augmentation: stft -> mean fill -> mask -> istft.
// Output length equals input length.
AudioBuffer masked_spec_augment(const AudioBuffer& audio,
                                const MaskParams& params,
                                const StftConfig& config, Rng& rng);

// Feature-domain analogue: fill value is the global matrix mean, plan drawn
// over the (T, D) grid.
FeatureMatrix masked_feature_augment(const FeatureMatrix& features,
                                     const MaskParams& params, Rng& rng);

// Provenance record for one plan, as a JSON string.
std::string mask_plan_to_json(const MaskPlan& plan, MaskShape shape);

}  // namespace spoofaug

#endif  // SPOOFAUG_MASKING_HPP_
