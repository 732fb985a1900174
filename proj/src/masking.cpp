// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/masking.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {

// Extent fraction -> cell count, at least one cell, clamped to the axis.
std::size_t extent_cells(double fraction, std::size_t axis) {
  auto cells = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(axis)));
  return std::clamp<std::size_t>(cells, 1, axis);
}

// Summed Gauss blend coefficient at cell (t, k), clamped to [0, 1].
double gauss_alpha(const MaskPlan& plan, std::size_t t, std::size_t k) {
  double alpha = 0.0;
  for (const Patch& patch : plan.patches) {
    if (const auto* g = std::get_if<GaussPatch>(&patch)) {
      double dt = (static_cast<double>(t) - g->tc) / g->sigma_t;
      double dk = (static_cast<double>(k) - g->kc) / g->sigma_k;
      alpha += g->peak_alpha * std::exp(-0.5 * (dt * dt + dk * dk));
    }
  }
  return std::min(alpha, 1.0);
}

bool has_gauss(const MaskPlan& plan) {
  return std::any_of(plan.patches.begin(), plan.patches.end(),
                     [](const Patch& p) {
                       return std::holds_alternative<GaussPatch>(p);
                     });
}

// Marks the union of hard-patch cells in a frames x bins bitmap.
std::vector<char> hard_union(const MaskPlan& plan) {
  std::vector<char> mask(plan.frames * plan.bins, 0);
  auto fill_rows = [&](std::size_t t0, std::size_t t1, std::size_t k0,
                       std::size_t k1) {
    for (std::size_t t = t0; t <= t1; ++t) {
      std::fill(mask.begin() + static_cast<long>(t * plan.bins + k0),
                mask.begin() + static_cast<long>(t * plan.bins + k1 + 1), 1);
    }
  };
  for (const Patch& patch : plan.patches) {
    if (const auto* s = std::get_if<SquarePatch>(&patch)) {
      fill_rows(s->t0, s->t1, s->k0, s->k1);
    } else if (const auto* b = std::get_if<BandPatch>(&patch)) {
      fill_rows(0, plan.frames - 1, b->k0, b->k1);
    } else if (const auto* sg = std::get_if<SinglePatch>(&patch)) {
      fill_rows(0, plan.frames - 1, sg->k, sg->k);
    }
  }
  return mask;
}

}  // namespace

std::string to_string(MaskShape shape) {
  switch (shape) {
    case MaskShape::Squares: return "squares";
    case MaskShape::Bands: return "bands";
    case MaskShape::Singles: return "singles";
    case MaskShape::Gauss: return "gauss";
  }
  return "unknown";
}

MaskShape mask_shape_from_string(const std::string& name) {
  if (name == "squares") return MaskShape::Squares;
  if (name == "bands") return MaskShape::Bands;
  if (name == "singles") return MaskShape::Singles;
  if (name == "gauss") return MaskShape::Gauss;
  throw ConfigError("unknown mask shape: " + name);
}

MaskPlan generate_mask_plan(const MaskParams& params, std::size_t frames,
                            std::size_t bins, Rng& rng) {
  if (frames == 0 || bins == 0) throw EmptyDims("mask grid must be nonempty");

  MaskPlan plan;
  plan.frames = frames;
  plan.bins = bins;

  const std::size_t count = static_cast<std::size_t>(rng.uniform_int(
      static_cast<int64_t>(params.count_min),
      static_cast<int64_t>(params.count_max)));

  for (std::size_t i = 0; i < count; ++i) {
    switch (params.shape) {
      case MaskShape::Squares: {
        std::size_t et = extent_cells(
            rng.uniform(params.time_extent_min, params.time_extent_max),
            frames);
        std::size_t ek = extent_cells(
            rng.uniform(params.freq_extent_min, params.freq_extent_max), bins);
        std::size_t t0 = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int64_t>(frames - et)));
        std::size_t k0 = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int64_t>(bins - ek)));
        plan.patches.push_back(SquarePatch{t0, t0 + et - 1, k0, k0 + ek - 1});
        break;
      }
      case MaskShape::Bands: {
        std::size_t ek = extent_cells(
            rng.uniform(params.freq_extent_min, params.freq_extent_max), bins);
        std::size_t k0 = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int64_t>(bins - ek)));
        plan.patches.push_back(BandPatch{k0, k0 + ek - 1});
        break;
      }
      case MaskShape::Singles: {
        std::size_t k = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int64_t>(bins - 1)));
        plan.patches.push_back(SinglePatch{k});
        break;
      }
      case MaskShape::Gauss: {
        GaussPatch g;
        g.tc = rng.uniform(0.0, static_cast<double>(frames - 1));
        g.kc = rng.uniform(0.0, static_cast<double>(bins - 1));
        g.sigma_t = rng.uniform(params.sigma_min, params.sigma_max) *
                    static_cast<double>(frames);
        g.sigma_k = rng.uniform(params.sigma_min, params.sigma_max) *
                    static_cast<double>(bins);
        g.peak_alpha =
            rng.uniform(params.peak_alpha_min, params.peak_alpha_max);
        plan.patches.push_back(g);
        break;
      }
    }
  }
  return plan;
}

ComplexSpectrogram apply_mask_spectrogram(const ComplexSpectrogram& spec,
                                          const MaskPlan& plan,
                                          const ComplexMean& fill) {
  if (plan.frames != spec.frames() || plan.bins != spec.bin_count()) {
    throw DimsMismatch("mask plan dims do not match spectrogram dims");
  }

  ComplexSpectrogram out = spec;
  const bool soft = has_gauss(plan);
  if (soft) {
    for (std::size_t t = 0; t < plan.frames; ++t) {
      for (std::size_t k = 0; k < plan.bins; ++k) {
        double a = gauss_alpha(plan, t, k);
        if (a > 0.0) {
          out.bins[t][k] = (1.0 - a) * out.bins[t][k] + a * fill.value;
        }
      }
    }
  }
  const std::vector<char> hard = hard_union(plan);
  for (std::size_t t = 0; t < plan.frames; ++t) {
    for (std::size_t k = 0; k < plan.bins; ++k) {
      if (hard[t * plan.bins + k]) out.bins[t][k] = fill.value;
    }
  }
  return out;
}

FeatureMatrix apply_mask_features(const FeatureMatrix& features,
                                  const MaskPlan& plan, double fill) {
  if (plan.frames != features.rows || plan.bins != features.cols) {
    throw DimsMismatch("mask plan dims do not match feature dims");
  }

  FeatureMatrix out = features;
  const bool soft = has_gauss(plan);
  const auto f = static_cast<float>(fill);
  if (soft) {
    for (std::size_t t = 0; t < plan.frames; ++t) {
      for (std::size_t k = 0; k < plan.bins; ++k) {
        double a = gauss_alpha(plan, t, k);
        if (a > 0.0) {
          out.at(t, k) =
              static_cast<float>((1.0 - a) * out.at(t, k) + a * fill);
        }
      }
    }
  }
  const std::vector<char> hard = hard_union(plan);
  for (std::size_t t = 0; t < plan.frames; ++t) {
    for (std::size_t k = 0; k < plan.bins; ++k) {
      if (hard[t * plan.bins + k]) out.at(t, k) = f;
    }
  }
  return out;
}

AudioBuffer masked_spec_augment(const AudioBuffer& audio,
                                const MaskParams& params,
                                const StftConfig& config, Rng& rng) {
  ComplexSpectrogram spec = compute_stft(audio, config);
  MaskPlan plan =
      generate_mask_plan(params, spec.frames(), spec.bin_count(), rng);
  ComplexMean mean = stft_mean(spec);
  return compute_istft(apply_mask_spectrogram(spec, plan, mean));
}

FeatureMatrix masked_feature_augment(const FeatureMatrix& features,
                                     const MaskParams& params, Rng& rng) {
  MaskPlan plan =
      generate_mask_plan(params, features.rows, features.cols, rng);
  return apply_mask_features(features, plan, feature_mean(features));
}

std::string mask_plan_to_json(const MaskPlan& plan, MaskShape shape) {
  nlohmann::json patches = nlohmann::json::array();
  for (const Patch& patch : plan.patches) {
    nlohmann::json j;
    if (const auto* s = std::get_if<SquarePatch>(&patch)) {
      j = {{"kind", "square"}, {"t0", s->t0}, {"t1", s->t1},
           {"k0", s->k0},      {"k1", s->k1}};
    } else if (const auto* b = std::get_if<BandPatch>(&patch)) {
      j = {{"kind", "band"}, {"k0", b->k0}, {"k1", b->k1}};
    } else if (const auto* sg = std::get_if<SinglePatch>(&patch)) {
      j = {{"kind", "single"}, {"k", sg->k}};
    } else if (const auto* g = std::get_if<GaussPatch>(&patch)) {
      j = {{"kind", "gauss"},       {"tc", g->tc},
           {"kc", g->kc},           {"sigma_t", g->sigma_t},
           {"sigma_k", g->sigma_k}, {"peak_alpha", g->peak_alpha}};
    }
    patches.push_back(std::move(j));
  }
  nlohmann::json doc = {{"shape", to_string(shape)},
                        {"frames", plan.frames},
                        {"bins", plan.bins},
                        {"patches", std::move(patches)}};
  return doc.dump();
}

}  // namespace spoofaug
