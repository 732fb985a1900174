// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_PIPELINE_HPP_
#define SPOOFAUG_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "spoofaug/codec.hpp"
#include "spoofaug/masking.hpp"
#include "spoofaug/stft.hpp"

namespace spoofaug {

struct CodecStage {
  CodecSpec spec;
};

struct LpfStage {
  double cutoff_min = 0.1;
  double cutoff_max = 0.4;
  std::size_t taps = 101;
};

struct MaskedSpecStage {
  MaskParams params;
};

struct MaskedFeatureStage {
  MaskParams params;
};

struct NormalizeFeaturesStage {
  bool per_dimension = false;
};

struct Stage {
  std::variant<CodecStage, LpfStage, MaskedSpecStage, MaskedFeatureStage,
               NormalizeFeaturesStage>
      kind;
  double probability = 1.0;
  std::string name;  // stage type string, for manifests
};

struct PipelineConfig {
  StftConfig stft;
  std::vector<Stage> stages;
  uint64_t master_seed = 0;
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  int sample_rate = 16000;
  unsigned parallelism = 1;
  bool emit_provenance = false;
  bool feature_mode = false;  // operate on .safm/.csv instead of .wav
};

// Parses the TOML-style config format described in the shipped default
// config: top-level key = value pairs, one [stft] table, and repeated
// [[stage]] tables.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct RunSummary {
  std::size_t processed = 0;
  std::size_t failed = 0;
  std::vector<std::string> errors;
};

// Processes every input file with a per-file rng seeded from
// (master_seed, relative path). Writes outputs mirroring the input tree and
// a JSON-lines manifest in deterministic path order. Per-file errors are
// recorded and the run continues.
RunSummary run_augment_pipeline(const PipelineConfig& config);

}  // namespace spoofaug

#endif  // SPOOFAUG_PIPELINE_HPP_
