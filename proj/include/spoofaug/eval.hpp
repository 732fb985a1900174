// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_EVAL_HPP_
#define SPOOFAUG_EVAL_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spoofaug {

enum class Label { Bonafide, Spoof };

struct ScoreRecord {
  std::string utt_id;
  Label label = Label::Spoof;
  double score = 0.0;       // higher = more bona fide
  std::string attack = "-";  // "-" when absent
  std::string codec = "-";
};

struct ScoreSet {
  std::vector<ScoreRecord> records;
};

struct EerResult {
  double eer = 0.0;        // in [0, 1]
  double threshold = 0.0;  // decision: score >= threshold -> bonafide
};

// TSV with header `utt_id\tlabel\tscore\tattack\tcodec`; `-` marks an
// absent tag.
ScoreSet load_scores(const std::filesystem::path& path);
void save_scores(const ScoreSet& scores, const std::filesystem::path& path);

// Threshold sweep over all distinct scores plus +/-inf sentinels.
// EER = (FAR + FRR)/2 at the threshold minimizing |FAR - FRR|, ties broken
// by smaller FAR + FRR, then smaller threshold.
EerResult compute_eer(const ScoreSet& scores);

// Per-set min-max normalization to [0, 1], then weighted per-utterance mean.
// Empty weights mean equal weights.
ScoreSet fuse_score_sets(const std::vector<ScoreSet>& sets,
                         const std::vector<double>& weights = {});

enum class GroupBy { Attack, Codec };

// Attack pooling: all bonafide vs spoof of one attack. Codec pooling: both
// classes restricted to one codec. Groups missing a class map to nullopt.
std::map<std::string, std::optional<EerResult>> pooled_eer(
    const ScoreSet& scores, GroupBy group_by);

struct EvalReport {
  std::optional<EerResult> overall;
  std::map<std::string, std::optional<EerResult>> pooled_by_attack;
  std::map<std::string, std::optional<EerResult>> pooled_by_codec;
  std::vector<std::string> fusion_inputs;
  std::vector<double> fusion_weights;
  uint64_t seed = 0;
  std::string toolkit_version;
};

// JSON, 2-space indent, lexicographically sorted keys.
void write_report(const EvalReport& report, const std::filesystem::path& path);

}  // namespace spoofaug

#endif  // SPOOFAUG_EVAL_HPP_
