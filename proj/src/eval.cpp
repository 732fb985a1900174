// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, '\t')) fields.push_back(field);
  return fields;
}

EerResult eer_from_scores(const std::vector<double>& bonafide,
                          const std::vector<double>& spoof) {
  // Candidate thresholds: every distinct score plus sentinels. With decision
  // "score >= theta -> bonafide", theta = -inf accepts everything and a
  // theta above the maximum rejects everything.
  std::set<double> candidates(bonafide.begin(), bonafide.end());
  candidates.insert(spoof.begin(), spoof.end());
  candidates.insert(-std::numeric_limits<double>::infinity());
  candidates.insert(std::numeric_limits<double>::infinity());

  EerResult best;
  double best_gap = std::numeric_limits<double>::infinity();
  double best_sum = std::numeric_limits<double>::infinity();
  for (double theta : candidates) {
    std::size_t false_accepts = 0;
    for (double s : spoof) false_accepts += s >= theta ? 1 : 0;
    std::size_t false_rejects = 0;
    for (double s : bonafide) false_rejects += s < theta ? 1 : 0;
    double far = static_cast<double>(false_accepts) /
                 static_cast<double>(spoof.size());
    double frr = static_cast<double>(false_rejects) /
                 static_cast<double>(bonafide.size());
    double gap = std::abs(far - frr);
    double sum = far + frr;
    if (gap < best_gap || (gap == best_gap && sum < best_sum)) {
      best_gap = gap;
      best_sum = sum;
      best.eer = 0.5 * sum;
      best.threshold = theta;
    }
  }
  return best;
}

nlohmann::json eer_to_json(const std::optional<EerResult>& r) {
  if (!r) return nullptr;
  return {{"eer", r->eer}, {"threshold", r->threshold}};
}

}  // namespace

ScoreSet load_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path.string());

  ScoreSet set;
  std::unordered_map<std::string, std::size_t> seen;  // utt_id -> line no
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("utt_id\t", 0) == 0) continue;  // header

    std::vector<std::string> f = split_tabs(line);
    if (f.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 " +
                       "tab-separated fields, got " + std::to_string(f.size()));
    }
    ScoreRecord rec;
    rec.utt_id = f[0];
    if (rec.utt_id.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty utt_id");
    }
    if (f[1] == "bonafide") {
      rec.label = Label::Bonafide;
    } else if (f[1] == "spoof") {
      rec.label = Label::Spoof;
    } else {
      throw UnknownLabel("line " + std::to_string(line_no) + ": label '" +
                         f[1] + "' (expected bonafide/spoof)");
    }
    try {
      std::size_t used = 0;
      rec.score = std::stod(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument(f[2]);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad score '" +
                       f[2] + "'");
    }
    if (!std::isfinite(rec.score)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-finite score");
    }
    rec.attack = f[3];
    rec.codec = f[4];

    auto [it, inserted] = seen.emplace(rec.utt_id, line_no);
    if (!inserted) {
      throw DuplicateUttId("utt_id '" + rec.utt_id + "' on lines " +
                           std::to_string(it->second) + " and " +
                           std::to_string(line_no));
    }
    set.records.push_back(std::move(rec));
  }
  return set;
}

void save_scores(const ScoreSet& scores, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for write: " + path.string());
  os << "utt_id\tlabel\tscore\tattack\tcodec\n";
  os.precision(17);
  for (const ScoreRecord& r : scores.records) {
    os << r.utt_id << '\t'
       << (r.label == Label::Bonafide ? "bonafide" : "spoof") << '\t'
       << r.score << '\t' << r.attack << '\t' << r.codec << '\n';
  }
  if (!os) throw IoError("short write: " + path.string());
}

EerResult compute_eer(const ScoreSet& scores) {
  std::vector<double> bonafide, spoof;
  for (const ScoreRecord& r : scores.records) {
    (r.label == Label::Bonafide ? bonafide : spoof).push_back(r.score);
  }
  if (bonafide.empty() || spoof.empty()) {
    throw DegenerateSet("EER needs at least one bonafide and one spoof");
  }
  return eer_from_scores(bonafide, spoof);
}

ScoreSet fuse_score_sets(const std::vector<ScoreSet>& sets,
                         const std::vector<double>& weights) {
  if (sets.empty()) throw UniverseMismatch("no score sets to fuse");

  std::vector<double> w = weights;
  if (w.empty()) w.assign(sets.size(), 1.0);
  if (w.size() != sets.size()) {
    throw UniverseMismatch("weights length does not match set count");
  }
  double w_sum = 0.0;
  for (double x : w) {
    if (!(x > 0.0)) throw NonPositiveWeight("weights must be positive");
    w_sum += x;
  }

  const ScoreSet& base = sets[0];
  // Per-set min-max normalization to [0, 1]; degenerate sets map to 0.
  std::vector<std::unordered_map<std::string, double>> normalized(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const ScoreSet& s = sets[i];
    if (s.records.size() != base.records.size()) {
      throw UniverseMismatch("set " + std::to_string(i) +
                             " has a different utterance count");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const ScoreRecord& r : s.records) {
      lo = std::min(lo, r.score);
      hi = std::max(hi, r.score);
    }
    for (const ScoreRecord& r : s.records) {
      double v = hi > lo ? (r.score - lo) / (hi - lo) : 0.0;
      if (!normalized[i].emplace(r.utt_id, v).second) {
        throw DuplicateUttId("utt_id '" + r.utt_id + "' repeated in set " +
                             std::to_string(i));
      }
    }
  }

  std::vector<std::unordered_map<std::string, Label>> labels(sets.size());
  for (std::size_t i = 1; i < sets.size(); ++i) {
    for (const ScoreRecord& r : sets[i].records) {
      labels[i].emplace(r.utt_id, r.label);
    }
  }

  ScoreSet fused;
  fused.records.reserve(base.records.size());
  for (const ScoreRecord& r : base.records) {
    ScoreRecord out = r;  // labels and tags copy through
    double acc = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto it = normalized[i].find(r.utt_id);
      if (it == normalized[i].end()) {
        throw UniverseMismatch("utt_id '" + r.utt_id + "' missing from set " +
                               std::to_string(i));
      }
      if (i > 0 && labels[i].at(r.utt_id) != r.label) {
        throw LabelConflict("utt_id '" + r.utt_id +
                            "' has conflicting labels across sets");
      }
      acc += w[i] * it->second;
    }
    out.score = acc / w_sum;
    fused.records.push_back(std::move(out));
  }
  return fused;
}

std::map<std::string, std::optional<EerResult>> pooled_eer(
    const ScoreSet& scores, GroupBy group_by) {
  const bool by_attack = group_by == GroupBy::Attack;

  std::set<std::string> tags;
  for (const ScoreRecord& r : scores.records) {
    const std::string& tag = by_attack ? r.attack : r.codec;
    // attack tags only live on spoof records
    if (by_attack && r.label == Label::Bonafide) continue;
    if (tag != "-" && tag != "None") tags.insert(tag);
  }
  if (tags.empty()) {
    throw MissingTag(std::string("no record carries a") +
                     (by_attack ? "n attack" : " codec") + " tag");
  }

  std::map<std::string, std::optional<EerResult>> table;
  for (const std::string& tag : tags) {
    std::vector<double> bonafide, spoof;
    for (const ScoreRecord& r : scores.records) {
      if (r.label == Label::Bonafide) {
        // attack pooling keeps every bonafide; codec pooling restricts
        // bonafide to the same codec
        if (by_attack || r.codec == tag) bonafide.push_back(r.score);
      } else {
        if ((by_attack ? r.attack : r.codec) == tag) spoof.push_back(r.score);
      }
    }
    if (bonafide.empty() || spoof.empty()) {
      table[tag] = std::nullopt;  // undefined, not an error
    } else {
      table[tag] = eer_from_scores(bonafide, spoof);
    }
  }
  return table;
}

void write_report(const EvalReport& report,
                  const std::filesystem::path& path) {
  nlohmann::json doc;  // nlohmann::json orders keys lexicographically
  doc["overall"] = eer_to_json(report.overall);
  nlohmann::json by_attack = nlohmann::json::object();
  for (const auto& [tag, r] : report.pooled_by_attack) {
    by_attack[tag] = eer_to_json(r);
  }
  doc["pooled_by_attack"] = std::move(by_attack);
  nlohmann::json by_codec = nlohmann::json::object();
  for (const auto& [tag, r] : report.pooled_by_codec) {
    by_codec[tag] = eer_to_json(r);
  }
  doc["pooled_by_codec"] = std::move(by_codec);
  doc["fusion"] = {{"inputs", report.fusion_inputs},
                   {"weights", report.fusion_weights}};
  doc["provenance"] = {{"seed", report.seed},
                       {"toolkit_version", report.toolkit_version}};

  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for write: " + path.string());
  os << doc.dump(2) << '\n';
  if (!os) throw IoError("short write: " + path.string());
}

}  // namespace spoofaug
