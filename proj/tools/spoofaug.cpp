// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spoofaug/errors.hpp"
#include "spoofaug/eval.hpp"
#include "spoofaug/pipeline.hpp"
#include "spoofaug/version.hpp"

namespace {

void print_eer(const std::optional<spoofaug::EerResult>& r,
               const std::string& prefix) {
  if (r) {
    std::printf("%sEER: %.2f%% (threshold %.6g)\n", prefix.c_str(),
                100.0 * r->eer, r->threshold);
  } else {
    std::printf("%sEER: undefined (empty class)\n", prefix.c_str());
  }
}

int run_pipeline(const std::string& config_path, bool emit_provenance,
                 bool feature_mode) {
  spoofaug::PipelineConfig config =
      spoofaug::load_pipeline_config(config_path);
  if (emit_provenance) config.emit_provenance = true;
  if (config.feature_mode != feature_mode) {
    throw spoofaug::ConfigError(
        feature_mode ? "features subcommand needs mode = \"features\""
                     : "augment subcommand needs mode = \"audio\"");
  }
  spoofaug::RunSummary summary = spoofaug::run_augment_pipeline(config);
  std::printf("processed %zu file(s), %zu failure(s)\n", summary.processed,
              summary.failed);
  for (const std::string& err : summary.errors) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
  }
  return summary.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic audio augmentation and anti-spoofing "
               "evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(spoofaug::kVersion));

  // augment / features
  std::string config_path;
  bool emit_provenance = false;
  CLI::App* augment =
      app.add_subcommand("augment", "Run the raw-audio augmentation pipeline");
  augment->add_option("--config", config_path, "Pipeline config file")
      ->required();
  augment->add_flag("--emit-provenance", emit_provenance,
                    "Record mask plans in the manifest");

  CLI::App* features = app.add_subcommand(
      "features", "Run the feature-matrix augmentation pipeline");
  features->add_option("--config", config_path, "Pipeline config file")
      ->required();
  features->add_flag("--emit-provenance", emit_provenance,
                     "Record mask plans in the manifest");

  // eer
  std::string scores_path;
  CLI::App* eer = app.add_subcommand("eer", "Compute EER of a score file");
  eer->add_option("scores", scores_path, "Score TSV")->required();

  // fuse
  std::vector<std::string> fuse_inputs;
  std::vector<double> fuse_weights;
  std::string fuse_output;
  CLI::App* fuse = app.add_subcommand("fuse", "Fuse score files");
  fuse->add_option("scores", fuse_inputs, "Score TSVs")->required();
  fuse->add_option("--weights", fuse_weights, "Per-set positive weights");
  fuse->add_option("-o,--output", fuse_output, "Fused score TSV")->required();

  // pooled
  std::string pooled_by = "attack";
  CLI::App* pooled =
      app.add_subcommand("pooled", "Pooled per-attack / per-codec EER");
  pooled->add_option("scores", scores_path, "Score TSV")->required();
  pooled->add_option("--by", pooled_by, "Grouping: attack or codec")
      ->check(CLI::IsMember({"attack", "codec"}));

  // report
  std::string report_output = "report.json";
  uint64_t report_seed = 0;
  CLI::App* report =
      app.add_subcommand("report", "Bundle EER and pooled tables into JSON");
  report->add_option("scores", scores_path, "Score TSV")->required();
  report->add_option("-o,--output", report_output, "Report path");
  report->add_option("--seed", report_seed, "Seed recorded in provenance");

  // inspect
  std::string wav_path, stft_csv;
  std::size_t frame_size = 512, hop = 256;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Export spectrogram magnitudes as CSV");
  inspect->add_option("wav", wav_path, "Input WAV")->required();
  inspect->add_option("--stft-csv", stft_csv, "Output CSV")->required();
  inspect->add_option("--frame-size", frame_size, "STFT frame size");
  inspect->add_option("--hop", hop, "STFT hop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (augment->parsed()) {
      return run_pipeline(config_path, emit_provenance, false);
    }
    if (features->parsed()) {
      return run_pipeline(config_path, emit_provenance, true);
    }
    if (eer->parsed()) {
      spoofaug::ScoreSet set = spoofaug::load_scores(scores_path);
      print_eer(spoofaug::compute_eer(set), "");
      return 0;
    }
    if (fuse->parsed()) {
      std::vector<spoofaug::ScoreSet> sets;
      for (const std::string& p : fuse_inputs) {
        sets.push_back(spoofaug::load_scores(p));
      }
      spoofaug::ScoreSet fused =
          spoofaug::fuse_score_sets(sets, fuse_weights);
      spoofaug::save_scores(fused, fuse_output);
      std::printf("fused %zu set(s) -> %s\n", sets.size(),
                  fuse_output.c_str());
      return 0;
    }
    if (pooled->parsed()) {
      spoofaug::ScoreSet set = spoofaug::load_scores(scores_path);
      auto table = spoofaug::pooled_eer(set, pooled_by == "attack"
                                                 ? spoofaug::GroupBy::Attack
                                                 : spoofaug::GroupBy::Codec);
      for (const auto& [tag, result] : table) {
        print_eer(result, tag + "\t");
      }
      return 0;
    }
    if (report->parsed()) {
      spoofaug::ScoreSet set = spoofaug::load_scores(scores_path);
      spoofaug::EvalReport bundle;
      bundle.overall = spoofaug::compute_eer(set);
      try {
        bundle.pooled_by_attack =
            spoofaug::pooled_eer(set, spoofaug::GroupBy::Attack);
      } catch (const spoofaug::MissingTag&) {
      }
      try {
        bundle.pooled_by_codec =
            spoofaug::pooled_eer(set, spoofaug::GroupBy::Codec);
      } catch (const spoofaug::MissingTag&) {
      }
      bundle.seed = report_seed;
      bundle.toolkit_version = spoofaug::kVersion;
      spoofaug::write_report(bundle, report_output);
      print_eer(bundle.overall, "");
      std::printf("report written to %s\n", report_output.c_str());
      return 0;
    }
    if (inspect->parsed()) {
      spoofaug::AudioBuffer audio = spoofaug::read_wav(wav_path);
      spoofaug::StftConfig cfg;
      cfg.frame_size = frame_size;
      cfg.hop = hop;
      spoofaug::write_magnitude_csv(spoofaug::compute_stft(audio, cfg),
                                    stft_csv);
      return 0;
    }
  } catch (const spoofaug::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const spoofaug::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
