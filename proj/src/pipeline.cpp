// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spoofaug/errors.hpp"
#include "spoofaug/features.hpp"
#include "spoofaug/filters.hpp"

namespace spoofaug {

namespace {

// ---- minimal TOML-style parser: scalars, [table], [[array-of-tables]] ----

struct RawTable {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }

  double get_number(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(it->second);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': expected a number, got '" +
                        it->second + "'");
    }
  }

  uint64_t get_u64(const std::string& key, uint64_t fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
      return std::stoull(it->second);
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': expected an integer");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ConfigError("key '" + key + "': expected true/false");
  }
};

struct RawConfig {
  RawTable root;
  std::map<std::string, RawTable> tables;   // [name]
  std::vector<RawTable> stages;             // [[stage]]
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

RawConfig parse_raw_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open config " + path.string());

  RawConfig cfg;
  RawTable* current = &cfg.root;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;

    if (line.rfind("[[", 0) == 0) {
      if (line != "[[stage]]") {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": only [[stage]] tables are supported");
      }
      cfg.stages.emplace_back();
      current = &cfg.stages.back();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": malformed table header");
      }
      std::string name = trim(line.substr(1, line.size() - 2));
      current = &cfg.tables[name];
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    current->values[key] = value;
  }
  return cfg;
}

// ---- config -> PipelineConfig ----

MaskParams mask_params_from_table(const RawTable& t) {
  MaskParams p;
  p.shape = mask_shape_from_string(t.get_string("shape", "squares"));
  p.count_min = static_cast<std::size_t>(t.get_number("count_min", 1));
  p.count_max = static_cast<std::size_t>(t.get_number("count_max", 5));
  p.time_extent_min = t.get_number("time_extent_min", 0.05);
  p.time_extent_max = t.get_number("time_extent_max", 0.15);
  p.freq_extent_min = t.get_number("freq_extent_min", 0.05);
  p.freq_extent_max = t.get_number("freq_extent_max", 0.15);
  p.sigma_min = t.get_number("sigma_min", 0.02);
  p.sigma_max = t.get_number("sigma_max", 0.10);
  p.peak_alpha_min = t.get_number("peak_alpha_min", 0.5);
  p.peak_alpha_max = t.get_number("peak_alpha_max", 1.0);
  if (p.count_min > p.count_max) {
    throw ConfigError("count_min must not exceed count_max");
  }
  auto check_interval = [](double lo, double hi, const char* what) {
    if (!(lo > 0.0 && hi <= 1.0 && lo <= hi)) {
      throw ConfigError(std::string(what) +
                        " interval must be ordered within (0, 1]");
    }
  };
  check_interval(p.time_extent_min, p.time_extent_max, "time_extent");
  check_interval(p.freq_extent_min, p.freq_extent_max, "freq_extent");
  check_interval(p.sigma_min, p.sigma_max, "sigma");
  check_interval(p.peak_alpha_min, p.peak_alpha_max, "peak_alpha");
  return p;
}

Stage stage_from_table(const RawTable& t, bool feature_mode) {
  Stage stage;
  stage.name = t.get_string("type", "");
  stage.probability = t.get_number("probability", 1.0);
  if (!(stage.probability >= 0.0 && stage.probability <= 1.0)) {
    throw ConfigError("stage probability must lie in [0, 1]");
  }

  const bool audio_stage = stage.name == "codec" || stage.name == "lpf" ||
                           stage.name == "masked_spec";
  const bool feature_stage =
      stage.name == "masked_feature" || stage.name == "normalize_features";
  if (!audio_stage && !feature_stage) {
    throw ConfigError("unknown stage type '" + stage.name + "'");
  }
  if (audio_stage && feature_mode) {
    throw ConfigError("stage '" + stage.name +
                      "' is only valid in audio mode");
  }
  if (feature_stage && !feature_mode) {
    throw ConfigError("stage '" + stage.name +
                      "' is only valid in feature mode");
  }

  if (stage.name == "codec") {
    CodecStage cs;
    cs.spec.codec = codec_kind_from_string(t.get_string("codec", "mp3"));
    cs.spec.bitrate_kbps = static_cast<int>(t.get_number("bitrate_kbps", 64));
    if (cs.spec.bitrate_kbps <= 0) {
      throw ConfigError("bitrate_kbps must be positive");
    }
    if (t.has("encoder_template")) {
      cs.spec.encoder_template = t.get_string("encoder_template", "");
    }
    if (t.has("decoder_template")) {
      cs.spec.decoder_template = t.get_string("decoder_template", "");
    }
    stage.kind = cs;
  } else if (stage.name == "lpf") {
    LpfStage ls;
    ls.cutoff_min = t.get_number("cutoff_min", 0.1);
    ls.cutoff_max = t.get_number("cutoff_max", 0.4);
    ls.taps = static_cast<std::size_t>(t.get_number("taps", 101));
    if (!(ls.cutoff_min > 0.0 && ls.cutoff_max < 0.5 &&
          ls.cutoff_min <= ls.cutoff_max)) {
      throw ConfigError("lpf cutoff range must be ordered within (0, 0.5)");
    }
    if (ls.taps < 3 || ls.taps % 2 == 0) {
      throw ConfigError("lpf taps must be odd and >= 3");
    }
    stage.kind = ls;
  } else if (stage.name == "masked_spec") {
    stage.kind = MaskedSpecStage{mask_params_from_table(t)};
  } else if (stage.name == "masked_feature") {
    stage.kind = MaskedFeatureStage{mask_params_from_table(t)};
  } else {
    stage.kind = NormalizeFeaturesStage{t.get_bool("per_dimension", false)};
  }
  return stage;
}

struct FileResult {
  std::string manifest_line;
  std::string error;  // empty on success
};

bool is_input_file(const std::filesystem::path& p, bool feature_mode) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return feature_mode ? (ext == ".safm" || ext == ".csv") : ext == ".wav";
}

FileResult process_file(const PipelineConfig& config,
                        const std::filesystem::path& rel) {
  FileResult result;
  const std::filesystem::path in_path = config.input_dir / rel;
  const std::filesystem::path out_path = config.output_dir / rel;

  nlohmann::json entry;
  entry["file"] = rel.generic_string();
  const uint64_t seed =
      derive_file_seed(config.master_seed, rel.generic_string());
  entry["seed"] = seed;
  nlohmann::json stage_log = nlohmann::json::array();

  try {
    Rng rng(seed);
    std::filesystem::create_directories(out_path.parent_path());

    if (!config.feature_mode) {
      AudioBuffer audio = read_wav(in_path);
      if (audio.sample_rate != config.sample_rate) {
        throw ConfigError("sample rate " + std::to_string(audio.sample_rate) +
                          " does not match configured " +
                          std::to_string(config.sample_rate));
      }
      for (const Stage& stage : config.stages) {
        nlohmann::json rec;
        rec["stage"] = stage.name;
        const bool applied = rng.uniform() < stage.probability;
        rec["applied"] = applied;
        if (applied) {
          if (const auto* cs = std::get_if<CodecStage>(&stage.kind)) {
            audio = codec_roundtrip(
                audio, cs->spec, std::filesystem::temp_directory_path());
            rec["codec"] = to_string(cs->spec.codec);
            rec["bitrate_kbps"] = cs->spec.bitrate_kbps;
          } else if (const auto* ls = std::get_if<LpfStage>(&stage.kind)) {
            double fc = rng.uniform(ls->cutoff_min, ls->cutoff_max);
            audio = apply_fir(audio, design_lpf_kernel(fc, ls->taps));
            rec["cutoff"] = fc;
            rec["taps"] = ls->taps;
          } else if (const auto* ms =
                         std::get_if<MaskedSpecStage>(&stage.kind)) {
            ComplexSpectrogram spec = compute_stft(audio, config.stft);
            MaskPlan plan = generate_mask_plan(ms->params, spec.frames(),
                                               spec.bin_count(), rng);
            audio = compute_istft(
                apply_mask_spectrogram(spec, plan, stft_mean(spec)));
            if (config.emit_provenance) {
              rec["plan"] = nlohmann::json::parse(
                  mask_plan_to_json(plan, ms->params.shape));
            }
          }
        }
        stage_log.push_back(std::move(rec));
      }
      write_wav(audio, out_path);
    } else {
      FeatureMatrix features = load_features_auto(in_path);
      for (const Stage& stage : config.stages) {
        nlohmann::json rec;
        rec["stage"] = stage.name;
        const bool applied = rng.uniform() < stage.probability;
        rec["applied"] = applied;
        if (applied) {
          if (const auto* mf = std::get_if<MaskedFeatureStage>(&stage.kind)) {
            MaskPlan plan = generate_mask_plan(mf->params, features.rows,
                                               features.cols, rng);
            features =
                apply_mask_features(features, plan, feature_mean(features));
            if (config.emit_provenance) {
              rec["plan"] = nlohmann::json::parse(
                  mask_plan_to_json(plan, mf->params.shape));
            }
          } else if (const auto* nf =
                         std::get_if<NormalizeFeaturesStage>(&stage.kind)) {
            features = normalize_features(features, nf->per_dimension);
          }
        }
        stage_log.push_back(std::move(rec));
      }
      save_features_auto(features, out_path);
    }
  } catch (const std::exception& e) {
    result.error = rel.generic_string() + ": " + e.what();
    return result;
  }

  entry["stages"] = std::move(stage_log);
  result.manifest_line = entry.dump();
  return result;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  RawConfig raw = parse_raw_config(path);
  PipelineConfig config;

  std::string mode = raw.root.get_string("mode", "audio");
  if (mode != "audio" && mode != "features") {
    throw ConfigError("mode must be \"audio\" or \"features\"");
  }
  config.feature_mode = mode == "features";
  config.master_seed = raw.root.get_u64("master_seed", 0);
  config.sample_rate =
      static_cast<int>(raw.root.get_number("sample_rate", 16000));
  if (config.sample_rate <= 0) throw ConfigError("sample_rate must be > 0");
  config.parallelism =
      static_cast<unsigned>(raw.root.get_number("parallelism", 1));
  if (config.parallelism == 0) throw ConfigError("parallelism must be >= 1");
  if (!raw.root.has("input_dir") || !raw.root.has("output_dir")) {
    throw ConfigError("input_dir and output_dir are required");
  }
  config.input_dir = raw.root.get_string("input_dir", "");
  config.output_dir = raw.root.get_string("output_dir", "");
  config.emit_provenance = raw.root.get_bool("emit_provenance", false);

  if (auto it = raw.tables.find("stft"); it != raw.tables.end()) {
    const RawTable& t = it->second;
    config.stft.frame_size =
        static_cast<std::size_t>(t.get_number("frame_size", 512));
    config.stft.hop = static_cast<std::size_t>(t.get_number("hop", 256));
    std::string w = t.get_string("window", "hann");
    if (w == "hann") {
      config.stft.window = Window::Hann;
    } else if (w == "rectangular") {
      config.stft.window = Window::Rectangular;
    } else {
      throw ConfigError("window must be \"hann\" or \"rectangular\"");
    }
  }
  if (config.stft.frame_size == 0 || config.stft.frame_size % 2 != 0 ||
      config.stft.hop == 0 || config.stft.hop > config.stft.frame_size) {
    throw ConfigError("invalid stft config");
  }

  for (const RawTable& t : raw.stages) {
    config.stages.push_back(stage_from_table(t, config.feature_mode));
  }
  return config;
}

RunSummary run_augment_pipeline(const PipelineConfig& config) {
  if (!std::filesystem::is_directory(config.input_dir)) {
    throw ConfigError("input_dir is not a directory: " +
                      config.input_dir.string());
  }
  std::filesystem::create_directories(config.output_dir);

  std::vector<std::filesystem::path> files;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(config.input_dir)) {
    if (entry.is_regular_file() &&
        is_input_file(entry.path(), config.feature_mode)) {
      files.push_back(
          std::filesystem::relative(entry.path(), config.input_dir));
    }
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.generic_string() < b.generic_string();
  });

  std::vector<FileResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) break;
      results[i] = process_file(config, files[i]);
    }
  };
  const unsigned n_threads = std::min<unsigned>(
      config.parallelism, std::max<std::size_t>(files.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Manifest merged in deterministic path order after completion.
  std::ofstream manifest(config.output_dir / "manifest.jsonl",
                         std::ios::trunc);
  if (!manifest) throw IoError("cannot write manifest");

  RunSummary summary;
  for (const FileResult& r : results) {
    if (r.error.empty()) {
      manifest << r.manifest_line << '\n';
      ++summary.processed;
    } else {
      ++summary.failed;
      summary.errors.push_back(r.error);
    }
  }
  return summary;
}

}  // namespace spoofaug
