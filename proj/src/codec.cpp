// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/codec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {

std::string replace_all_of(std::string s, const std::string& from,
                           const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  out += "'";
  return out;
}

// First whitespace token of the template, with SPOOFAUG_ENCODER override.
std::string encoder_binary(const std::string& tmpl) {
  if (const char* env = std::getenv("SPOOFAUG_ENCODER"); env && *env) {
    return env;
  }
  std::stringstream ss(tmpl);
  std::string bin;
  ss >> bin;
  return bin;
}

// Applies the SPOOFAUG_ENCODER override to a rendered command line.
std::string with_binary_override(const std::string& cmd) {
  const char* env = std::getenv("SPOOFAUG_ENCODER");
  if (!env || !*env) return cmd;
  std::size_t sp = cmd.find(' ');
  return shell_quote(env) + (sp == std::string::npos ? "" : cmd.substr(sp));
}

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

CommandResult run_command(const std::string& cmd,
                          const std::filesystem::path& log_path) {
  std::string full = cmd + " > " + shell_quote(log_path.string()) + " 2>&1";
  int rc = std::system(full.c_str());
  CommandResult res;
  res.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
  std::ifstream log(log_path);
  if (log) {
    std::stringstream ss;
    ss << log.rdbuf();
    res.output = ss.str();
    if (res.output.size() > 4096) res.output.resize(4096);
  }
  return res;
}

// Deletes the temp directory on scope exit.
struct TempDirGuard {
  std::filesystem::path dir;
  ~TempDirGuard() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
};

std::filesystem::path make_temp_dir(const std::filesystem::path& base) {
  static std::atomic<uint64_t> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(base, ec);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::filesystem::path dir =
        base / ("spoofaug-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter.fetch_add(1)));
    if (std::filesystem::create_directory(dir, ec)) return dir;
  }
  throw IoError("cannot create temp directory under " + base.string());
}

}  // namespace

std::string to_string(CodecKind kind) {
  switch (kind) {
    case CodecKind::MP3: return "mp3";
    case CodecKind::M4A: return "m4a";
    case CodecKind::PassThrough: return "passthrough";
  }
  return "unknown";
}

CodecKind codec_kind_from_string(const std::string& name) {
  if (name == "mp3") return CodecKind::MP3;
  if (name == "m4a") return CodecKind::M4A;
  if (name == "passthrough") return CodecKind::PassThrough;
  throw ConfigError("unknown codec: " + name);
}

std::string CodecSpec::container_extension() const {
  switch (codec) {
    case CodecKind::MP3: return ".mp3";
    case CodecKind::M4A: return ".m4a";
    case CodecKind::PassThrough: return ".wav";
  }
  return ".bin";
}

EncoderReport check_encoder(const CodecSpec& spec) {
  EncoderReport report;
  if (spec.codec == CodecKind::PassThrough) {
    report.available = true;
    report.diagnostic = "passthrough codec, no encoder needed";
    return report;
  }
  try {
    std::filesystem::path dir =
        make_temp_dir(std::filesystem::temp_directory_path());
    TempDirGuard guard{dir};
    std::string bin = encoder_binary(spec.encoder_template);
    CommandResult res =
        run_command(shell_quote(bin) + " -version", dir / "probe.log");
    report.available = res.exit_code == 0;
    report.diagnostic = res.exit_code == 0
                            ? res.output.substr(0, res.output.find('\n'))
                            : "probe exited with code " +
                                  std::to_string(res.exit_code) + ": " +
                                  res.output;
  } catch (const std::exception& e) {
    report.available = false;
    report.diagnostic = e.what();
  }
  return report;
}

std::size_t estimate_delay(const AudioBuffer& reference,
                           const AudioBuffer& delayed, std::size_t max_lag) {
  const std::size_t window =
      std::min<std::size_t>({4096, reference.size(), delayed.size()});
  if (window == 0) return 0;

  double best_corr = -2.0;
  std::size_t best_lag = 0;
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    if (lag + window > delayed.size()) break;
    double dot = 0.0, ref_sq = 0.0, del_sq = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
      double a = reference.samples[i];
      double b = delayed.samples[lag + i];
      dot += a * b;
      ref_sq += a * a;
      del_sq += b * b;
    }
    double denom = std::sqrt(ref_sq * del_sq);
    double corr = denom > 0.0 ? dot / denom : 0.0;
    if (corr > best_corr) {
      best_corr = corr;
      best_lag = lag;
    }
  }
  return best_lag;
}

AudioBuffer codec_roundtrip(const AudioBuffer& audio, const CodecSpec& spec,
                            const std::filesystem::path& workdir) {
  if (audio.empty()) throw EmptyBuffer("cannot transcode an empty buffer");
  if (spec.codec == CodecKind::PassThrough) return audio;
  if (spec.bitrate_kbps <= 0) {
    throw ConfigError("bitrate must be positive");
  }

  std::filesystem::path dir = make_temp_dir(workdir);
  TempDirGuard guard{dir};

  const std::filesystem::path src = dir / "input.wav";
  const std::filesystem::path enc =
      dir / ("encoded" + spec.container_extension());
  const std::filesystem::path dec = dir / "decoded.wav";
  write_wav(audio, src);

  std::string enc_cmd = spec.encoder_template;
  enc_cmd = replace_all_of(enc_cmd, "{input}", shell_quote(src.string()));
  enc_cmd = replace_all_of(enc_cmd, "{output}", shell_quote(enc.string()));
  enc_cmd =
      replace_all_of(enc_cmd, "{bitrate}", std::to_string(spec.bitrate_kbps));
  CommandResult enc_res =
      run_command(with_binary_override(enc_cmd), dir / "encode.log");
  if (enc_res.exit_code != 0) {
    throw SubprocessFailed("encoder exited with code " +
                           std::to_string(enc_res.exit_code) + ": " +
                           enc_res.output);
  }

  std::string dec_cmd = spec.decoder_template;
  dec_cmd = replace_all_of(dec_cmd, "{input}", shell_quote(enc.string()));
  dec_cmd = replace_all_of(dec_cmd, "{output}", shell_quote(dec.string()));
  CommandResult dec_res =
      run_command(with_binary_override(dec_cmd), dir / "decode.log");
  if (dec_res.exit_code != 0) {
    throw SubprocessFailed("decoder exited with code " +
                           std::to_string(dec_res.exit_code) + ": " +
                           dec_res.output);
  }

  AudioBuffer decoded;
  try {
    decoded = read_wav(dec);
  } catch (const Error& e) {
    throw OutputUnreadable(std::string("decoder output unreadable: ") +
                           e.what());
  }
  if (decoded.sample_rate != audio.sample_rate) {
    throw SampleRateChanged("codec changed sample rate from " +
                            std::to_string(audio.sample_rate) + " to " +
                            std::to_string(decoded.sample_rate));
  }

  // Strip the encoder delay, then trim or zero-pad to the input length.
  std::size_t lag = estimate_delay(audio, decoded, 4096);
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.samples.assign(audio.size(), 0.0);
  for (std::size_t i = 0; i < audio.size() && lag + i < decoded.size(); ++i) {
    out.samples[i] = decoded.samples[lag + i];
  }
  return out;
}

}  // namespace spoofaug
