// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_CODEC_HPP_
#define SPOOFAUG_CODEC_HPP_

#include <filesystem>
#include <string>

#include "spoofaug/audio.hpp"

namespace spoofaug {

enum class CodecKind { MP3, M4A, PassThrough };

std::string to_string(CodecKind kind);
CodecKind codec_kind_from_string(const std::string& name);

// Lossy encode/decode recipe run through an external transcoder. Templates
// take {input}, {output} and (encoder only) {bitrate} placeholders.
struct CodecSpec {
  CodecKind codec = CodecKind::PassThrough;
  int bitrate_kbps = 64;
  std::string encoder_template =
      "ffmpeg -y -loglevel error -i {input} -b:a {bitrate}k {output}";
  std::string decoder_template =
      "ffmpeg -y -loglevel error -i {input} {output}";

  // Container extension for the encoded intermediate, e.g. ".mp3".
  std::string container_extension() const;
};

struct EncoderReport {
  bool available = false;
  std::string diagnostic;
};

// Probes the encoder binary with a version invocation; never throws.
// SPOOFAUG_ENCODER overrides the binary named in the template.
EncoderReport check_encoder(const CodecSpec& spec);

// Encode/decode round trip through temp files, then best-effort delay
// alignment by cross-correlation over a leading segment and trim/pad back
// to the input length. Temporaries are removed on success and failure.
AudioBuffer codec_roundtrip(const AudioBuffer& audio, const CodecSpec& spec,
                            const std::filesystem::path& workdir);

// Alignment helper, exposed for testing: lag in [0, max_lag] maximizing the
// normalized cross-correlation of `reference` against `delayed`.
std::size_t estimate_delay(const AudioBuffer& reference,
                           const AudioBuffer& delayed, std::size_t max_lag);

}  // namespace spoofaug

#endif  // SPOOFAUG_CODEC_HPP_
