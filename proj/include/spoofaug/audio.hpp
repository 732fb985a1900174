// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_AUDIO_HPP_
#define SPOOFAUG_AUDIO_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace spoofaug {

// Mono PCM signal, samples nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

// Reads a mono integer-PCM RIFF/WAVE file (16/24/32-bit), scaling samples
// by the format's full-scale magnitude.
AudioBuffer read_wav(const std::filesystem::path& path);

// Writes 16-bit PCM mono, little-endian. Out-of-range samples are clamped.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);

}  // namespace spoofaug

#endif  // SPOOFAUG_AUDIO_HPP_
