// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_STFT_HPP_
#define SPOOFAUG_STFT_HPP_

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "spoofaug/audio.hpp"

namespace spoofaug {

enum class Window { Hann, Rectangular };

struct StftConfig {
  std::size_t frame_size = 512;  // N, even
  std::size_t hop = 256;         // H, 0 < H <= N
  Window window = Window::Hann;

  std::size_t bins() const { return frame_size / 2 + 1; }  // K = N/2 + 1
};

// One-sided complex STFT. bins[m][k] = X(m, k), m = 0..M-1, k = 0..N/2.
struct ComplexSpectrogram {
  std::vector<std::vector<std::complex<double>>> bins;
  StftConfig config;
  std::size_t original_length = 0;
  int sample_rate = 0;

  std::size_t frames() const { return bins.size(); }
  std::size_t bin_count() const { return bins.empty() ? 0 : bins[0].size(); }
};

// Mean magnitude / mean phase of the spectrogram and the complex fill value
// reconstructed from them.
struct ComplexMean {
  double magnitude = 0.0;
  double phase = 0.0;
  std::complex<double> value{0.0, 0.0};
};

// Analysis window samples w(0..N-1). Hann is the periodic variant, which
// satisfies constant overlap-add at H = N/2.
std::vector<double> make_window(Window window, std::size_t frame_size);

// Forward STFT. Trailing partial frame is dropped; original_length keeps the
// exact input duration for resynthesis.
ComplexSpectrogram compute_stft(const AudioBuffer& audio,
                                const StftConfig& config);

// Weighted overlap-add inversion with the analysis window reused for
// synthesis and per-sample normalization by the accumulated squared window.
AudioBuffer compute_istft(const ComplexSpectrogram& spec);

// Mean magnitude and mean principal-value phase over all bins; arg(0) := 0.
ComplexMean stft_mean(const ComplexSpectrogram& spec);

// Magnitude CSV: one row per frame, K values, 9 significant digits.
void write_magnitude_csv(const ComplexSpectrogram& spec,
                         const std::filesystem::path& path);

}  // namespace spoofaug

#endif  // SPOOFAUG_STFT_HPP_
