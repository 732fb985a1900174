// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/stft.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_config(const StftConfig& c) {
  if (c.frame_size == 0 || c.frame_size % 2 != 0) {
    throw ConfigError("frame_size must be a positive even number");
  }
  if (c.hop == 0 || c.hop > c.frame_size) {
    throw ConfigError("hop must satisfy 0 < H <= N");
  }
}

// Twiddle table exp(-i*2*pi*j/N) for j = 0..N-1.
std::vector<std::complex<double>> twiddles(std::size_t n) {
  std::vector<std::complex<double>> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    double ang = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    t[j] = {std::cos(ang), std::sin(ang)};
  }
  return t;
}

}  // namespace

std::vector<double> make_window(Window window, std::size_t frame_size) {
  std::vector<double> w(frame_size, 1.0);
  if (window == Window::Hann) {
    for (std::size_t n = 0; n < frame_size; ++n) {
      w[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) /
                                   static_cast<double>(frame_size)));
    }
  }
  return w;
}

ComplexSpectrogram compute_stft(const AudioBuffer& audio,
                                const StftConfig& config) {
  validate_config(config);
  const std::size_t n_size = config.frame_size;
  if (audio.size() < n_size) {
    throw SignalTooShort("signal length " + std::to_string(audio.size()) +
                         " < frame size " + std::to_string(n_size));
  }

  const std::size_t hop = config.hop;
  const std::size_t frames = (audio.size() - n_size) / hop + 1;
  const std::size_t k_count = config.bins();
  const std::vector<double> w = make_window(config.window, n_size);
  const std::vector<std::complex<double>> tw = twiddles(n_size);

  ComplexSpectrogram spec;
  spec.config = config;
  spec.original_length = audio.size();
  spec.sample_rate = audio.sample_rate;
  spec.bins.assign(frames, std::vector<std::complex<double>>(k_count));

  std::vector<std::complex<double>> windowed(n_size);
  for (std::size_t m = 0; m < frames; ++m) {
    const double* x = audio.samples.data() + m * hop;
    for (std::size_t n = 0; n < n_size; ++n) windowed[n] = x[n] * w[n];
    for (std::size_t k = 0; k < k_count; ++k) {
      std::complex<double> acc{0.0, 0.0};
      std::size_t idx = 0;
      for (std::size_t n = 0; n < n_size; ++n) {
        acc += windowed[n] * tw[idx];
        idx += k;
        if (idx >= n_size) idx -= n_size;
      }
      spec.bins[m][k] = acc;
    }
  }
  return spec;
}

AudioBuffer compute_istft(const ComplexSpectrogram& spec) {
  const StftConfig& c = spec.config;
  validate_config(c);
  if (spec.bins.empty()) throw EmptySpectrogram("no frames to invert");

  // Per-sample normalization only inverts configs with full, nonvanishing
  // window coverage.
  if (c.window == Window::Rectangular && c.hop != c.frame_size) {
    throw NonInvertibleConfig("Rectangular window requires H = N");
  }
  if (c.window == Window::Hann && c.hop > c.frame_size / 2) {
    throw NonInvertibleConfig("Hann window requires H <= N/2");
  }

  const std::size_t n_size = c.frame_size;
  const std::size_t hop = c.hop;
  const std::size_t frames = spec.frames();
  const std::size_t k_count = c.bins();
  const std::vector<double> w = make_window(c.window, n_size);
  const std::vector<std::complex<double>> tw = twiddles(n_size);

  const std::size_t covered = (frames - 1) * hop + n_size;
  std::vector<double> acc(covered, 0.0);
  std::vector<double> norm(covered, 0.0);

  std::vector<double> frame(n_size);
  for (std::size_t m = 0; m < frames; ++m) {
    const auto& row = spec.bins[m];
    // Inverse DFT of the Hermitian-expanded one-sided row; imaginary parts
    // cancel, so only the real part is accumulated.
    for (std::size_t n = 0; n < n_size; ++n) {
      double sum = row[0].real();
      for (std::size_t k = 1; k + 1 < k_count; ++k) {
        // conj(tw) rotates forward: exp(+i*2*pi*k*n/N)
        std::size_t idx = (k * n) % n_size;
        std::complex<double> e = std::conj(tw[idx]);
        sum += 2.0 * (row[k] * e).real();
      }
      std::size_t idx = ((n_size / 2) * n) % n_size;
      sum += (row[k_count - 1] * std::conj(tw[idx])).real();
      frame[n] = sum / static_cast<double>(n_size);
    }
    for (std::size_t n = 0; n < n_size; ++n) {
      acc[m * hop + n] += frame[n] * w[n];
      norm[m * hop + n] += w[n] * w[n];
    }
  }

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(spec.original_length, 0.0);
  const std::size_t copy = std::min(spec.original_length, covered);
  for (std::size_t i = 0; i < copy; ++i) {
    out.samples[i] = norm[i] > 1e-12 ? acc[i] / norm[i] : 0.0;
  }
  return out;
}

ComplexMean stft_mean(const ComplexSpectrogram& spec) {
  if (spec.bins.empty() || spec.bins[0].empty()) {
    throw EmptySpectrogram("cannot take mean of empty spectrogram");
  }
  double mag_sum = 0.0;
  double phase_sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : spec.bins) {
    for (const auto& v : row) {
      double mag = std::abs(v);
      mag_sum += mag;
      phase_sum += mag > 0.0 ? std::arg(v) : 0.0;  // arg(0) := 0
      ++count;
    }
  }
  ComplexMean mean;
  mean.magnitude = mag_sum / static_cast<double>(count);
  mean.phase = phase_sum / static_cast<double>(count);
  mean.value = std::polar(mean.magnitude, mean.phase);
  return mean;
}

void write_magnitude_csv(const ComplexSpectrogram& spec,
                         const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for write: " + path.string());
  os.precision(9);
  for (const auto& row : spec.bins) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) os << ',';
      os << std::abs(row[k]);
    }
    os << '\n';
  }
  if (!os) throw IoError("short write: " + path.string());
}

}  // namespace spoofaug
