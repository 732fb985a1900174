// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <doctest.h>

#include "spoofaug/errors.hpp"
#include "spoofaug/rng.hpp"
#include "spoofaug/stft.hpp"

using namespace spoofaug;

namespace {

AudioBuffer random_signal(std::size_t n, uint64_t seed) {
  Rng rng(seed);
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.resize(n);
  for (auto& s : buf.samples) s = rng.uniform(-1.0, 1.0);
  return buf;
}

// RMS of (a - b) relative to RMS of b over [lo, hi).
double interior_rel_rms(const std::vector<double>& a,
                        const std::vector<double>& b, std::size_t lo,
                        std::size_t hi) {
  double err = 0.0, ref = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    err += (a[i] - b[i]) * (a[i] - b[i]);
    ref += b[i] * b[i];
  }
  return std::sqrt(err / ref);
}

}  // namespace

TEST_CASE("stft of all-zero signal is exactly zero") {
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.assign(1024, 0.0);
  StftConfig cfg;
  ComplexSpectrogram spec = compute_stft(buf, cfg);
  CHECK(spec.frames() == 3);
  CHECK(spec.bin_count() == 257);
  for (const auto& row : spec.bins) {
    for (const auto& v : row) CHECK(v == std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("bin-aligned cosine concentrates in a single bin") {
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.resize(64);
  for (std::size_t n = 0; n < 64; ++n) {
    buf.samples[n] = std::cos(2.0 * std::numbers::pi * 4.0 *
                              static_cast<double>(n) / 64.0);
  }
  StftConfig cfg{64, 64, Window::Rectangular};
  ComplexSpectrogram spec = compute_stft(buf, cfg);
  REQUIRE(spec.frames() == 1);
  for (std::size_t k = 0; k < spec.bin_count(); ++k) {
    double mag = std::abs(spec.bins[0][k]);
    if (k == 4) {
      CHECK(mag == doctest::Approx(32.0).epsilon(1e-12));
    } else {
      CHECK(mag <= 1e-9);
    }
  }
}

TEST_CASE("stft rejects signals shorter than one frame") {
  AudioBuffer buf = random_signal(100, 1);
  StftConfig cfg;
  CHECK_THROWS_AS(compute_stft(buf, cfg), SignalTooShort);
}

TEST_CASE("Hann round trip reconstructs the interior to 1e-6") {
  AudioBuffer x = random_signal(16000, 42);
  StftConfig cfg;
  AudioBuffer y = compute_istft(compute_stft(x, cfg));
  REQUIRE(y.size() == x.size());
  CHECK(interior_rel_rms(y.samples, x.samples, 512, x.size() - 512) <= 1e-6);
}

TEST_CASE("round trip holds for other COLA-valid configs") {
  for (std::size_t hop : {64UL, 128UL, 256UL}) {
    AudioBuffer x = random_signal(8000, hop);
    StftConfig cfg{512, hop, Window::Hann};
    AudioBuffer y = compute_istft(compute_stft(x, cfg));
    CHECK(interior_rel_rms(y.samples, x.samples, 512, x.size() - 512) <= 1e-6);
  }
}

TEST_CASE("rectangular H=N reconstructs framed samples exactly") {
  AudioBuffer x = random_signal(1000, 3);
  StftConfig cfg{256, 256, Window::Rectangular};
  ComplexSpectrogram spec = compute_stft(x, cfg);
  AudioBuffer y = compute_istft(spec);
  // covered region is the first M*N samples; the tail is zero-extended
  const std::size_t covered = spec.frames() * 256;
  for (std::size_t i = 0; i < covered; ++i) {
    CHECK(y.samples[i] == doctest::Approx(x.samples[i]).epsilon(1e-10));
  }
  for (std::size_t i = covered; i < y.size(); ++i) {
    CHECK(y.samples[i] == 0.0);
  }
}

TEST_CASE("rectangular window with overlap is not invertible") {
  AudioBuffer x = random_signal(1024, 4);
  StftConfig cfg{256, 128, Window::Rectangular};
  ComplexSpectrogram spec = compute_stft(x, cfg);
  CHECK_THROWS_AS(compute_istft(spec), NonInvertibleConfig);
}

TEST_CASE("all-zero spectrogram inverts to all-zero audio") {
  AudioBuffer x = random_signal(2048, 5);
  ComplexSpectrogram spec = compute_stft(x, StftConfig{});
  for (auto& row : spec.bins) {
    std::fill(row.begin(), row.end(), std::complex<double>(0.0, 0.0));
  }
  AudioBuffer y = compute_istft(spec);
  for (double s : y.samples) CHECK(s == 0.0);
}

TEST_CASE("Parseval identity for rectangular disjoint frames") {
  AudioBuffer x = random_signal(2048, 6);
  StftConfig cfg{256, 256, Window::Rectangular};
  ComplexSpectrogram spec = compute_stft(x, cfg);

  double time_energy = 0.0;
  for (std::size_t i = 0; i < spec.frames() * 256; ++i) {
    time_energy += x.samples[i] * x.samples[i];
  }
  double freq_energy = 0.0;
  for (const auto& row : spec.bins) {
    freq_energy += std::norm(row[0]) + std::norm(row[row.size() - 1]);
    for (std::size_t k = 1; k + 1 < row.size(); ++k) {
      freq_energy += 2.0 * std::norm(row[k]);
    }
  }
  freq_energy /= 256.0;
  CHECK(freq_energy ==
        doctest::Approx(time_energy).epsilon(1e-6));
}

TEST_CASE("stft_mean of a constant spectrogram") {
  ComplexSpectrogram spec;
  spec.config = StftConfig{};
  spec.bins.assign(4, std::vector<std::complex<double>>(
                          5, std::polar(3.0, std::numbers::pi / 4.0)));
  ComplexMean mean = stft_mean(spec);
  CHECK(mean.magnitude == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mean.phase == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
  CHECK(std::abs(mean.value - std::polar(3.0, std::numbers::pi / 4.0)) <=
        1e-12);
}

TEST_CASE("stft_mean defines arg(0) as zero") {
  ComplexSpectrogram spec;
  spec.bins.assign(2, std::vector<std::complex<double>>(3, {0.0, 0.0}));
  ComplexMean mean = stft_mean(spec);
  CHECK(mean.magnitude == 0.0);
  CHECK(mean.phase == 0.0);
  CHECK(mean.value == std::complex<double>(0.0, 0.0));
}

TEST_CASE("stft_mean averages magnitude and phase arithmetically") {
  ComplexSpectrogram spec;
  spec.bins = {{std::polar(1.0, 0.2), std::polar(3.0, 0.6)}};
  ComplexMean mean = stft_mean(spec);
  CHECK(mean.magnitude == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mean.phase == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::abs(mean.value - std::polar(2.0, 0.4)) <= 1e-12);
}

TEST_CASE("stft_mean is invariant under bin permutation") {
  AudioBuffer x = random_signal(4096, 7);
  ComplexSpectrogram spec = compute_stft(x, StftConfig{});
  ComplexMean a = stft_mean(spec);

  // flatten, reverse, reshape
  std::vector<std::complex<double>> flat;
  for (const auto& row : spec.bins) {
    flat.insert(flat.end(), row.begin(), row.end());
  }
  std::reverse(flat.begin(), flat.end());
  std::size_t i = 0;
  for (auto& row : spec.bins) {
    for (auto& v : row) v = flat[i++];
  }
  ComplexMean b = stft_mean(spec);
  CHECK(a.magnitude == doctest::Approx(b.magnitude).epsilon(1e-12));
  CHECK(a.phase == doctest::Approx(b.phase).epsilon(1e-12));
  CHECK(std::abs(a.value) == doctest::Approx(a.magnitude).epsilon(1e-12));
}

TEST_CASE("magnitude csv has one row per frame") {
  AudioBuffer x = random_signal(2048, 8);
  ComplexSpectrogram spec = compute_stft(x, StftConfig{});
  auto path = std::filesystem::temp_directory_path() / "spoofaug_mag.csv";
  write_magnitude_csv(spec, path);
  std::ifstream in(path);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') ==
          static_cast<long>(spec.bin_count() - 1));
    ++rows;
  }
  CHECK(rows == spec.frames());
  std::filesystem::remove(path);
}
