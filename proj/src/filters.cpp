// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/filters.hpp"

#include <cmath>
#include <numbers>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {
constexpr double kPi = std::numbers::pi;
}

FilterKernel design_lpf_kernel(double cutoff, std::size_t taps) {
  if (!(cutoff > 0.0 && cutoff < 0.5)) {
    throw InvalidCutoff("normalized cutoff must lie in (0, 0.5), got " +
                        std::to_string(cutoff));
  }
  if (taps < 3 || taps % 2 == 0) {
    throw InvalidLength("tap count must be odd and >= 3, got " +
                        std::to_string(taps));
  }

  FilterKernel kernel;
  kernel.cutoff = cutoff;
  kernel.taps.resize(taps);
  const auto half = static_cast<long>((taps - 1) / 2);
  for (long m = -half; m <= half; ++m) {
    const std::size_t i = static_cast<std::size_t>(m + half);
    const double w =
        0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(i) /
                               static_cast<double>(taps - 1));
    kernel.taps[i] =
        m == 0 ? 2.0 * cutoff
               : std::sin(2.0 * kPi * cutoff * static_cast<double>(m)) /
                     (kPi * static_cast<double>(m)) * w;
  }
  return kernel;
}

AudioBuffer apply_fir(const AudioBuffer& audio, const FilterKernel& kernel) {
  if (audio.empty()) throw EmptyBuffer("cannot filter an empty buffer");

  const long n_samples = static_cast<long>(audio.size());
  const long half = static_cast<long>(kernel.center());
  const long m_taps = static_cast<long>(kernel.length());

  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.samples.assign(audio.size(), 0.0);
  // y[n] = sum_m x[n + half - m] h[m]; out-of-range x treated as zero.
  for (long n = 0; n < n_samples; ++n) {
    double acc = 0.0;
    const long lo = std::max(0L, n + half - n_samples + 1);
    const long hi = std::min(m_taps - 1, n + half);
    for (long m = lo; m <= hi; ++m) {
      acc += audio.samples[static_cast<std::size_t>(n + half - m)] *
             kernel.taps[static_cast<std::size_t>(m)];
    }
    out.samples[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

AudioBuffer random_lpf_augment(const AudioBuffer& audio, double cutoff_lo,
                               double cutoff_hi, std::size_t taps, Rng& rng) {
  if (!(cutoff_lo > 0.0 && cutoff_hi < 0.5 && cutoff_lo <= cutoff_hi)) {
    throw InvalidCutoff("cutoff range must be ordered within (0, 0.5)");
  }
  const double fc = rng.uniform(cutoff_lo, cutoff_hi);
  return apply_fir(audio, design_lpf_kernel(fc, taps));
}

}  // namespace spoofaug
