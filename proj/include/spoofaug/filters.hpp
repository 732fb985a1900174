// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_FILTERS_HPP_
#define SPOOFAUG_FILTERS_HPP_

#include <cstddef>
#include <vector>

#include "spoofaug/audio.hpp"
#include "spoofaug/rng.hpp"

namespace spoofaug {

// Linear-phase windowed-sinc low-pass kernel. Taps are centered: odd length,
// center index (taps.size()-1)/2, symmetric about the center.
struct FilterKernel {
  std::vector<double> taps;
  double cutoff = 0.0;  // normalized, cycles/sample, in (0, 0.5)

  std::size_t length() const { return taps.size(); }
  std::size_t center() const { return (taps.size() - 1) / 2; }
};

// Windowed-sinc design: h(m) = sin(2*pi*fc*m)/(pi*m) * hamming(m) for signed
// offset m != 0, h(0) = 2*fc. Hamming spans the full support.
FilterKernel design_lpf_kernel(double cutoff, std::size_t taps);

// Direct-form zero-padded convolution, shifted by (M-1)/2 so the output is
// aligned with the input. Output length equals input length.
AudioBuffer apply_fir(const AudioBuffer& audio, const FilterKernel& kernel);

// Uniform cutoff draw from [lo, hi], then design + apply.
AudioBuffer random_lpf_augment(const AudioBuffer& audio, double cutoff_lo,
                               double cutoff_hi, std::size_t taps, Rng& rng);

}  // namespace spoofaug

#endif  // SPOOFAUG_FILTERS_HPP_
