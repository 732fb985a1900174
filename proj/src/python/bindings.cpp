// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spoofaug/audio.hpp"
#include "spoofaug/codec.hpp"
#include "spoofaug/errors.hpp"
#include "spoofaug/eval.hpp"
#include "spoofaug/features.hpp"
#include "spoofaug/filters.hpp"
#include "spoofaug/masking.hpp"
#include "spoofaug/rng.hpp"
#include "spoofaug/stft.hpp"
#include "spoofaug/version.hpp"

namespace py = pybind11;
using namespace spoofaug;

namespace {

AudioBuffer to_buffer(const py::array_t<double>& samples, int sample_rate) {
  auto r = samples.unchecked<1>();
  AudioBuffer buf;
  buf.sample_rate = sample_rate;
  buf.samples.assign(r.data(0), r.data(0) + r.shape(0));
  return buf;
}

py::array_t<double> from_buffer(const AudioBuffer& buf) {
  py::array_t<double> out(static_cast<py::ssize_t>(buf.size()));
  std::copy(buf.samples.begin(), buf.samples.end(),
            out.mutable_data());
  return out;
}

FeatureMatrix to_features(const py::array_t<float>& values) {
  auto r = values.unchecked<2>();
  FeatureMatrix m;
  m.rows = static_cast<std::size_t>(r.shape(0));
  m.cols = static_cast<std::size_t>(r.shape(1));
  m.values.resize(m.rows * m.cols);
  for (py::ssize_t t = 0; t < r.shape(0); ++t) {
    for (py::ssize_t d = 0; d < r.shape(1); ++d) {
      m.values[static_cast<std::size_t>(t) * m.cols +
               static_cast<std::size_t>(d)] = r(t, d);
    }
  }
  return m;
}

py::array_t<float> from_features(const FeatureMatrix& m) {
  py::array_t<float> out({static_cast<py::ssize_t>(m.rows),
                          static_cast<py::ssize_t>(m.cols)});
  std::copy(m.values.begin(), m.values.end(), out.mutable_data());
  return out;
}

py::array_t<std::complex<double>> from_spec(const ComplexSpectrogram& spec) {
  py::array_t<std::complex<double>> out(
      {static_cast<py::ssize_t>(spec.frames()),
       static_cast<py::ssize_t>(spec.bin_count())});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    for (std::size_t k = 0; k < spec.bin_count(); ++k) {
      w(static_cast<py::ssize_t>(m), static_cast<py::ssize_t>(k)) =
          spec.bins[m][k];
    }
  }
  return out;
}

ComplexSpectrogram to_spec(const py::array_t<std::complex<double>>& bins,
                           const StftConfig& config,
                           std::size_t original_length, int sample_rate) {
  auto r = bins.unchecked<2>();
  ComplexSpectrogram spec;
  spec.config = config;
  spec.original_length = original_length;
  spec.sample_rate = sample_rate;
  spec.bins.assign(static_cast<std::size_t>(r.shape(0)),
                   std::vector<std::complex<double>>(
                       static_cast<std::size_t>(r.shape(1))));
  for (py::ssize_t m = 0; m < r.shape(0); ++m) {
    for (py::ssize_t k = 0; k < r.shape(1); ++k) {
      spec.bins[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] =
          r(m, k);
    }
  }
  return spec;
}

StftConfig make_config(std::size_t frame_size, std::size_t hop,
                       const std::string& window) {
  StftConfig c;
  c.frame_size = frame_size;
  c.hop = hop;
  c.window = window == "rectangular" ? Window::Rectangular : Window::Hann;
  return c;
}

}  // namespace

PYBIND11_MODULE(_spoofaug, m) {
  m.doc() = "Audio augmentation and anti-spoofing evaluation toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "SpoofaugError");

  // audio io
  m.def("read_wav", [](const std::filesystem::path& path) {
    AudioBuffer buf = read_wav(path);
    return py::make_tuple(from_buffer(buf), buf.sample_rate);
  });
  m.def("write_wav", [](const py::array_t<double>& samples, int sample_rate,
                        const std::filesystem::path& path) {
    write_wav(to_buffer(samples, sample_rate), path);
  });

  // stft engine
  m.def(
      "stft",
      [](const py::array_t<double>& samples, std::size_t frame_size,
         std::size_t hop, const std::string& window) {
        return from_spec(compute_stft(to_buffer(samples, 16000),
                                      make_config(frame_size, hop, window)));
      },
      py::arg("samples"), py::arg("frame_size") = 512, py::arg("hop") = 256,
      py::arg("window") = "hann");
  m.def(
      "istft",
      [](const py::array_t<std::complex<double>>& bins,
         std::size_t original_length, std::size_t frame_size, std::size_t hop,
         const std::string& window) {
        return from_buffer(compute_istft(
            to_spec(bins, make_config(frame_size, hop, window),
                    original_length, 16000)));
      },
      py::arg("bins"), py::arg("original_length"), py::arg("frame_size") = 512,
      py::arg("hop") = 256, py::arg("window") = "hann");
  m.def("stft_mean", [](const py::array_t<std::complex<double>>& bins) {
    ComplexMean mean = stft_mean(
        to_spec(bins, make_config(512, 256, "hann"), 0, 16000));
    return py::make_tuple(mean.magnitude, mean.phase, mean.value);
  });

  // masking
  py::enum_<MaskShape>(m, "MaskShape")
      .value("Squares", MaskShape::Squares)
      .value("Bands", MaskShape::Bands)
      .value("Singles", MaskShape::Singles)
      .value("Gauss", MaskShape::Gauss);

  py::class_<MaskParams>(m, "MaskParams")
      .def(py::init<>())
      .def_readwrite("shape", &MaskParams::shape)
      .def_readwrite("count_min", &MaskParams::count_min)
      .def_readwrite("count_max", &MaskParams::count_max)
      .def_readwrite("time_extent_min", &MaskParams::time_extent_min)
      .def_readwrite("time_extent_max", &MaskParams::time_extent_max)
      .def_readwrite("freq_extent_min", &MaskParams::freq_extent_min)
      .def_readwrite("freq_extent_max", &MaskParams::freq_extent_max)
      .def_readwrite("sigma_min", &MaskParams::sigma_min)
      .def_readwrite("sigma_max", &MaskParams::sigma_max)
      .def_readwrite("peak_alpha_min", &MaskParams::peak_alpha_min)
      .def_readwrite("peak_alpha_max", &MaskParams::peak_alpha_max);

  m.def(
      "masked_spec_augment",
      [](const py::array_t<double>& samples, const MaskParams& params,
         uint64_t seed, std::size_t frame_size, std::size_t hop,
         const std::string& window) {
        Rng rng(seed);
        return from_buffer(masked_spec_augment(
            to_buffer(samples, 16000), params,
            make_config(frame_size, hop, window), rng));
      },
      py::arg("samples"), py::arg("params"), py::arg("seed"),
      py::arg("frame_size") = 512, py::arg("hop") = 256,
      py::arg("window") = "hann");
  m.def("mask_plan_json",
        [](const MaskParams& params, std::size_t frames, std::size_t bins,
           uint64_t seed) {
          Rng rng(seed);
          return mask_plan_to_json(
              generate_mask_plan(params, frames, bins, rng), params.shape);
        });

  // filters
  m.def("design_lpf_kernel", [](double cutoff, std::size_t taps) {
    FilterKernel k = design_lpf_kernel(cutoff, taps);
    py::array_t<double> out(static_cast<py::ssize_t>(k.taps.size()));
    std::copy(k.taps.begin(), k.taps.end(), out.mutable_data());
    return out;
  });
  m.def("apply_lpf", [](const py::array_t<double>& samples, double cutoff,
                        std::size_t taps) {
    return from_buffer(
        apply_fir(to_buffer(samples, 16000), design_lpf_kernel(cutoff, taps)));
  });

  // features
  m.def("normalize_features",
        [](const py::array_t<float>& values, bool per_dimension) {
          return from_features(
              normalize_features(to_features(values), per_dimension));
        },
        py::arg("values"), py::arg("per_dimension") = false);
  m.def("masked_feature_augment",
        [](const py::array_t<float>& values, const MaskParams& params,
           uint64_t seed) {
          Rng rng(seed);
          return from_features(
              masked_feature_augment(to_features(values), params, rng));
        });

  // eval metrics
  m.def("compute_eer", [](const std::vector<double>& bonafide,
                          const std::vector<double>& spoof) {
    ScoreSet set;
    std::size_t i = 0;
    for (double s : bonafide) {
      set.records.push_back({"b" + std::to_string(i++), Label::Bonafide, s,
                             "-", "-"});
    }
    for (double s : spoof) {
      set.records.push_back({"s" + std::to_string(i++), Label::Spoof, s, "-",
                             "-"});
    }
    EerResult r = compute_eer(set);
    return py::make_tuple(r.eer, r.threshold);
  });
  m.def("compute_eer_file", [](const std::filesystem::path& path) {
    EerResult r = compute_eer(load_scores(path));
    return py::make_tuple(r.eer, r.threshold);
  });

  // misc
  m.def("derive_file_seed", &derive_file_seed);
}
