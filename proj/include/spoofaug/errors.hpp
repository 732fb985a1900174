// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_ERRORS_HPP_
#define SPOOFAUG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spoofaug {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SPOOFAUG_DEFINE_ERROR(Name)                            \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& msg) : Error(msg) {}      \
  }

// audio-io
SPOOFAUG_DEFINE_ERROR(FileNotFound);
SPOOFAUG_DEFINE_ERROR(UnsupportedFormat);
SPOOFAUG_DEFINE_ERROR(CorruptHeader);
SPOOFAUG_DEFINE_ERROR(IoError);
SPOOFAUG_DEFINE_ERROR(EmptyBuffer);

// stft-engine
SPOOFAUG_DEFINE_ERROR(SignalTooShort);
SPOOFAUG_DEFINE_ERROR(NonInvertibleConfig);
SPOOFAUG_DEFINE_ERROR(EmptySpectrogram);

// masking
SPOOFAUG_DEFINE_ERROR(EmptyDims);
SPOOFAUG_DEFINE_ERROR(DimsMismatch);

// filters
SPOOFAUG_DEFINE_ERROR(InvalidCutoff);
SPOOFAUG_DEFINE_ERROR(InvalidLength);

// codec-aug
SPOOFAUG_DEFINE_ERROR(EncoderUnavailable);
SPOOFAUG_DEFINE_ERROR(SubprocessFailed);
SPOOFAUG_DEFINE_ERROR(OutputUnreadable);
SPOOFAUG_DEFINE_ERROR(SampleRateChanged);

// feature-aug
SPOOFAUG_DEFINE_ERROR(FormatError);
SPOOFAUG_DEFINE_ERROR(ShapeError);

// eval-metrics
SPOOFAUG_DEFINE_ERROR(ParseError);
SPOOFAUG_DEFINE_ERROR(DuplicateUttId);
SPOOFAUG_DEFINE_ERROR(UnknownLabel);
SPOOFAUG_DEFINE_ERROR(DegenerateSet);
SPOOFAUG_DEFINE_ERROR(UniverseMismatch);
SPOOFAUG_DEFINE_ERROR(LabelConflict);
SPOOFAUG_DEFINE_ERROR(NonPositiveWeight);
SPOOFAUG_DEFINE_ERROR(MissingTag);

// cli
SPOOFAUG_DEFINE_ERROR(ConfigError);

#undef SPOOFAUG_DEFINE_ERROR

}  // namespace spoofaug

#endif  // SPOOFAUG_ERRORS_HPP_
