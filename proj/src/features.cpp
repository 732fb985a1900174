// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {

constexpr char kMagic[4] = {'S', 'A', 'F', 'M'};
constexpr uint16_t kVersion = 1;

void check_finite(const FeatureMatrix& m, const std::string& origin) {
  for (float v : m.values) {
    if (!std::isfinite(v)) throw FormatError("non-finite value in " + origin);
  }
}

}  // namespace

FeatureMatrix load_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + path.string());

  char header[16];
  in.read(header, sizeof(header));
  if (!in || std::memcmp(header, kMagic, 4) != 0) {
    throw FormatError("bad SAFM magic in " + path.string());
  }
  uint16_t version;
  uint32_t rows, cols;
  std::memcpy(&version, header + 4, 2);
  std::memcpy(&rows, header + 6, 4);
  std::memcpy(&cols, header + 10, 4);
  if (version != kVersion) {
    throw FormatError("unsupported SAFM version " + std::to_string(version));
  }
  if (rows == 0 || cols == 0) throw ShapeError("zero dimension in header");

  FeatureMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.values.resize(static_cast<std::size_t>(rows) * cols);
  in.read(reinterpret_cast<char*>(m.values.data()),
          static_cast<std::streamsize>(m.values.size() * sizeof(float)));
  if (static_cast<std::size_t>(in.gcount()) !=
      m.values.size() * sizeof(float)) {
    throw ShapeError("payload shorter than declared shape in " +
                     path.string());
  }
  check_finite(m, path.string());
  return m;
}

void save_features(const FeatureMatrix& features,
                   const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for write: " + path.string());

  char header[16] = {};
  std::memcpy(header, kMagic, 4);
  uint16_t version = kVersion;
  uint32_t rows = static_cast<uint32_t>(features.rows);
  uint32_t cols = static_cast<uint32_t>(features.cols);
  std::memcpy(header + 4, &version, 2);
  std::memcpy(header + 6, &rows, 4);
  std::memcpy(header + 10, &cols, 4);
  os.write(header, sizeof(header));
  os.write(reinterpret_cast<const char*>(features.values.data()),
           static_cast<std::streamsize>(features.values.size() *
                                        sizeof(float)));
  if (!os) throw IoError("short write: " + path.string());
}

FeatureMatrix load_features_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path.string());

  FeatureMatrix m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<float> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stof(cell));
      } catch (const std::exception&) {
        throw FormatError("bad CSV cell '" + cell + "' in " + path.string());
      }
    }
    if (m.cols == 0) {
      m.cols = row.size();
    } else if (row.size() != m.cols) {
      throw ShapeError("ragged CSV row in " + path.string());
    }
    m.values.insert(m.values.end(), row.begin(), row.end());
    ++m.rows;
  }
  if (m.rows == 0) throw FormatError("empty CSV: " + path.string());
  check_finite(m, path.string());
  return m;
}

void save_features_csv(const FeatureMatrix& features,
                       const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for write: " + path.string());
  os.precision(9);
  for (std::size_t t = 0; t < features.rows; ++t) {
    for (std::size_t d = 0; d < features.cols; ++d) {
      if (d > 0) os << ',';
      os << features.at(t, d);
    }
    os << '\n';
  }
  if (!os) throw IoError("short write: " + path.string());
}

FeatureMatrix load_features_auto(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? load_features_csv(path)
                                    : load_features(path);
}

void save_features_auto(const FeatureMatrix& features,
                        const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    save_features_csv(features, path);
  } else {
    save_features(features, path);
  }
}

FeatureMatrix normalize_features(const FeatureMatrix& features,
                                 bool per_dimension) {
  FeatureMatrix out = features;
  auto normalize_span = [](float* begin, std::size_t count,
                           std::size_t stride) {
    float lo = begin[0], hi = begin[0];
    for (std::size_t i = 0; i < count; ++i) {
      lo = std::min(lo, begin[i * stride]);
      hi = std::max(hi, begin[i * stride]);
    }
    if (hi > lo) {
      const double span = static_cast<double>(hi) - static_cast<double>(lo);
      for (std::size_t i = 0; i < count; ++i) {
        begin[i * stride] = static_cast<float>(
            2.0 * (static_cast<double>(begin[i * stride]) - lo) / span - 1.0);
      }
    } else {
      for (std::size_t i = 0; i < count; ++i) begin[i * stride] = 0.0f;
    }
  };

  if (per_dimension) {
    for (std::size_t d = 0; d < out.cols; ++d) {
      normalize_span(out.values.data() + d, out.rows, out.cols);
    }
  } else {
    normalize_span(out.values.data(), out.values.size(), 1);
  }
  return out;
}

double feature_mean(const FeatureMatrix& features) {
  double sum = 0.0;
  for (float v : features.values) sum += v;
  return sum / static_cast<double>(features.values.size());
}

}  // namespace spoofaug
