// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "spoofaug/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "spoofaug/errors.hpp"

namespace spoofaug {

namespace {

uint32_t read_u32le(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16le(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32le(std::vector<unsigned char>& out, uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

void put_u16le(std::vector<unsigned char>& out, uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + path.string());

  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (data.size() < 12 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
      std::memcmp(data.data() + 8, "WAVE", 4) != 0) {
    throw CorruptHeader("not a RIFF/WAVE file: " + path.string());
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  const unsigned char* pcm = nullptr;
  std::size_t pcm_bytes = 0;

  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const unsigned char* hdr = data.data() + pos;
    uint32_t chunk_size = read_u32le(hdr + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > data.size()) {
      throw CorruptHeader("truncated chunk in " + path.string());
    }
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw CorruptHeader("fmt chunk too small");
      format = read_u16le(data.data() + body);
      channels = read_u16le(data.data() + body + 2);
      sample_rate = read_u32le(data.data() + body + 4);
      bits = read_u16le(data.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      pcm = data.data() + body;
      pcm_bytes = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || pcm == nullptr) {
    throw CorruptHeader("missing fmt/data chunk in " + path.string());
  }
  if (format != 1) {  // WAVE_FORMAT_PCM
    throw UnsupportedFormat("non-PCM format tag " + std::to_string(format));
  }
  if (channels != 1) {
    throw UnsupportedFormat(std::to_string(channels) +
                            " channels; only mono is supported");
  }
  if (bits != 16 && bits != 24 && bits != 32) {
    throw UnsupportedFormat("unsupported bit depth " + std::to_string(bits));
  }
  if (sample_rate == 0) throw CorruptHeader("zero sample rate");

  const std::size_t bytes_per = bits / 8;
  const std::size_t n = pcm_bytes / bytes_per;
  const double full_scale = std::ldexp(1.0, bits - 1);  // 32768 for 16-bit

  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(sample_rate);
  buf.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char* s = pcm + i * bytes_per;
    int32_t v = 0;
    if (bits == 16) {
      v = static_cast<int16_t>(s[0] | (s[1] << 8));
    } else if (bits == 24) {
      v = static_cast<int32_t>((s[0] << 8) | (s[1] << 16) | (s[2] << 24)) >> 8;
    } else {
      v = static_cast<int32_t>(read_u32le(s));
    }
    buf.samples[i] = static_cast<double>(v) / full_scale;
  }
  return buf;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  if (buffer.empty()) throw EmptyBuffer("refusing to write empty buffer");

  const uint32_t n = static_cast<uint32_t>(buffer.size());
  const uint32_t byte_rate = static_cast<uint32_t>(buffer.sample_rate) * 2;
  const uint32_t data_bytes = n * 2;

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32le(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32le(out, 16);
  put_u16le(out, 1);  // PCM
  put_u16le(out, 1);  // mono
  put_u32le(out, static_cast<uint32_t>(buffer.sample_rate));
  put_u32le(out, byte_rate);
  put_u16le(out, 2);   // block align
  put_u16le(out, 16);  // bits per sample
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32le(out, data_bytes);

  for (double x : buffer.samples) {
    double clamped = std::clamp(x, -1.0, 1.0);
    long q = std::lround(clamped * 32768.0);
    q = std::clamp(q, -32768L, 32767L);
    put_u16le(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for write: " + path.string());
  os.write(reinterpret_cast<const char*>(out.data()),
           static_cast<std::streamsize>(out.size()));
  if (!os) throw IoError("short write: " + path.string());
}

}  // namespace spoofaug
