// audio.cpp

// Copyright 2026  The mtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mtsim/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "mtsim/error.hpp"
#include "mtsim/io.hpp"

namespace mtsim {

namespace fs = std::filesystem;

namespace {

uint32_t ReadU32(const std::string &b, size_t off) {
  return static_cast<uint32_t>(static_cast<unsigned char>(b[off])) |
         static_cast<uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8 |
         static_cast<uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16 |
         static_cast<uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24;
}

uint16_t ReadU16(const std::string &b, size_t off) {
  return static_cast<uint16_t>(static_cast<unsigned char>(b[off]) |
                               static_cast<unsigned char>(b[off + 1]) << 8);
}

void PutU32(std::string &b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU16(std::string &b, uint16_t v) {
  b.push_back(static_cast<char>(v & 0xFF));
  b.push_back(static_cast<char>((v >> 8) & 0xFF));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatExtensible = 0xFFFE;

int16_t Quantize(double x) {
  const double scaled = std::floor(x * 32768.0 + 0.5);
  return static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

}  // namespace

int64_t seconds_to_samples(double seconds, int sample_rate) {
  return static_cast<int64_t>(std::floor(seconds * sample_rate + 0.5));
}

Waveform read_audio(const fs::path &path, std::optional<int> expected_rate) {
  const std::string bytes = read_file(path);
  const std::string where = path.string();
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw Error(ErrorKind::kUnsupportedFormat, where + ": not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  uint16_t channels = 0, bits = 0, format = 0;
  uint32_t rate = 0;
  size_t data_off = 0, data_len = 0;
  bool have_data = false;
  size_t off = 12;
  while (off + 8 <= bytes.size()) {
    const std::string id = bytes.substr(off, 4);
    const uint32_t len = ReadU32(bytes, off + 4);
    const size_t body = off + 8;
    if (body + len > bytes.size()) {
      // Tolerate a truncated data chunk length from streaming writers.
      if (id == "data") {
        data_off = body;
        data_len = bytes.size() - body;
        have_data = true;
      }
      break;
    }
    if (id == "fmt ") {
      if (len < 16) throw Error(ErrorKind::kUnsupportedFormat, where + ": short fmt chunk");
      format = ReadU16(bytes, body);
      channels = ReadU16(bytes, body + 2);
      rate = ReadU32(bytes, body + 4);
      bits = ReadU16(bytes, body + 14);
      if (format == kFormatExtensible && len >= 26) format = ReadU16(bytes, body + 24);
      have_fmt = true;
    } else if (id == "data") {
      data_off = body;
      data_len = len;
      have_data = true;
    }
    off = body + len + (len & 1);
  }
  if (!have_fmt || !have_data)
    throw Error(ErrorKind::kUnsupportedFormat, where + ": missing fmt or data chunk");
  if (format != kFormatPcm || bits != 16)
    throw Error(ErrorKind::kUnsupportedFormat, where + ": only 16-bit integer PCM is supported");
  if (channels != 1)
    throw Error(ErrorKind::kUnsupportedFormat,
                where + ": expected mono, got " + std::to_string(channels) + " channels");
  if (expected_rate && static_cast<int>(rate) != *expected_rate) {
    throw Error(ErrorKind::kSampleRateMismatch,
                where + ": " + std::to_string(rate) + " Hz, expected " +
                    std::to_string(*expected_rate));
  }
  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  const size_t n = data_len / 2;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const auto v = static_cast<int16_t>(ReadU16(bytes, data_off + 2 * i));
    w.samples[i] = static_cast<double>(v) / 32768.0;
  }
  return w;
}

std::string encode_wav(const Waveform &wave) {
  const uint32_t data_len = static_cast<uint32_t>(wave.samples.size() * 2);
  std::string b;
  b.reserve(44 + data_len);
  b += "RIFF";
  PutU32(b, 36 + data_len);
  b += "WAVE";
  b += "fmt ";
  PutU32(b, 16);
  PutU16(b, kFormatPcm);
  PutU16(b, 1);
  PutU32(b, static_cast<uint32_t>(wave.sample_rate));
  PutU32(b, static_cast<uint32_t>(wave.sample_rate) * 2);
  PutU16(b, 2);
  PutU16(b, 16);
  b += "data";
  PutU32(b, data_len);
  for (double x : wave.samples) PutU16(b, static_cast<uint16_t>(Quantize(x)));
  return b;
}

void write_audio(const Waveform &wave, const fs::path &path) {
  write_file_atomic(path, encode_wav(wave));
}

Waveform silence(double duration_sec, int sample_rate) {
  if (duration_sec < 0.0) throw std::invalid_argument("silence: negative duration");
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(static_cast<size_t>(seconds_to_samples(duration_sec, sample_rate)), 0.0);
  return w;
}

Waveform extract_clip(const Waveform &wave, double start_sec, double duration_sec) {
  if (start_sec < 0.0 || duration_sec < 0.0)
    throw std::invalid_argument("extract_clip: negative start or duration");
  const auto start = static_cast<size_t>(seconds_to_samples(start_sec, wave.sample_rate));
  if (start >= wave.samples.size()) {
    throw Error(ErrorKind::kStartBeyondEnd,
                "clip start " + std::to_string(start_sec) + " s is past source end " +
                    std::to_string(wave.duration_sec()) + " s");
  }
  const auto len = static_cast<size_t>(seconds_to_samples(duration_sec, wave.sample_rate));
  Waveform clip;
  clip.sample_rate = wave.sample_rate;
  clip.samples.assign(len, 0.0);
  const size_t avail = std::min(len, wave.samples.size() - start);
  std::copy_n(wave.samples.begin() + static_cast<std::ptrdiff_t>(start), avail,
              clip.samples.begin());
  return clip;
}

OverlayResult overlay(std::span<const OverlayInput> components) {
  if (components.empty()) throw Error(ErrorKind::kEmptyComponentList, "overlay of nothing");
  const int rate = components.front().wave.get().sample_rate;
  struct Placed {
    int64_t offset;
    const OverlayInput *input;
  };
  std::vector<Placed> placed;
  placed.reserve(components.size());
  size_t length = 0;
  for (const auto &c : components) {
    if (c.wave.get().sample_rate != rate) {
      throw Error(ErrorKind::kSampleRateMismatch,
                  "overlay component '" + c.id + "' at " +
                      std::to_string(c.wave.get().sample_rate) + " Hz, expected " +
                      std::to_string(rate));
    }
    if (c.start_sec < 0.0) throw std::invalid_argument("overlay: negative start");
    const int64_t offset = seconds_to_samples(c.start_sec, rate);
    placed.push_back({offset, &c});
    length = std::max(length, static_cast<size_t>(offset) + c.wave.get().size());
  }
  std::stable_sort(placed.begin(), placed.end(), [](const Placed &a, const Placed &b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.input->id < b.input->id;
  });

  OverlayResult result;
  result.mix.sample_rate = rate;
  result.mix.samples.assign(length, 0.0);
  for (const auto &p : placed) {
    const auto &src = p.input->wave.get().samples;
    double *dst = result.mix.samples.data() + p.offset;
    for (size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
  }
  double peak = 0.0;
  for (double x : result.mix.samples) peak = std::max(peak, std::fabs(x));
  if (peak > 1.0) {
    // Divide rather than multiply by 1/peak so the peak lands on exactly 1.0.
    for (double &x : result.mix.samples) x /= peak;
    result.gain_applied = 1.0 / peak;
  }
  return result;
}

Waveform concat(std::span<const Waveform> parts) {
  Waveform out;
  if (parts.empty()) return out;
  out.sample_rate = parts.front().sample_rate;
  size_t total = 0;
  for (const auto &p : parts) {
    if (p.sample_rate != out.sample_rate) {
      throw Error(ErrorKind::kSampleRateMismatch,
                  "concat part at " + std::to_string(p.sample_rate) + " Hz, expected " +
                      std::to_string(out.sample_rate));
    }
    total += p.size();
  }
  out.samples.reserve(total);
  for (const auto &p : parts) out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
  return out;
}

}  // namespace mtsim
