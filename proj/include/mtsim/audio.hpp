// mtsim/audio.hpp

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

#ifndef MTSIM_AUDIO_HPP_
#define MTSIM_AUDIO_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtsim {

constexpr int kDefaultSampleRate = 16000;

/// Mono audio. Samples are nominally in [-1, 1]; writing clamps to the
/// 16-bit range.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = kDefaultSampleRate;

  size_t size() const noexcept { return samples.size(); }
  double duration_sec() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  bool operator==(const Waveform &) const = default;
};

/// Seconds to a sample count or offset, rounding half up. Every offset is
/// converted once from its own seconds value, never accumulated.
int64_t seconds_to_samples(double seconds, int sample_rate);

/// Reads 16-bit mono PCM RIFF/WAVE. Integer samples map to x / 32768.
/// Throws UnsupportedFormat for anything else, SampleRateMismatch when
/// `expected_rate` is set and differs, IoError when unreadable.
Waveform read_audio(const std::filesystem::path &path,
                    std::optional<int> expected_rate = std::nullopt);

/// Writes 16-bit mono PCM via temp file + rename. Each sample is
/// round(x * 32768) clamped to [-32768, 32767]. Throws IoError.
void write_audio(const Waveform &wave, const std::filesystem::path &path);

/// Encoded RIFF/WAVE bytes, as written by write_audio.
std::string encode_wav(const Waveform &wave);

Waveform silence(double duration_sec, int sample_rate = kDefaultSampleRate);

/// Window [start, start + duration) of `wave`, zero-padded at the end when
/// the source is shorter. Throws StartBeyondEnd when start is at or past the
/// end of the source.
Waveform extract_clip(const Waveform &wave, double start_sec, double duration_sec);

struct OverlayInput {
  std::reference_wrapper<const Waveform> wave;
  double start_sec = 0.0;
  // Secondary sort key for the canonical summation order.
  std::string id;
};

struct OverlayResult {
  Waveform mix;
  // 1 / peak when the sum exceeded full scale, else 1.0.
  double gain_applied = 1.0;
};

/// Sums components at their offsets. Components are accumulated in
/// (start sample, id) order so the result does not depend on the order of
/// `components`. When the peak magnitude exceeds 1.0 the whole signal is
/// divided by that peak.
/// Throws EmptyComponentList, SampleRateMismatch.
OverlayResult overlay(std::span<const OverlayInput> components);

/// Throws SampleRateMismatch. An empty list gives an empty waveform at the
/// default rate.
Waveform concat(std::span<const Waveform> parts);

}  // namespace mtsim

#endif  // MTSIM_AUDIO_HPP_
