// tests/unit/test_audio.cpp

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

#include "doctest.h"
#include "mtsim/audio.hpp"
#include "mtsim/error.hpp"
#include "mtsim/io.hpp"
#include "mtsim/random.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace mtsim;
using mtsim::testing::TempDir;

namespace {

Waveform Constant(double value, size_t n, int rate = kDefaultSampleRate) {
  Waveform w;
  w.sample_rate = rate;
  w.samples.assign(n, value);
  return w;
}

Waveform Ramp(size_t n) {
  Waveform w;
  for (size_t i = 0; i < n; ++i) w.samples.push_back(static_cast<double>(i % 1000) / 4096.0);
  return w;
}

std::string RawWav(uint16_t channels, uint16_t bits, uint32_t rate, size_t frames) {
  std::string b = "RIFF";
  auto u32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  auto u16 = [&](uint16_t v) {
    b.push_back(static_cast<char>(v & 0xFF));
    b.push_back(static_cast<char>(v >> 8));
  };
  const uint32_t data = static_cast<uint32_t>(frames * channels * bits / 8);
  u32(36 + data);
  b += "WAVEfmt ";
  u32(16);
  u16(1);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<uint16_t>(channels * bits / 8));
  u16(bits);
  b += "data";
  u32(data);
  b.append(data, '\0');
  return b;
}

}  // namespace

TEST_CASE("read_audio: duration, scaling, format errors") {
  TempDir dir;
  write_file_atomic(dir / "one_second.wav", RawWav(1, 16, 16000, 16000));
  const Waveform w = read_audio(dir / "one_second.wav");
  CHECK(w.size() == 16000);
  CHECK(w.duration_sec() == 1.0);

  std::string min_sample = RawWav(1, 16, 16000, 1);
  min_sample[44] = '\x00';
  min_sample[45] = '\x80';  // -32768 little-endian
  write_file_atomic(dir / "min.wav", min_sample);
  CHECK(read_audio(dir / "min.wav").samples.at(0) == -1.0);

  write_file_atomic(dir / "stereo.wav", RawWav(2, 16, 16000, 10));
  try {
    read_audio(dir / "stereo.wav");
    FAIL("expected UnsupportedFormat");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kUnsupportedFormat);
  }
  write_file_atomic(dir / "pcm8.wav", RawWav(1, 8, 16000, 10));
  CHECK_THROWS_AS(read_audio(dir / "pcm8.wav"), Error);
  write_file_atomic(dir / "junk.wav", "not a wave file at all");
  CHECK_THROWS_AS(read_audio(dir / "junk.wav"), Error);

  write_file_atomic(dir / "8k.wav", RawWav(1, 16, 8000, 10));
  try {
    read_audio(dir / "8k.wav", 16000);
    FAIL("expected SampleRateMismatch");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kSampleRateMismatch);
  }
  try {
    read_audio(dir / "missing.wav");
    FAIL("expected IoError");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kIoError);
  }
}

TEST_CASE("write_audio round trip") {
  TempDir dir;
  const Waveform zeros = silence(1.0);
  write_audio(zeros, dir / "z.wav");
  CHECK(read_audio(dir / "z.wav") == zeros);

  Waveform sine;
  for (int i = 0; i < 16000; ++i)
    sine.samples.push_back(std::sin(2.0 * std::numbers::pi * 440.0 * i / 16000.0));
  write_audio(sine, dir / "sine.wav");
  const Waveform back = read_audio(dir / "sine.wav");
  REQUIRE(back.size() == sine.size());
  double max_err = 0.0;
  for (size_t i = 0; i < sine.size(); ++i)
    max_err = std::max(max_err, std::fabs(back.samples[i] - sine.samples[i]));
  CHECK(max_err <= 1.0 / 32768.0);

  // Full scale +1.0 clamps to 32767.
  write_audio(Constant(1.0, 4), dir / "full.wav");
  CHECK(read_audio(dir / "full.wav").samples[0] == 32767.0 / 32768.0);
}

TEST_CASE("write_audio to an unwritable path") {
  TempDir dir;
  write_file_atomic(dir / "file", "x");
  try {
    write_audio(silence(0.1), dir / "file" / "sub" / "a.wav");
    FAIL("expected IoError");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kIoError);
  }
}

TEST_CASE("silence lengths") {
  CHECK(silence(3.0, 16000).size() == 48000);
  CHECK(silence(0.0, 16000).size() == 0);
  CHECK(silence(0.0001, 16000).size() == 2);  // 1.6 rounds half up to 2
  CHECK(seconds_to_samples(0.5 / 16000.0, 16000) == 1);
  for (double x : silence(0.25).samples) CHECK(x == 0.0);
}

TEST_CASE("extract_clip windows and padding") {
  const Waveform src = Ramp(5 * 16000);
  const Waveform clip = extract_clip(src, 1.0, 3.0);
  REQUIRE(clip.size() == 48000);
  CHECK(std::equal(clip.samples.begin(), clip.samples.end(), src.samples.begin() + 16000));

  const Waveform short_src = Ramp(2 * 16000);
  const Waveform padded = extract_clip(short_src, 0.0, 3.0);
  REQUIRE(padded.size() == 48000);
  CHECK(std::equal(short_src.samples.begin(), short_src.samples.end(), padded.samples.begin()));
  CHECK(std::all_of(padded.samples.begin() + 32000, padded.samples.end(),
                    [](double x) { return x == 0.0; }));

  try {
    extract_clip(src, 6.0, 1.0);
    FAIL("expected StartBeyondEnd");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kStartBeyondEnd);
  }
  CHECK_THROWS_AS(extract_clip(src, 5.0, 1.0), Error);
}

TEST_CASE("overlay examples") {
  const Waveform a = Constant(0.1, 3 * 16000);
  const Waveform b = Constant(0.2, 2 * 16000);
  const std::vector<OverlayInput> in = {{std::cref(a), 0.0, "a"}, {std::cref(b), 2.5, "b"}};
  const OverlayResult r = overlay(in);
  CHECK(r.mix.size() == 72000);
  CHECK(r.gain_applied == 1.0);
  CHECK(r.mix.samples[0] == 0.1);
  CHECK(r.mix.samples[45000] == doctest::Approx(0.3));
  CHECK(r.mix.samples[60000] == 0.2);

  const Waveform loud = Constant(0.8, 100);
  const std::vector<OverlayInput> both = {{std::cref(loud), 0.0, "x"}, {std::cref(loud), 0.0, "y"}};
  const OverlayResult n = overlay(both);
  CHECK(n.gain_applied == 0.625);
  CHECK(*std::max_element(n.mix.samples.begin(), n.mix.samples.end()) == 1.0);

  const Waveform single = Ramp(1000);
  const std::vector<OverlayInput> one = {{std::cref(single), 0.0, "s"}};
  const OverlayResult id = overlay(one);
  CHECK(id.mix == single);
  CHECK(id.gain_applied == 1.0);

  try {
    overlay(std::vector<OverlayInput>{});
    FAIL("expected EmptyComponentList");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kEmptyComponentList);
  }
  const Waveform other_rate = Constant(0.1, 10, 8000);
  const std::vector<OverlayInput> mixed = {{std::cref(a), 0.0, "a"},
                                           {std::cref(other_rate), 0.0, "o"}};
  CHECK_THROWS_AS(overlay(mixed), Error);
}

TEST_CASE("overlay is invariant to component order, bit for bit") {
  RandomStream rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Waveform> waves(2 + rng.Index(3));
    std::vector<double> starts;
    for (auto &w : waves) {
      const size_t n = 100 + rng.Index(400);
      for (size_t i = 0; i < n; ++i) w.samples.push_back(rng.Uniform(-0.6, 0.6));
      starts.push_back(static_cast<double>(rng.Index(300)) / 16000.0);
    }
    std::vector<OverlayInput> in;
    for (size_t i = 0; i < waves.size(); ++i)
      in.push_back({std::cref(waves[i]), starts[i], "c" + std::to_string(i)});
    const OverlayResult ref = overlay(in);
    std::reverse(in.begin(), in.end());
    const OverlayResult rev = overlay(in);
    CHECK(rev.mix == ref.mix);
    CHECK(rev.gain_applied == ref.gain_applied);
  }
}

TEST_CASE("overlay of disjoint supports copies each input sample") {
  const Waveform a = Ramp(16000);
  const Waveform b = Constant(-0.25, 8000);
  const std::vector<OverlayInput> in = {{std::cref(a), 0.0, "a"}, {std::cref(b), 1.5, "b"}};
  const OverlayResult r = overlay(in);
  REQUIRE(r.mix.size() == 16000 + 8000 + 8000);
  CHECK(std::equal(a.samples.begin(), a.samples.end(), r.mix.samples.begin()));
  for (size_t i = 16000; i < 24000; ++i) CHECK(r.mix.samples[i] == 0.0);
  CHECK(std::equal(b.samples.begin(), b.samples.end(), r.mix.samples.begin() + 24000));
}

TEST_CASE("clip then overlay at the original offset restores the window") {
  const Waveform src = Ramp(4 * 16000);
  const Waveform clip = extract_clip(src, 1.25, 2.0);
  const Waveform base = silence(4.0);
  const std::vector<OverlayInput> in = {{std::cref(base), 0.0, "base"},
                                        {std::cref(clip), 1.25, "clip"}};
  const OverlayResult r = overlay(in);
  CHECK(std::equal(r.mix.samples.begin() + 20000, r.mix.samples.begin() + 52000,
                   src.samples.begin() + 20000));
}

TEST_CASE("concat") {
  const std::vector<Waveform> parts = {silence(3.0), silence(3.0), silence(10.0)};
  CHECK(concat(parts).duration_sec() == 16.0);
  CHECK(concat(std::vector<Waveform>{}).size() == 0);
  const Waveform w = Ramp(777);
  CHECK(concat(std::vector<Waveform>{w}) == w);
  const std::vector<Waveform> mismatch = {silence(1.0, 16000), silence(1.0, 8000)};
  try {
    concat(mismatch);
    FAIL("expected SampleRateMismatch");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kSampleRateMismatch);
  }
}
