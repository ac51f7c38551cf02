// mtsim/corpus.hpp

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

#ifndef MTSIM_CORPUS_HPP_
#define MTSIM_CORPUS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtsim/audio.hpp"

namespace mtsim {

enum class Sex { kMale, kFemale };
enum class Language { kEn, kDe };

inline constexpr Language kAllLanguages[] = {Language::kEn, Language::kDe};

std::string_view to_string(Sex sex);
std::string_view to_string(Language lang);
std::optional<Sex> parse_sex(std::string_view s);
std::optional<Language> parse_language(std::string_view s);
// "male"/"female", "English"/"German": the words used in instructions.
std::string_view display_name(Sex sex);
std::string_view display_name(Language lang);

/// One single-talker source recording.
struct Utterance {
  std::string id;
  std::string audio_path;  // as written in the manifest
  std::string speaker_id;
  Sex sex = Sex::kMale;
  Language language = Language::kEn;
  std::string transcript;
  double duration_sec = 0.0;
  int sample_rate = kDefaultSampleRate;

  bool operator==(const Utterance &) const = default;
};

/// Utterances grouped by speaker. Immutable once built, so a pool can be
/// shared between threads.
class SpeakerPool {
 public:
  struct Speaker {
    std::string id;
    Sex sex;
    Language language;
    std::vector<size_t> utterances;  // indices into utterances(), input order
  };

  /// Validates and indexes `utterances` (kept in the given order).
  /// `base_dir` anchors relative audio paths.
  /// Throws EmptyManifest, MalformedRecord (duplicate id),
  /// InconsistentSpeakerAttributes, SampleRateMismatch.
  static SpeakerPool Build(std::vector<Utterance> utterances,
                           int sample_rate = kDefaultSampleRate,
                           std::filesystem::path base_dir = {});

  const std::vector<Utterance> &utterances() const { return utterances_; }
  // Speakers in order of first appearance.
  const std::vector<Speaker> &speakers() const { return speakers_; }
  int sample_rate() const { return sample_rate_; }
  const std::filesystem::path &base_dir() const { return base_dir_; }

  const Utterance *find_utterance(std::string_view id) const;
  const Speaker *find_speaker(std::string_view id) const;
  std::filesystem::path resolve_audio(const Utterance &utt) const;

  /// Reads the utterance's audio at the pool rate.
  Waveform load_audio(const Utterance &utt) const;

 private:
  std::vector<Utterance> utterances_;
  std::vector<Speaker> speakers_;
  std::unordered_map<std::string, size_t> utt_index_;
  std::unordered_map<std::string, size_t> speaker_index_;
  int sample_rate_ = kDefaultSampleRate;
  std::filesystem::path base_dir_;
};

/// Parses a line-delimited manifest. Relative audio paths are resolved
/// against the manifest's directory. Unknown fields are ignored.
/// Throws MalformedRecord (with the line number), plus the Build errors and
/// IoError.
SpeakerPool load_manifest(const std::filesystem::path &path,
                          int sample_rate = kDefaultSampleRate);

/// Writes the pool's utterances in pool order, one record per line.
void write_manifest(const SpeakerPool &pool, const std::filesystem::path &path);

struct PoolStats {
  double total_hours = 0.0;
  std::map<Language, double> hours_by_language;
  std::map<Language, double> language_share;  // by hours; sums to 1
  size_t speaker_count = 0;
  size_t utterance_count = 0;
};

PoolStats pool_stats(const SpeakerPool &pool);

}  // namespace mtsim

#endif  // MTSIM_CORPUS_HPP_
