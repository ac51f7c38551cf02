// corpus.cpp

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

#include "mtsim/corpus.hpp"

#include <cmath>

#include "json.hpp"
#include "mtsim/error.hpp"
#include "mtsim/io.hpp"
#include "mtsim/text.hpp"

namespace mtsim {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Sex sex) { return sex == Sex::kMale ? "M" : "F"; }
std::string_view to_string(Language lang) { return lang == Language::kEn ? "en" : "de"; }

std::optional<Sex> parse_sex(std::string_view s) {
  if (s == "M") return Sex::kMale;
  if (s == "F") return Sex::kFemale;
  return std::nullopt;
}

std::optional<Language> parse_language(std::string_view s) {
  if (s == "en") return Language::kEn;
  if (s == "de") return Language::kDe;
  return std::nullopt;
}

std::string_view display_name(Sex sex) { return sex == Sex::kMale ? "male" : "female"; }
std::string_view display_name(Language lang) {
  return lang == Language::kEn ? "English" : "German";
}

SpeakerPool SpeakerPool::Build(std::vector<Utterance> utterances, int sample_rate,
                               fs::path base_dir) {
  if (utterances.empty()) throw Error(ErrorKind::kEmptyManifest, "no utterances");
  SpeakerPool pool;
  pool.sample_rate_ = sample_rate;
  pool.base_dir_ = std::move(base_dir);
  pool.utterances_ = std::move(utterances);
  for (size_t i = 0; i < pool.utterances_.size(); ++i) {
    const Utterance &u = pool.utterances_[i];
    if (u.sample_rate != sample_rate) {
      throw Error(ErrorKind::kSampleRateMismatch,
                  u.id + ": " + std::to_string(u.sample_rate) + " Hz, pool is " +
                      std::to_string(sample_rate) + " Hz");
    }
    if (!pool.utt_index_.emplace(u.id, i).second)
      throw Error(ErrorKind::kMalformedRecord, "duplicate utterance id '" + u.id + "'");
    auto [it, inserted] = pool.speaker_index_.emplace(u.speaker_id, pool.speakers_.size());
    if (inserted) {
      pool.speakers_.push_back({u.speaker_id, u.sex, u.language, {}});
    }
    Speaker &spk = pool.speakers_[it->second];
    if (spk.sex != u.sex || spk.language != u.language) {
      throw Error(ErrorKind::kInconsistentSpeakerAttributes,
                  u.speaker_id + ": utterance " + u.id + " has (" +
                      std::string(to_string(u.sex)) + ", " +
                      std::string(to_string(u.language)) + "), earlier (" +
                      std::string(to_string(spk.sex)) + ", " +
                      std::string(to_string(spk.language)) + ")");
    }
    spk.utterances.push_back(i);
  }
  return pool;
}

const Utterance *SpeakerPool::find_utterance(std::string_view id) const {
  auto it = utt_index_.find(std::string(id));
  return it == utt_index_.end() ? nullptr : &utterances_[it->second];
}

const SpeakerPool::Speaker *SpeakerPool::find_speaker(std::string_view id) const {
  auto it = speaker_index_.find(std::string(id));
  return it == speaker_index_.end() ? nullptr : &speakers_[it->second];
}

fs::path SpeakerPool::resolve_audio(const Utterance &utt) const {
  return resolve_relative(utt.audio_path, base_dir_);
}

Waveform SpeakerPool::load_audio(const Utterance &utt) const {
  return read_audio(resolve_audio(utt), sample_rate_);
}

namespace {

[[noreturn]] void Malformed(size_t line_no, const std::string &why) {
  throw Error(ErrorKind::kMalformedRecord, "line " + std::to_string(line_no) + ": " + why);
}

std::string RequireString(const json &j, const char *key, size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    Malformed(line_no, std::string("missing or non-string field '") + key + "'");
  return it->get<std::string>();
}

Utterance ParseUtterance(const json &j, size_t line_no) {
  Utterance u;
  u.id = RequireString(j, "id", line_no);
  u.audio_path = RequireString(j, "audio", line_no);
  u.speaker_id = RequireString(j, "speaker", line_no);
  const auto sex = parse_sex(RequireString(j, "sex", line_no));
  if (!sex) Malformed(line_no, "sex must be \"M\" or \"F\"");
  u.sex = *sex;
  const auto lang = parse_language(RequireString(j, "language", line_no));
  if (!lang) Malformed(line_no, "language must be \"en\" or \"de\"");
  u.language = *lang;
  u.transcript = RequireString(j, "text", line_no);
  if (u.id.empty() || u.speaker_id.empty() || u.audio_path.empty())
    Malformed(line_no, "empty id, speaker or audio");
  if (normalize_tokens(u.transcript).empty()) Malformed(line_no, "transcript has no words");

  auto dur = j.find("duration_sec");
  if (dur == j.end() || !dur->is_number()) Malformed(line_no, "missing numeric 'duration_sec'");
  u.duration_sec = dur->get<double>();
  if (!(u.duration_sec > 0.0) || !std::isfinite(u.duration_sec))
    Malformed(line_no, "duration_sec must be positive");

  auto rate = j.find("sample_rate");
  if (rate == j.end() || !rate->is_number_integer() || rate->get<int64_t>() <= 0)
    Malformed(line_no, "missing or invalid integer 'sample_rate'");
  u.sample_rate = rate->get<int>();
  return u;
}

}  // namespace

SpeakerPool load_manifest(const fs::path &path, int sample_rate) {
  const auto lines = read_jsonl(path, [](size_t line_no, const std::string &msg) {
    Malformed(line_no, msg);
  });
  std::vector<Utterance> utts;
  utts.reserve(lines.size());
  std::unordered_map<std::string, size_t> seen;
  for (const auto &line : lines) {
    Utterance u = ParseUtterance(line.value, line.line_no);
    if (!seen.emplace(u.id, line.line_no).second)
      Malformed(line.line_no, "duplicate id '" + u.id + "'");
    utts.push_back(std::move(u));
  }
  if (utts.empty()) throw Error(ErrorKind::kEmptyManifest, path.string());
  return SpeakerPool::Build(std::move(utts), sample_rate, path.parent_path());
}

void write_manifest(const SpeakerPool &pool, const fs::path &path) {
  std::vector<json> lines;
  lines.reserve(pool.utterances().size());
  for (const auto &u : pool.utterances()) {
    lines.push_back(json{{"id", u.id},
                         {"audio", u.audio_path},
                         {"speaker", u.speaker_id},
                         {"sex", to_string(u.sex)},
                         {"language", to_string(u.language)},
                         {"text", u.transcript},
                         {"duration_sec", u.duration_sec},
                         {"sample_rate", u.sample_rate}});
  }
  write_file_atomic(path, to_jsonl(lines));
}

PoolStats pool_stats(const SpeakerPool &pool) {
  PoolStats st;
  st.speaker_count = pool.speakers().size();
  st.utterance_count = pool.utterances().size();
  double total_sec = 0.0;
  std::map<Language, double> sec_by_lang;
  for (Language l : kAllLanguages) sec_by_lang[l] = 0.0;
  for (const auto &u : pool.utterances()) {
    total_sec += u.duration_sec;
    sec_by_lang[u.language] += u.duration_sec;
  }
  st.total_hours = total_sec / 3600.0;
  for (const auto &[lang, sec] : sec_by_lang) {
    st.hours_by_language[lang] = sec / 3600.0;
    st.language_share[lang] = total_sec > 0.0 ? sec / total_sec : 0.0;
  }
  return st;
}

}  // namespace mtsim
