// mixture.cpp

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

#include "mtsim/mixture.hpp"

#include <algorithm>
#include <set>

#include "mtsim/error.hpp"
#include "mtsim/io.hpp"

namespace mtsim {

using nlohmann::json;

MixtureComponent make_component(const Utterance &utt, double start_sec) {
  return {utt.id, utt.speaker_id, utt.sex, utt.language, start_sec, utt.duration_sec,
          utt.transcript};
}

int64_t mixture_length_samples(const MixtureRecord &record, int sample_rate) {
  int64_t len = 0;
  for (const auto &c : record.components) {
    len = std::max(len, seconds_to_samples(c.start_sec, sample_rate) +
                            seconds_to_samples(c.duration_sec, sample_rate));
  }
  return len;
}

void validate_record(const MixtureRecord &record, size_t max_talkers) {
  const std::string where = "mixture '" + record.mixture_id + "': ";
  if (record.components.empty())
    throw Error(ErrorKind::kMalformedRecord, where + "no components");
  if (record.components.size() > max_talkers) {
    throw Error(ErrorKind::kMalformedRecord,
                where + std::to_string(record.components.size()) + " talkers, max " +
                    std::to_string(max_talkers));
  }
  std::set<std::string> speakers;
  for (size_t i = 0; i < record.components.size(); ++i) {
    const auto &c = record.components[i];
    if (!speakers.insert(c.speaker_id).second)
      throw Error(ErrorKind::kMalformedRecord, where + "speaker repeated: " + c.speaker_id);
    if (c.start_sec < 0.0) throw Error(ErrorKind::kMalformedRecord, where + "negative start");
    if (i > 0 && !(c.start_sec > record.components[i - 1].start_sec))
      throw Error(ErrorKind::kMalformedRecord, where + "start times not strictly increasing");
  }
}

bool contains_language(const MixtureRecord &record, Language lang) {
  return std::any_of(record.components.begin(), record.components.end(),
                     [lang](const MixtureComponent &c) { return c.language == lang; });
}

json to_json(const MixtureRecord &record) {
  json comps = json::array();
  for (const auto &c : record.components) {
    comps.push_back(json{{"utterance_id", c.utterance_id},
                         {"speaker", c.speaker_id},
                         {"sex", to_string(c.sex)},
                         {"language", to_string(c.language)},
                         {"start_sec", c.start_sec},
                         {"duration_sec", c.duration_sec},
                         {"text", c.text}});
  }
  return json{{"mixture_id", record.mixture_id},
              {"audio", record.audio_path},
              {"seed", record.seed},
              {"gain", record.gain_applied},
              {"components", std::move(comps)}};
}

namespace {

[[noreturn]] void Bad(size_t line_no, const std::string &why) {
  throw Error(ErrorKind::kMalformedRecord, "line " + std::to_string(line_no) + ": " + why);
}

template <typename T>
T Field(const json &j, const char *key, size_t line_no) {
  auto it = j.find(key);
  if (it == j.end()) Bad(line_no, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    Bad(line_no, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

MixtureRecord mixture_from_json(const json &j, size_t line_no) {
  MixtureRecord r;
  r.mixture_id = Field<std::string>(j, "mixture_id", line_no);
  r.audio_path = Field<std::string>(j, "audio", line_no);
  r.seed = Field<uint64_t>(j, "seed", line_no);
  r.gain_applied = Field<double>(j, "gain", line_no);
  auto comps = j.find("components");
  if (comps == j.end() || !comps->is_array()) Bad(line_no, "missing 'components' array");
  for (const auto &cj : *comps) {
    if (!cj.is_object()) Bad(line_no, "component is not an object");
    MixtureComponent c;
    c.utterance_id = Field<std::string>(cj, "utterance_id", line_no);
    c.speaker_id = Field<std::string>(cj, "speaker", line_no);
    const auto sex = parse_sex(Field<std::string>(cj, "sex", line_no));
    const auto lang = parse_language(Field<std::string>(cj, "language", line_no));
    if (!sex || !lang) Bad(line_no, "bad sex or language");
    c.sex = *sex;
    c.language = *lang;
    c.start_sec = Field<double>(cj, "start_sec", line_no);
    c.duration_sec = Field<double>(cj, "duration_sec", line_no);
    c.text = Field<std::string>(cj, "text", line_no);
    r.components.push_back(std::move(c));
  }
  return r;
}

std::vector<MixtureRecord> read_mixtures(const std::filesystem::path &path) {
  const auto lines = read_jsonl(path, [](size_t line_no, const std::string &msg) {
    Bad(line_no, msg);
  });
  std::vector<MixtureRecord> out;
  out.reserve(lines.size());
  for (const auto &line : lines) {
    out.push_back(mixture_from_json(line.value, line.line_no));
    try {
      validate_record(out.back(), out.back().components.size());
    } catch (const Error &e) {
      Bad(line.line_no, e.what());
    }
  }
  return out;
}

void write_mixtures(const std::vector<MixtureRecord> &records,
                    const std::filesystem::path &path) {
  std::vector<json> lines;
  lines.reserve(records.size());
  for (const auto &r : records) lines.push_back(to_json(r));
  write_file_atomic(path, to_jsonl(lines));
}

}  // namespace mtsim
