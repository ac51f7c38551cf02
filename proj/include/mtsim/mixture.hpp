// mtsim/mixture.hpp

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

#ifndef MTSIM_MIXTURE_HPP_
#define MTSIM_MIXTURE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtsim/corpus.hpp"

namespace mtsim {

/// One talker inside a mixture. Carries a copy of the source utterance's
/// attributes so mixture metadata is self-contained.
struct MixtureComponent {
  std::string utterance_id;
  std::string speaker_id;
  Sex sex = Sex::kMale;
  Language language = Language::kEn;
  double start_sec = 0.0;
  double duration_sec = 0.0;
  std::string text;

  bool operator==(const MixtureComponent &) const = default;
};

/// A simulated multi-talker mixture. Components are in start-time order,
/// which is also the SOT speaker order.
struct MixtureRecord {
  std::string mixture_id;
  std::vector<MixtureComponent> components;
  std::string audio_path;  // relative to the metadata file once rendered
  double gain_applied = 1.0;
  uint64_t seed = 0;

  size_t talker_count() const { return components.size(); }
  bool operator==(const MixtureRecord &) const = default;
};

MixtureComponent make_component(const Utterance &utt, double start_sec);

/// Length in samples: max over components of start offset + duration, each
/// converted from seconds independently.
int64_t mixture_length_samples(const MixtureRecord &record, int sample_rate);

/// Checks the record invariants (non-empty, distinct speakers, strictly
/// increasing starts, start >= 0, at most `max_talkers`). Throws
/// MalformedRecord describing the first violation.
void validate_record(const MixtureRecord &record, size_t max_talkers = 3);

bool contains_language(const MixtureRecord &record, Language lang);

nlohmann::json to_json(const MixtureRecord &record);
/// Throws MalformedRecord with `line_no` on schema errors.
MixtureRecord mixture_from_json(const nlohmann::json &j, size_t line_no = 0);

std::vector<MixtureRecord> read_mixtures(const std::filesystem::path &path);
void write_mixtures(const std::vector<MixtureRecord> &records,
                    const std::filesystem::path &path);

}  // namespace mtsim

#endif  // MTSIM_MIXTURE_HPP_
