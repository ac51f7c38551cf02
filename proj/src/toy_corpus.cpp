// toy_corpus.cpp

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

#include "mtsim/toy_corpus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtsim/corpus.hpp"
#include "mtsim/io.hpp"
#include "mtsim/random.hpp"
#include "mtsim/text.hpp"

namespace mtsim {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kEnglishWords = {
    "the", "a", "and", "of", "to", "in", "was", "he", "she", "it", "that", "with",
    "morning", "evening", "garden", "window", "strawberry", "weather", "journey",
    "captain", "village", "silver", "harbour", "lantern", "mountain", "orchard",
    "whisper", "kitchen", "library", "blanket", "candle", "meadow", "thunder",
    "ribbon", "marble", "pepper", "saddle", "tunnel", "velvet", "wander", "yellow",
    "anchor", "basket", "castle", "dragon", "feather", "gentle", "hollow", "island",
    "jacket", "kettle", "ladder", "master", "needle", "orange", "pillow", "quarry",
    "rabbit", "shadow", "timber", "violin", "walnut", "bridge", "forest", "river",
    "stone", "bread", "green", "quiet", "light", "today", "house", "water", "little",
    "brother", "sister", "mother", "father", "winter", "summer", "autumn", "spring",
    "well-known", "o'clock", "twenty", "letter", "street", "market", "yesterday",
    "tomorrow", "answered", "remembered", "travelled", "listened", "believed"};

const std::vector<std::string> kGermanWords = {
    "der", "die", "das", "und", "ist", "ein", "mit", "auf", "nicht", "sehr",
    "Straße", "Grüße", "schön", "Mädchen", "Brücke", "fröhlich", "Frühling",
    "Gemüse", "Bäckerei", "Käsekuchen", "Schlüssel", "Übersetzung", "Wörterbuch",
    "heute", "morgen", "Fenster", "Garten", "Kirche", "Sommer", "Winter", "Wasser",
    "Himmel", "Abend", "Zeitung", "Bahnhof", "Flughafen", "Geschichte", "Nachbar",
    "Bruder", "Schwester", "Freundin", "wunderbar", "langsam", "schnell", "draußen",
    "gemütlich", "Überraschung", "Königin", "Spaziergang", "Regenschirm"};

std::string Capitalize(const std::string &w) {
  std::string out = w;
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 32);
  return out;
}

}  // namespace

fs::path make_toy_corpus(const fs::path &out_dir, const ToyCorpusConfig &cfg) {
  const RandomStream root = RandomStream(cfg.seed).Substream("toy-corpus");
  const int rate = cfg.sample_rate;
  std::vector<nlohmann::json> lines;

  struct SpeakerSpec {
    std::string id;
    Sex sex;
    Language lang;
    double f0;
  };
  std::vector<SpeakerSpec> speakers;
  for (Language lang : kAllLanguages) {
    const size_t n = lang == Language::kEn ? cfg.en_speakers : cfg.de_speakers;
    for (size_t s = 0; s < n; ++s) {
      const Sex sex = (s % 2 == 0) ? Sex::kMale : Sex::kFemale;
      char id[32];
      std::snprintf(id, sizeof(id), "%s%c%02zu", std::string(to_string(lang)).c_str(),
                    sex == Sex::kMale ? 'm' : 'f', s);
      RandomStream rng = root.Substream(id);
      const double f0 = sex == Sex::kMale ? rng.Uniform(95.0, 145.0) : rng.Uniform(180.0, 250.0);
      speakers.push_back({id, sex, lang, f0});
    }
  }

  for (const auto &spk : speakers) {
    const auto &vocab = spk.lang == Language::kEn ? kEnglishWords : kGermanWords;
    for (size_t u = 0; u < cfg.utterances_per_speaker; ++u) {
      RandomStream rng = root.Substream(spk.id).Substream(u);
      const size_t n_words =
          cfg.min_words + rng.Index(cfg.max_words - cfg.min_words + 1);
      std::vector<std::string> words;
      for (size_t w = 0; w < n_words; ++w) words.push_back(vocab[rng.Index(vocab.size())]);

      std::string text;
      for (size_t w = 0; w < words.size(); ++w) {
        if (w > 0) text += (w == words.size() / 2 && rng.Index(3) == 0) ? ", " : " ";
        text += w == 0 ? Capitalize(words[w]) : words[w];
      }
      text += rng.Index(4) == 0 ? "?" : ".";

      Waveform wave;
      wave.sample_rate = rate;
      auto append_silence = [&](double sec) {
        wave.samples.insert(wave.samples.end(),
                            static_cast<size_t>(seconds_to_samples(sec, rate)), 0.0);
      };
      append_silence(0.1);
      for (const auto &w : words) {
        const std::string norm = normalize_text(w);
        const double len_sec = 0.12 + 0.045 * static_cast<double>(utf8_length(norm));
        const auto n = static_cast<size_t>(seconds_to_samples(len_sec, rate));
        const double pitch = spk.f0 * (1.0 + static_cast<double>(RandomStream::HashName(norm) % 7) / 10.0);
        const double amp = 0.25 + 0.1 * rng.Uniform();
        for (size_t i = 0; i < n; ++i) {
          const double t = static_cast<double>(i) / rate;
          const double env = std::sin(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
          const double x = std::sin(2.0 * std::numbers::pi * pitch * t) +
                           0.4 * std::sin(4.0 * std::numbers::pi * pitch * t) +
                           0.2 * std::sin(6.0 * std::numbers::pi * pitch * t);
          wave.samples.push_back(amp * env * x / 1.6);
        }
        append_silence(0.06);
      }
      append_silence(0.1);

      char uid[48];
      std::snprintf(uid, sizeof(uid), "%s-%03zu", spk.id.c_str(), u);
      const std::string rel = std::string("audio/") + uid + ".wav";
      write_audio(wave, out_dir / rel);
      lines.push_back(nlohmann::json{{"id", uid},
                                     {"audio", rel},
                                     {"speaker", spk.id},
                                     {"sex", to_string(spk.sex)},
                                     {"language", to_string(spk.lang)},
                                     {"text", text},
                                     {"duration_sec", wave.duration_sec()},
                                     {"sample_rate", rate}});
    }
  }
  const fs::path manifest = out_dir / "manifest.jsonl";
  write_file_atomic(manifest, to_jsonl(lines));
  return manifest;
}

}  // namespace mtsim
