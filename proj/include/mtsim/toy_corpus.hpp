// mtsim/toy_corpus.hpp

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

#ifndef MTSIM_TOY_CORPUS_HPP_
#define MTSIM_TOY_CORPUS_HPP_

#include <cstdint>
#include <filesystem>

#include "mtsim/audio.hpp"

namespace mtsim {

/// A tiny synthetic corpus: each word is a short harmonic tone burst whose
/// pitch depends on the speaker and the word, with scripted transcripts
/// drawn from small English and German vocabularies. Speakers alternate
/// M/F within each language.
struct ToyCorpusConfig {
  size_t en_speakers = 8;
  size_t de_speakers = 4;
  size_t utterances_per_speaker = 6;
  size_t min_words = 5;
  size_t max_words = 10;
  int sample_rate = kDefaultSampleRate;
  uint64_t seed = 0;
};

/// Writes <out_dir>/audio/*.wav and <out_dir>/manifest.jsonl and returns the
/// manifest path. Output is a pure function of the config.
std::filesystem::path make_toy_corpus(const std::filesystem::path &out_dir,
                                      const ToyCorpusConfig &cfg = {});

}  // namespace mtsim

#endif  // MTSIM_TOY_CORPUS_HPP_
