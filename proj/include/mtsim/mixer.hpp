// mtsim/mixer.hpp

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

#ifndef MTSIM_MIXER_HPP_
#define MTSIM_MIXER_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "mtsim/audio.hpp"
#include "mtsim/corpus.hpp"
#include "mtsim/mixture.hpp"
#include "mtsim/random.hpp"

namespace mtsim {

/// Controls how one mixture is drawn.
///
/// Start offsets: the first talker starts at 0; talker i starts
/// delta_i after talker i-1 with delta_i ~ Uniform[delta_min,
/// min(delta_max, duration of talker i-1)], snapped to the sample grid.
/// When delta_min is below the previous duration the snapped offset is kept
/// strictly inside the previous talker's span, so consecutive talkers always
/// overlap.
struct MixConfig {
  size_t max_talkers = 3;
  double delta_min = 0.5;
  double delta_max = std::numeric_limits<double>::infinity();
  // Languages speakers may be drawn from; empty means any.
  std::vector<Language> allowed_languages;
  // Each listed language gets at least one component.
  std::vector<Language> required_languages;
};

/// Draws k talkers from k distinct speakers and their start offsets.
/// The returned record has no id or audio path yet.
/// Throws InsufficientSpeakers, LanguageUnavailable.
MixtureRecord sample_mixture(const SpeakerPool &pool, size_t k, RandomStream &rng,
                             const MixConfig &cfg = {});

/// Sums the component audio at its offsets and stores the applied gain in
/// `record`. Component audio whose length differs from the recorded duration
/// by one sample is trimmed or zero-padded to the recorded duration; larger
/// differences throw MalformedRecord.
Waveform render_mixture(MixtureRecord &record, const SpeakerPool &pool);

/// How many mixtures to simulate.
///
/// For each k either `counts[k]` mixtures or, when `hours` has k, as many as
/// needed to reach that many hours. `de_share` is the target fraction of
/// audio hours in mixtures that contain German; mixtures with k >= 2 that
/// contain German also contain English.
struct SimPlan {
  std::map<size_t, size_t> counts;
  std::map<size_t, double> hours;
  double de_share = 0.0;
  double de_tolerance = 0.02;
  MixConfig mix;
};

/// Deterministic in (pool, plan, seed) and independent of `jobs`: mixture j
/// of size k uses its own sub-stream of seed. Ids are "k<k>-<j, 6 digits>",
/// output is sorted by id. Throws PlanInfeasible (empty plan, unreachable
/// share), InsufficientSpeakers, LanguageUnavailable.
std::vector<MixtureRecord> simulate_corpus(const SpeakerPool &pool, const SimPlan &plan,
                                           uint64_t seed, size_t jobs = 1);

/// Fraction of the mixture covered by two or more talkers (sample-exact).
double overlap_ratio(const MixtureRecord &record, int sample_rate);

struct MixtureStats {
  size_t count = 0;
  double total_hours = 0.0;
  std::map<size_t, size_t> talker_histogram;
  std::map<size_t, double> hours_by_talkers;
  // Hours of mixtures containing any German component / total hours.
  double de_share = 0.0;
  // Per-language share of component speech time.
  std::map<Language, double> component_language_share;
  // Ten bins of width 0.1; ratio 1.0 falls in the last bin.
  std::array<size_t, 10> overlap_histogram{};
  double mean_overlap = 0.0;
  std::vector<double> overlap_ratios;  // per record, input order
};

MixtureStats mixture_stats(const std::vector<MixtureRecord> &records,
                           int sample_rate = kDefaultSampleRate);

}  // namespace mtsim

#endif  // MTSIM_MIXER_HPP_
