// mixer.cpp

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

#include "mtsim/mixer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "mtsim/error.hpp"
#include "mtsim/parallel.hpp"

namespace mtsim {

namespace {

bool Allowed(const MixConfig &cfg, Language lang) {
  return cfg.allowed_languages.empty() ||
         std::find(cfg.allowed_languages.begin(), cfg.allowed_languages.end(), lang) !=
             cfg.allowed_languages.end();
}

template <typename T>
void Shuffle(std::vector<T> &v, RandomStream &rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.Index(i)]);
}

}  // namespace

MixtureRecord sample_mixture(const SpeakerPool &pool, size_t k, RandomStream &rng,
                             const MixConfig &cfg) {
  if (k == 0 || k > cfg.max_talkers) {
    throw Error(ErrorKind::kPlanInfeasible,
                "talker count " + std::to_string(k) + " outside [1, " +
                    std::to_string(cfg.max_talkers) + "]");
  }
  if (!(cfg.delta_min > 0.0) || cfg.delta_max < cfg.delta_min)
    throw Error(ErrorKind::kPlanInfeasible, "need 0 < delta_min <= delta_max");
  const int rate = pool.sample_rate();

  std::vector<size_t> eligible;
  for (size_t s = 0; s < pool.speakers().size(); ++s)
    if (Allowed(cfg, pool.speakers()[s].language)) eligible.push_back(s);

  std::vector<Language> required = cfg.required_languages;
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());
  for (Language lang : required) {
    const bool any = std::any_of(eligible.begin(), eligible.end(), [&](size_t s) {
      return pool.speakers()[s].language == lang;
    });
    if (!any || !Allowed(cfg, lang)) {
      throw Error(ErrorKind::kLanguageUnavailable,
                  "no eligible speaker for language " + std::string(to_string(lang)));
    }
  }
  if (required.size() > k) {
    throw Error(ErrorKind::kLanguageUnavailable,
                std::to_string(required.size()) + " required languages in a " +
                    std::to_string(k) + "-talker mixture");
  }
  if (eligible.size() < k) {
    throw Error(ErrorKind::kInsufficientSpeakers,
                std::to_string(eligible.size()) + " eligible speakers for k=" +
                    std::to_string(k));
  }

  // Positions (in start order) that must carry a given language.
  std::vector<size_t> positions(k);
  for (size_t i = 0; i < k; ++i) positions[i] = i;
  Shuffle(positions, rng);
  std::vector<std::optional<Language>> slot_lang(k);
  for (size_t r = 0; r < required.size(); ++r) slot_lang[positions[r]] = required[r];

  // Constrained slots first so free slots cannot exhaust a language.
  std::vector<size_t> fill_order;
  for (size_t i = 0; i < k; ++i)
    if (slot_lang[i]) fill_order.push_back(i);
  for (size_t i = 0; i < k; ++i)
    if (!slot_lang[i]) fill_order.push_back(i);

  std::vector<bool> used(pool.speakers().size(), false);
  std::vector<const Utterance *> chosen(k, nullptr);
  for (size_t slot : fill_order) {
    std::vector<size_t> candidates;
    for (size_t s : eligible) {
      if (used[s]) continue;
      if (slot_lang[slot] && pool.speakers()[s].language != *slot_lang[slot]) continue;
      candidates.push_back(s);
    }
    if (candidates.empty()) {
      throw Error(ErrorKind::kInsufficientSpeakers,
                  "not enough distinct speakers for k=" + std::to_string(k));
    }
    const size_t s = candidates[rng.Index(candidates.size())];
    used[s] = true;
    const auto &utts = pool.speakers()[s].utterances;
    chosen[slot] = &pool.utterances()[utts[rng.Index(utts.size())]];
  }

  MixtureRecord record;
  int64_t prev_start = 0;
  for (size_t i = 0; i < k; ++i) {
    int64_t start = 0;
    if (i > 0) {
      const double prev_dur = chosen[i - 1]->duration_sec;
      const double hi = std::max(cfg.delta_min, std::min(cfg.delta_max, prev_dur));
      const double delta = rng.Uniform(cfg.delta_min, hi);
      int64_t step = std::max<int64_t>(1, seconds_to_samples(delta, rate));
      if (cfg.delta_min < prev_dur) {
        const int64_t prev_len = seconds_to_samples(prev_dur, rate);
        step = std::min(step, std::max<int64_t>(1, prev_len - 1));
      }
      start = prev_start + step;
    }
    record.components.push_back(
        make_component(*chosen[i], static_cast<double>(start) / rate));
    prev_start = start;
  }
  return record;
}

Waveform render_mixture(MixtureRecord &record, const SpeakerPool &pool) {
  if (record.components.empty())
    throw Error(ErrorKind::kEmptyComponentList, "mixture '" + record.mixture_id + "'");
  const int rate = pool.sample_rate();
  std::vector<Waveform> sources;
  sources.reserve(record.components.size());
  for (const auto &c : record.components) {
    const Utterance *utt = pool.find_utterance(c.utterance_id);
    if (!utt) {
      throw Error(ErrorKind::kMalformedRecord, "mixture '" + record.mixture_id +
                                                   "' references unknown utterance '" +
                                                   c.utterance_id + "'");
    }
    Waveform w = pool.load_audio(*utt);
    const auto expected = static_cast<size_t>(seconds_to_samples(c.duration_sec, rate));
    const size_t diff = w.size() > expected ? w.size() - expected : expected - w.size();
    if (diff > 1) {
      throw Error(ErrorKind::kMalformedRecord,
                  c.utterance_id + ": audio has " + std::to_string(w.size()) +
                      " samples, manifest duration implies " + std::to_string(expected));
    }
    w.samples.resize(expected, 0.0);
    sources.push_back(std::move(w));
  }
  std::vector<OverlayInput> inputs;
  inputs.reserve(sources.size());
  for (size_t i = 0; i < sources.size(); ++i) {
    inputs.push_back({std::cref(sources[i]), record.components[i].start_sec,
                      record.components[i].utterance_id});
  }
  OverlayResult result = overlay(inputs);
  record.gain_applied = result.gain_applied;
  return std::move(result.mix);
}

namespace {

std::string MixtureId(size_t k, size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "k%zu-%06zu", k, index);
  return buf;
}

struct Variants {
  std::optional<MixtureRecord> en;
  std::optional<MixtureRecord> de;
};

double RecordHours(const MixtureRecord &r, int rate) {
  return static_cast<double>(mixture_length_samples(r, rate)) / rate / 3600.0;
}

}  // namespace

std::vector<MixtureRecord> simulate_corpus(const SpeakerPool &pool, const SimPlan &plan,
                                           uint64_t seed, size_t jobs) {
  const double p = plan.de_share;
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kPlanInfeasible, "de_share outside [0, 1]");
  if (plan.de_tolerance < 0.0) throw Error(ErrorKind::kPlanInfeasible, "negative tolerance");

  std::map<size_t, std::pair<std::optional<size_t>, std::optional<double>>> per_k;
  for (const auto &[k, n] : plan.counts) per_k[k].first = n;
  for (const auto &[k, h] : plan.hours) {
    if (!(h >= 0.0) || !std::isfinite(h))
      throw Error(ErrorKind::kPlanInfeasible, "invalid hours for k=" + std::to_string(k));
    per_k[k].second = h;
  }
  bool any = false;
  for (const auto &[k, target] : per_k) {
    if (k == 0 || k > plan.mix.max_talkers)
      throw Error(ErrorKind::kPlanInfeasible, "unsupported talker count k=" + std::to_string(k));
    if (target.first && target.second)
      throw Error(ErrorKind::kPlanInfeasible, "both count and hours given for k=" + std::to_string(k));
    if ((target.first && *target.first > 0) || (target.second && *target.second > 0.0)) any = true;
  }
  if (!any) throw Error(ErrorKind::kPlanInfeasible, "plan requests no mixtures");

  const bool need_en = p < 1.0;
  const bool need_de = p > 0.0;
  const int rate = pool.sample_rate();
  const RandomStream root = RandomStream(seed).Substream("simulate");

  std::vector<MixtureRecord> out;
  double total_hours = 0.0;
  double de_hours = 0.0;

  for (const auto &[k, target] : per_k) {
    MixConfig en_cfg = plan.mix;
    en_cfg.allowed_languages = {Language::kEn};
    en_cfg.required_languages.clear();
    MixConfig de_cfg = plan.mix;
    de_cfg.allowed_languages = {Language::kEn, Language::kDe};
    de_cfg.required_languages = k >= 2 ? std::vector<Language>{Language::kDe, Language::kEn}
                                       : std::vector<Language>{Language::kDe};
    const RandomStream k_stream = root.Substream(k);

    constexpr size_t kChunk = 256;
    size_t next_index = 0;
    double k_hours = 0.0;
    bool done = target.first ? *target.first == 0 : !(*target.second > 0.0);
    while (!done) {
      const size_t chunk = target.first ? std::min(kChunk, *target.first - next_index) : kChunk;
      std::vector<Variants> variants(chunk);
      parallel_for(chunk, jobs, [&](size_t c) {
        const RandomStream item = k_stream.Substream(next_index + c);
        if (need_en) {
          RandomStream rng = item.Substream("en");
          variants[c].en = sample_mixture(pool, k, rng, en_cfg);
        }
        if (need_de) {
          RandomStream rng = item.Substream("de");
          variants[c].de = sample_mixture(pool, k, rng, de_cfg);
        }
      });
      // Greedy choice keeps the running German share as close as possible to
      // the target; sequential over indices, so it does not depend on `jobs`.
      for (size_t c = 0; c < chunk && !done; ++c) {
        Variants &v = variants[c];
        bool pick_de;
        if (!v.en) {
          pick_de = true;
        } else if (!v.de) {
          pick_de = false;
        } else {
          const double h_en = RecordHours(*v.en, rate);
          const double h_de = RecordHours(*v.de, rate);
          const double err_en = std::fabs(de_hours / (total_hours + h_en) - p);
          const double err_de = std::fabs((de_hours + h_de) / (total_hours + h_de) - p);
          pick_de = err_de < err_en;
        }
        MixtureRecord rec = std::move(pick_de ? *v.de : *v.en);
        rec.mixture_id = MixtureId(k, next_index + c);
        rec.seed = seed;
        const double h = RecordHours(rec, rate);
        total_hours += h;
        k_hours += h;
        if (contains_language(rec, Language::kDe)) de_hours += h;
        out.push_back(std::move(rec));
        if (target.first) {
          done = next_index + c + 1 >= *target.first;
        } else {
          done = k_hours >= *target.second;
        }
      }
      next_index += chunk;
    }
  }

  const double achieved = total_hours > 0.0 ? de_hours / total_hours : 0.0;
  if (std::fabs(achieved - p) > plan.de_tolerance + 1e-12) {
    throw Error(ErrorKind::kPlanInfeasible,
                "German share " + std::to_string(achieved) + " outside " + std::to_string(p) +
                    " +/- " + std::to_string(plan.de_tolerance));
  }
  return out;
}

double overlap_ratio(const MixtureRecord &record, int sample_rate) {
  const int64_t total = mixture_length_samples(record, sample_rate);
  if (total <= 0 || record.components.size() < 2) return 0.0;
  std::vector<std::pair<int64_t, int>> events;
  for (const auto &c : record.components) {
    const int64_t s = seconds_to_samples(c.start_sec, sample_rate);
    const int64_t e = s + seconds_to_samples(c.duration_sec, sample_rate);
    if (e <= s) continue;
    events.emplace_back(s, +1);
    events.emplace_back(e, -1);
  }
  // Ends sort before starts at the same position: touching spans do not overlap.
  std::sort(events.begin(), events.end());
  int64_t covered = 0;
  int active = 0;
  int64_t last = 0;
  for (const auto &[pos, delta] : events) {
    if (active >= 2) covered += pos - last;
    active += delta;
    last = pos;
  }
  return static_cast<double>(covered) / static_cast<double>(total);
}

MixtureStats mixture_stats(const std::vector<MixtureRecord> &records, int sample_rate) {
  MixtureStats st;
  st.count = records.size();
  double total_sec = 0.0, de_sec = 0.0, speech_sec = 0.0;
  std::map<Language, double> lang_sec;
  for (Language l : kAllLanguages) lang_sec[l] = 0.0;
  double overlap_sum = 0.0;
  for (const auto &r : records) {
    const double sec =
        static_cast<double>(mixture_length_samples(r, sample_rate)) / sample_rate;
    total_sec += sec;
    if (contains_language(r, Language::kDe)) de_sec += sec;
    st.talker_histogram[r.talker_count()] += 1;
    st.hours_by_talkers[r.talker_count()] += sec / 3600.0;
    for (const auto &c : r.components) {
      lang_sec[c.language] += c.duration_sec;
      speech_sec += c.duration_sec;
    }
    const double ratio = overlap_ratio(r, sample_rate);
    st.overlap_ratios.push_back(ratio);
    overlap_sum += ratio;
    const size_t bin = std::min<size_t>(9, static_cast<size_t>(ratio * 10.0));
    st.overlap_histogram[bin] += 1;
  }
  st.total_hours = total_sec / 3600.0;
  st.de_share = total_sec > 0.0 ? de_sec / total_sec : 0.0;
  for (const auto &[l, s] : lang_sec)
    st.component_language_share[l] = speech_sec > 0.0 ? s / speech_sec : 0.0;
  st.mean_overlap = records.empty() ? 0.0 : overlap_sum / static_cast<double>(records.size());
  return st;
}

}  // namespace mtsim
