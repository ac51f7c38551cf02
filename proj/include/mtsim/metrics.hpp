// mtsim/metrics.hpp

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

#ifndef MTSIM_METRICS_HPP_
#define MTSIM_METRICS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mtsim/text.hpp"

namespace mtsim {

/// Edit-distance decomposition against a reference.
///
/// wer = (S + D + I) / ref_words. With no reference words, wer is 0 when the
/// hypothesis is also empty and 1 otherwise; `zero_reference` flags that case.
struct WerReport {
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t ref_words = 0;
  double wer = 0.0;
  bool zero_reference = false;

  int64_t errors() const { return substitutions + deletions + insertions; }
  bool operator==(const WerReport &) const = default;
};

WerReport make_wer_report(int64_t substitutions, int64_t deletions, int64_t insertions,
                          int64_t ref_words);

/// Sums counts and recomputes wer.
WerReport operator+(const WerReport &a, const WerReport &b);

/// Word-level Levenshtein alignment. Among alignments with the fewest total
/// errors, the one with fewest substitutions and then fewest insertions is
/// reported.
WerReport word_edit_distance(std::span<const std::string> ref,
                             std::span<const std::string> hyp);

/// Normalizes both strings, splits on spaces and aligns.
WerReport single_wer(std::string_view ref, std::string_view hyp,
                     const NormalizationConfig &norm = {});

struct AssignmentResult {
  // (ref index, hyp index) over the padded segment lists, ref order.
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<WerReport> per_pair;
  WerReport total;
  size_t ref_segments = 0;  // before padding
  size_t hyp_segments = 0;
};

/// Multi-talker WER under the error-minimizing bijection between reference
/// and hypothesis segments. Both sides are split on the speaker-change token;
/// the shorter list is padded with empty segments; the pair cost is the raw
/// error count; total wer is total errors over total reference words.
AssignmentResult permutation_wer(std::string_view ref_sot, std::string_view hyp_sot,
                                 const NormalizationConfig &norm = {});

struct BestMatchResult {
  WerReport report;
  size_t matched_index = 0;
};

/// Lowest WER of a single-talker target against any hypothesis segment, ties
/// to the lowest index. An empty hypothesis counts as one empty segment.
/// Throws MultiSegmentTarget when `target` has more than one segment.
BestMatchResult best_match_wer(std::string_view target, std::string_view hyp_sot,
                               const NormalizationConfig &norm = {});

enum class ScoreMode { kSingle, kSotPermutation, kBestMatch };

std::string_view to_string(ScoreMode mode);
std::optional<ScoreMode> parse_score_mode(std::string_view s);

struct KeyedText {
  std::string id;
  std::string text;
};

struct SampleScore {
  std::string id;
  WerReport report;
  bool missing_hypothesis = false;
  // best_match only: references with several segments are not scored.
  bool skipped = false;
  size_t ref_segments = 0;
  size_t hyp_segments = 0;
  std::optional<size_t> matched_index;                     // best_match
  std::vector<std::pair<size_t, size_t>> assignment;       // sot_permutation
};

struct CorpusReport {
  ScoreMode mode = ScoreMode::kSotPermutation;
  WerReport total;      // micro-averaged
  double macro_wer = 0.0;  // mean per-sample wer over samples with reference words
  size_t scored = 0;
  size_t missing_hypotheses = 0;
  size_t skipped = 0;
  std::vector<SampleScore> samples;  // sorted by id
  // sot_permutation: (ref segment count, hyp segment count) -> samples.
  std::map<std::pair<size_t, size_t>, size_t> segment_count_confusion;
};

/// Scores every reference. A reference without a hypothesis is scored
/// against the empty string and counted. Throws DuplicateId (either side)
/// and UnknownHypothesisId.
CorpusReport score_corpus(const std::vector<KeyedText> &refs, const std::vector<KeyedText> &hyps,
                          ScoreMode mode, const NormalizationConfig &norm = {},
                          size_t jobs = 1);

nlohmann::json to_json(const WerReport &r);
nlohmann::json summary_json(const CorpusReport &report);
nlohmann::json to_json(const SampleScore &s);

/// Kaldi-style "%WER 12.34 [ 5 / 40, 1 ins, 2 del, 2 sub ]" plus extras.
std::string format_summary(const CorpusReport &report);

/// {id, hyp} records. Throws MalformedRecord.
std::vector<KeyedText> read_hypotheses(const std::filesystem::path &path);
void write_hypotheses(const std::vector<KeyedText> &hyps, const std::filesystem::path &path);

}  // namespace mtsim

#endif  // MTSIM_METRICS_HPP_
