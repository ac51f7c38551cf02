// metrics.cpp

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

#include "mtsim/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>
#include <unordered_map>

#include "mtsim/assignment.hpp"
#include "mtsim/error.hpp"
#include "mtsim/io.hpp"
#include "mtsim/parallel.hpp"
#include "mtsim/sot.hpp"

namespace mtsim {

using nlohmann::json;

WerReport make_wer_report(int64_t substitutions, int64_t deletions, int64_t insertions,
                          int64_t ref_words) {
  WerReport r{substitutions, deletions, insertions, ref_words, 0.0, ref_words == 0};
  const int64_t errors = r.errors();
  if (ref_words > 0) {
    r.wer = static_cast<double>(errors) / static_cast<double>(ref_words);
  } else {
    r.wer = errors > 0 ? 1.0 : 0.0;
  }
  return r;
}

WerReport operator+(const WerReport &a, const WerReport &b) {
  return make_wer_report(a.substitutions + b.substitutions, a.deletions + b.deletions,
                         a.insertions + b.insertions, a.ref_words + b.ref_words);
}

namespace {

struct Cell {
  int64_t total = 0;
  int64_t sub = 0;
  int64_t ins = 0;
  int64_t del = 0;

  // Fewest errors, then fewest substitutions, then fewest insertions.
  bool operator<(const Cell &o) const {
    return std::tie(total, sub, ins) < std::tie(o.total, o.sub, o.ins);
  }
};

}  // namespace

WerReport word_edit_distance(std::span<const std::string> ref,
                             std::span<const std::string> hyp) {
  const size_t m = ref.size(), n = hyp.size();
  // prev[j]: best alignment of ref[0, i-1) against hyp[0, j).
  std::vector<Cell> prev(n + 1), cur(n + 1);
  for (size_t j = 0; j <= n; ++j) {
    prev[j] = {static_cast<int64_t>(j), 0, static_cast<int64_t>(j), 0};
  }
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = {static_cast<int64_t>(i), 0, 0, static_cast<int64_t>(i)};
    for (size_t j = 1; j <= n; ++j) {
      Cell diag = prev[j - 1];
      if (ref[i - 1] != hyp[j - 1]) {
        ++diag.total;
        ++diag.sub;
      }
      Cell del = prev[j];
      ++del.total;
      ++del.del;
      Cell ins = cur[j - 1];
      ++ins.total;
      ++ins.ins;
      Cell best = diag;
      if (del < best) best = del;
      if (ins < best) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell &end = prev[n];
  return make_wer_report(end.sub, end.del, end.ins, static_cast<int64_t>(m));
}

WerReport single_wer(std::string_view ref, std::string_view hyp,
                     const NormalizationConfig &norm) {
  const auto r = normalize_tokens(ref, norm);
  const auto h = normalize_tokens(hyp, norm);
  return word_edit_distance(r, h);
}

AssignmentResult permutation_wer(std::string_view ref_sot, std::string_view hyp_sot,
                                 const NormalizationConfig &norm) {
  std::vector<std::vector<std::string>> refs, hyps;
  for (const auto &seg : parse_sot(ref_sot)) refs.push_back(normalize_tokens(seg, norm));
  for (const auto &seg : parse_sot(hyp_sot)) hyps.push_back(normalize_tokens(seg, norm));

  AssignmentResult result;
  result.ref_segments = refs.size();
  result.hyp_segments = hyps.size();
  const size_t n = std::max(refs.size(), hyps.size());
  refs.resize(n);
  hyps.resize(n);

  std::vector<std::vector<WerReport>> reports(n, std::vector<WerReport>(n));
  CostMatrix cost(n, std::vector<int64_t>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      reports[i][j] = word_edit_distance(refs[i], hyps[j]);
      cost[i][j] = reports[i][j].errors();
    }
  }
  const auto col_of_row = min_cost_assignment(cost);
  result.total = make_wer_report(0, 0, 0, 0);
  for (size_t i = 0; i < n; ++i) {
    result.pairs.emplace_back(i, col_of_row[i]);
    result.per_pair.push_back(reports[i][col_of_row[i]]);
    result.total = result.total + reports[i][col_of_row[i]];
  }
  return result;
}

BestMatchResult best_match_wer(std::string_view target, std::string_view hyp_sot,
                               const NormalizationConfig &norm) {
  const auto target_segments = parse_sot(target);
  if (target_segments.size() > 1) {
    throw Error(ErrorKind::kMultiSegmentTarget,
                std::to_string(target_segments.size()) + " segments in target");
  }
  const auto ref = target_segments.empty() ? std::vector<std::string>{}
                                           : normalize_tokens(target_segments[0], norm);
  auto hyps = parse_sot(hyp_sot);
  if (hyps.empty()) hyps.emplace_back();
  BestMatchResult best;
  for (size_t j = 0; j < hyps.size(); ++j) {
    const WerReport r = word_edit_distance(ref, normalize_tokens(hyps[j], norm));
    // Same reference for every candidate, so comparing error counts is exact.
    if (j == 0 || r.errors() < best.report.errors()) {
      best.report = r;
      best.matched_index = j;
    }
  }
  return best;
}

std::string_view to_string(ScoreMode mode) {
  switch (mode) {
    case ScoreMode::kSingle: return "single";
    case ScoreMode::kSotPermutation: return "sot_permutation";
    case ScoreMode::kBestMatch: return "best_match";
  }
  return "?";
}

std::optional<ScoreMode> parse_score_mode(std::string_view s) {
  if (s == "single") return ScoreMode::kSingle;
  if (s == "sot_permutation" || s == "sot-permutation" || s == "permutation")
    return ScoreMode::kSotPermutation;
  if (s == "best_match" || s == "best-match") return ScoreMode::kBestMatch;
  return std::nullopt;
}

namespace {

std::string JoinSegments(std::string_view sot) {
  std::string out;
  for (const auto &seg : parse_sot(sot)) {
    if (!out.empty()) out += ' ';
    out += seg;
  }
  return out;
}

SampleScore ScoreOne(const std::string &id, const std::string &ref, const std::string &hyp,
                     ScoreMode mode, const NormalizationConfig &norm) {
  SampleScore s;
  s.id = id;
  s.ref_segments = parse_sot(ref).size();
  s.hyp_segments = parse_sot(hyp).size();
  switch (mode) {
    case ScoreMode::kSingle:
      s.report = single_wer(JoinSegments(ref), JoinSegments(hyp), norm);
      break;
    case ScoreMode::kSotPermutation: {
      AssignmentResult a = permutation_wer(ref, hyp, norm);
      s.report = a.total;
      s.assignment = std::move(a.pairs);
      break;
    }
    case ScoreMode::kBestMatch:
      if (s.ref_segments > 1) {
        s.skipped = true;
        s.report = make_wer_report(0, 0, 0, 0);
      } else {
        BestMatchResult b = best_match_wer(ref, hyp, norm);
        s.report = b.report;
        s.matched_index = b.matched_index;
      }
      break;
  }
  return s;
}

}  // namespace

CorpusReport score_corpus(const std::vector<KeyedText> &refs, const std::vector<KeyedText> &hyps,
                          ScoreMode mode, const NormalizationConfig &norm, size_t jobs) {
  std::unordered_map<std::string, size_t> ref_index;
  for (size_t i = 0; i < refs.size(); ++i) {
    if (!ref_index.emplace(refs[i].id, i).second)
      throw Error(ErrorKind::kDuplicateId, "reference id '" + refs[i].id + "'");
  }
  std::unordered_map<std::string, size_t> hyp_index;
  for (size_t i = 0; i < hyps.size(); ++i) {
    if (!hyp_index.emplace(hyps[i].id, i).second)
      throw Error(ErrorKind::kDuplicateId, "hypothesis id '" + hyps[i].id + "'");
    if (!ref_index.count(hyps[i].id))
      throw Error(ErrorKind::kUnknownHypothesisId, "'" + hyps[i].id + "'");
  }

  std::vector<size_t> order(refs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return refs[a].id < refs[b].id; });

  CorpusReport report;
  report.mode = mode;
  report.samples.resize(refs.size());
  parallel_for(order.size(), jobs, [&](size_t k) {
    const KeyedText &ref = refs[order[k]];
    auto it = hyp_index.find(ref.id);
    const std::string empty;
    const std::string &hyp = it == hyp_index.end() ? empty : hyps[it->second].text;
    report.samples[k] = ScoreOne(ref.id, ref.text, hyp, mode, norm);
    report.samples[k].missing_hypothesis = it == hyp_index.end();
  });

  // Integer sums in id order, so aggregation does not depend on jobs.
  report.total = make_wer_report(0, 0, 0, 0);
  double macro_sum = 0.0;
  size_t macro_n = 0;
  for (const auto &s : report.samples) {
    if (s.missing_hypothesis) ++report.missing_hypotheses;
    if (s.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.scored;
    report.total = report.total + s.report;
    if (s.report.ref_words > 0) {
      macro_sum += s.report.wer;
      ++macro_n;
    }
    if (mode == ScoreMode::kSotPermutation)
      report.segment_count_confusion[{s.ref_segments, s.hyp_segments}] += 1;
  }
  report.macro_wer = macro_n > 0 ? macro_sum / static_cast<double>(macro_n) : 0.0;
  return report;
}

json to_json(const WerReport &r) {
  return json{{"substitutions", r.substitutions}, {"deletions", r.deletions},
              {"insertions", r.insertions},       {"errors", r.errors()},
              {"ref_words", r.ref_words},         {"wer", r.wer},
              {"zero_reference", r.zero_reference}};
}

json summary_json(const CorpusReport &report) {
  json j{{"mode", to_string(report.mode)},
         {"corpus", to_json(report.total)},
         {"micro_wer", report.total.wer},
         {"macro_wer", report.macro_wer},
         {"samples", report.samples.size()},
         {"scored", report.scored},
         {"missing_hypotheses", report.missing_hypotheses},
         {"skipped_multi_segment", report.skipped}};
  if (report.mode == ScoreMode::kSotPermutation) {
    json table = json::array();
    for (const auto &[key, count] : report.segment_count_confusion) {
      table.push_back(json{{"ref_segments", key.first}, {"hyp_segments", key.second},
                           {"count", count}});
    }
    j["segment_count_confusion"] = std::move(table);
  }
  return j;
}

json to_json(const SampleScore &s) {
  json j{{"id", s.id},
         {"report", to_json(s.report)},
         {"ref_segments", s.ref_segments},
         {"hyp_segments", s.hyp_segments},
         {"missing_hypothesis", s.missing_hypothesis}};
  if (s.skipped) j["skipped"] = true;
  if (s.matched_index) j["matched_index"] = *s.matched_index;
  if (!s.assignment.empty()) {
    json pairs = json::array();
    for (const auto &[r, h] : s.assignment) pairs.push_back(json::array({r, h}));
    j["assignment"] = std::move(pairs);
  }
  return j;
}

std::string format_summary(const CorpusReport &report) {
  const WerReport &t = report.total;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%%WER %.2f [ %lld / %lld, %lld ins, %lld del, %lld sub ]\n",
                100.0 * t.wer, static_cast<long long>(t.errors()),
                static_cast<long long>(t.ref_words), static_cast<long long>(t.insertions),
                static_cast<long long>(t.deletions), static_cast<long long>(t.substitutions));
  std::string out = buf;
  std::snprintf(buf, sizeof(buf),
                "mode %s: %zu samples scored, %zu without hypothesis, %zu skipped; "
                "macro WER %.2f%%\n",
                std::string(to_string(report.mode)).c_str(), report.scored,
                report.missing_hypotheses, report.skipped, 100.0 * report.macro_wer);
  out += buf;
  return out;
}

std::vector<KeyedText> read_hypotheses(const std::filesystem::path &path) {
  auto bad = [](size_t line_no, const std::string &why) {
    throw Error(ErrorKind::kMalformedRecord, "line " + std::to_string(line_no) + ": " + why);
  };
  const auto lines = read_jsonl(path, bad);
  std::vector<KeyedText> out;
  for (const auto &line : lines) {
    const json &j = line.value;
    if (!j.contains("id") || !j["id"].is_string() || !j.contains("hyp") || !j["hyp"].is_string())
      bad(line.line_no, "expected string fields 'id' and 'hyp'");
    out.push_back({j["id"].get<std::string>(), j["hyp"].get<std::string>()});
  }
  return out;
}

void write_hypotheses(const std::vector<KeyedText> &hyps, const std::filesystem::path &path) {
  std::vector<json> lines;
  for (const auto &h : hyps) lines.push_back(json{{"id", h.id}, {"hyp", h.text}});
  write_file_atomic(path, to_jsonl(lines));
}

}  // namespace mtsim
