// tests/unit/test_metrics.cpp

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

#include "doctest.h"
#include "mtsim/error.hpp"
#include "mtsim/metrics.hpp"
#include "mtsim/sot.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <algorithm>

using namespace mtsim;
using mtsim::testing::join;
using mtsim::testing::random_tokens;
using mtsim::testing::TempDir;

namespace {

std::vector<std::string> W(const std::string &s) { return split_words(s); }

ErrorKind KindOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kUsage;
}

}  // namespace

TEST_CASE("single-talker WER examples") {
  const WerReport r = single_wer("THE QUICK BROWN FOX", "THE BROWN FOX");
  CHECK(r.deletions == 1);
  CHECK(r.substitutions == 0);
  CHECK(r.insertions == 0);
  CHECK(r.ref_words == 4);
  CHECK(r.wer == doctest::Approx(0.25));

  const WerReport s = single_wer("a b c", "a x c d");
  CHECK(s.substitutions == 1);
  CHECK(s.insertions == 1);
  CHECK(s.wer == doctest::Approx(2.0 / 3.0));

  // Normalization applies to both sides.
  CHECK(single_wer("Hello, world!", "HELLO WORLD").errors() == 0);
}

TEST_CASE("zero-reference conventions") {
  const WerReport both = single_wer("", "");
  CHECK(both.wer == 0.0);
  CHECK(both.zero_reference);
  const WerReport ins = single_wer("", "A B");
  CHECK(ins.wer == 1.0);
  CHECK(ins.insertions == 2);
  CHECK(ins.zero_reference);
  CHECK_FALSE(single_wer("A", "").zero_reference);
}

TEST_CASE("edit distance agrees with the recursive oracle") {
  RandomStream rng(4);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto ref = random_tokens(rng, 7);
    const auto hyp = random_tokens(rng, 7);
    const WerReport r = word_edit_distance(ref, hyp);
    const oracle::EditCounts o = oracle::edit_distance(ref, hyp);
    CHECK(r.errors() == o.total);
    CHECK(r.substitutions == o.sub);
    CHECK(r.insertions == o.ins);
    CHECK(r.deletions == o.del);
    CHECK(r.errors() == oracle::levenshtein(ref, hyp));
    // Counts are consistent with the sequence lengths.
    CHECK(static_cast<int64_t>(ref.size()) - r.deletions + r.insertions ==
          static_cast<int64_t>(hyp.size()));
  }
}

TEST_CASE("edit distance is a metric") {
  RandomStream rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_tokens(rng, 6), b = random_tokens(rng, 6), c = random_tokens(rng, 6);
    const int64_t ab = word_edit_distance(a, b).errors();
    CHECK(ab == word_edit_distance(b, a).errors());
    CHECK((ab == 0) == (a == b));
    CHECK(word_edit_distance(a, c).errors() <= ab + word_edit_distance(b, c).errors());
  }
}

TEST_CASE("permutation WER examples") {
  const AssignmentResult r = permutation_wer("A B <sc> C D E", "C D <sc> A B");
  CHECK(r.total.errors() == 1);
  CHECK(r.total.ref_words == 5);
  CHECK(r.total.wer == doctest::Approx(0.2));
  CHECK(r.ref_segments == 2);
  CHECK(r.hyp_segments == 2);
  CHECK(r.pairs == std::vector<std::pair<size_t, size_t>>{{0, 1}, {1, 0}});

  // Missing talker: padded with an empty hypothesis segment.
  const AssignmentResult missing = permutation_wer("A B <sc> C D E", "C D E");
  CHECK(missing.total.deletions == 2);
  CHECK(missing.total.wer == doctest::Approx(0.4));

  // Extra talker: inserted words.
  const AssignmentResult extra = permutation_wer("A B", "X Y Z <sc> A B");
  CHECK(extra.total.insertions == 3);
  CHECK(extra.total.wer == doctest::Approx(1.5));

  CHECK(permutation_wer("", "").total.wer == 0.0);
}

TEST_CASE("permutation WER equals the brute-force minimum") {
  RandomStream rng(6);
  for (int trial = 0; trial < 1500; ++trial) {
    std::vector<std::vector<std::string>> refs(1 + rng.Index(3)), hyps(1 + rng.Index(4));
    for (auto &s : refs) {
      s = random_tokens(rng, 4);
      if (s.empty()) s.push_back("A");
    }
    for (auto &s : hyps) {
      s = random_tokens(rng, 4);
      if (s.empty()) s.push_back("B");
    }
    std::vector<std::string> rs, hs;
    for (const auto &s : refs) rs.push_back(join(s));
    for (const auto &s : hyps) hs.push_back(join(s));
    const AssignmentResult r = permutation_wer(serialize_sot(rs), serialize_sot(hs));
    CHECK(r.total.errors() == oracle::brute_force_permutation_errors(refs, hyps));

    // Invariant under hypothesis segment order.
    std::vector<std::string> shuffled = hs;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(permutation_wer(serialize_sot(rs), serialize_sot(shuffled)).total.errors() ==
          r.total.errors());

    // Perfect hypothesis in any order scores zero.
    std::vector<std::string> perm = rs;
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    CHECK(permutation_wer(serialize_sot(rs), serialize_sot(perm)).total.wer == 0.0);

    // Never worse than the identity pairing of a single concatenated string
    // when the segment counts agree.
    if (rs.size() == hs.size()) {
      int64_t identity = 0;
      for (size_t i = 0; i < rs.size(); ++i)
        identity += word_edit_distance(refs[i], hyps[i]).errors();
      CHECK(r.total.errors() <= identity);
    }
  }
}

TEST_CASE("best-match WER") {
  const BestMatchResult r = best_match_wer("A B", "A <sc> A B X");
  CHECK(r.report.wer == doctest::Approx(0.5));
  CHECK(r.matched_index == 0);

  const BestMatchResult exact = best_match_wer("C D", "A B <sc> C D");
  CHECK(exact.report.wer == 0.0);
  CHECK(exact.matched_index == 1);

  CHECK(best_match_wer("A B", "").report.deletions == 2);
  CHECK(KindOf([] { best_match_wer("A <sc> B", "A"); }) == ErrorKind::kMultiSegmentTarget);

  RandomStream rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto ref = random_tokens(rng, 5);
    if (ref.empty()) ref.push_back("A");
    std::vector<std::string> segs;
    for (size_t i = 0, n = 1 + rng.Index(3); i < n; ++i) {
      auto s = random_tokens(rng, 5);
      if (s.empty()) s.push_back("C");
      segs.push_back(join(s));
    }
    const BestMatchResult b = best_match_wer(join(ref), serialize_sot(segs));
    for (const auto &s : segs) CHECK(b.report.errors() <= single_wer(join(ref), s).errors());
    CHECK(b.report.errors() == single_wer(join(ref), segs[b.matched_index]).errors());
  }
}

TEST_CASE("score modes") {
  CHECK(parse_score_mode("single") == ScoreMode::kSingle);
  CHECK(parse_score_mode("sot_permutation") == ScoreMode::kSotPermutation);
  CHECK(parse_score_mode("best_match") == ScoreMode::kBestMatch);
  CHECK_FALSE(parse_score_mode("bogus").has_value());
  for (ScoreMode m : {ScoreMode::kSingle, ScoreMode::kSotPermutation, ScoreMode::kBestMatch})
    CHECK(parse_score_mode(to_string(m)) == m);
}

TEST_CASE("corpus scoring") {
  // 1 error over 5 words plus 0 over 5 pools to 0.10, not the mean of rates.
  const std::vector<KeyedText> refs = {{"a", "A B C D E"}, {"b", "F G H I J"}, {"c", "K"}};
  const std::vector<KeyedText> hyps = {{"a", "A B X D E"}, {"b", "F G H I J"}, {"c", "K"}};
  const CorpusReport r = score_corpus({refs[0], refs[1]}, {hyps[0], hyps[1]}, ScoreMode::kSingle);
  CHECK(r.total.wer == doctest::Approx(0.10));
  CHECK(r.scored == 2);

  const CorpusReport skew = score_corpus(refs, {{"a", "A B X D E"}, {"c", "Z"}}, ScoreMode::kSingle);
  // Micro: (1 + 5 + 1) / 11; macro: (0.2 + 1 + 1) / 3.
  CHECK(skew.total.wer == doctest::Approx(7.0 / 11.0));
  CHECK(skew.macro_wer == doctest::Approx(2.2 / 3.0));
  CHECK(skew.missing_hypotheses == 1);
  CHECK(skew.samples[1].missing_hypothesis);
  CHECK(skew.samples[1].report.deletions == 5);

  const CorpusReport missing =
      score_corpus({{"x", "A B C D"}}, {}, ScoreMode::kSotPermutation);
  CHECK(missing.total.deletions == 4);
  CHECK(missing.missing_hypotheses == 1);

  CHECK(KindOf([&] { score_corpus({refs[0], refs[0]}, {}, ScoreMode::kSingle); }) ==
        ErrorKind::kDuplicateId);
  CHECK(KindOf([&] { score_corpus({refs[0]}, {hyps[0], hyps[0]}, ScoreMode::kSingle); }) ==
        ErrorKind::kDuplicateId);
  CHECK(KindOf([&] { score_corpus({refs[0]}, {{"zz", "A"}}, ScoreMode::kSingle); }) ==
        ErrorKind::kUnknownHypothesisId);

  // Hypothesis order and job count do not matter.
  std::vector<KeyedText> rev(hyps.rbegin(), hyps.rend());
  const CorpusReport a = score_corpus(refs, hyps, ScoreMode::kSotPermutation, {}, 1);
  const CorpusReport b = score_corpus(refs, rev, ScoreMode::kSotPermutation, {}, 4);
  CHECK(summary_json(a) == summary_json(b));
  CHECK(format_summary(a).rfind("%WER 9.09 [ 1 / 11, 0 ins, 0 del, 1 sub ]", 0) == 0);
}

TEST_CASE("corpus scoring by mode on multi-talker references") {
  const std::vector<KeyedText> refs = {{"m", "A B <sc> C D"}, {"s", "E F"}};
  const std::vector<KeyedText> swapped = {{"m", "C D <sc> A B"}, {"s", "E F"}};
  const CorpusReport perm = score_corpus(refs, swapped, ScoreMode::kSotPermutation);
  CHECK(perm.total.wer == 0.0);
  CHECK(perm.segment_count_confusion.at({2, 2}) == 1);
  CHECK(perm.segment_count_confusion.at({1, 1}) == 1);

  const CorpusReport single = score_corpus(refs, swapped, ScoreMode::kSingle);
  CHECK(single.total.wer > 0.0);
  CHECK(single.total.ref_words == 6);  // the change token is not a word

  const CorpusReport best = score_corpus(refs, {{"m", "X"}, {"s", "Q <sc> E F"}},
                                         ScoreMode::kBestMatch);
  CHECK(best.skipped == 1);
  CHECK(best.scored == 1);
  CHECK(best.total.wer == 0.0);
}

TEST_CASE("hypothesis file round trip") {
  TempDir dir;
  const std::vector<KeyedText> hyps = {{"a", "HELLO <sc> WORLD"}, {"b", ""}};
  write_hypotheses(hyps, dir / "hyps.jsonl");
  const auto back = read_hypotheses(dir / "hyps.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "a");
  CHECK(back[0].text == "HELLO <sc> WORLD");
  CHECK(back[1].text.empty());
  write_file_atomic(dir / "bad.jsonl", "{\"id\": 3}\n");
  CHECK(KindOf([&] { read_hypotheses(dir / "bad.jsonl"); }) == ErrorKind::kMalformedRecord);
}
