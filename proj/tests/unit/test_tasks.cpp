// tests/unit/test_tasks.cpp

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
#include "mtsim/mixer.hpp"
#include "mtsim/sot.hpp"
#include "mtsim/tasks.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <set>

using namespace mtsim;
using mtsim::testing::make_record;
using mtsim::testing::make_utt;
using mtsim::testing::TempDir;

namespace {

const InstructionTemplates &T() {
  static const InstructionTemplates t = InstructionTemplates::Defaults();
  return t;
}

ErrorKind KindOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kUsage;
}

std::set<std::pair<std::string, std::string>> AsSet(const std::vector<Keyword> &kws) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto &k : kws) out.emplace(k.word, k.speaker_id);
  return out;
}

// Independent expectation: words of length >= 6 counted once over both texts.
std::set<std::pair<std::string, std::string>> OracleKeywords(const MixtureRecord &r) {
  std::vector<std::string> texts;
  for (const auto &c : r.components) texts.push_back(c.text);
  const auto counts = oracle::word_counts(texts);
  std::set<std::pair<std::string, std::string>> out;
  for (const auto &c : r.components)
    for (const auto &[w, n] : oracle::word_counts({c.text}))
      if (n == 1 && counts.at(w) == 1 && oracle::code_points(w) >= 6) out.emplace(w, c.speaker_id);
  return out;
}

const MixtureRecord kThree = make_record(
    "m3", {{"f1", Sex::kFemale, Language::kEn, 0.0, 2.0, "first female"},
           {"m1", Sex::kMale, Language::kDe, 0.9, 2.0, "male talker"},
           {"f2", Sex::kFemale, Language::kEn, 1.7, 2.0, "second female"}});

}  // namespace

TEST_CASE("candidate keywords") {
  const MixtureRecord a = make_record("a", {{"spk1", Sex::kMale, Language::kEn, 0, 1, "I LOVE STRAWBERRY JAM"},
                                            {"spk2", Sex::kFemale, Language::kEn, 0.5, 1, "THE WEATHER TODAY"}});
  const std::set<std::pair<std::string, std::string>> want_a = {{"STRAWBERRY", "spk1"}, {"WEATHER", "spk2"}};
  CHECK(OracleKeywords(a) == want_a);
  CHECK(AsSet(candidate_keywords(a)) == want_a);

  const MixtureRecord b = make_record("b", {{"spk1", Sex::kMale, Language::kEn, 0, 1, "APPLES APPLES ORANGES"},
                                            {"spk2", Sex::kFemale, Language::kEn, 0.5, 1, "BANANAS"}});
  const std::set<std::pair<std::string, std::string>> want_b = {{"ORANGES", "spk1"}, {"BANANAS", "spk2"}};
  CHECK(OracleKeywords(b) == want_b);
  CHECK(AsSet(candidate_keywords(b)) == want_b);

  const MixtureRecord c = make_record("c", {{"spk1", Sex::kMale, Language::kEn, 0, 1, "OPEN WINDOW"},
                                            {"spk2", Sex::kFemale, Language::kEn, 0.5, 1, "CLOSE WINDOW"}});
  CHECK(candidate_keywords(c).empty());

  // Normalization happens before counting, and length is in code points.
  const MixtureRecord d = make_record("d", {{"spk1", Sex::kMale, Language::kDe, 0, 1, "Grüße, Welt!"},
                                            {"spk2", Sex::kFemale, Language::kEn, 0.5, 1, "window Window"}});
  CHECK(AsSet(candidate_keywords(d)) ==
        std::set<std::pair<std::string, std::string>>{{"GRÜSSE", "spk1"}});

  const MixtureRecord one = make_record("e", {{"spk1", Sex::kMale, Language::kEn, 0, 1, "STRAWBERRY"}});
  CHECK(candidate_keywords(one).empty());
}

TEST_CASE("MT targets") {
  RandomStream rng(1);
  const TaskSample s = gen_mt(kThree, T(), rng);
  CHECK(s.target == "FIRST FEMALE <sc> MALE TALKER <sc> SECOND FEMALE");
  CHECK(s.sample_id == "m3-MT");
  CHECK(std::find(T().get(TaskKind::kMT).begin(), T().get(TaskKind::kMT).end(), s.instruction) !=
        T().get(TaskKind::kMT).end());
  const MixtureRecord one = make_record("o", {{"a", Sex::kMale, Language::kEn, 0, 1, "alone here"}});
  CHECK(gen_mt(one, T(), rng).target == "ALONE HERE");
}

TEST_CASE("KT targets") {
  RandomStream rng(2);
  const MixtureRecord r = make_record("k", {{"s1", Sex::kMale, Language::kEn, 0, 1, "I LOVE STRAWBERRY JAM"},
                                            {"s2", Sex::kFemale, Language::kEn, 0.5, 1, "A B C"}});
  const TaskSample s = gen_kt(r, T(), rng);
  CHECK(s.meta.keyword == "STRAWBERRY");
  CHECK(s.meta.target_speaker == "s1");
  CHECK(s.target == "I LOVE STRAWBERRY JAM");
  CHECK(s.instruction.find("STRAWBERRY") != std::string::npos);

  const MixtureRecord none = make_record("n", {{"s1", Sex::kMale, Language::kEn, 0, 1, "SHORT"},
                                               {"s2", Sex::kFemale, Language::kEn, 0.5, 1, "WORDS"}});
  CHECK(KindOf([&] { gen_kt(none, T(), rng); }) == ErrorKind::kNoValidKeyword);
}

TEST_CASE("SS targets") {
  RandomStream rng(3);
  bool saw_f = false, saw_m = false;
  for (int i = 0; i < 100; ++i) {
    const TaskSample s = gen_ss(kThree, T(), rng);
    if (s.meta.sex == Sex::kFemale) {
      saw_f = true;
      CHECK(s.target == "FIRST FEMALE <sc> SECOND FEMALE");
      CHECK(s.instruction.find("female") != std::string::npos);
    } else {
      saw_m = true;
      CHECK(s.target == "MALE TALKER");
    }
  }
  CHECK(saw_f);
  CHECK(saw_m);

  const MixtureRecord males = make_record("mm", {{"a", Sex::kMale, Language::kEn, 0, 1, "x"},
                                                 {"b", Sex::kMale, Language::kEn, 0.5, 1, "y"}});
  for (int i = 0; i < 50; ++i) CHECK(gen_ss(males, T(), rng).meta.sex == Sex::kMale);

  TaskConfig absent;
  absent.ss_allow_absent = true;
  int empty = 0;
  for (int i = 0; i < 50; ++i) {
    try {
      gen_ss(males, T(), rng, absent);
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kEmptyTarget);
      ++empty;
    }
  }
  CHECK(empty > 0);
}

TEST_CASE("OS targets") {
  RandomStream rng(4);
  const std::vector<std::string> by_start = {"FIRST FEMALE", "MALE TALKER", "SECOND FEMALE"};
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    const TaskSample s = gen_os(kThree, T(), rng);
    REQUIRE(s.meta.ordinal.has_value());
    const int n = *s.meta.ordinal;
    CHECK(n >= 1);
    CHECK(n <= 3);
    seen.insert(n);
    CHECK(s.target == by_start[static_cast<size_t>(n - 1)]);
    CHECK(s.instruction.find(ordinal_word(n)) != std::string::npos);
  }
  CHECK(seen.size() == 3);
  const MixtureRecord one = make_record("o", {{"a", Sex::kMale, Language::kEn, 0, 1, "only"}});
  const TaskSample s = gen_os(one, T(), rng);
  CHECK(s.meta.ordinal == 1);
  CHECK(s.target == "ONLY");
  CHECK(ordinal_word(2) == "second");
}

TEST_CASE("TL targets") {
  RandomStream rng(5);
  const MixtureRecord two = make_record("t", {{"e", Sex::kMale, Language::kEn, 0.0, 2, "hello there"},
                                              {"d", Sex::kFemale, Language::kDe, 1.2, 2, "guten tag"}});
  for (int i = 0; i < 50; ++i) {
    const TaskSample s = gen_tl(two, T(), rng);
    CHECK(s.target == (s.meta.language == Language::kDe ? "GUTEN TAG" : "HELLO THERE"));
  }
  const MixtureRecord three = make_record("u", {{"e1", Sex::kMale, Language::kEn, 0.0, 2, "one"},
                                                {"d", Sex::kFemale, Language::kDe, 0.8, 2, "zwei"},
                                                {"e2", Sex::kFemale, Language::kEn, 1.5, 2, "three"}});
  for (int i = 0; i < 50; ++i) {
    const TaskSample s = gen_tl(three, T(), rng);
    if (s.meta.language == Language::kEn) {
      CHECK(s.target == "ONE <sc> THREE");
      CHECK(s.instruction.find("English") != std::string::npos);
    }
  }
  const MixtureRecord mono = make_record("v", {{"a", Sex::kMale, Language::kEn, 0, 1, "x"},
                                               {"b", Sex::kMale, Language::kEn, 0.5, 1, "y"}});
  CHECK(KindOf([&] { gen_tl(mono, T(), rng); }) == ErrorKind::kMonolingualRecord);
}

TEST_CASE("TT composite audio") {
  TempDir dir;
  std::vector<Utterance> utts = {make_utt("a-0", "a", Sex::kMale, Language::kEn, "target words", 5.0),
                                 make_utt("a-1", "a", Sex::kMale, Language::kEn, "short one", 2.1),
                                 make_utt("b-0", "b", Sex::kFemale, Language::kEn, "other talker", 4.0)};
  for (const auto &u : utts) {
    Waveform w;
    w.samples.assign(static_cast<size_t>(seconds_to_samples(u.duration_sec, 16000)), 0.25);
    write_audio(w, dir / u.audio_path);
  }
  const SpeakerPool pool = SpeakerPool::Build(utts, 16000, dir.path());
  Waveform mix;
  mix.samples.assign(160000, 0.5);  // 10 s

  MixtureRecord only_a = make_record("x", {{"a", Sex::kMale, Language::kEn, 0, 5.0, "target words"}});
  only_a.components[0].utterance_id = "a-0";
  RandomStream rng(6);
  const TargetTalkerResult tt = gen_tt(only_a, pool, mix, T(), rng);
  CHECK(tt.audio.size() == 256000);
  CHECK(tt.sample.meta.enrollment_utterance_id == "a-1");
  CHECK(tt.sample.meta.target_speaker == "a");
  CHECK(tt.sample.target == "TARGET WORDS");
  // 2.1 s of enrollment then zero padding to 3 s, 3 s silence, the mixture.
  CHECK(tt.audio.samples[33599] == 0.25);
  CHECK(tt.audio.samples[33600] == 0.0);
  CHECK(tt.audio.samples[95999] == 0.0);
  CHECK(tt.audio.samples[96000] == 0.5);

  MixtureRecord only_b = make_record("y", {{"b", Sex::kFemale, Language::kEn, 0, 4.0, "other talker"}});
  only_b.components[0].utterance_id = "b-0";
  CHECK(KindOf([&] { gen_tt(only_b, pool, mix, T(), rng); }) == ErrorKind::kNoEnrollmentAvailable);
  TaskConfig fallback;
  fallback.tt_allow_same_utterance = true;
  CHECK(gen_tt(only_b, pool, mix, T(), rng, fallback).sample.meta.enrollment_utterance_id == "b-0");

  TaskConfig window;
  window.tt_random_window = true;
  for (int i = 0; i < 20; ++i) CHECK(gen_tt(only_a, pool, mix, T(), rng, window).audio.size() == 256000);
}

TEST_CASE("task sets") {
  std::vector<MixtureRecord> mono;
  for (int i = 0; i < 10; ++i)
    mono.push_back(make_record("r" + std::to_string(i),
                               {{"a", Sex::kMale, Language::kEn, 0, 1, "alpha beta"},
                                {"b", Sex::kFemale, Language::kEn, 0.5, 1, "gamma delta"}}));
  const TaskSetResult mt = gen_taskset(mono, nullptr, {{TaskKind::kMT, 1.0}}, T(), 9);
  CHECK(mt.samples.size() == 10);
  CHECK(mt.emitted.at(TaskKind::kMT) == 10);
  CHECK(mt.skipped.empty());

  const TaskSetResult tl = gen_taskset(mono, nullptr, {{TaskKind::kTL, 1.0}}, T(), 9);
  CHECK(tl.samples.empty());
  CHECK(tl.skipped.at("TL:MonolingualRecord") == 10);

  CHECK(KindOf([&] { gen_taskset(mono, nullptr, {{TaskKind::kMT, 0.0}}, T(), 9); }) ==
        ErrorKind::kUsage);
}

TEST_CASE("task set invariants on simulated data") {
  std::vector<Utterance> utts;
  RandomStream text_rng(10);
  const std::vector<std::string> vocab = {"apple", "window", "strawberry", "sun", "moon",
                                          "weather", "tomorrow", "kitchen", "a", "garden"};
  for (int s = 0; s < 8; ++s) {
    for (int u = 0; u < 3; ++u) {
      std::string text;
      for (int w = 0; w < 5; ++w) text += (w ? " " : "") + vocab[text_rng.Index(vocab.size())];
      const std::string spk = "s" + std::to_string(s);
      utts.push_back(make_utt(spk + "-" + std::to_string(u), spk, s % 2 ? Sex::kFemale : Sex::kMale,
                              s < 5 ? Language::kEn : Language::kDe, text, 1.0 + u));
    }
  }
  const SpeakerPool pool = SpeakerPool::Build(utts);
  SimPlan plan;
  plan.counts = {{1, 20}, {2, 60}, {3, 60}};
  plan.de_share = 0.4;
  plan.de_tolerance = 0.4;
  const auto records = simulate_corpus(pool, plan, 3);
  const std::vector<std::pair<TaskKind, double>> mix = {
      {TaskKind::kMT, 1}, {TaskKind::kKT, 1}, {TaskKind::kSS, 1}, {TaskKind::kOS, 1}, {TaskKind::kTL, 1}};
  const TaskSetResult a = gen_taskset(records, &pool, mix, T(), 77, {}, {}, 1);
  const TaskSetResult b = gen_taskset(records, &pool, mix, T(), 77, {}, {}, 7);
  CHECK(a.samples == b.samples);
  CHECK(a.skipped == b.skipped);
  size_t total = a.samples.size();
  for (const auto &[k, n] : a.skipped) total += n;
  CHECK(total == records.size());

  std::map<std::string, const MixtureRecord *> by_id;
  for (const auto &r : records) by_id[r.mixture_id] = &r;
  for (const auto &s : a.samples) {
    const MixtureRecord &r = *by_id.at(s.mixture_id);
    std::vector<std::string> norm_texts;
    for (const auto &c : r.components) norm_texts.push_back(normalize_text(c.text));
    // Targets never invent or merge text.
    for (const auto &seg : parse_sot(s.target))
      CHECK(std::find(norm_texts.begin(), norm_texts.end(), seg) != norm_texts.end());

    auto matching = [&](auto pred) {
      std::vector<std::string> out;
      for (const auto &text : order_segments(r, pred)) out.push_back(normalize_text(text));
      return out;
    };
    switch (s.task) {
      case TaskKind::kKT: {
        const auto counts = oracle::word_counts(norm_texts);
        CHECK(counts.at(*s.meta.keyword) == 1);
        CHECK(oracle::code_points(*s.meta.keyword) >= 6);
        CHECK(oracle::word_counts({s.target}).at(*s.meta.keyword) == 1);
        break;
      }
      case TaskKind::kSS:
        CHECK(parse_sot(s.target) ==
              matching([&](const MixtureComponent &c) { return c.sex == *s.meta.sex; }));
        break;
      case TaskKind::kTL:
        CHECK(parse_sot(s.target) ==
              matching([&](const MixtureComponent &c) { return c.language == *s.meta.language; }));
        break;
      case TaskKind::kOS:
        CHECK(*s.meta.ordinal <= static_cast<int>(r.components.size()));
        break;
      default:
        break;
    }
  }
}

TEST_CASE("task mix parsing") {
  const auto mix = parse_task_mix("mt:2,TT:0.5,kt");
  REQUIRE(mix.size() == 3);
  CHECK(mix[0] == std::make_pair(TaskKind::kMT, 2.0));
  CHECK(mix[1] == std::make_pair(TaskKind::kTT, 0.5));
  CHECK(mix[2] == std::make_pair(TaskKind::kKT, 1.0));
  CHECK(parse_task_mix(task_mix_string(mix)) == mix);
  CHECK(KindOf([] { parse_task_mix("xx:1"); }) == ErrorKind::kUsage);
  CHECK(KindOf([] { parse_task_mix("mt:-1"); }) == ErrorKind::kUsage);
  CHECK(KindOf([] { parse_task_mix(""); }) == ErrorKind::kUsage);
}

TEST_CASE("instruction templates") {
  for (TaskKind k : kAllTasks) CHECK(T().get(k).size() >= 2);
  const auto round = InstructionTemplates::FromJson(T().ToJson());
  for (TaskKind k : kAllTasks) CHECK(round.get(k) == T().get(k));

  using nlohmann::json;
  CHECK(KindOf([] { InstructionTemplates::FromJson(json{{"KT", {"no placeholder"}}}); }) ==
        ErrorKind::kBadTemplate);
  CHECK(KindOf([] { InstructionTemplates::FromJson(json{{"MT", {"say {KEYWORD}"}}}); }) ==
        ErrorKind::kBadTemplate);
  CHECK(KindOf([] { InstructionTemplates::FromJson(json{{"MT", {"a <sc> b"}}}); }) ==
        ErrorKind::kBadTemplate);
  CHECK(KindOf([] { InstructionTemplates::FromJson(json{{"ZZ", {"x"}}}); }) == ErrorKind::kBadTemplate);

  const auto only_mt = InstructionTemplates::FromJson(json{{"MT", {"go"}}});
  RandomStream rng(1);
  CHECK(KindOf([&] { gen_os(kThree, only_mt, rng); }) == ErrorKind::kBadTemplate);
  CHECK(gen_mt(kThree, only_mt, rng).instruction == "go");
}

TEST_CASE("task records round trip") {
  TempDir dir;
  RandomStream rng(8);
  std::vector<TaskSample> samples = {gen_mt(kThree, T(), rng), gen_ss(kThree, T(), rng),
                                     gen_os(kThree, T(), rng), gen_tl(kThree, T(), rng)};
  samples[0].audio_path = "audio/m3.wav";
  write_tasks(samples, dir / "tasks.jsonl");
  CHECK(read_tasks(dir / "tasks.jsonl") == samples);
  write_file_atomic(dir / "bad.jsonl", "{\"sample_id\": \"a\", \"task\": \"QQ\"}\n");
  CHECK(KindOf([&] { read_tasks(dir / "bad.jsonl"); }) == ErrorKind::kMalformedRecord);
}

TEST_CASE("shipped template file matches the built-in set") {
  const auto shipped =
      InstructionTemplates::Load(std::filesystem::path(MTSIM_SOURCE_DIR) / "templates/default.json");
  for (TaskKind k : kAllTasks) CHECK(shipped.get(k) == T().get(k));
}
