// tasks.cpp

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

#include "mtsim/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "mtsim/error.hpp"
#include "mtsim/io.hpp"
#include "mtsim/mixer.hpp"
#include "mtsim/parallel.hpp"
#include "mtsim/sot.hpp"

namespace mtsim {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kMT: return "MT";
    case TaskKind::kTT: return "TT";
    case TaskKind::kKT: return "KT";
    case TaskKind::kSS: return "SS";
    case TaskKind::kOS: return "OS";
    case TaskKind::kTL: return "TL";
  }
  return "?";
}

std::optional<TaskKind> parse_task_kind(std::string_view s) {
  std::string upper(s);
  for (char &c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (TaskKind k : kAllTasks)
    if (to_string(k) == upper) return k;
  return std::nullopt;
}

namespace {

constexpr std::string_view kPlaceholders[] = {"{KEYWORD}", "{ORDINAL}", "{SEX}", "{LANGUAGE}"};

std::optional<std::string_view> PlaceholderFor(TaskKind kind) {
  switch (kind) {
    case TaskKind::kKT: return "{KEYWORD}";
    case TaskKind::kOS: return "{ORDINAL}";
    case TaskKind::kSS: return "{SEX}";
    case TaskKind::kTL: return "{LANGUAGE}";
    default: return std::nullopt;
  }
}

void ValidateTemplate(TaskKind kind, const std::string &tmpl) {
  const auto own = PlaceholderFor(kind);
  for (std::string_view ph : kPlaceholders) {
    const bool present = tmpl.find(ph) != std::string::npos;
    if (own && ph == *own && !present) {
      throw Error(ErrorKind::kBadTemplate, std::string(to_string(kind)) + " template lacks " +
                                               std::string(ph) + ": " + tmpl);
    }
    if ((!own || ph != *own) && present) {
      throw Error(ErrorKind::kBadTemplate, std::string(to_string(kind)) +
                                               " template uses foreign placeholder " +
                                               std::string(ph) + ": " + tmpl);
    }
  }
  if (tmpl.find("<sc>") != std::string::npos)
    throw Error(ErrorKind::kBadTemplate, "template contains the speaker-change token");
}

std::string Substitute(std::string s, const std::map<std::string, std::string> &values) {
  for (const auto &[key, value] : values) {
    const std::string ph = "{" + key + "}";
    size_t pos = 0;
    while ((pos = s.find(ph, pos)) != std::string::npos) {
      s.replace(pos, ph.size(), value);
      pos += value.size();
    }
  }
  return s;
}

}  // namespace

InstructionTemplates InstructionTemplates::Defaults() {
  InstructionTemplates t;
  t.templates_[TaskKind::kMT] = {
      "Transcribe the speech of all talkers in the order they start speaking.",
      "Write down what every speaker says, one talker after another by start time.",
      "Recognize the overlapped speech of all talkers in order of their start times."};
  t.templates_[TaskKind::kTT] = {
      "The first 3 seconds contain a clip of the target talker. Transcribe only that "
      "talker's speech.",
      "Listen to the reference clip at the beginning and transcribe the speech of the same "
      "talker in the mixture.",
      "Transcribe the talker whose voice matches the enrollment clip before the silence."};
  t.templates_[TaskKind::kKT] = {
      "Transcribe the speech of the talker who said the word \"{KEYWORD}\".",
      "One talker says \"{KEYWORD}\". Write down everything that talker says.",
      "Find the talker who uttered \"{KEYWORD}\" and transcribe their speech."};
  t.templates_[TaskKind::kSS] = {
      "Transcribe the speech of all {SEX} talkers.",
      "Write down what the {SEX} speakers say, in order of their start times.",
      "Only transcribe the {SEX} talkers in this recording."};
  t.templates_[TaskKind::kOS] = {
      "Transcribe the speech of the {ORDINAL} talker.",
      "Write down what the {ORDINAL} speaker to start talking says.",
      "Transcribe only the talker who starts speaking {ORDINAL}."};
  t.templates_[TaskKind::kTL] = {
      "Transcribe the speech of the talkers speaking {LANGUAGE}.",
      "Write down only the {LANGUAGE} speech in this recording.",
      "Transcribe every talker who speaks {LANGUAGE}."};
  return t;
}

InstructionTemplates InstructionTemplates::FromJson(const json &j) {
  if (!j.is_object()) throw Error(ErrorKind::kBadTemplate, "template file must be a JSON object");
  InstructionTemplates t;
  for (const auto &[key, list] : j.items()) {
    const auto kind = parse_task_kind(key);
    if (!kind) throw Error(ErrorKind::kBadTemplate, "unknown task '" + key + "'");
    if (!list.is_array() || list.empty())
      throw Error(ErrorKind::kBadTemplate, key + ": expected a non-empty list");
    auto &dst = t.templates_[*kind];
    for (const auto &item : list) {
      if (!item.is_string()) throw Error(ErrorKind::kBadTemplate, key + ": non-string template");
      ValidateTemplate(*kind, item.get<std::string>());
      dst.push_back(item.get<std::string>());
    }
  }
  return t;
}

InstructionTemplates InstructionTemplates::Load(const fs::path &path) {
  const json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::kBadTemplate, path.string() + ": invalid JSON");
  return FromJson(j);
}

json InstructionTemplates::ToJson() const {
  json j = json::object();
  for (const auto &[kind, list] : templates_) j[std::string(to_string(kind))] = list;
  return j;
}

const std::vector<std::string> &InstructionTemplates::get(TaskKind kind) const {
  static const std::vector<std::string> kEmpty;
  auto it = templates_.find(kind);
  return it == templates_.end() ? kEmpty : it->second;
}

std::string InstructionTemplates::Render(TaskKind kind, RandomStream &rng,
                                         const std::map<std::string, std::string> &values) const {
  const auto &list = get(kind);
  if (list.empty())
    throw Error(ErrorKind::kBadTemplate, "no templates for task " + std::string(to_string(kind)));
  return Substitute(list[rng.Index(list.size())], values);
}

std::string ordinal_word(int n) {
  static const char *kWords[] = {"first", "second", "third", "fourth", "fifth",
                                 "sixth", "seventh", "eighth", "ninth", "tenth"};
  if (n >= 1 && n <= 10) return kWords[n - 1];
  return std::to_string(n) + "th";
}

std::vector<std::string> normalized_segments(
    const MixtureRecord &record, const NormalizationConfig &norm,
    const std::function<bool(const MixtureComponent &)> &filter) {
  std::vector<std::string> out;
  for (const auto &text : order_segments(record, filter)) out.push_back(normalize_text(text, norm));
  return out;
}

std::vector<Keyword> candidate_keywords(const MixtureRecord &record, const TaskConfig &cfg) {
  if (record.components.size() < 2) return {};
  struct Count {
    size_t n = 0;
    size_t component = 0;
  };
  std::map<std::string, Count> counts;
  for (size_t i = 0; i < record.components.size(); ++i) {
    for (auto &w : normalize_tokens(record.components[i].text, cfg.norm)) {
      Count &c = counts[w];
      ++c.n;
      c.component = i;
    }
  }
  std::vector<Keyword> out;
  for (const auto &[word, c] : counts) {
    if (c.n != 1 || utf8_length(word) < cfg.min_keyword_length) continue;
    out.push_back({word, record.components[c.component].speaker_id, c.component});
  }
  return out;
}

namespace {

TaskSample BaseSample(const MixtureRecord &record, TaskKind kind) {
  TaskSample s;
  s.task = kind;
  s.mixture_id = record.mixture_id;
  s.sample_id = record.mixture_id + "-" + std::string(to_string(kind));
  s.audio_path = record.audio_path;
  return s;
}

// Components in start order (indices).
std::vector<size_t> StartOrder(const MixtureRecord &record) {
  std::vector<size_t> order(record.components.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return record.components[a].start_sec < record.components[b].start_sec;
  });
  return order;
}

}  // namespace

TaskSample gen_mt(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg) {
  TaskSample s = BaseSample(record, TaskKind::kMT);
  s.instruction = templates.Render(TaskKind::kMT, rng, {});
  s.target = serialize_sot(normalized_segments(record, cfg.norm));
  return s;
}

TargetTalkerResult gen_tt(const MixtureRecord &record, const SpeakerPool &pool,
                          const Waveform &mixture_audio, const InstructionTemplates &templates,
                          RandomStream &rng, const TaskConfig &cfg) {
  if (record.components.empty())
    throw Error(ErrorKind::kNoEnrollmentAvailable, record.mixture_id + ": empty record");
  const MixtureComponent &target = record.components[rng.Index(record.components.size())];
  const SpeakerPool::Speaker *spk = pool.find_speaker(target.speaker_id);
  if (!spk) {
    throw Error(ErrorKind::kNoEnrollmentAvailable,
                "speaker '" + target.speaker_id + "' not in pool");
  }
  std::vector<const Utterance *> candidates;
  const Utterance *same = nullptr;
  for (size_t idx : spk->utterances) {
    const Utterance &u = pool.utterances()[idx];
    if (u.id == target.utterance_id) {
      same = &u;
    } else {
      candidates.push_back(&u);
    }
  }
  if (candidates.empty() && cfg.tt_allow_same_utterance && same) candidates.push_back(same);
  if (candidates.empty()) {
    throw Error(ErrorKind::kNoEnrollmentAvailable,
                "speaker '" + target.speaker_id + "' has no other utterance");
  }
  const Utterance &enroll = *candidates[rng.Index(candidates.size())];
  const Waveform enroll_audio = pool.load_audio(enroll);
  double window_start = 0.0;
  if (cfg.tt_random_window) {
    const double slack = enroll_audio.duration_sec() - cfg.enrollment_sec;
    if (slack > 0.0) {
      const int64_t max_off = seconds_to_samples(slack, enroll_audio.sample_rate);
      window_start = static_cast<double>(rng.Index(static_cast<uint64_t>(max_off) + 1)) /
                     enroll_audio.sample_rate;
    }
  }

  const std::vector<Waveform> parts = {
      extract_clip(enroll_audio, window_start, cfg.enrollment_sec),
      silence(cfg.separator_silence_sec, mixture_audio.sample_rate), mixture_audio};

  TargetTalkerResult out;
  out.sample = BaseSample(record, TaskKind::kTT);
  out.sample.instruction = templates.Render(TaskKind::kTT, rng, {});
  out.sample.target = normalize_text(target.text, cfg.norm);
  out.sample.meta.target_speaker = target.speaker_id;
  out.sample.meta.enrollment_utterance_id = enroll.id;
  out.audio = concat(parts);
  return out;
}

TaskSample gen_kt(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg) {
  const auto candidates = candidate_keywords(record, cfg);
  if (candidates.empty())
    throw Error(ErrorKind::kNoValidKeyword, record.mixture_id + ": no unique long word");
  const Keyword &kw = candidates[rng.Index(candidates.size())];
  TaskSample s = BaseSample(record, TaskKind::kKT);
  s.instruction = templates.Render(TaskKind::kKT, rng, {{"KEYWORD", kw.word}});
  s.target = normalize_text(record.components[kw.component].text, cfg.norm);
  s.meta.keyword = kw.word;
  s.meta.target_speaker = kw.speaker_id;
  return s;
}

TaskSample gen_ss(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg) {
  std::vector<Sex> options;
  for (Sex sex : {Sex::kMale, Sex::kFemale}) {
    const bool present = std::any_of(record.components.begin(), record.components.end(),
                                     [&](const MixtureComponent &c) { return c.sex == sex; });
    if (present || cfg.ss_allow_absent) options.push_back(sex);
  }
  if (options.empty()) throw Error(ErrorKind::kEmptyTarget, record.mixture_id + ": no talkers");
  const Sex sex = options[rng.Index(options.size())];
  const auto segments = normalized_segments(
      record, cfg.norm, [sex](const MixtureComponent &c) { return c.sex == sex; });
  if (segments.empty()) {
    throw Error(ErrorKind::kEmptyTarget, record.mixture_id + ": no " +
                                             std::string(display_name(sex)) + " talker");
  }
  TaskSample s = BaseSample(record, TaskKind::kSS);
  s.instruction = templates.Render(TaskKind::kSS, rng, {{"SEX", std::string(display_name(sex))}});
  s.target = serialize_sot(segments);
  s.meta.sex = sex;
  return s;
}

TaskSample gen_os(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg) {
  if (record.components.empty())
    throw Error(ErrorKind::kEmptyTarget, record.mixture_id + ": no talkers");
  const auto order = StartOrder(record);
  const int n = static_cast<int>(rng.Index(order.size())) + 1;
  TaskSample s = BaseSample(record, TaskKind::kOS);
  s.instruction = templates.Render(TaskKind::kOS, rng, {{"ORDINAL", ordinal_word(n)}});
  s.target = normalize_text(record.components[order[static_cast<size_t>(n - 1)]].text, cfg.norm);
  s.meta.ordinal = n;
  return s;
}

TaskSample gen_tl(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg) {
  std::vector<Language> present;
  for (Language lang : kAllLanguages)
    if (contains_language(record, lang)) present.push_back(lang);
  if (present.size() < 2) {
    throw Error(ErrorKind::kMonolingualRecord,
                record.mixture_id + ": TL needs at least two languages");
  }
  const Language lang = present[rng.Index(present.size())];
  TaskSample s = BaseSample(record, TaskKind::kTL);
  s.instruction =
      templates.Render(TaskKind::kTL, rng, {{"LANGUAGE", std::string(display_name(lang))}});
  s.target = serialize_sot(normalized_segments(
      record, cfg.norm, [lang](const MixtureComponent &c) { return c.language == lang; }));
  s.meta.language = lang;
  return s;
}

TaskSetResult gen_taskset(const std::vector<MixtureRecord> &records, const SpeakerPool *pool,
                          const std::vector<std::pair<TaskKind, double>> &weights,
                          const InstructionTemplates &templates, uint64_t seed,
                          const TaskConfig &cfg, const TaskAudioIo &io, size_t jobs) {
  std::vector<double> w;
  double total = 0.0;
  for (const auto &[kind, weight] : weights) {
    if (!(weight >= 0.0) || !std::isfinite(weight))
      throw Error(ErrorKind::kUsage, "task weights must be finite and non-negative");
    w.push_back(weight);
    total += weight;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::kUsage, "all task weights are zero");

  struct Slot {
    std::optional<TaskSample> sample;
    std::string skip_reason;
  };
  std::vector<Slot> slots(records.size());
  const RandomStream root = RandomStream(seed).Substream("tasks");

  parallel_for(records.size(), jobs, [&](size_t i) {
    const MixtureRecord &rec = records[i];
    const RandomStream item = root.Substream(i);
    RandomStream pick = item.Substream("task");
    RandomStream rng = item.Substream("generate");
    const TaskKind kind = weights[pick.Weighted(w)].first;
    try {
      switch (kind) {
        case TaskKind::kMT: slots[i].sample = gen_mt(rec, templates, rng, cfg); break;
        case TaskKind::kKT: slots[i].sample = gen_kt(rec, templates, rng, cfg); break;
        case TaskKind::kSS: slots[i].sample = gen_ss(rec, templates, rng, cfg); break;
        case TaskKind::kOS: slots[i].sample = gen_os(rec, templates, rng, cfg); break;
        case TaskKind::kTL: slots[i].sample = gen_tl(rec, templates, rng, cfg); break;
        case TaskKind::kTT: {
          if (!pool)
            throw Error(ErrorKind::kNoEnrollmentAvailable, "TT requires a speaker pool");
          Waveform mix;
          if (io.load_mixture) {
            mix = io.load_mixture(rec);
          } else {
            MixtureRecord copy = rec;
            mix = render_mixture(copy, *pool);
          }
          auto tt = gen_tt(rec, *pool, mix, templates, rng, cfg);
          if (io.store_composite) tt.sample.audio_path = io.store_composite(tt.sample, tt.audio);
          slots[i].sample = std::move(tt.sample);
          break;
        }
      }
    } catch (const Error &e) {
      switch (e.kind()) {
        case ErrorKind::kNoEnrollmentAvailable:
        case ErrorKind::kNoValidKeyword:
        case ErrorKind::kEmptyTarget:
        case ErrorKind::kMonolingualRecord:
          slots[i].skip_reason = std::string(to_string(kind)) + ":" +
                                 std::string(ErrorKindName(e.kind()));
          break;
        default:
          throw;
      }
    }
  });

  TaskSetResult result;
  for (auto &slot : slots) {
    if (slot.sample) {
      result.emitted[slot.sample->task] += 1;
      result.samples.push_back(std::move(*slot.sample));
    } else {
      result.skipped[slot.skip_reason] += 1;
    }
  }
  return result;
}

std::vector<std::pair<TaskKind, double>> parse_task_mix(std::string_view spec) {
  std::vector<std::pair<TaskKind, double>> mix;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t next = spec.find(',', pos);
    if (next == std::string_view::npos) next = spec.size();
    std::string_view item = spec.substr(pos, next - pos);
    pos = next + 1;
    if (item.empty()) continue;
    double weight = 1.0;
    const size_t colon = item.find(':');
    std::string_view name = item.substr(0, colon);
    if (colon != std::string_view::npos) {
      const std::string num(item.substr(colon + 1));
      try {
        size_t used = 0;
        weight = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
      } catch (const std::exception &) {
        throw Error(ErrorKind::kUsage, "bad task weight '" + num + "'");
      }
    }
    const auto kind = parse_task_kind(name);
    if (!kind) throw Error(ErrorKind::kUsage, "unknown task '" + std::string(name) + "'");
    if (!(weight >= 0.0)) throw Error(ErrorKind::kUsage, "negative task weight");
    mix.emplace_back(*kind, weight);
  }
  if (mix.empty()) throw Error(ErrorKind::kUsage, "empty task mix");
  return mix;
}

std::string task_mix_string(const std::vector<std::pair<TaskKind, double>> &mix) {
  std::string s;
  for (const auto &[kind, weight] : mix) {
    if (!s.empty()) s += ',';
    json w = weight;
    s += std::string(to_string(kind)) + ":" + w.dump();
  }
  return s;
}

json to_json(const TaskSample &sample) {
  json meta = json::object();
  const TaskMeta &m = sample.meta;
  if (m.target_speaker) meta["target_speaker"] = *m.target_speaker;
  if (m.enrollment_utterance_id) meta["enrollment_utterance_id"] = *m.enrollment_utterance_id;
  if (m.keyword) meta["keyword"] = *m.keyword;
  if (m.ordinal) meta["ordinal"] = *m.ordinal;
  if (m.sex) meta["sex"] = to_string(*m.sex);
  if (m.language) meta["language"] = to_string(*m.language);
  return json{{"sample_id", sample.sample_id}, {"task", to_string(sample.task)},
              {"mixture_id", sample.mixture_id}, {"audio", sample.audio_path},
              {"instruction", sample.instruction}, {"target", sample.target},
              {"meta", std::move(meta)}};
}

namespace {

[[noreturn]] void BadTask(size_t line_no, const std::string &why) {
  throw Error(ErrorKind::kMalformedRecord, "line " + std::to_string(line_no) + ": " + why);
}

std::string Str(const json &j, const char *key, size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    BadTask(line_no, std::string("missing or non-string field '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

TaskSample task_from_json(const json &j, size_t line_no) {
  TaskSample s;
  s.sample_id = Str(j, "sample_id", line_no);
  const auto kind = parse_task_kind(Str(j, "task", line_no));
  if (!kind) BadTask(line_no, "unknown task");
  s.task = *kind;
  s.mixture_id = Str(j, "mixture_id", line_no);
  s.audio_path = Str(j, "audio", line_no);
  s.instruction = Str(j, "instruction", line_no);
  s.target = Str(j, "target", line_no);
  auto meta = j.find("meta");
  if (meta != j.end()) {
    if (!meta->is_object()) BadTask(line_no, "meta is not an object");
    const json &m = *meta;
    if (m.contains("target_speaker")) s.meta.target_speaker = Str(m, "target_speaker", line_no);
    if (m.contains("enrollment_utterance_id"))
      s.meta.enrollment_utterance_id = Str(m, "enrollment_utterance_id", line_no);
    if (m.contains("keyword")) s.meta.keyword = Str(m, "keyword", line_no);
    if (m.contains("ordinal")) {
      if (!m["ordinal"].is_number_integer()) BadTask(line_no, "ordinal must be an integer");
      s.meta.ordinal = m["ordinal"].get<int>();
    }
    if (m.contains("sex")) {
      const auto sex = parse_sex(Str(m, "sex", line_no));
      if (!sex) BadTask(line_no, "bad sex");
      s.meta.sex = *sex;
    }
    if (m.contains("language")) {
      const auto lang = parse_language(Str(m, "language", line_no));
      if (!lang) BadTask(line_no, "bad language");
      s.meta.language = *lang;
    }
  }
  return s;
}

std::vector<TaskSample> read_tasks(const fs::path &path) {
  const auto lines = read_jsonl(path, [](size_t line_no, const std::string &msg) {
    BadTask(line_no, msg);
  });
  std::vector<TaskSample> out;
  out.reserve(lines.size());
  for (const auto &line : lines) out.push_back(task_from_json(line.value, line.line_no));
  return out;
}

void write_tasks(const std::vector<TaskSample> &samples, const fs::path &path) {
  std::vector<json> lines;
  lines.reserve(samples.size());
  for (const auto &s : samples) lines.push_back(to_json(s));
  write_file_atomic(path, to_jsonl(lines));
}

}  // namespace mtsim
