// mtsim/tasks.hpp

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

#ifndef MTSIM_TASKS_HPP_
#define MTSIM_TASKS_HPP_

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mtsim/audio.hpp"
#include "mtsim/corpus.hpp"
#include "mtsim/mixture.hpp"
#include "mtsim/random.hpp"
#include "mtsim/text.hpp"

namespace mtsim {

/// The six instruction-based recognition tasks:
///   MT  transcribe every talker, SOT order
///   TT  transcribe the talker matching a prepended enrollment clip
///   KT  transcribe the talker who said a given keyword
///   SS  transcribe all talkers of one sex
///   OS  transcribe the n-th talker to start
///   TL  transcribe all talkers of one language
enum class TaskKind { kMT, kTT, kKT, kSS, kOS, kTL };

inline constexpr std::array<TaskKind, 6> kAllTasks = {
    TaskKind::kMT, TaskKind::kTT, TaskKind::kKT,
    TaskKind::kSS, TaskKind::kOS, TaskKind::kTL};

std::string_view to_string(TaskKind kind);
// Case-insensitive ("mt", "MT").
std::optional<TaskKind> parse_task_kind(std::string_view s);

/// Task-specific metadata; exactly the fields relevant to the task are set.
struct TaskMeta {
  std::optional<std::string> target_speaker;          // TT, KT
  std::optional<std::string> enrollment_utterance_id;  // TT
  std::optional<std::string> keyword;                  // KT
  std::optional<int> ordinal;                          // OS, 1-based
  std::optional<Sex> sex;                              // SS
  std::optional<Language> language;                    // TL

  bool operator==(const TaskMeta &) const = default;
};

/// One (instruction, audio, target) triple.
struct TaskSample {
  std::string sample_id;
  TaskKind task = TaskKind::kMT;
  std::string mixture_id;
  std::string audio_path;
  std::string instruction;
  std::string target;  // SOT string
  TaskMeta meta;

  bool operator==(const TaskSample &) const = default;
};

/// Instruction paraphrases per task. Placeholders: {KEYWORD} (KT),
/// {ORDINAL} (OS), {SEX} (SS), {LANGUAGE} (TL). Every template of a task
/// must contain that task's placeholder and no other.
class InstructionTemplates {
 public:
  /// Built-in paraphrases, used when no template file is given.
  static InstructionTemplates Defaults();

  /// JSON object: {"MT": ["...", ...], "TT": [...], ...}. Tasks absent from
  /// the file keep no templates; generating them throws BadTemplate.
  static InstructionTemplates Load(const std::filesystem::path &path);
  static InstructionTemplates FromJson(const nlohmann::json &j);
  nlohmann::json ToJson() const;

  const std::vector<std::string> &get(TaskKind kind) const;

  /// Uniformly chosen template with placeholders substituted.
  std::string Render(TaskKind kind, RandomStream &rng,
                     const std::map<std::string, std::string> &values) const;

 private:
  std::map<TaskKind, std::vector<std::string>> templates_;
};

struct TaskConfig {
  NormalizationConfig norm;
  size_t min_keyword_length = 6;
  double enrollment_sec = 3.0;
  double separator_silence_sec = 3.0;
  // TT: fall back to the mixture's own source utterance when the target
  // speaker has no other utterance.
  bool tt_allow_same_utterance = false;
  // TT: random enrollment window instead of the first enrollment_sec.
  bool tt_random_window = false;
  // SS: allow asking for a sex that is absent from the mixture.
  bool ss_allow_absent = false;
};

struct Keyword {
  std::string word;  // normalized
  std::string speaker_id;
  size_t component = 0;
  bool operator==(const Keyword &) const = default;
};

/// Normalized words of length >= min_length (code points) that occur exactly
/// once across all components' normalized transcripts, with the talker who
/// said them. Sorted by word. Empty for single-talker records.
std::vector<Keyword> candidate_keywords(const MixtureRecord &record,
                                        const TaskConfig &cfg = {});

// The normalized per-component transcripts, in start order.
std::vector<std::string> normalized_segments(const MixtureRecord &record,
                                             const NormalizationConfig &norm,
                                             const std::function<bool(const MixtureComponent &)>
                                                 &filter = {});

TaskSample gen_mt(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg = {});

struct TargetTalkerResult {
  TaskSample sample;
  Waveform audio;  // enrollment clip + silence + mixture
};

/// Throws NoEnrollmentAvailable.
TargetTalkerResult gen_tt(const MixtureRecord &record, const SpeakerPool &pool,
                          const Waveform &mixture_audio,
                          const InstructionTemplates &templates, RandomStream &rng,
                          const TaskConfig &cfg = {});

/// Throws NoValidKeyword.
TaskSample gen_kt(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg = {});

/// Throws EmptyTarget (only with ss_allow_absent).
TaskSample gen_ss(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg = {});

TaskSample gen_os(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg = {});

/// Throws MonolingualRecord.
TaskSample gen_tl(const MixtureRecord &record, const InstructionTemplates &templates,
                  RandomStream &rng, const TaskConfig &cfg = {});

std::string ordinal_word(int n);

/// Audio plumbing for gen_taskset. `load_mixture` supplies rendered mixture
/// audio for TT (defaults to rendering from the pool); `store_composite`
/// persists a TT composite and returns the path to record in the sample
/// (defaults to discarding it and leaving the record's audio path). Both may
/// be called concurrently.
struct TaskAudioIo {
  std::function<Waveform(const MixtureRecord &)> load_mixture;
  std::function<std::string(const TaskSample &, const Waveform &)> store_composite;
};

struct TaskSetResult {
  std::vector<TaskSample> samples;
  // Skipped records by reason (error kind name).
  std::map<std::string, size_t> skipped;
  std::map<TaskKind, size_t> emitted;
};

/// One task per record, drawn by weight from record i's own sub-stream of
/// `seed`; records whose generator fails are skipped and counted. Output is
/// in record order and independent of `jobs`.
TaskSetResult gen_taskset(const std::vector<MixtureRecord> &records, const SpeakerPool *pool,
                          const std::vector<std::pair<TaskKind, double>> &weights,
                          const InstructionTemplates &templates, uint64_t seed,
                          const TaskConfig &cfg = {}, const TaskAudioIo &io = {},
                          size_t jobs = 1);

/// Parses "mt:2,tt:1" or "mt,tt" (weight 1). Throws Error(kUsage).
std::vector<std::pair<TaskKind, double>> parse_task_mix(std::string_view spec);
std::string task_mix_string(const std::vector<std::pair<TaskKind, double>> &mix);

nlohmann::json to_json(const TaskSample &sample);
TaskSample task_from_json(const nlohmann::json &j, size_t line_no = 0);
std::vector<TaskSample> read_tasks(const std::filesystem::path &path);
void write_tasks(const std::vector<TaskSample> &samples, const std::filesystem::path &path);

}  // namespace mtsim

#endif  // MTSIM_TASKS_HPP_
