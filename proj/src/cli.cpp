// cli.cpp

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

#include "mtsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "mtsim/error.hpp"
#include "mtsim/io.hpp"
#include "mtsim/parallel.hpp"
#include "mtsim/sot.hpp"

namespace mtsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string StorePath(const std::string &p, const std::optional<fs::path> &base) {
  if (p.empty() || !base) return p;
  return relative_path_string(p, *base);
}

json SizeMapToJson(const std::map<size_t, size_t> &m) {
  json j = json::object();
  for (const auto &[k, v] : m) j[std::to_string(k)] = v;
  return j;
}

json HoursMapToJson(const std::map<size_t, double> &m) {
  json j = json::object();
  for (const auto &[k, v] : m) j[std::to_string(k)] = v;
  return j;
}

size_t ParseTalkerKey(const std::string &key) {
  try {
    size_t used = 0;
    const unsigned long k = std::stoul(key, &used);
    if (used == key.size()) return k;
  } catch (const std::exception &) {
  }
  throw Error(ErrorKind::kUsage, "bad talker count key '" + key + "'");
}

template <typename T>
void Take(const json &j, const char *key, T &dst) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  try {
    dst = it->get<T>();
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kUsage, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const RunConfig &cfg, const std::optional<fs::path> &base_dir) {
  json counts = json::object();
  for (const auto &[k, n] : cfg.plan.counts) counts[std::to_string(k)] = n;
  json plan{{"counts", std::move(counts)},
            {"hours", HoursMapToJson(cfg.plan.hours)},
            {"de_share", cfg.plan.de_share},
            {"de_tolerance", cfg.plan.de_tolerance},
            {"delta_min", cfg.plan.mix.delta_min},
            {"delta_max", std::isinf(cfg.plan.mix.delta_max) ? json(nullptr)
                                                             : json(cfg.plan.mix.delta_max)},
            {"max_talkers", cfg.plan.mix.max_talkers}};
  json toy{{"en_speakers", cfg.toy.en_speakers},
           {"de_speakers", cfg.toy.de_speakers},
           {"utterances_per_speaker", cfg.toy.utterances_per_speaker},
           {"min_words", cfg.toy.min_words},
           {"max_words", cfg.toy.max_words}};
  return json{{"seed", cfg.seed},
              {"manifest", StorePath(cfg.manifest, base_dir)},
              {"out", StorePath(cfg.out, base_dir)},
              {"templates", StorePath(cfg.templates, base_dir)},
              {"mixtures", StorePath(cfg.mixtures, base_dir)},
              {"sample_rate", cfg.sample_rate},
              {"plan", std::move(plan)},
              {"tasks", cfg.tasks},
              {"norm", norm_spec_string(cfg.norm)},
              {"tt_allow_same_utterance", cfg.tt_allow_same_utterance},
              {"tt_random_window", cfg.tt_random_window},
              {"ss_allow_absent", cfg.ss_allow_absent},
              {"mode", cfg.mode},
              {"toy", std::move(toy)}};
}

void merge_config(RunConfig &cfg, const json &j) {
  if (!j.is_object()) throw Error(ErrorKind::kUsage, "config must be a JSON object");
  Take(j, "seed", cfg.seed);
  Take(j, "manifest", cfg.manifest);
  Take(j, "out", cfg.out);
  Take(j, "templates", cfg.templates);
  Take(j, "mixtures", cfg.mixtures);
  Take(j, "sample_rate", cfg.sample_rate);
  Take(j, "tasks", cfg.tasks);
  Take(j, "tt_allow_same_utterance", cfg.tt_allow_same_utterance);
  Take(j, "tt_random_window", cfg.tt_random_window);
  Take(j, "ss_allow_absent", cfg.ss_allow_absent);
  Take(j, "mode", cfg.mode);
  if (j.contains("norm") && j["norm"].is_string()) cfg.norm = parse_norm_spec(j["norm"].get<std::string>());
  if (auto it = j.find("plan"); it != j.end() && it->is_object()) {
    const json &p = *it;
    if (auto c = p.find("counts"); c != p.end() && c->is_object()) {
      cfg.plan.counts.clear();
      for (const auto &[k, v] : c->items()) cfg.plan.counts[ParseTalkerKey(k)] = v.get<size_t>();
    }
    if (auto h = p.find("hours"); h != p.end() && h->is_object()) {
      cfg.plan.hours.clear();
      for (const auto &[k, v] : h->items()) cfg.plan.hours[ParseTalkerKey(k)] = v.get<double>();
    }
    Take(p, "de_share", cfg.plan.de_share);
    Take(p, "de_tolerance", cfg.plan.de_tolerance);
    Take(p, "delta_min", cfg.plan.mix.delta_min);
    if (p.contains("delta_max")) {
      cfg.plan.mix.delta_max = p["delta_max"].is_null()
                                   ? std::numeric_limits<double>::infinity()
                                   : p["delta_max"].get<double>();
    }
    Take(p, "max_talkers", cfg.plan.mix.max_talkers);
  }
  if (auto it = j.find("toy"); it != j.end() && it->is_object()) {
    Take(*it, "en_speakers", cfg.toy.en_speakers);
    Take(*it, "de_speakers", cfg.toy.de_speakers);
    Take(*it, "utterances_per_speaker", cfg.toy.utterances_per_speaker);
    Take(*it, "min_words", cfg.toy.min_words);
    Take(*it, "max_words", cfg.toy.max_words);
  }
}

namespace {

void WriteEffectiveConfig(const RunConfig &cfg, const std::string &command,
                          const fs::path &path) {
  const json j{{"toolkit", kToolkitName},
               {"version", kToolkitVersion},
               {"command", command},
               {"config", to_json(cfg, path.parent_path())}};
  write_file_atomic(path, j.dump(2) + "\n");
}

void Require(const std::string &value, const char *flag) {
  if (value.empty()) throw Error(ErrorKind::kUsage, std::string("missing required ") + flag);
}

std::string Percent(double x) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << 100.0 * x << "%";
  return ss.str();
}

// --- simulate -------------------------------------------------------------

int CmdSimulate(const RunConfig &cfg, size_t jobs, std::ostream &out) {
  Require(cfg.manifest, "--manifest");
  Require(cfg.out, "--out");
  const fs::path out_dir = cfg.out;
  const SpeakerPool pool = load_manifest(cfg.manifest, cfg.sample_rate);
  std::vector<MixtureRecord> records = simulate_corpus(pool, cfg.plan, cfg.seed, jobs);
  for (auto &r : records) r.audio_path = "audio/" + r.mixture_id + ".wav";
  parallel_for(records.size(), jobs, [&](size_t i) {
    const Waveform w = render_mixture(records[i], pool);
    write_audio(w, out_dir / records[i].audio_path);
  });
  write_mixtures(records, out_dir / "mixtures.jsonl");
  WriteEffectiveConfig(cfg, "simulate", out_dir / "simulate.config.json");

  const MixtureStats st = mixture_stats(records, pool.sample_rate());
  out << "simulated " << records.size() << " mixtures, " << std::fixed << std::setprecision(4)
      << st.total_hours << " h, German share " << Percent(st.de_share) << "\n";
  for (const auto &[k, n] : st.talker_histogram) out << "  k=" << k << ": " << n << "\n";
  return kExitOk;
}

// --- gen-tasks ------------------------------------------------------------

int CmdGenTasks(const RunConfig &cfg, size_t jobs, std::ostream &out) {
  Require(cfg.mixtures, "--mixtures");
  Require(cfg.out, "--out");
  const fs::path out_dir = cfg.out;
  const fs::path mix_dir = fs::path(cfg.mixtures).parent_path();
  std::vector<MixtureRecord> records = read_mixtures(cfg.mixtures);
  for (auto &r : records) {
    if (!r.audio_path.empty())
      r.audio_path = relative_path_string(resolve_relative(r.audio_path, mix_dir), out_dir);
  }
  std::optional<SpeakerPool> pool;
  if (!cfg.manifest.empty()) pool = load_manifest(cfg.manifest, cfg.sample_rate);
  const InstructionTemplates templates = cfg.templates.empty()
                                             ? InstructionTemplates::Defaults()
                                             : InstructionTemplates::Load(cfg.templates);
  const auto weights = parse_task_mix(cfg.tasks);
  for (const auto &[kind, weight] : weights) {
    if (kind == TaskKind::kTT && weight > 0.0 && !pool)
      throw Error(ErrorKind::kUsage, "TT tasks need --manifest for enrollment audio");
  }

  TaskConfig tcfg;
  tcfg.norm = cfg.norm;
  tcfg.tt_allow_same_utterance = cfg.tt_allow_same_utterance;
  tcfg.tt_random_window = cfg.tt_random_window;
  tcfg.ss_allow_absent = cfg.ss_allow_absent;

  TaskAudioIo io;
  const int rate = pool ? pool->sample_rate() : cfg.sample_rate;
  io.load_mixture = [&](const MixtureRecord &r) {
    return read_audio(resolve_relative(r.audio_path, out_dir), rate);
  };
  io.store_composite = [&](const TaskSample &s, const Waveform &w) {
    const std::string rel = "tt_audio/" + s.sample_id + ".wav";
    write_audio(w, out_dir / rel);
    return rel;
  };

  TaskSetResult result =
      gen_taskset(records, pool ? &*pool : nullptr, weights, templates, cfg.seed, tcfg, io, jobs);
  std::sort(result.samples.begin(), result.samples.end(),
            [](const TaskSample &a, const TaskSample &b) { return a.sample_id < b.sample_id; });
  write_tasks(result.samples, out_dir / "tasks.jsonl");

  json summary{{"records", records.size()}, {"samples", result.samples.size()}};
  json emitted = json::object(), skipped = json::object();
  for (const auto &[kind, n] : result.emitted) emitted[std::string(to_string(kind))] = n;
  for (const auto &[reason, n] : result.skipped) skipped[reason] = n;
  summary["emitted"] = emitted;
  summary["skipped"] = skipped;
  write_file_atomic(out_dir / "tasks.summary.json", summary.dump(2) + "\n");
  WriteEffectiveConfig(cfg, "gen-tasks", out_dir / "gen-tasks.config.json");

  out << "generated " << result.samples.size() << " task samples from " << records.size()
      << " mixtures\n";
  for (const auto &[kind, n] : result.emitted) out << "  " << to_string(kind) << ": " << n << "\n";
  for (const auto &[reason, n] : result.skipped) out << "  skipped " << reason << ": " << n << "\n";
  return kExitOk;
}

// --- score ----------------------------------------------------------------

int CmdScore(const RunConfig &cfg, const std::string &refs_path, const std::string &hyps_path,
             size_t jobs, std::ostream &out) {
  Require(refs_path, "--refs");
  Require(hyps_path, "--hyps");
  const auto mode = parse_score_mode(cfg.mode);
  if (!mode) throw Error(ErrorKind::kUsage, "unknown --mode '" + cfg.mode + "'");
  const fs::path out_dir = cfg.out.empty() ? fs::path(hyps_path).parent_path() : fs::path(cfg.out);

  std::vector<KeyedText> refs;
  for (const auto &t : read_tasks(refs_path)) refs.push_back({t.sample_id, t.target});
  const auto hyps = read_hypotheses(hyps_path);
  const CorpusReport report = score_corpus(refs, hyps, *mode, cfg.norm, jobs);

  const std::string stem = "score." + std::string(to_string(*mode));
  json summary = summary_json(report);
  summary["toolkit"] = kToolkitName;
  summary["version"] = kToolkitVersion;
  summary["norm"] = norm_spec_string(cfg.norm);
  write_file_atomic(out_dir / (stem + ".json"), summary.dump(2) + "\n");
  std::vector<json> details;
  details.reserve(report.samples.size());
  for (const auto &s : report.samples) details.push_back(to_json(s));
  write_file_atomic(out_dir / (stem + ".details.jsonl"), to_jsonl(details));

  out << format_summary(report);
  return kExitOk;
}

// --- stats ----------------------------------------------------------------

json MixtureStatsJson(const MixtureStats &st) {
  json lang = json::object();
  for (const auto &[l, s] : st.component_language_share) lang[std::string(to_string(l))] = s;
  return json{{"type", "mixtures"},
              {"count", st.count},
              {"total_hours", st.total_hours},
              {"talker_histogram", SizeMapToJson(st.talker_histogram)},
              {"hours_by_talkers", HoursMapToJson(st.hours_by_talkers)},
              {"de_share", st.de_share},
              {"component_language_share", lang},
              {"overlap_histogram", st.overlap_histogram},
              {"mean_overlap", st.mean_overlap}};
}

int CmdStats(const std::string &input, const std::string &out_path, std::ostream &out,
             int sample_rate) {
  Require(input, "--input");
  const auto lines = read_jsonl(input, [](size_t line_no, const std::string &msg) {
    throw Error(ErrorKind::kMalformedRecord, "line " + std::to_string(line_no) + ": " + msg);
  });
  json result;
  std::ostringstream human;
  human << std::fixed << std::setprecision(4);
  const bool is_tasks = !lines.empty() && lines.front().value.contains("sample_id");
  if (!is_tasks) {
    const auto records = read_mixtures(input);
    const MixtureStats st = mixture_stats(records, sample_rate);
    result = MixtureStatsJson(st);
    human << "mixtures: " << st.count << "\n"
          << "total hours: " << st.total_hours << "\n"
          << "German share (hours): " << Percent(st.de_share) << "\n"
          << "mean overlap ratio: " << st.mean_overlap << "\n";
    for (const auto &[k, n] : st.talker_histogram) {
      human << "  k=" << k << ": " << n << " mixtures, " << st.hours_by_talkers.at(k) << " h\n";
    }
    human << "overlap histogram (0.1 bins):";
    for (size_t b : st.overlap_histogram) human << " " << b;
    human << "\n";
  } else {
    const auto samples = read_tasks(input);
    std::map<std::string, size_t> per_task;
    std::map<size_t, size_t> segments;
    for (const auto &s : samples) {
      per_task[std::string(to_string(s.task))] += 1;
      segments[parse_sot(s.target).size()] += 1;
    }
    json shares = json::object();
    for (const auto &[t, n] : per_task)
      shares[t] = samples.empty() ? 0.0 : static_cast<double>(n) / static_cast<double>(samples.size());
    result = json{{"type", "tasks"},
                  {"count", samples.size()},
                  {"task_histogram", per_task},
                  {"task_share", shares},
                  {"target_segment_histogram", SizeMapToJson(segments)}};
    human << "task samples: " << samples.size() << "\n";
    for (const auto &[t, n] : per_task) human << "  " << t << ": " << n << "\n";
  }
  const fs::path json_path = out_path.empty() ? fs::path(input + ".stats.json") : fs::path(out_path);
  write_file_atomic(json_path, result.dump(2) + "\n");
  out << human.str();
  return kExitOk;
}

// --- make-toy-corpus --------------------------------------------------------

int CmdMakeToyCorpus(RunConfig cfg, std::ostream &out) {
  Require(cfg.out, "--out");
  cfg.toy.seed = cfg.seed;
  cfg.toy.sample_rate = cfg.sample_rate;
  if (cfg.toy.min_words == 0 || cfg.toy.max_words < cfg.toy.min_words)
    throw Error(ErrorKind::kUsage, "need 1 <= min_words <= max_words");
  const fs::path manifest = make_toy_corpus(cfg.out, cfg.toy);
  WriteEffectiveConfig(cfg, "make-toy-corpus", fs::path(cfg.out) / "make-toy-corpus.config.json");
  const PoolStats st = pool_stats(load_manifest(manifest, cfg.sample_rate));
  out << "wrote " << manifest.generic_string() << ": " << st.utterance_count << " utterances, "
      << st.speaker_count << " speakers, " << std::fixed << std::setprecision(4)
      << st.total_hours << " h\n";
  return kExitOk;
}

template <typename T>
void FillPlanMap(std::map<size_t, T> &dst, const std::vector<size_t> &ks,
                 const std::vector<T> &values, const char *flag) {
  if (ks.size() != values.size()) {
    throw Error(ErrorKind::kUsage, std::string("--k and ") + flag +
                                       " need the same number of comma-separated values");
  }
  dst.clear();
  for (size_t i = 0; i < ks.size(); ++i) dst[ks[i]] = values[i];
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Multi-talker corpus simulation, instruction task generation and WER scoring"};
  app.name("mtsim");
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);

  std::string config_path, manifest, out_dir, templates, mixtures, tasks, mode, norm;
  std::string refs, hyps, input;
  uint64_t seed = 0;
  size_t jobs = 1;
  std::vector<size_t> ks;
  std::vector<size_t> counts;
  std::vector<double> hours;
  double de_share = 0, de_tol = 0, delta_min = 0, delta_max = 0;
  size_t max_talkers = 0;
  int sample_rate = 0;
  size_t en_spk = 0, de_spk = 0, utts = 0;
  bool tt_same = false, tt_random = false, ss_absent = false;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override it)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Run seed");
    sub->add_option("--jobs", jobs, "Worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--norm", norm, "Text normalization, e.g. upper | lower,keep-eszett");
    sub->add_option("--sample-rate", sample_rate, "Pool sample rate in Hz");
  };

  CLI::App *sim = app.add_subcommand("simulate", "Simulate overlapped mixtures from a manifest");
  common(sim);
  sim->add_option("--manifest", manifest, "Source utterance manifest (JSONL)");
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_option("--k", ks, "Talker counts, comma separated")->delimiter(',');
  auto *count_opt = sim->add_option("--count", counts, "Mixtures per k")->delimiter(',');
  auto *hours_opt = sim->add_option("--hours", hours, "Target hours per k")->delimiter(',');
  count_opt->excludes(hours_opt);
  sim->add_option("--de-share", de_share, "Target share of hours containing German");
  sim->add_option("--de-tolerance", de_tol, "Allowed deviation from --de-share");
  sim->add_option("--delta-min", delta_min, "Minimum start offset step (s)");
  sim->add_option("--delta-max", delta_max, "Maximum start offset step (s)");
  sim->add_option("--max-talkers", max_talkers, "Maximum talkers per mixture");

  CLI::App *gen = app.add_subcommand("gen-tasks", "Generate instruction/target samples");
  common(gen);
  gen->add_option("--mixtures", mixtures, "Mixture metadata (JSONL)");
  gen->add_option("--manifest", manifest, "Source manifest (needed for TT enrollment)");
  gen->add_option("--out", out_dir, "Output directory");
  gen->add_option("--tasks", tasks, "Task mix, e.g. mt:2,tt:1,kt:1");
  gen->add_option("--templates", templates, "Instruction template file (JSON)");
  gen->add_flag("--tt-allow-same-utterance", tt_same,
                "TT: enroll from the mixture's own utterance when nothing else exists");
  gen->add_flag("--tt-random-window", tt_random, "TT: random 3 s enrollment window");
  gen->add_flag("--ss-allow-absent", ss_absent, "SS: allow asking for an absent sex");

  CLI::App *score = app.add_subcommand("score", "Score hypotheses against task targets");
  common(score);
  score->add_option("--refs", refs, "Task file providing sample_id/target");
  score->add_option("--hyps", hyps, "Hypothesis file ({id, hyp} JSONL)");
  score->add_option("--mode", mode, "single | sot_permutation | best_match");
  score->add_option("--out", out_dir, "Report directory (default: next to --hyps)");

  CLI::App *stats = app.add_subcommand("stats", "Summarize a mixtures or tasks file");
  common(stats);
  stats->add_option("input,--input", input, "mixtures.jsonl or tasks.jsonl");
  stats->add_option("--out", out_dir, "Machine-readable summary path");

  CLI::App *toy = app.add_subcommand("make-toy-corpus", "Synthesize a small test corpus");
  common(toy);
  toy->add_option("--out", out_dir, "Output directory");
  toy->add_option("--en-speakers", en_spk, "English speakers");
  toy->add_option("--de-speakers", de_spk, "German speakers");
  toy->add_option("--utts-per-speaker", utts, "Utterances per speaker");

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    cfg.plan.counts = {{2, 10}};
    CLI::App *cmd = app.get_subcommands().front();
    if (!config_path.empty()) {
      const json j = json::parse(read_file(config_path), nullptr, false);
      if (j.is_discarded()) throw Error(ErrorKind::kUsage, config_path + ": invalid JSON");
      // Accept the effective config written by a previous run as well.
      const bool wrapped = j.is_object() && j.contains("toolkit") && j.contains("config");
      merge_config(cfg, wrapped ? j["config"] : j);
      // Paths in a config file are relative to the file itself.
      const fs::path config_dir = fs::path(config_path).parent_path();
      for (std::string *p : {&cfg.manifest, &cfg.out, &cfg.templates, &cfg.mixtures}) {
        if (!p->empty() && fs::path(*p).is_relative())
          *p = (config_dir / *p).lexically_normal().string();
      }
    }
    auto given = [&](const char *flag) {
      const CLI::Option *opt = cmd->get_option_no_throw(flag);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--seed")) cfg.seed = seed;
    if (given("--norm")) cfg.norm = parse_norm_spec(norm);
    if (given("--sample-rate")) cfg.sample_rate = sample_rate;
    if (given("--manifest")) cfg.manifest = manifest;
    if (given("--out")) cfg.out = out_dir;
    if (given("--templates")) cfg.templates = templates;
    if (given("--mixtures")) cfg.mixtures = mixtures;
    if (given("--tasks")) cfg.tasks = tasks;
    if (given("--mode")) cfg.mode = mode;
    if (given("--count")) FillPlanMap(cfg.plan.counts, ks, counts, "--count");
    if (given("--hours")) {
      FillPlanMap(cfg.plan.hours, ks, hours, "--hours");
      cfg.plan.counts.clear();
    }
    if (given("--k") && !given("--count") && !given("--hours"))
      throw Error(ErrorKind::kUsage, "--k needs --count or --hours");
    if (given("--de-share")) cfg.plan.de_share = de_share;
    if (given("--de-tolerance")) cfg.plan.de_tolerance = de_tol;
    if (given("--delta-min")) cfg.plan.mix.delta_min = delta_min;
    if (given("--delta-max")) cfg.plan.mix.delta_max = delta_max;
    if (given("--max-talkers")) cfg.plan.mix.max_talkers = max_talkers;
    if (given("--tt-allow-same-utterance")) cfg.tt_allow_same_utterance = tt_same;
    if (given("--tt-random-window")) cfg.tt_random_window = tt_random;
    if (given("--ss-allow-absent")) cfg.ss_allow_absent = ss_absent;
    if (given("--en-speakers")) cfg.toy.en_speakers = en_spk;
    if (given("--de-speakers")) cfg.toy.de_speakers = de_spk;
    if (given("--utts-per-speaker")) cfg.toy.utterances_per_speaker = utts;

    if (cmd == sim) return CmdSimulate(cfg, jobs, out);
    if (cmd == gen) return CmdGenTasks(cfg, jobs, out);
    if (cmd == score) return CmdScore(cfg, refs, hyps, jobs, out);
    if (cmd == stats) return CmdStats(input, cfg.out, out, cfg.sample_rate);
    if (cmd == toy) return CmdMakeToyCorpus(cfg, out);
    return kExitUsage;
  } catch (const Error &e) {
    err << "mtsim: " << e.what() << "\n";
    if (e.kind() == ErrorKind::kUsage) return kExitUsage;
    return e.is_io() ? kExitIo : kExitData;
  } catch (const fs::filesystem_error &e) {
    err << "mtsim: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception &e) {
    err << "mtsim: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace mtsim
