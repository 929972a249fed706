/******************************************************************************
 * Copyright 2026 The sdl-drive Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/
#include "sdl/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdl/control.hpp"
#include "sdl/envmap.hpp"
#include "sdl/io.hpp"
#include "sdl/knowledge.hpp"
#include "sdl/leap.hpp"
#include "sdl/self_organizing.hpp"
#include "sdl/sim.hpp"

namespace fs = std::filesystem;

namespace sdl::cli {
namespace {

constexpr const char* kCorpusManifest = "labels.csv";
constexpr const char* kDemoManifest = "manifest.txt";

std::string zero_pad(std::size_t i, int width = 4) {
  std::string s = std::to_string(i);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

// Writes to `path` atomically, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file_atomic(path, text);
  }
}

CLI::Option* add_seed(CLI::App* sub, std::uint64_t& seed, const std::string& what) {
  return sub->add_option("--seed", seed, what)->capture_default_str();
}

const std::map<std::string, ScenarioFamily>& family_names() {
  static const std::map<std::string, ScenarioFamily> m = {
      {"free_road", ScenarioFamily::kFreeRoad},
      {"follow", ScenarioFamily::kFollow},
      {"follower", ScenarioFamily::kFollower},
      {"mixed", ScenarioFamily::kMixed},
  };
  return m;
}

std::vector<std::string> names_of_states() {
  std::vector<std::string> v;
  for (auto s : kAllStates) v.emplace_back(to_string(s));
  return v;
}

std::vector<std::string> names_of_objectives() {
  std::vector<std::string> v;
  for (auto k : kAllObjectives) v.emplace_back(to_string(k));
  return v;
}

// Trace files in a directory (sorted by name), or the listed files.
std::vector<fs::path> trace_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".csv") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw IoError("no such trace file or directory: " + in);
    }
  }
  if (files.empty()) throw IoError("no trace files found");
  return files;
}

std::vector<std::pair<std::string, Image>> load_corpus(const fs::path& dir,
                                                       std::vector<std::string>* files = nullptr) {
  const std::string manifest = io::read_file(dir / kCorpusManifest);
  std::vector<std::pair<std::string, Image>> corpus;
  std::istringstream lines(manifest);
  std::string line;
  bool header = true;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = io::split(line, ',');
    if (fields.size() != 2) throw SchemaViolation("labels.csv: expected file,label: " + line);
    const std::string file(fields[0]);
    corpus.emplace_back(std::string(fields[1]), load_pgm(dir / file));
    if (files) files->push_back(file);
  }
  if (corpus.empty()) throw SchemaViolation("labels.csv lists no images");
  return corpus;
}

struct LearnFlags {
  double window_seconds = 1.0;
  std::size_t segments = 4;
  double coverage = kDefaultCoverage;
  double halfwidth = LearnConfig{}.so.window_halfwidth;

  void add(CLI::App* sub) {
    sub->add_option("--window", window_seconds, "Objective window length, s")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--segments", segments, "Deviation profile segments per side")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    sub->add_option("--coverage", coverage, "Coverage quantile of deviations")
        ->check(CLI::Range(1e-6, 1.0))
        ->capture_default_str();
    sub->add_option("--halfwidth", halfwidth, "Self-organizing window halfwidth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  LearnConfig config() const {
    LearnConfig c;
    c.window_seconds = window_seconds;
    c.segment_count = segments;
    c.coverage = coverage;
    c.so.window_halfwidth = halfwidth;
    return c;
  }
};

struct DriveFlags {
  std::string scenario;
  std::string family = "mixed";
  std::optional<double> zeta;

  void add(CLI::App* sub) {
    sub->add_option("--scenario", scenario, "Scenario JSON; overrides --family")
        ->check(CLI::ExistingFile);
    sub->add_option("--family", family, "Generated scenario family")
        ->check(CLI::IsMember({"free_road", "follow", "follower", "mixed"}))
        ->capture_default_str();
    sub->add_option("--zeta", zeta, "Decision threshold (default: scenario's)")
        ->check(CLI::PositiveNumber);
  }

  /// A scenario file keeps its own rng_seed unless `seed` is given.
  Scenario make(std::optional<std::uint64_t> seed) const {
    Scenario sc;
    if (!scenario.empty()) {
      sc = load_scenario(scenario);
      if (seed) sc.rng_seed = *seed;
    } else {
      sc = make_scenario(family_names().at(family), seed.value_or(0));
    }
    if (zeta) sc.control.zeta = *zeta;
    return sc;
  }
};

// --- subcommands -------------------------------------------------------------

struct DemoCmd {
  std::string out_dir;
  std::size_t count = 50;
  std::string family = "cycle";
  std::string scenario;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("demo", "Run the scripted expert and write trace CSVs");
    sub->add_option("--out", out_dir, "Output directory")->required();
    sub->add_option("--count", count, "Number of runs")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--family", family,
                    "free_road, follow, follower, mixed, or cycle (run i uses family i mod 3)")
        ->check(CLI::IsMember({"free_road", "follow", "follower", "mixed", "cycle"}))
        ->capture_default_str();
    sub->add_option("--scenario", scenario, "Scenario JSON run with jitter seeds seed+i")
        ->check(CLI::ExistingFile);
    add_seed(sub, seed, "Run i uses seed+i");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    fs::create_directories(out_dir);
    std::optional<Scenario> fixed;
    if (!scenario.empty()) fixed = load_scenario(scenario);
    std::string manifest;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = seed + i;
      Scenario sc;
      if (fixed) {
        sc = *fixed;
        sc.rng_seed = s;
      } else if (family == "cycle") {
        sc = make_scenario(static_cast<ScenarioFamily>(i % 3), s);
      } else {
        sc = make_scenario(family_names().at(family), s);
      }
      const std::string name = "demo_" + zero_pad(i) + ".csv";
      save_trace(run_expert(sc), fs::path(out_dir) / name);
      manifest += name + " " + sc.name + " " + std::to_string(s) + "\n";
    }
    io::write_file_atomic(fs::path(out_dir) / kDemoManifest, manifest);
    out << "wrote " << count << " traces to " << out_dir << "\n";
    return kExitOk;
  }

  bool run_ = false;
};

struct LearnCmd {
  std::vector<std::string> traces;
  std::string out_path;
  LearnFlags flags;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("learn", "Learn a knowledge base from trace CSVs");
    sub->add_option("--traces", traces, "Trace CSV files or directories")->required();
    sub->add_option("--out", out_path, "Knowledge base JSON")->required();
    flags.add(sub);
    add_seed(sub, seed, "Accepted for uniformity; learning draws no random numbers");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    std::vector<Trace> loaded;
    for (const auto& f : trace_files(traces)) loaded.push_back(load_trace(f));
    const auto kb = learn_knowledge(loaded, flags.config());
    save_kb(kb, out_path);
    out << "learned " << kb.entries().size() << " entries over " << kb.states().size()
        << " states from " << loaded.size() << " traces\n";
    return kExitOk;
  }

  bool run_ = false;
};

struct DriveCmd {
  std::string kb_path;
  DriveFlags drive;
  std::string policy = "controller";
  std::string metrics_path;
  std::string trace_path;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("drive", "Drive one scenario and write metrics");
    sub->add_option("--kb", kb_path, "Knowledge base JSON (controller policy)")
        ->check(CLI::ExistingFile);
    drive.add(sub);
    sub->add_option("--policy", policy, "controller or expert")
        ->check(CLI::IsMember({"controller", "expert"}))
        ->capture_default_str();
    sub->add_option("--metrics", metrics_path, "Metrics CSV (default: standard output)");
    sub->add_option("--trace", trace_path, "Trace CSV");
    seed_opt_ = add_seed(sub, seed, "Scenario seed (generated) or jitter seed (--scenario)");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out, std::ostream& err) const {
    const Scenario sc =
        drive.make(seed_opt_->count() > 0 ? std::optional(seed) : std::nullopt);
    Trace trace;
    RunMetrics metrics;
    if (policy == "expert") {
      trace = run_expert(sc);
      metrics = compute_metrics(trace, sc.objectives);
    } else {
      if (kb_path.empty()) {
        err << "drive: --kb is required for the controller policy\n";
        return kExitUsage;
      }
      auto run = run_controlled(sc, load_kb(kb_path));
      trace = std::move(run.trace);
      metrics = run.metrics;
    }
    if (!trace_path.empty()) save_trace(trace, trace_path);
    emit(metrics_path, metrics_csv(metrics), out);
    return kExitOk;
  }

  bool run_ = false;
  CLI::Option* seed_opt_ = nullptr;
};

struct RelearnCmd {
  std::string kb_path;
  std::string out_path;
  DriveFlags drive;
  std::size_t count = 20;
  std::size_t rounds = 1;
  LearnFlags flags;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "relearn", "Drive with a knowledge base, then relearn it from the controlled traces");
    sub->add_option("--kb", kb_path, "Starting knowledge base JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Relearned knowledge base JSON")->required();
    drive.add(sub);
    sub->add_option("--count", count, "Runs per round")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--rounds", rounds, "Drive/learn rounds")->check(CLI::PositiveNumber)->capture_default_str();
    flags.add(sub);
    add_seed(sub, seed, "Run i of round r uses seed + r*count + i");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    KnowledgeBase kb = load_kb(kb_path);
    for (std::size_t r = 0; r < rounds; ++r) {
      std::vector<Trace> driven;
      for (std::size_t i = 0; i < count; ++i) {
        driven.push_back(run_controlled(drive.make(seed + r * count + i), kb).trace);
      }
      // States the runs did not visit keep their previous entries.
      const auto fresh = learn_knowledge(driven, flags.config());
      KnowledgeBase merged(fresh.window_seconds());
      for (const auto& [key, s] : kb.entries()) merged.set(key.first, key.second, s);
      for (const auto& [key, s] : fresh.entries()) merged.set(key.first, key.second, s);
      kb = std::move(merged);
      out << "round " << r + 1 << ": relearned " << fresh.states().size() << " states\n";
    }
    save_kb(kb, out_path);
    return kExitOk;
  }

  bool run_ = false;
};

struct DistanceCmd {
  std::string kb_path;
  std::string state;
  std::vector<std::string> objectives;
  std::vector<double> values;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "distance", "Leap distance of observed values from knowledge base centers");
    sub->add_option("--kb", kb_path, "Knowledge base JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--state", state, "Driving state")
        ->required()
        ->check(CLI::IsMember(names_of_states()));
    sub->add_option("--objective", objectives, "Objective (repeatable, pairs with --value)")
        ->required()
        ->check(CLI::IsMember(names_of_objectives()));
    sub->add_option("--value", values, "Observed value (repeatable)")->required();
    add_seed(sub, seed, "Accepted for uniformity; no random numbers are drawn");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out, std::ostream& err) const {
    if (objectives.size() != values.size()) {
      err << "distance: --objective and --value must be given the same number of times\n";
      return kExitUsage;
    }
    const auto kb = load_kb(kb_path);
    const auto st = driving_state_from_string(state);
    std::vector<DistributionSummary> summaries;
    for (const auto& o : objectives) summaries.push_back(kb.at(st, objective_kind_from_string(o)));
    out << io::format_fixed(leap_distance(values, summaries), 6) << "\n";
    return kExitOk;
  }

  bool run_ = false;
};

struct ClusterCmd {
  std::string samples_path;
  std::string out_path;
  double halfwidth = 1.0;
  double feedback = SOConfig{}.scale_feedback;
  std::optional<double> init;
  bool random_init = false;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("cluster", "Self-organize a sample and report the result");
    sub->add_option("--samples", samples_path, "CSV; the first column is used, a header is skipped")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Result CSV (default: standard output)");
    sub->add_option("--halfwidth", halfwidth, "Window halfwidth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--scale-feedback", feedback, "Radius coupling to the previous scale, in [0,1)")
        ->check(CLI::Range(0.0, 0.999999))
        ->capture_default_str();
    auto* i = sub->add_option("--init", init, "Initial center (default: sample median)");
    sub->add_flag("--random-init", random_init, "Draw the initial center uniformly in the sample range")
        ->excludes(i);
    add_seed(sub, seed, "Seed for --random-init");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    std::vector<double> xs;
    std::istringstream lines(io::read_file(samples_path));
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto field = io::split(line, ',').front();
      if (first) {
        first = false;
        try {
          xs.push_back(io::parse_real(field));
        } catch (const SchemaViolation&) {
        }
        continue;
      }
      xs.push_back(io::parse_real(field));
    }
    if (xs.empty()) throw SchemaViolation("cluster: no samples in " + samples_path);

    double start = median(xs);
    if (init) start = *init;
    if (random_init) {
      Rng rng(seed);
      const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      start = rng.uniform(*lo, *hi);
    }
    SOConfig cfg;
    cfg.window_halfwidth = halfwidth;
    cfg.scale_feedback = feedback;
    const auto r = self_organize(xs, start, cfg);

    std::string members;
    for (std::size_t k = 0; k < r.members.size(); ++k) {
      if (k) members += ';';
      members += std::to_string(r.members[k]);
    }
    std::string text = "center,scale_value,iterations,converged,member_count,members\n";
    text += io::format_real(r.center) + "," + io::format_real(r.scale_value) + "," +
            std::to_string(r.iterations) + "," + (r.converged ? "true" : "false") + "," +
            std::to_string(r.members.size()) + "," + members + "\n";
    emit(out_path, text, out);
    return kExitOk;
  }

  bool run_ = false;
};

struct CorpusCmd {
  std::string out_dir;
  std::size_t count = 200;
  std::size_t size = 32;
  std::size_t cell = 2;
  double noise = 0.2;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("envmap-corpus", "Write a synthetic stripe/checker PGM corpus");
    sub->add_option("--out", out_dir, "Output directory")->required();
    sub->add_option("--count", count, "Images")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--size", size, "Image side, px")->check(CLI::Range(4, 4096))->capture_default_str();
    sub->add_option("--cell", cell, "Stripe/check width, px")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--noise", noise, "Uniform noise amplitude")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    add_seed(sub, seed, "Corpus seed");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    fs::create_directories(out_dir);
    const auto corpus = make_texture_corpus(count, size, noise, seed, cell);
    std::string manifest = "file,label\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const std::string name = "img_" + zero_pad(i) + ".pgm";
      save_pgm(corpus[i].second, fs::path(out_dir) / name);
      manifest += name + "," + corpus[i].first + "\n";
    }
    io::write_file_atomic(fs::path(out_dir) / kCorpusManifest, manifest);
    out << "wrote " << corpus.size() << " images to " << out_dir << "\n";
    return kExitOk;
  }

  bool run_ = false;
};

struct EnvTrainCmd {
  std::string corpus_dir;
  std::string out_path;
  std::size_t grid = 2;
  std::vector<std::string> mappings = known_mappings();
  double halfwidth = RegionLearnConfig{}.so.window_halfwidth;
  std::size_t segments = 4;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("envmap-train", "Learn a region database from a PGM corpus");
    sub->add_option("--corpus", corpus_dir, "Corpus directory with labels.csv")
        ->required()
        ->check(CLI::ExistingDirectory);
    sub->add_option("--out", out_path, "Region database JSON")->required();
    sub->add_option("--grid", grid, "Regions per side")->check(CLI::Range(1, 256))->capture_default_str();
    sub->add_option("--mappings", mappings, "Mapping names")
        ->delimiter(',')
        ->check(CLI::IsMember(known_mappings()))
        ->capture_default_str();
    sub->add_option("--halfwidth", halfwidth, "Self-organizing window halfwidth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--segments", segments, "Deviation profile segments per side")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    add_seed(sub, seed, "Accepted for uniformity; training draws no random numbers");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    const auto corpus = load_corpus(corpus_dir);
    RegionLearnConfig cfg;
    cfg.so.window_halfwidth = halfwidth;
    cfg.segment_count = segments;
    const auto db = learn_region_db(corpus, MappingSpecSet(mappings), RegionGrid{grid, grid}, cfg);
    save_region_db(db, out_path);
    out << "learned " << db.classes.size() << " classes from " << corpus.size() << " images\n";
    return kExitOk;
  }

  bool run_ = false;
};

struct EnvTestCmd {
  std::string db_path;
  std::string corpus_dir;
  std::string report_path;
  double halfwidth = RegionLearnConfig{}.so.window_halfwidth;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("envmap-test", "Recognize a PGM corpus and report accuracy");
    sub->add_option("--db", db_path, "Region database JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--corpus", corpus_dir, "Corpus directory with labels.csv")
        ->required()
        ->check(CLI::ExistingDirectory);
    sub->add_option("--report", report_path, "Per-image CSV");
    sub->add_option("--halfwidth", halfwidth, "Self-organizing window halfwidth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_seed(sub, seed, "Accepted for uniformity; recognition draws no random numbers");
    sub->callback([this] { run_ = true; });
  }

  int run(std::ostream& out) const {
    const auto db = load_region_db(db_path);
    std::vector<std::string> files;
    const auto corpus = load_corpus(corpus_dir, &files);
    SOConfig so;
    so.window_halfwidth = halfwidth;
    std::size_t correct = 0;
    std::string report = "file,label,predicted,score\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto r = recognize(corpus[i].second, db, so);
      correct += r.label == corpus[i].first;
      report += files[i] + "," + corpus[i].first + "," + r.label + "," + io::format_real(r.score) + "\n";
    }
    if (!report_path.empty()) io::write_file_atomic(report_path, report);
    out << "accuracy,correct,total\n"
        << io::format_fixed(static_cast<double>(correct) / static_cast<double>(corpus.size()), 6)
        << "," << correct << "," << corpus.size() << "\n";
    return kExitOk;
  }

  bool run_ = false;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge acquisition and multi-objective control for longitudinal driving",
               "sdl_drive"};
  app.require_subcommand(1);
  app.fallthrough(false);

  DemoCmd demo;
  LearnCmd learn;
  DriveCmd drive;
  RelearnCmd relearn;
  DistanceCmd distance;
  ClusterCmd cluster;
  CorpusCmd corpus;
  EnvTrainCmd env_train;
  EnvTestCmd env_test;
  demo.add(app);
  learn.add(app);
  drive.add(app);
  relearn.add(app);
  distance.add(app);
  cluster.add(app);
  corpus.add(app);
  env_train.add(app);
  env_test.add(app);

  if (!args.empty() && !args.front().starts_with('-')) {
    const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(),
                                   [&](const CLI::App* s) { return s->get_name() == args.front(); });
    if (!known) {
      err << "unknown subcommand: " << args.front() << "\nRun with --help for more information.\n";
      return kExitUsage;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (demo.run_) return demo.run(out);
    if (learn.run_) return learn.run(out);
    if (drive.run_) return drive.run(out, err);
    if (relearn.run_) return relearn.run(out);
    if (distance.run_) return distance.run(out, err);
    if (cluster.run_) return cluster.run(out);
    if (corpus.run_) return corpus.run(out);
    if (env_train.run_) return env_train.run(out);
    if (env_test.run_) return env_test.run(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << "no subcommand\n";
  return kExitUsage;
}

}  // namespace sdl::cli
