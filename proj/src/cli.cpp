// Copyright 2026 The Hearings Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hearings/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hearings/corpus_model.hpp"
#include "hearings/errors.hpp"
#include "hearings/experiment_harness.hpp"
#include "hearings/feature_extractor.hpp"
#include "hearings/party_models.hpp"
#include "hearings/qa_classifier.hpp"
#include "hearings/stats_tests.hpp"
#include "hearings/text_util.hpp"
#include "hearings/transcript_fetcher.hpp"
#include "hearings/transcript_segmenter.hpp"
#include "hearings/tsv.hpp"

namespace hearings {

namespace {

namespace fs = std::filesystem;

fs::path data_dir() {
  if (const char* env = std::getenv("HEARINGS_DATA_DIR"); env && *env) return env;
  return HEARINGS_DATA_DIR;
}

struct Options {
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  std::string out = "out";

  // fetch
  std::vector<std::string> ids;
  std::string id_file;
  std::string endpoint = FetcherConfig{}.endpoint;
  std::string cache_dir;
  int min_delay_ms = 1000;
  int max_attempts = 3;

  // shared inputs
  std::string input;
  std::string corpus;
  std::string pairs;
  std::string features;
  std::string rules;
  std::string government;
  std::string lexicons;

  // classify-qa
  std::vector<std::string> ama, ukparl, hand;
  std::string qa_test;
  int qa_epochs = QaHyper{}.epochs;
  double qa_learning_rate = QaHyper{}.learning_rate;
  double qa_l2 = QaHyper{}.l2;
  std::size_t max_bigrams = QaHyper{}.max_bigrams;
  std::string model;
  double other_threshold = 0.0;

  // experiments
  std::string kind = "Question";
  std::string task = "Affiliation";
  std::vector<std::string> dimensions;
  std::size_t min_rows = 50;
  int folds = 5;
  bool keep_names = false;
  std::string model_kind = "forest";
  std::vector<int> n_estimators = ForestGrid{}.n_estimators;
  std::vector<int> max_depth = ForestGrid{}.max_depth;
  std::vector<int> min_samples_split = ForestGrid{}.min_samples_split;
  bool no_grid_search = false;
  double train_fraction = 0.8;
  double validation_fraction = 0.0;
  std::string importance = "impurity";
  std::string predictions;

  // verify-sample
  std::size_t hearings_per_session = SampleSpec{}.hearings_per_session;
  std::size_t utterances_per_hearing = SampleSpec{}.utterances_per_hearing;
  std::string verdicts;
  std::string manifest;
};

class Run {
 public:
  Run(std::string subcommand, const Options& opt, std::string config_text, std::ostream& err)
      : opt_(opt), err_(err) {
    manifest_.subcommand = std::move(subcommand);
    manifest_.config_hash = hex64(fnv1a64(config_text));
    manifest_.seed = opt.seed;
    manifest_.tool_version = std::string(kToolVersion);
    manifest_.started_at = utc_timestamp();
  }

  fs::path out() const { return opt_.out; }

  fs::path require_input(const std::string& path, const char* flag) {
    if (path.empty()) throw ValidationError(std::string("missing required ") + flag);
    if (!fs::exists(path)) throw IoError(std::string(flag) + ": no such file or directory: " + path);
    manifest_.input_checksums[path] = checksum_path(path);
    return path;
  }

  void wrote(const fs::path& p) {
    manifest_.outputs.push_back(p.lexically_relative(opt_.out).generic_string());
    err_ << "wrote " << p.string() << "\n";
  }

  void write(const fs::path& p, std::string_view content) {
    write_file(p, content);
    wrote(p);
  }

  void finish() {
    manifest_.finished_at = utc_timestamp();
    write_file(fs::path(opt_.out) / "run_manifest.json", manifest_.to_json_text());
  }

 private:
  const Options& opt_;
  std::ostream& err_;
  RunManifest manifest_;
};

template <class E>
E enum_option(const std::string& value, const char* flag) {
  for (const auto& [v, n] : EnumNames<E>::table) {
    if (to_lower(n) == to_lower(value)) return v;
  }
  std::string allowed;
  for (const auto& [v, n] : EnumNames<E>::table) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
  throw ValidationError(std::string(flag) + ": unknown value '" + value + "' (expected " +
                        allowed + ")");
}

GovernmentTable load_government(const Options& opt, Run& run) {
  if (!opt.government.empty()) {
    run.require_input(opt.government, "--government");
    return load_government_contexts(opt.government);
  }
  const fs::path def = data_dir() / "government" / "contexts.json";
  return fs::exists(def) ? load_government_contexts(def) : GovernmentTable{};
}

Lexicons load_lexicons(const Options& opt, Run& run) {
  if (!opt.lexicons.empty()) {
    run.require_input(opt.lexicons, "--lexicons");
    return Lexicons::load(opt.lexicons);
  }
  return Lexicons::load(data_dir() / "lexicons");
}

void apply_standings(Hearing& h, const GovernmentTable& government) {
  auto it = government.find(h.meta.session);
  if (it == government.end()) return;
  for (auto& p : h.people) {
    if (p.role != Role::Member || p.standing != Standing::NotApplicable) continue;
    try {
      p.standing = derive_standing(p, h.meta, it->second);
    } catch (const ValidationError&) {
      // Joint hearing without a chamber for this member: stays unlabeled.
    }
  }
}

std::string safe_name(std::string_view key) {
  std::string s;
  for (char c : key) s.push_back(is_ascii_alnum(c) || c == '-' || c == '.' ? c : '_');
  return s;
}

// ---------------------------------------------------------------------------

int cmd_fetch(const Options& opt, Run& run, std::ostream& err) {
  std::vector<std::string> ids = opt.ids;
  if (!opt.id_file.empty()) {
    run.require_input(opt.id_file, "--id-file");
    for (const auto& line : split(read_file(opt.id_file), '\n')) {
      const auto t = trim(line);
      if (!t.empty() && t.front() != '#') ids.emplace_back(t);
    }
  }
  if (ids.empty()) throw ValidationError("fetch: no hearing ids given (--id or --id-file)");
  FetcherConfig cfg;
  cfg.endpoint = opt.endpoint;
  if (!opt.cache_dir.empty()) {
    cfg.cache_dir = opt.cache_dir;
  } else if (const char* env = std::getenv("HEARINGS_CACHE_DIR"); env && *env) {
    cfg.cache_dir = env;
  } else {
    cfg.cache_dir = fs::path(opt.out) / "cache";
  }
  cfg.min_delay = std::chrono::milliseconds(opt.min_delay_ms);
  cfg.max_attempts = opt.max_attempts;
  TranscriptFetcher fetcher(cfg);
  std::size_t failed = 0;
  for (const auto& id : ids) {
    try {
      run.write(fs::path(opt.out) / "raw" / (id + ".txt"), fetcher.fetch(id));
    } catch (const NotFoundError& e) {
      ++failed;
      err << "fetch: " << id << ": not found\n";
    } catch (const FetchError& e) {
      ++failed;
      err << "fetch: " << id << ": " << e.what() << "\n";
    }
  }
  err << "fetch: " << ids.size() - failed << " of " << ids.size() << " transcripts, "
      << fetcher.network_requests() << " network requests\n";
  if (failed > 0) throw ValidationError("fetch: " + std::to_string(failed) + " transcripts failed");
  return 0;
}

int cmd_segment(const Options& opt, Run& run, std::ostream& err) {
  const fs::path input = run.require_input(opt.input, "--input");
  SegmenterRules rules = SegmenterRules::defaults();
  if (!opt.rules.empty()) {
    run.require_input(opt.rules, "--rules");
    rules = SegmenterRules::load(opt.rules);
  } else if (fs::exists(data_dir() / "rules" / "segmenter_rules.json")) {
    rules = SegmenterRules::load(data_dir() / "rules" / "segmenter_rules.json");
  }
  const GovernmentTable government = load_government(opt, run);
  std::vector<fs::path> transcripts;
  if (fs::is_regular_file(input)) {
    transcripts.push_back(input);
  } else {
    for (const auto& e : fs::directory_iterator(input)) {
      if (e.is_regular_file() && e.path().extension() == ".txt") transcripts.push_back(e.path());
    }
  }
  std::sort(transcripts.begin(), transcripts.end());
  if (transcripts.empty()) throw ValidationError("segment: no .txt transcripts in " + input.string());

  HeuristicRecognizer recognizer;
  Corpus corpus;
  std::string reports;
  std::size_t failed = 0;
  for (const auto& path : transcripts) {
    fs::path meta_path = path;
    meta_path.replace_extension(".meta.json");
    if (!fs::exists(meta_path)) {
      throw IoError("segment: missing hearing metadata " + meta_path.string());
    }
    const std::string meta_text = read_file(meta_path);
    Hearing h = parse_meta_record(meta_text, meta_path.string());
    std::map<std::string, std::string> aliases;
    try {
      const auto j = nlohmann::json::parse(meta_text);
      if (j.contains("aliases")) aliases = j.at("aliases").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(meta_path.string(), 1, "aliases", e.what());
    }
    apply_standings(h, government);
    const Roster roster(h.meta.hearing_id, h.people, aliases);
    try {
      SegmentedHearing s = segment_hearing(read_file(path), h.meta, roster, rules, recognizer);
      s.hearing.people = h.people;
      reports += report_record(s.report);
      corpus.push_back(std::move(s.hearing));
    } catch (const SegmentationFailed& e) {
      ++failed;
      SegmentationReport r;
      r.hearing_id = h.meta.hearing_id;
      r.warnings.push_back({0, std::string("segmentation failed: ") + e.what()});
      reports += report_record(r);
      err << "segment: " << h.meta.hearing_id << ": " << e.what() << "\n";
    }
  }
  if (corpus.empty()) throw ValidationError("segment: every transcript failed to segment");
  const fs::path corpus_dir = fs::path(opt.out) / "corpus";
  store_corpus(corpus, corpus_dir);
  run.wrote(corpus_dir);
  run.write(fs::path(opt.out) / "segmentation_report.jsonl", reports);
  err << "segment: " << corpus.size() << " hearings, " << failed << " failed\n";
  return 0;
}

int cmd_qa_train(const Options& opt, Run& run, std::ostream& err) {
  std::vector<LabeledText> records;
  std::size_t duplicates = 0;
  auto add = [&](const std::vector<std::string>& files, TrainingSource fmt, const char* flag) {
    for (const auto& f : files) {
      run.require_input(f, flag);
      TrainingCorpus c = load_training_corpus(f, fmt);
      duplicates += c.duplicates_removed;
      records.insert(records.end(), c.records.begin(), c.records.end());
    }
  };
  add(opt.ama, TrainingSource::AMA, "--ama");
  add(opt.ukparl, TrainingSource::UKParl, "--ukparl");
  add(opt.hand, TrainingSource::HandLabeled, "--hand");
  if (records.empty()) throw ValidationError("classify-qa train: no training files (--ama/--ukparl/--hand)");
  QaHyper hyper;
  hyper.epochs = opt.qa_epochs;
  hyper.learning_rate = opt.qa_learning_rate;
  hyper.l2 = opt.qa_l2;
  hyper.max_bigrams = opt.max_bigrams;
  hyper.seed = opt.seed;
  const QaTrainingResult result = train_qa(records, hyper);
  const fs::path out = opt.out;
  result.model.save(out / "qa_model.json");
  run.wrote(out / "qa_model.json");

  nlohmann::json report;
  report["n_examples"] = records.size();
  report["duplicates_removed"] = duplicates;
  report["n_question"] = std::count_if(records.begin(), records.end(),
                                       [](const auto& r) { return r.label == QaLabel::Question; });
  report["n_answer"] = records.size() - report["n_question"].get<std::size_t>();
  report["vocabulary_size"] = result.model.vocabulary().size();
  report["initial_loss"] = result.loss_history.front();
  report["final_loss"] = result.loss_history.back();

  if (!opt.qa_test.empty()) {
    run.require_input(opt.qa_test, "--test");
    const TrainingCorpus test = load_training_corpus(opt.qa_test, TrainingSource::HandLabeled);
    std::vector<QaLabel> predicted, truth;
    std::string rows = tsv::format_row({"text", "label", "predicted", "p_question"});
    for (const auto& r : test.records) {
      const QaPrediction p = classify_qa(result.model, r.text, opt.other_threshold);
      predicted.push_back(p.label);
      truth.push_back(r.label);
      rows += tsv::format_row({r.text, std::string(name_of(r.label)), std::string(name_of(p.label)),
                               format_double(p.p_question)});
    }
    const QaConfusion c = score_confusion(predicted, truth);
    std::vector<int> t;
    for (auto l : truth) t.push_back(l == QaLabel::Question ? 0 : 1);
    const Baseline base = majority_baseline(t, 2);
    report["test_accuracy"] = c.accuracy();
    report["test_baseline"] = base.accuracy;
    report["test_baseline_label"] = base.label == 0 ? "Question" : "Answer";
    run.write(out / "qa_confusion.tsv", qa_confusion_table({{"test", c}}));
    run.write(out / "qa_test_predictions.tsv", rows);
    err << "classify-qa: test accuracy " << format_fixed(100 * c.accuracy(), 2) << "% vs baseline "
        << format_fixed(100 * base.accuracy, 2) << "%\n";
  }
  run.write(out / "qa_training.json", report.dump(2) + "\n");
  return 0;
}

int cmd_qa_apply(const Options& opt, Run& run, std::ostream& err) {
  run.require_input(opt.model, "--model");
  const LexicalModel model = LexicalModel::load(opt.model);
  run.require_input(opt.corpus, "--corpus");
  Corpus corpus = load_corpus(opt.corpus);
  std::string labels = tsv::format_row({"utterance_id", "label", "p_question"});
  std::map<QaLabel, std::size_t> counts;
  for (auto& h : corpus) {
    for (auto& u : h.utterances) {
      const QaPrediction p = classify_qa(model, u.text, opt.other_threshold);
      u.qa_label = p.label;
      ++counts[p.label];
      labels += tsv::format_row({u.utterance_id, std::string(name_of(p.label)),
                                 format_double(p.p_question)});
    }
  }
  const fs::path corpus_dir = fs::path(opt.out) / "corpus";
  store_corpus(corpus, corpus_dir);
  run.wrote(corpus_dir);
  run.write(fs::path(opt.out) / "qa_labels.tsv", labels);
  err << "classify-qa: " << counts[QaLabel::Question] << " questions, " << counts[QaLabel::Answer]
      << " answers, " << counts[QaLabel::Other] << " other\n";
  return 0;
}

int cmd_pair(const Options& opt, Run& run, std::ostream& err) {
  run.require_input(opt.corpus, "--corpus");
  const Corpus corpus = load_corpus(opt.corpus);
  const PairingResult r = pair_corpus(corpus);
  const fs::path out = opt.out;
  store_pairs(r.pairs, out / "pairs.jsonl");
  run.wrote(out / "pairs.jsonl");
  nlohmann::json report;
  report["pairs"] = r.pairs.size();
  report["unpaired_questions"] = r.unpaired_questions;
  report["orphan_answers"] = r.orphan_answers;
  report["skipped"] = r.skipped;
  run.write(out / "pairing_report.json", report.dump(2) + "\n");
  err << "pair: " << r.pairs.size() << " pairs, " << r.unpaired_questions.size()
      << " unpaired questions, " << r.orphan_answers.size() << " orphan answers\n";
  return 0;
}

int cmd_features(const Options& opt, Run& run, std::ostream& err) {
  run.require_input(opt.corpus, "--corpus");
  const Corpus corpus = load_corpus(opt.corpus);
  const Lexicons lex = load_lexicons(opt, run);
  const auto rows = extract_corpus_features(corpus, lex, opt.jobs);
  run.write(fs::path(opt.out) / "features.tsv", feature_matrix_tsv(rows));
  err << "features: " << rows.size() << " utterances, schema " << kFeatureSchemaVersion
      << ", lexicons " << lex.checksum << "\n";
  return 0;
}

int cmd_kstest(const Options& opt, Run& run, std::ostream& err) {
  run.require_input(opt.corpus, "--corpus");
  run.require_input(opt.features, "--features");
  const Corpus corpus = load_corpus(opt.corpus);
  const auto features = read_feature_matrix(opt.features);
  const GovernmentTable government = load_government(opt, run);
  const QaLabel kind = enum_option<QaLabel>(opt.kind, "--kind");
  if (kind != QaLabel::Question && kind != QaLabel::Answer) {
    throw ValidationError("--kind must be Question or Answer for kstest");
  }
  std::map<std::string, std::pair<const Hearing*, const Person*>> speaker_of;
  for (const auto& h : corpus) {
    for (const auto& u : h.utterances) {
      if (!u.speaker) continue;
      for (const auto& p : h.people) {
        if (p.person_id == *u.speaker) speaker_of[u.utterance_id] = {&h, &p};
      }
    }
  }
  std::map<std::string, QaLabel> label_of;
  for (const auto& h : corpus) {
    for (const auto& u : h.utterances) label_of[u.utterance_id] = u.qa_label;
  }
  // Answers are grouped by the party of the member who asked the question.
  std::map<std::string, std::string> group_source;
  if (kind == QaLabel::Answer) {
    run.require_input(opt.pairs, "--pairs");
    for (const auto& p : load_pairs(opt.pairs)) {
      group_source[p.answer_utterance_id] = p.question_utterance_id;
    }
  }
  std::vector<GroupInfo> groups;
  for (const auto& [id, label] : label_of) {
    if (label != kind) continue;
    std::string source = id;
    if (kind == QaLabel::Answer) {
      auto it = group_source.find(id);
      if (it == group_source.end()) continue;
      source = it->second;
    }
    auto sp = speaker_of.find(source);
    if (sp == speaker_of.end() || sp->second.second->role != Role::Member) continue;
    Person person = *sp->second.second;
    Hearing copy_meta;
    copy_meta.meta = sp->second.first->meta;
    copy_meta.people = {person};
    apply_standings(copy_meta, government);
    groups.push_back({id, person.party, copy_meta.people.front().standing, kind});
  }
  const ComparisonSet set = compare_groups(features, groups, kind, kAllGroupPairs, opt.jobs);
  const std::string suffix = to_lower(name_of(kind));
  const fs::path out = opt.out;
  run.write(out / ("heatmap_" + suffix + ".tsv"), heatmap_matrix_tsv(set.comparisons));
  run.write(out / ("comparisons_" + suffix + ".tsv"), comparisons_tsv(set.comparisons));
  std::string skipped = tsv::format_row({"feature", "pair", "reason"});
  for (const auto& s : set.skipped) skipped += tsv::format_row({s.feature_name, pair_name(s.pair), s.reason});
  run.write(out / ("skipped_" + suffix + ".tsv"), skipped);
  err << "kstest: " << set.comparisons.size() << " comparisons, " << set.skipped.size()
      << " skipped\n";
  return 0;
}

SplitSpec split_spec_from(const Options& opt) {
  SplitSpec spec;
  for (const auto& d : opt.dimensions) {
    spec.dimensions.push_back(enum_option<SplitDimension>(d, "--dimension"));
  }
  spec.kind = enum_option<UtteranceKind>(opt.kind, "--kind");
  spec.task = enum_option<LabelTask>(opt.task, "--task");
  spec.min_rows = opt.min_rows;
  spec.folds = opt.folds;
  spec.keep_names = opt.keep_names;
  spec.validate();
  return spec;
}

ModelConfig model_config_from(const Options& opt) {
  ModelConfig cfg;
  cfg.model = enum_option<ModelKind>(opt.model_kind, "--model-kind");
  cfg.grid.n_estimators = opt.n_estimators;
  cfg.grid.max_depth = opt.max_depth;
  cfg.grid.min_samples_split = opt.min_samples_split;
  cfg.grid_search = !opt.no_grid_search;
  cfg.folds = opt.folds;
  cfg.train_fraction = opt.train_fraction;
  cfg.validation_fraction = opt.validation_fraction;
  const std::string imp = to_lower(opt.importance);
  if (imp == "impurity") {
    cfg.importance = ImportanceMode::Impurity;
  } else if (imp == "permutation") {
    cfg.importance = ImportanceMode::Permutation;
  } else {
    throw ValidationError("--importance must be impurity or permutation");
  }
  cfg.seed = opt.seed;
  cfg.validate();
  return cfg;
}

struct ExperimentInputs {
  Corpus corpus;
  std::vector<QaPair> pairs;
  GovernmentTable government;
  SplitSpec spec;
};

ExperimentInputs experiment_inputs(const Options& opt, Run& run) {
  ExperimentInputs in;
  in.spec = split_spec_from(opt);
  run.require_input(opt.corpus, "--corpus");
  in.corpus = load_corpus(opt.corpus);
  if (in.spec.kind != UtteranceKind::Question || !opt.pairs.empty()) {
    run.require_input(opt.pairs, "--pairs");
    in.pairs = load_pairs(opt.pairs);
  }
  in.government = load_government(opt, run);
  return in;
}

void write_skips(Run& run, const fs::path& path, const DatasetBuild& build) {
  std::string s = tsv::format_row({"split", "n_rows", "reason"});
  for (const auto& k : build.skipped) s += tsv::format_row({k.key, std::to_string(k.n_rows), k.reason});
  run.write(path, s);
}

int cmd_train(const Options& opt, Run& run, std::ostream& err) {
  ExperimentInputs in = experiment_inputs(opt, run);
  const Lexicons lex = load_lexicons(opt, run);
  const ModelConfig cfg = model_config_from(opt);
  const DatasetBuild build =
      build_datasets(in.corpus, in.pairs, in.government, lex, in.spec, opt.jobs);
  const fs::path out = opt.out;
  write_skips(run, out / "skipped_splits.tsv", build);
  std::string cv = tsv::format_row({"split", "n_estimators", "max_depth", "min_samples_split",
                                    "mean_accuracy", "fold_accuracies", "best"});
  std::string imp = tsv::format_row({"split", "feature", "importance"});
  for (const auto& split : build.datasets) {
    std::vector<int> labels = split.data.labels();
    std::set<int> classes(labels.begin(), labels.end());
    if (classes.size() < 2) {
      err << "train: " << split.key << ": single class, no model\n";
      continue;
    }
    const fs::path model_path = out / "models" / (safe_name(split.key) + "." + opt.model_kind + ".json");
    if (cfg.model == ModelKind::Forest) {
      ForestHyper hyper = cfg.grid.cells(cfg.seed).at(0);
      if (cfg.grid_search) {
        const GridResult g = cross_validate_grid(split.data, cfg.grid, cfg.folds, cfg.seed, opt.jobs);
        hyper = g.best;
        if (!g.folds.warning.empty()) err << "train: " << split.key << ": " << g.folds.warning << "\n";
        for (const auto& c : g.cells) {
          std::vector<std::string> folds;
          for (double a : c.fold_accuracy) folds.push_back(format_double(a));
          cv += tsv::format_row({split.key, std::to_string(c.hyper.n_estimators),
                                 std::to_string(c.hyper.max_depth),
                                 std::to_string(c.hyper.min_samples_split),
                                 format_double(c.mean_accuracy), join(folds, ","),
                                 c.hyper == g.best ? "true" : "false"});
        }
      }
      const ForestModel model = train_forest(split.data, hyper, opt.jobs);
      model.save(model_path);
      run.wrote(model_path);
      for (const auto& [name, v] :
           feature_importance(model, nullptr, ImportanceMode::Impurity, cfg.seed)) {
        imp += tsv::format_row({split.key, name, format_double(v)});
      }
    } else if (cfg.model == ModelKind::Logistic) {
      const LinearModel model = train_logistic(split.data, cfg.linear);
      nlohmann::json j;
      j["format"] = "hearings-linear";
      j["task"] = name_of(model.task);
      j["feature_names"] = model.feature_names;
      j["medians"] = model.imputer.medians;
      j["means"] = model.means;
      j["scales"] = model.scales;
      j["weights"] = model.weights;
      j["biases"] = model.biases;
      run.write(model_path, j.dump() + "\n");
    } else {
      const Baseline b = majority_baseline(labels, split.data.n_classes());
      nlohmann::json j;
      j["format"] = "hearings-majority";
      j["class"] = task_classes(split.data.task).at(static_cast<std::size_t>(b.label));
      run.write(model_path, j.dump() + "\n");
    }
  }
  run.write(out / "cv_results.tsv", cv);
  run.write(out / "importances.tsv", imp);
  err << "train: " << build.datasets.size() << " splits, " << build.skipped.size() << " skipped\n";
  return 0;
}

int cmd_evaluate(const Options& opt, Run& run, std::ostream& err) {
  ExperimentInputs in = experiment_inputs(opt, run);
  const Lexicons lex = load_lexicons(opt, run);
  const DatasetBuild build =
      build_datasets(in.corpus, in.pairs, in.government, lex, in.spec, opt.jobs);
  const fs::path out = opt.out;
  write_skips(run, out / "skipped_splits.tsv", build);
  std::vector<EvalReport> reports;
  if (!opt.predictions.empty()) {
    run.require_input(opt.predictions, "--predictions");
    reports = score_external(build.datasets,
                             parse_predictions(read_file(opt.predictions), opt.predictions, in.spec.task),
                             in.spec.kind);
  } else if (!build.datasets.empty()) {
    reports = run_experiment(build.datasets, model_config_from(opt), in.spec.kind, opt.jobs);
  }
  for (const auto& p : emit_tables(out, reports)) run.wrote(p);
  std::size_t beats = 0;
  for (const auto& r : reports) {
    beats += r.beats_baseline();
    if (!r.error.empty()) err << "evaluate: " << r.split_key << ": " << r.error << "\n";
  }
  err << "evaluate: " << reports.size() << " splits, " << beats << " above baseline, "
      << build.skipped.size() << " skipped\n";
  return 0;
}

int cmd_prompts(const Options& opt, Run& run, std::ostream& err) {
  ExperimentInputs in = experiment_inputs(opt, run);
  const UnitCollection units = collect_units(in.corpus, in.pairs, in.government, in.spec);
  std::set<std::string> directory_set;
  for (const auto& h : in.corpus) {
    for (const auto& p : h.people) {
      if (p.role == Role::Member) directory_set.insert(p.display_name);
    }
  }
  const std::vector<std::string> directory(directory_set.begin(), directory_set.end());
  std::map<std::string, NameStripper> strippers;
  for (const auto& h : in.corpus) strippers.emplace(h.meta.hearing_id, NameStripper(h.people, directory));
  std::string lines;
  for (const auto& u : units.units) {
    const NameStripper* s = in.spec.keep_names ? nullptr : &strippers.at(u.hearing_id);
    const std::string q = s ? s->strip(u.question_text) : u.question_text;
    const std::string a = s ? s->strip(u.answer_text) : u.answer_text;
    nlohmann::json j;
    j["id"] = u.row_id;
    j["kind"] = name_of(in.spec.kind);
    j["label"] = task_classes(in.spec.task).at(static_cast<std::size_t>(u.label));
    j["prompt"] = render_prompt(in.spec.kind, q, a.empty() ? std::nullopt : std::optional<std::string_view>(a));
    lines += j.dump() + "\n";
  }
  run.write(fs::path(opt.out) / "prompts.jsonl", lines);
  err << "prompts: " << units.units.size() << " prompts\n";
  return 0;
}

int cmd_verify_sample(const Options& opt, Run& run, std::ostream& err) {
  const fs::path out = opt.out;
  if (!opt.verdicts.empty()) {
    run.require_input(opt.verdicts, "--verdicts");
    std::optional<SamplingManifest> manifest;
    if (!opt.manifest.empty()) {
      run.require_input(opt.manifest, "--manifest");
      manifest = parse_manifest_tsv(read_file(opt.manifest), opt.manifest);
    }
    const VerificationSummary summary = ingest_verdicts(
        read_file(opt.verdicts), opt.verdicts, manifest ? &*manifest : nullptr);
    run.write(out / "segmentation_verification.tsv", verification_table_tsv(summary));
    err << "verify-sample: " << summary.total.total << " verdicts, correctness "
        << format_fixed(100 * summary.total.correctness_rate(), 2) << "%\n";
    return 0;
  }
  run.require_input(opt.corpus, "--corpus");
  const Corpus corpus = load_corpus(opt.corpus);
  const SamplingManifest m =
      verify_sample(corpus, {opt.hearings_per_session, opt.utterances_per_hearing}, opt.seed);
  for (const auto& w : m.warnings) err << "verify-sample: " << w << "\n";
  run.write(out / "verification_manifest.tsv", manifest_tsv(m));
  return 0;
}

// ---------------------------------------------------------------------------

void add_experiment_options(CLI::App* sub, Options& o, bool with_model) {
  sub->add_option("--corpus", o.corpus, "Corpus store directory");
  sub->add_option("--pairs", o.pairs, "QA pairs file (needed for Answer and Both)");
  sub->add_option("--government", o.government, "Government contexts JSON");
  sub->add_option("--kind", o.kind, "Question, Answer or Both")->capture_default_str();
  sub->add_option("--task", o.task, "Affiliation or Standing")->capture_default_str();
  sub->add_option("--dimension", o.dimensions,
                  "Split dimension: committee, session, hearing_type, government, presidency");
  sub->add_option("--min-rows", o.min_rows, "Skip splits with fewer rows")->capture_default_str();
  sub->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
  sub->add_flag("--keep-names", o.keep_names, "Do not strip speaker names from text");
  if (!with_model) return;
  sub->add_option("--lexicons", o.lexicons, "Lexicon directory");
  sub->add_option("--model-kind", o.model_kind, "forest, logistic or majority")->capture_default_str();
  sub->add_option("--n-estimators", o.n_estimators, "Grid values for forest size")->capture_default_str();
  sub->add_option("--max-depth", o.max_depth, "Grid values for depth (0 = unlimited)")->capture_default_str();
  sub->add_option("--min-samples-split", o.min_samples_split, "Grid values for split size")->capture_default_str();
  sub->add_flag("--no-grid-search", o.no_grid_search, "Use the first grid cell without CV");
  sub->add_option("--train-fraction", o.train_fraction, "Training share")->capture_default_str();
  sub->add_option("--validation-fraction", o.validation_fraction, "Validation share")->capture_default_str();
  sub->add_option("--importance", o.importance, "impurity or permutation")->capture_default_str();
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Congressional hearing transcript pipeline", "hearings"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.set_config("--config", "", "TOML config; keys mirror the long flags");
  app.add_option("--seed", o.seed, "Root random seed")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads; results do not depend on it")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.require_subcommand(1);
  app.fallthrough();

  auto* fetch = app.add_subcommand("fetch", "Download transcripts into <out>/raw");
  fetch->add_option("--id", o.ids, "Hearing package id (repeatable)");
  fetch->add_option("--id-file", o.id_file, "File with one hearing id per line");
  fetch->add_option("--endpoint", o.endpoint, "URL template; {id} is replaced")->capture_default_str();
  fetch->add_option("--cache-dir", o.cache_dir, "Cache directory (default $HEARINGS_CACHE_DIR or <out>/cache)");
  fetch->add_option("--min-delay-ms", o.min_delay_ms, "Minimum spacing between requests")->capture_default_str();
  fetch->add_option("--max-attempts", o.max_attempts, "Attempts per transcript")->capture_default_str();

  auto* segment = app.add_subcommand("segment", "Split raw transcripts into utterances");
  segment->add_option("--input", o.input, "Transcript file or directory of <id>.txt + <id>.meta.json");
  segment->add_option("--rules", o.rules, "Segmenter rules JSON");
  segment->add_option("--government", o.government, "Government contexts JSON");

  auto* qa = app.add_subcommand("classify-qa", "Train or apply the question/answer classifier");
  qa->require_subcommand(1);
  auto* qa_train = qa->add_subcommand("train", "Train the lexical classifier");
  qa_train->add_option("--ama", o.ama, "Training file in AMA format (repeatable)");
  qa_train->add_option("--ukparl", o.ukparl, "Training file in UKParl format (repeatable)");
  qa_train->add_option("--hand", o.hand, "Hand-labeled training file (repeatable)");
  qa_train->add_option("--test", o.qa_test, "Held-out hand-labeled test file");
  qa_train->add_option("--epochs", o.qa_epochs, "Gradient descent epochs")->capture_default_str();
  qa_train->add_option("--learning-rate", o.qa_learning_rate, "Initial step size")->capture_default_str();
  qa_train->add_option("--l2", o.qa_l2, "L2 penalty")->capture_default_str();
  qa_train->add_option("--max-bigrams", o.max_bigrams, "Bigram vocabulary cap")->capture_default_str();
  qa_train->add_option("--other-threshold", o.other_threshold, "Confidence below which the label is Other")
      ->capture_default_str();
  auto* qa_apply = qa->add_subcommand("apply", "Label every utterance of a corpus");
  qa_apply->add_option("--model", o.model, "Model file from classify-qa train");
  qa_apply->add_option("--corpus", o.corpus, "Corpus store directory");
  qa_apply->add_option("--other-threshold", o.other_threshold, "Confidence below which the label is Other")
      ->capture_default_str();

  auto* pair = app.add_subcommand("pair", "Pair member questions with witness answers");
  pair->add_option("--corpus", o.corpus, "Labeled corpus store directory");

  auto* features = app.add_subcommand("features", "Extract the feature matrix");
  features->add_option("--corpus", o.corpus, "Corpus store directory");
  features->add_option("--lexicons", o.lexicons, "Lexicon directory");

  auto* kstest = app.add_subcommand("kstest", "Two-sample KS tests between speaker groups");
  kstest->add_option("--corpus", o.corpus, "Labeled corpus store directory");
  kstest->add_option("--features", o.features, "Feature matrix from the features command");
  kstest->add_option("--pairs", o.pairs, "QA pairs (needed for --kind Answer)");
  kstest->add_option("--government", o.government, "Government contexts JSON");
  kstest->add_option("--kind", o.kind, "Question or Answer")->capture_default_str();

  auto* train = app.add_subcommand("train", "Cross-validate and fit party models per split");
  add_experiment_options(train, o, true);

  auto* evaluate = app.add_subcommand("evaluate", "Score models against baselines and emit tables");
  add_experiment_options(evaluate, o, true);
  evaluate->add_option("--predictions", o.predictions, "Score an external id/label file instead");

  auto* prompts = app.add_subcommand("prompts", "Render zero-shot prompts");
  add_experiment_options(prompts, o, false);

  auto* verify = app.add_subcommand("verify-sample", "Draw a verification sample or score verdicts");
  verify->add_option("--corpus", o.corpus, "Corpus store directory");
  verify->add_option("--hearings-per-session", o.hearings_per_session, "Hearings drawn per session")
      ->capture_default_str();
  verify->add_option("--utterances-per-hearing", o.utterances_per_hearing, "Utterances drawn per hearing")
      ->capture_default_str();
  verify->add_option("--verdicts", o.verdicts, "Filled-in verdict file to score");
  verify->add_option("--manifest", o.manifest, "Sampling manifest supplying sessions");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    std::string name;
    std::function<int(const Options&, Run&, std::ostream&)> fn;
    if (*fetch) name = "fetch", fn = cmd_fetch;
    else if (*segment) name = "segment", fn = cmd_segment;
    else if (*qa_train) name = "classify-qa train", fn = cmd_qa_train;
    else if (*qa_apply) name = "classify-qa apply", fn = cmd_qa_apply;
    else if (*pair) name = "pair", fn = cmd_pair;
    else if (*features) name = "features", fn = cmd_features;
    else if (*kstest) name = "kstest", fn = cmd_kstest;
    else if (*train) name = "train", fn = cmd_train;
    else if (*evaluate) name = "evaluate", fn = cmd_evaluate;
    else if (*prompts) name = "prompts", fn = cmd_prompts;
    else if (*verify) name = "verify-sample", fn = cmd_verify_sample;
    else throw ValidationError("no subcommand");
    Run run(name, o, app.config_to_str(true, false), err);
    const int code = fn(o, run, err);
    run.finish();
    return code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace hearings
