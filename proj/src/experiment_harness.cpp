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

#include "hearings/experiment_harness.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "hearings/errors.hpp"
#include "hearings/rng.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"

namespace hearings {

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& t : threads) t.join();
}

const Person* person_in(const Hearing& h, const std::string& id) {
  for (const auto& p : h.people) {
    if (p.person_id == id) return &p;
  }
  return nullptr;
}

bool needs_government(const SplitSpec& spec) {
  return std::any_of(spec.dimensions.begin(), spec.dimensions.end(), [](SplitDimension d) {
    return d == SplitDimension::Government || d == SplitDimension::Presidency;
  });
}

}  // namespace

void SplitSpec::validate() const {
  if (folds < 2) throw ValidationError("split spec: folds must be at least 2");
  if (min_rows < static_cast<std::size_t>(2 * folds)) {
    throw ValidationError("split spec: min_rows (" + std::to_string(min_rows) +
                          ") must be at least twice the fold count");
  }
  std::set<SplitDimension> seen(dimensions.begin(), dimensions.end());
  if (seen.size() != dimensions.size()) throw ValidationError("split spec: repeated dimension");
}

UnitCollection collect_units(const Corpus& corpus, const std::vector<QaPair>& pairs,
                             const GovernmentTable& government, const SplitSpec& spec) {
  spec.validate();
  UnitCollection out;
  auto make_keys = [&](const Hearing& h, const Person& p) {
    GroupKeys k;
    k.session = h.meta.session;
    k.committee = h.meta.committee;
    k.hearing_type = h.meta.hearing_type;
    k.chamber = p.chamber.value_or(h.meta.chamber);
    auto it = government.find(h.meta.session);
    if (it != government.end()) {
      k.unified = it->second.unified();
      k.president = it->second.president_party;
    } else if (needs_government(spec)) {
      throw ValidationError("no government context for session " +
                            std::to_string(h.meta.session));
    }
    return k;
  };
  auto label_of = [&](const Hearing& h, const Person& p) -> std::optional<int> {
    if (p.role != Role::Member) return std::nullopt;
    if (spec.task == LabelTask::Standing && p.standing == Standing::NotApplicable) {
      auto it = government.find(h.meta.session);
      if (it == government.end()) return std::nullopt;
      try {
        Person copy = p;
        copy.standing = derive_standing(p, h.meta, it->second);
        return class_of(spec.task, copy);
      } catch (const ValidationError&) {
        return std::nullopt;
      }
    }
    return class_of(spec.task, p);
  };

  if (spec.kind == UtteranceKind::Question) {
    for (const auto& h : corpus) {
      for (const auto& u : h.utterances) {
        if (u.qa_label != QaLabel::Question || !u.speaker) continue;
        const Person* p = person_in(h, *u.speaker);
        if (!p || p->role != Role::Member) continue;
        const auto label = label_of(h, *p);
        if (!label) {
          ++out.unlabeled;
          continue;
        }
        LabeledUnit unit;
        unit.row_id = u.utterance_id;
        unit.hearing_id = h.meta.hearing_id;
        unit.question_text = u.text;
        unit.questioner = p;
        unit.hearing = &h;
        unit.label = *label;
        unit.keys = make_keys(h, *p);
        out.units.push_back(std::move(unit));
      }
    }
    return out;
  }

  std::unordered_map<std::string, std::pair<const Utterance*, const Hearing*>> by_id;
  for (const auto& h : corpus) {
    for (const auto& u : h.utterances) by_id.emplace(u.utterance_id, std::make_pair(&u, &h));
  }
  for (const auto& pair : pairs) {
    auto q = by_id.find(pair.question_utterance_id);
    auto a = by_id.find(pair.answer_utterance_id);
    if (q == by_id.end() || a == by_id.end()) {
      throw ValidationError("pair " + pair.pair_id + " references an unknown utterance");
    }
    const Hearing& h = *q->second.second;
    const Person* p = person_in(h, pair.questioner);
    if (!p) throw ValidationError("pair " + pair.pair_id + " has an unknown questioner");
    const auto label = label_of(h, *p);
    if (!label) {
      ++out.unlabeled;
      continue;
    }
    LabeledUnit unit;
    unit.row_id = spec.kind == UtteranceKind::Both ? pair.pair_id : pair.answer_utterance_id;
    unit.hearing_id = h.meta.hearing_id;
    unit.question_text = q->second.first->text;
    unit.answer_text = a->second.first->text;
    unit.questioner = p;
    unit.hearing = &h;
    unit.label = *label;
    unit.keys = make_keys(h, *p);
    out.units.push_back(std::move(unit));
  }
  return out;
}

std::string unit_text(const LabeledUnit& unit, UtteranceKind kind, const NameStripper* stripper) {
  std::string text;
  switch (kind) {
    case UtteranceKind::Question: text = unit.question_text; break;
    case UtteranceKind::Answer: text = unit.answer_text; break;
    case UtteranceKind::Both: text = unit.question_text + " " + unit.answer_text; break;
  }
  return stripper ? stripper->strip(text) : text;
}

std::vector<DataRow> featurize_units(const std::vector<LabeledUnit>& units, const Corpus& corpus,
                                     const Lexicons& lexicons, const SplitSpec& spec,
                                     unsigned jobs) {
  std::set<std::string> directory_set;
  for (const auto& h : corpus) {
    for (const auto& p : h.people) {
      if (p.role == Role::Member) directory_set.insert(p.display_name);
    }
  }
  const std::vector<std::string> directory(directory_set.begin(), directory_set.end());
  std::map<std::string, NameStripper> strippers;
  if (!spec.keep_names) {
    for (const auto& h : corpus) {
      strippers.emplace(h.meta.hearing_id, NameStripper(h.people, directory));
    }
  }
  std::vector<DataRow> rows(units.size());
  parallel_for(units.size(), jobs, [&](std::size_t i) {
    const auto& u = units[i];
    const NameStripper* s = nullptr;
    if (!spec.keep_names) s = &strippers.at(u.hearing_id);
    const FeatureVector fv = extract_features(unit_text(u, spec.kind, s), lexicons);
    rows[i].row_id = u.row_id;
    rows[i].x.assign(fv.values.begin(), fv.values.end());
    rows[i].label = u.label;
    rows[i].keys = u.keys;
  });
  return rows;
}

std::string dimension_value(SplitDimension dim, const GroupKeys& keys) {
  switch (dim) {
    case SplitDimension::Committee: return keys.committee;
    case SplitDimension::Session: return std::to_string(keys.session);
    case SplitDimension::HearingType: return std::string(name_of(keys.hearing_type));
    case SplitDimension::Government: return keys.unified ? "unified" : "divided";
    case SplitDimension::Presidency: return std::string(party_code(keys.president));
  }
  return "?";
}

DatasetBuild partition_rows(const std::vector<DataRow>& rows, const SplitSpec& spec) {
  spec.validate();
  std::map<std::string, std::pair<std::vector<std::pair<std::string, std::string>>,
                                  std::vector<std::size_t>>>
      groups;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> parts;
    std::string key;
    for (auto dim : spec.dimensions) {
      parts.emplace_back(std::string(name_of(dim)), dimension_value(dim, rows[i].keys));
      if (!key.empty()) key += "|";
      key += parts.back().first + "=" + parts.back().second;
    }
    if (key.empty()) key = "all";
    auto& g = groups[key];
    g.first = std::move(parts);
    g.second.push_back(i);
  }
  DatasetBuild out;
  out.total_rows = rows.size();
  for (auto& [key, g] : groups) {
    if (g.second.size() < spec.min_rows) {
      out.skipped.push_back({key, g.second.size(),
                             "fewer than " + std::to_string(spec.min_rows) + " rows"});
      continue;
    }
    SplitDataset sd;
    sd.key = key;
    sd.parts = g.first;
    sd.data.task = spec.task;
    sd.data.schema = std::string(kFeatureSchemaVersion);
    for (auto n : feature_schema()) sd.data.feature_names.emplace_back(n);
    for (auto i : g.second) sd.data.rows.push_back(rows[i]);
    out.datasets.push_back(std::move(sd));
  }
  return out;
}

DatasetBuild build_datasets(const Corpus& corpus, const std::vector<QaPair>& pairs,
                            const GovernmentTable& government, const Lexicons& lexicons,
                            const SplitSpec& spec, unsigned jobs) {
  const UnitCollection units = collect_units(corpus, pairs, government, spec);
  if (units.units.empty()) {
    throw ValidationError("no labeled " + std::string(name_of(spec.kind)) +
                          " rows for task " + std::string(name_of(spec.task)) +
                          " (are Q/A labels and party data present?)");
  }
  DatasetBuild b =
      partition_rows(featurize_units(units.units, corpus, lexicons, spec, jobs), spec);
  b.unlabeled = units.unlabeled;
  return b;
}

void ModelConfig::validate() const {
  if (!(train_fraction > 0) || validation_fraction < 0 ||
      train_fraction + validation_fraction >= 1.0) {
    throw ValidationError("model config: fractions must leave a non-empty test share");
  }
  if (folds < 2) throw ValidationError("model config: folds must be at least 2");
}

TrainTestSplit split_rows(const Dataset& data, const ModelConfig& config, std::string_view key) {
  config.validate();
  const double test_fraction = 1.0 - config.train_fraction - config.validation_fraction;
  const std::uint64_t root = derive_seed(config.seed, fnv1a64(key));
  std::vector<std::vector<std::size_t>> by_class(data.n_classes());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    by_class[static_cast<std::size_t>(data.rows[i].label)].push_back(i);
  }
  TrainTestSplit s;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& idx = by_class[c];
    Rng rng(derive_seed(root, c));
    rng.shuffle(idx);
    const double n = static_cast<double>(idx.size());
    std::size_t n_test = static_cast<std::size_t>(std::llround(n * test_fraction));
    std::size_t n_val = static_cast<std::size_t>(std::llround(n * config.validation_fraction));
    n_test = std::min(n_test, idx.size());
    n_val = std::min(n_val, idx.size() - n_test);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k < n_test) {
        s.test.push_back(idx[k]);
      } else if (k < n_test + n_val) {
        s.validation.push_back(idx[k]);
      } else {
        s.train.push_back(idx[k]);
      }
    }
  }
  std::sort(s.train.begin(), s.train.end());
  if (s.test.empty() && s.train.size() > 1) {
    s.test.push_back(s.train.back());
    s.train.pop_back();
  }
  std::sort(s.validation.begin(), s.validation.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

EvalReport evaluate_split(const SplitDataset& split, const ModelConfig& config,
                          UtteranceKind kind) {
  const Dataset& data = split.data;
  const TrainTestSplit s = split_rows(data, config, split.key);
  const Dataset train = data.subset(s.train);
  const Dataset validation = data.subset(s.validation);
  const Dataset test = data.subset(s.test);
  const auto truth = test.labels();
  const auto train_labels = train.labels();
  std::set<int> train_classes(train_labels.begin(), train_labels.end());

  std::vector<int> predicted;
  std::vector<std::pair<std::string, double>> importances;
  std::string error;
  std::string note;
  try {
    if (train.rows.empty() || truth.empty()) {
      throw ValidationError("train or test split is empty");
    }
    if (train_classes.size() < 2) {
      predicted.assign(truth.size(), *train_classes.begin());
      note = "single-class training split; constant prediction";
    } else if (config.model == ModelKind::Majority) {
      const Baseline b = majority_baseline(train_labels, data.n_classes());
      predicted.assign(truth.size(), b.label);
    } else if (config.model == ModelKind::Logistic) {
      LinearHyper lh = config.linear;
      lh.seed = config.seed;
      predicted = train_logistic(train, lh).predict(test);
    } else {
      const auto cells = config.grid.cells(config.seed);
      if (cells.empty()) throw ValidationError("hyper-parameter grid is empty");
      ForestHyper hyper = cells.front();
      if (config.grid_search && cells.size() > 1 &&
          train.rows.size() >= static_cast<std::size_t>(2 * config.folds)) {
        hyper = cross_validate_grid(train, config.grid, config.folds, config.seed).best;
      }
      const ForestModel model = train_forest(train, hyper);
      predicted = predict_forest(model, test);
      if (config.importance == ImportanceMode::Permutation && !validation.rows.empty()) {
        importances =
            feature_importance(model, &validation, ImportanceMode::Permutation, config.seed);
      } else {
        if (config.importance == ImportanceMode::Permutation) {
          note = "no validation rows; impurity importances reported";
        }
        importances = feature_importance(model, nullptr, ImportanceMode::Impurity, config.seed);
      }
    }
  } catch (const ValidationError& e) {
    error = e.what();
    predicted.clear();
  }

  EvalReport r;
  if (error.empty()) {
    r = score_predictions(truth, predicted, data.n_classes());
  } else if (!truth.empty()) {
    const Baseline b = majority_baseline(truth, data.n_classes());
    r.baseline_class = b.label;
    r.baseline_accuracy = b.accuracy;
    r.n_test = truth.size();
    r.confusion.assign(data.n_classes(), std::vector<std::size_t>(data.n_classes(), 0));
  }
  r.split_key = split.key;
  r.split_parts = split.parts;
  r.split_parts.emplace_back("kind", std::string(name_of(kind)));
  r.task = data.task;
  r.model = std::string(name_of(config.model));
  r.n_train = train.rows.size();
  r.split_spec = "train=" + format_double(config.train_fraction) +
                 " validation=" + format_double(config.validation_fraction) +
                 " seed=" + std::to_string(config.seed);
  r.importances = std::move(importances);
  r.error = std::move(error);
  r.note = std::move(note);
  if (train_classes.size() < 2) r.degenerate = true;
  return r;
}

std::vector<EvalReport> run_experiment(const std::vector<SplitDataset>& datasets,
                                       const ModelConfig& config, UtteranceKind kind,
                                       unsigned jobs) {
  if (datasets.empty()) throw ValidationError("no datasets to evaluate");
  config.validate();
  std::vector<EvalReport> reports(datasets.size());
  parallel_for(datasets.size(), jobs,
               [&](std::size_t i) { reports[i] = evaluate_split(datasets[i], config, kind); });
  return reports;
}

// ---------------------------------------------------------------------------
// Tables

std::string qa_confusion_table(const std::vector<std::pair<std::string, QaConfusion>>& groups) {
  std::string out = tsv::format_row({"group", "question_true", "question_false", "answer_true",
                                     "answer_false", "other", "n", "accuracy", "accuracy_display",
                                     "accuracy_pct_display"});
  QaConfusion total;
  auto row = [&](const std::string& name, const QaConfusion& c) {
    out += tsv::format_row({name, std::to_string(c.question_true),
                            std::to_string(c.question_false), std::to_string(c.answer_true),
                            std::to_string(c.answer_false), std::to_string(c.other),
                            std::to_string(c.total()), format_double(c.accuracy()),
                            format_fixed(c.accuracy(), 2), format_fixed(100.0 * c.accuracy(), 2)});
  };
  for (const auto& [name, c] : groups) {
    row(name, c);
    total += c;
  }
  if (!groups.empty()) row("Total", total);
  return out;
}

std::string baseline_display(const EvalReport& r) {
  const auto& classes = task_classes(r.task);
  const std::string code = static_cast<std::size_t>(r.baseline_class) < classes.size()
                               ? classes[static_cast<std::size_t>(r.baseline_class)]
                               : "?";
  return format_fixed(100.0 * r.baseline_accuracy, 2) + "(" + code + ")";
}

namespace {

std::vector<std::string> layout_dimensions(TableLayout layout) {
  switch (layout) {
    case TableLayout::ByCommittee: return {"committee"};
    case TableLayout::HearingTypeGovernment: return {"hearing_type", "government", "presidency"};
    default: return {};
  }
}

std::string part_value(const EvalReport& r, const std::string& dim) {
  for (const auto& [d, v] : r.split_parts) {
    if (d == dim) return v;
  }
  return "*";
}

bool layout_includes(const EvalReport& r, TableLayout layout) {
  std::vector<std::string> dims;
  for (const auto& [d, v] : r.split_parts) {
    if (d != "kind") dims.push_back(d);
  }
  if (layout == TableLayout::TaskSummary) return true;
  if (layout == TableLayout::ByInputKind) return dims.empty();
  const auto allowed = layout_dimensions(layout);
  if (dims.empty()) return false;
  return std::all_of(dims.begin(), dims.end(), [&](const std::string& d) {
    return std::find(allowed.begin(), allowed.end(), d) != allowed.end();
  });
}

std::string confusion_text(const EvalReport& r) {
  std::vector<std::string> rows;
  for (const auto& row : r.confusion) {
    std::vector<std::string> cells;
    for (auto v : row) cells.push_back(std::to_string(v));
    rows.push_back(join(cells, ","));
  }
  return join(rows, ";");
}

}  // namespace

std::string report_table(const std::vector<EvalReport>& reports, TableLayout layout) {
  if (layout == TableLayout::QaConfusion || layout == TableLayout::SegmentationVerification) {
    throw ValidationError("layout " + std::string(name_of(layout)) + " is not a report layout");
  }
  std::vector<std::string> header;
  const auto dims = layout_dimensions(layout);
  if (layout == TableLayout::TaskSummary) header.emplace_back("split");
  for (const auto& d : dims) header.push_back(d);
  for (const char* h : {"kind", "task", "model", "n_train", "n_test", "accuracy", "baseline",
                        "baseline_class", "accuracy_display", "baseline_display",
                        "beats_baseline", "degenerate", "confusion", "error"}) {
    header.emplace_back(h);
  }
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> rows;
  for (const auto& r : reports) {
    if (!layout_includes(r, layout)) continue;
    std::vector<std::string> cells;
    if (layout == TableLayout::TaskSummary) cells.push_back(r.split_key);
    for (const auto& d : dims) cells.push_back(part_value(r, d));
    const auto& classes = task_classes(r.task);
    cells.push_back(part_value(r, "kind"));
    cells.emplace_back(name_of(r.task));
    cells.push_back(r.model);
    cells.push_back(std::to_string(r.n_train));
    cells.push_back(std::to_string(r.n_test));
    cells.push_back(r.error.empty() ? format_double(r.accuracy) : "NA");
    cells.push_back(format_double(r.baseline_accuracy));
    cells.push_back(classes.at(static_cast<std::size_t>(r.baseline_class)));
    cells.push_back(r.error.empty() ? format_fixed(100.0 * r.accuracy, 2) : "NA");
    cells.push_back(baseline_display(r));
    cells.emplace_back(r.beats_baseline() ? "true" : "false");
    cells.emplace_back(r.degenerate ? "true" : "false");
    cells.push_back(confusion_text(r));
    cells.push_back(r.error);
    std::vector<std::string> sort_key(cells.begin(), cells.begin() + static_cast<long>(
                                                                         dims.size() + 4 +
                                                                         (layout == TableLayout::TaskSummary)));
    rows.emplace_back(std::move(sort_key), std::move(cells));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out = tsv::format_row(header);
  for (const auto& [k, cells] : rows) out += tsv::format_row(cells);
  return out;
}

std::vector<std::filesystem::path> emit_tables(const std::filesystem::path& dir,
                                               const std::vector<EvalReport>& reports) {
  std::vector<std::filesystem::path> written;
  for (auto layout : {TableLayout::TaskSummary, TableLayout::ByCommittee,
                      TableLayout::HearingTypeGovernment, TableLayout::ByInputKind}) {
    const auto path = dir / (std::string(name_of(layout)) + ".tsv");
    write_file(path, report_table(reports, layout));
    written.push_back(path);
  }
  return written;
}

// ---------------------------------------------------------------------------
// Prompts

std::string render_prompt(UtteranceKind kind, std::string_view question_text,
                          std::optional<std::string_view> answer_text) {
  static constexpr std::string_view kTemplate =
      "What follows is a {type_text} in a congressional hearing: {utterance_text} The question "
      "was asked by a person who is a member of a congressional committee, and whose party "
      "affiliation is either Democrat, Independent, or Republican. Based on the {type_text_2} "
      "above, what is the party affiliation of the person who asked the question? Answer with "
      "either D for Democrat, I for Independent, or R for Republican. Do not explain.";
  const bool has_q = !trim(question_text).empty();
  const bool has_a = answer_text && !trim(*answer_text).empty();
  std::string type_text, utterance_text, type_text_2;
  switch (kind) {
    case UtteranceKind::Question:
      if (!has_q) throw ValidationError("prompt: question text is required");
      type_text = "question that has been asked";
      utterance_text = "Question: " + std::string(question_text);
      type_text_2 = "question";
      break;
    case UtteranceKind::Answer:
      if (!has_a) throw ValidationError("prompt: answer text is required");
      type_text = "response to a question asked";
      utterance_text = "Answer: " + std::string(*answer_text);
      type_text_2 = "answer";
      break;
    case UtteranceKind::Both:
      if (!has_q || !has_a) throw ValidationError("prompt: question and answer text are required");
      type_text = "question and its answer";
      utterance_text =
          "Question: " + std::string(question_text) + " Answer: " + std::string(*answer_text);
      type_text_2 = "question and answer";
      break;
  }
  const std::map<std::string_view, const std::string*> values{
      {"type_text", &type_text}, {"utterance_text", &utterance_text}, {"type_text_2", &type_text_2}};
  std::string out;
  std::size_t i = 0;
  while (i < kTemplate.size()) {
    if (kTemplate[i] == '{') {
      const std::size_t close = kTemplate.find('}', i);
      const auto name = kTemplate.substr(i + 1, close - i - 1);
      auto it = values.find(name);
      if (close == std::string_view::npos || it == values.end()) {
        throw std::logic_error("prompt template has an unknown placeholder");
      }
      out += *it->second;
      i = close + 1;
    } else {
      out.push_back(kTemplate[i++]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// External predictions

std::map<std::string, int> parse_predictions(std::string_view content, const std::string& source,
                                             LabelTask task) {
  const auto& classes = task_classes(task);
  auto decode = [&](std::string_view s) -> std::optional<int> {
    const std::string v(trim(s));
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (v == classes[c]) return static_cast<int>(c);
    }
    const std::string l = to_lower(v);
    if (task == LabelTask::Affiliation) {
      if (l == "democrat") return 0;
      if (l == "republican") return 1;
      if (l == "independent") return 2;
    } else {
      if (l == "majority") return 0;
      if (l == "minority") return 1;
    }
    return std::nullopt;
  };
  std::map<std::string, int> out;
  const auto rows = tsv::parse(content);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i == 0 && r.fields.size() == 2 && r.fields[0] == "id" && r.fields[1] == "label") continue;
    if (r.fields.size() != 2) throw ParseError(source, r.line_no, "row", "expected id and label");
    const auto label = decode(r.fields[1]);
    if (!label) {
      throw ParseError(source, r.line_no, "label", "unknown label '" + r.fields[1] + "'");
    }
    if (!out.emplace(r.fields[0], *label).second) {
      throw ParseError(source, r.line_no, "id", "duplicate id '" + r.fields[0] + "'");
    }
  }
  return out;
}

std::vector<EvalReport> score_external(const std::vector<SplitDataset>& datasets,
                                       const std::map<std::string, int>& predictions,
                                       UtteranceKind kind) {
  std::vector<EvalReport> reports;
  for (const auto& split : datasets) {
    std::vector<int> truth, predicted;
    std::size_t missing = 0;
    for (const auto& row : split.data.rows) {
      auto it = predictions.find(row.row_id);
      if (it == predictions.end()) {
        ++missing;
        continue;
      }
      truth.push_back(row.label);
      predicted.push_back(it->second);
    }
    EvalReport r;
    if (truth.empty()) {
      r.error = "no predictions for this split";
      r.confusion.assign(split.data.n_classes(),
                         std::vector<std::size_t>(split.data.n_classes(), 0));
    } else {
      r = score_predictions(truth, predicted, split.data.n_classes());
    }
    r.split_key = split.key;
    r.split_parts = split.parts;
    r.split_parts.emplace_back("kind", std::string(name_of(kind)));
    r.task = split.data.task;
    r.model = "external";
    r.split_spec = "external predictions";
    if (missing > 0) r.note = std::to_string(missing) + " rows without a prediction";
    reports.push_back(std::move(r));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Run manifests

std::string RunManifest::to_json_text() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["config_hash"] = config_hash;
  j["input_checksums"] = input_checksums;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::string checksum_path(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(path)) return hex64(fnv1a64(read_file(path)));
  if (!fs::is_directory(path)) throw IoError("no such file or directory: " + path.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = fnv1a64("");
  for (const auto& f : files) {
    h = fnv1a64(fs::relative(f, path).generic_string() + '\0', h);
    h = fnv1a64(read_file(f), h);
  }
  return hex64(h);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hearings
