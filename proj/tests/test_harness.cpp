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


#include <set>

#include "doctest.h"
#include "hearings/experiment_harness.hpp"
#include "hearings/qa_classifier.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"
#include "test_support.hpp"

using namespace hearings;
using hearings::testing::government;
using hearings::testing::lexicons;

namespace {

struct Labeled {
  Corpus corpus;
  std::vector<QaPair> pairs;
};

const Labeled& labeled() {
  static const Labeled l = [] {
    Labeled out;
    out.corpus = hearings::testing::synthetic_corpus(20, 80, 31);
    out.pairs = pair_corpus(out.corpus).pairs;
    return out;
  }();
  return l;
}

ModelConfig fast_config() {
  ModelConfig c;
  c.grid.n_estimators = {10};
  c.grid.max_depth = {0, 6};
  c.grid.min_samples_split = {2};
  c.folds = 3;
  return c;
}

SplitSpec spec_for(UtteranceKind kind, LabelTask task, std::vector<SplitDimension> dims) {
  SplitSpec s;
  s.kind = kind;
  s.task = task;
  s.dimensions = std::move(dims);
  s.min_rows = 20;
  s.folds = 3;
  return s;
}

}  // namespace

TEST_SUITE("experiment_harness") {

TEST_CASE("split spec validation") {
  SplitSpec s;
  s.min_rows = 9;
  s.folds = 5;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s.min_rows = 10;
  CHECK_NOTHROW(s.validate());
  ModelConfig c;
  c.train_fraction = 1.2;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("units: questions, answers and pairs") {
  const auto& l = labeled();
  const auto q = collect_units(l.corpus, l.pairs, government(),
                               spec_for(UtteranceKind::Question, LabelTask::Affiliation, {}));
  const auto a = collect_units(l.corpus, l.pairs, government(),
                               spec_for(UtteranceKind::Answer, LabelTask::Affiliation, {}));
  const auto b = collect_units(l.corpus, l.pairs, government(),
                               spec_for(UtteranceKind::Both, LabelTask::Affiliation, {}));
  CHECK(q.units.size() >= l.pairs.size());
  CHECK(a.units.size() == l.pairs.size());
  CHECK(b.units.size() == l.pairs.size());
  for (const auto& u : a.units) CHECK(u.row_id.find("-u") != std::string::npos);
  for (const auto& u : b.units) CHECK(u.row_id.find("-p") != std::string::npos);
  for (const auto& u : q.units) {
    REQUIRE(u.questioner != nullptr);
    CHECK(u.questioner->role == Role::Member);
    CHECK(u.label == *class_of(LabelTask::Affiliation, *u.questioner));
  }
  const auto s = collect_units(l.corpus, l.pairs, government(),
                               spec_for(UtteranceKind::Question, LabelTask::Standing, {}));
  CHECK(s.units.size() == q.units.size());
}

TEST_CASE("unit text strips names unless asked not to") {
  const auto& l = labeled();
  auto spec = spec_for(UtteranceKind::Both, LabelTask::Affiliation, {});
  const auto units = collect_units(l.corpus, l.pairs, government(), spec);
  REQUIRE_FALSE(units.units.empty());
  const auto& u = units.units.front();
  std::vector<std::string> directory;
  const NameStripper stripper(u.hearing->people, directory);
  const std::string stripped = unit_text(u, UtteranceKind::Both, &stripper);
  CHECK_FALSE(stripped.empty());
  CHECK(unit_text(u, UtteranceKind::Both, nullptr).find(u.answer_text) != std::string::npos);
  CHECK(stripper.strip(stripped) == stripped);
}

TEST_CASE("partitions are exact for every split specification") {
  const auto& l = labeled();
  const std::vector<std::vector<SplitDimension>> all_dims{
      {},
      {SplitDimension::Committee},
      {SplitDimension::Session},
      {SplitDimension::HearingType},
      {SplitDimension::Government},
      {SplitDimension::Presidency},
      {SplitDimension::HearingType, SplitDimension::Government}};
  for (auto kind : {UtteranceKind::Question, UtteranceKind::Answer, UtteranceKind::Both}) {
    for (auto task : {LabelTask::Affiliation, LabelTask::Standing}) {
      for (const auto& dims : all_dims) {
        const auto spec = spec_for(kind, task, dims);
        const auto build = build_datasets(l.corpus, l.pairs, government(), lexicons(), spec);
        std::size_t seen = 0;
        std::set<std::string> ids;
        for (const auto& d : build.datasets) {
          CHECK(d.data.rows.size() >= spec.min_rows);
          for (const auto& r : d.data.rows) CHECK(ids.insert(r.row_id).second);
          seen += d.data.rows.size();
        }
        for (const auto& s : build.skipped) {
          CHECK(s.n_rows < spec.min_rows);
          seen += s.n_rows;
        }
        CHECK(seen == build.total_rows);
        for (std::size_t i = 1; i < build.datasets.size(); ++i) {
          CHECK(build.datasets[i - 1].key < build.datasets[i].key);
        }
      }
    }
  }
}

TEST_CASE("dimension values") {
  GroupKeys k;
  k.session = 116;
  k.committee = "Armed Services";
  k.unified = false;
  k.president = Party::Republican;
  CHECK(dimension_value(SplitDimension::Session, k) == "116");
  CHECK(dimension_value(SplitDimension::Committee, k) == "Armed Services");
  CHECK(dimension_value(SplitDimension::Government, k) == "divided");
  CHECK(dimension_value(SplitDimension::Presidency, k) == "R");
}

TEST_CASE("train/test split is stratified, disjoint and seeded") {
  const auto d = hearings::testing::separable_dataset(101, 3);
  ModelConfig c;
  c.validation_fraction = 0.1;
  const auto s = split_rows(d, c, "all");
  std::set<std::size_t> all;
  for (const auto* part : {&s.train, &s.validation, &s.test}) {
    for (auto i : *part) CHECK(all.insert(i).second);
  }
  CHECK(all.size() == d.rows.size());
  // Test takes what train and validation leave: about 10% here.
  CHECK(s.test.size() == doctest::Approx(10).epsilon(0.2));
  const auto again = split_rows(d, c, "all");
  CHECK(again.test == s.test);
  CHECK(split_rows(d, c, "committee=X").test != s.test);
}

TEST_CASE("reports: baseline equals the test split's top class share") {
  const auto& l = labeled();
  const auto spec = spec_for(UtteranceKind::Question, LabelTask::Affiliation,
                             {SplitDimension::Government});
  const auto build = build_datasets(l.corpus, l.pairs, government(), lexicons(), spec);
  REQUIRE_FALSE(build.datasets.empty());
  for (auto model : {ModelKind::Forest, ModelKind::Logistic, ModelKind::Majority}) {
    auto config = fast_config();
    config.model = model;
    for (const auto& r : run_experiment(build.datasets, config, spec.kind)) {
      CHECK(r.error.empty());
      std::size_t n = 0, best = 0, hit = 0;
      for (std::size_t t = 0; t < r.confusion.size(); ++t) {
        std::size_t row = 0;
        for (auto v : r.confusion[t]) row += v;
        n += row;
        best = std::max(best, row);
        hit += r.confusion[t][t];
      }
      CHECK(n == r.n_test);
      CHECK(r.baseline_accuracy == doctest::Approx(static_cast<double>(best) / n));
      CHECK(r.accuracy == doctest::Approx(static_cast<double>(hit) / n));
      if (model == ModelKind::Majority) CHECK(r.accuracy <= r.baseline_accuracy + 1e-12);
    }
  }
}

TEST_CASE("single-class training split gives a flagged constant prediction") {
  SplitDataset s;
  s.key = "all";
  s.data = hearings::testing::separable_dataset(40, 1);
  for (auto& r : s.data.rows) r.label = 0;
  s.data.rows.back().label = 1;  // lands in the test split after rounding
  ModelConfig c = fast_config();
  c.train_fraction = 0.5;
  const auto r = evaluate_split(s, c, UtteranceKind::Question);
  CHECK(r.degenerate);
  CHECK(r.error.empty());
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("experiments and tables are reproducible") {
  const auto& l = labeled();
  const auto spec = spec_for(UtteranceKind::Question, LabelTask::Standing,
                             {SplitDimension::Committee});
  const auto build = build_datasets(l.corpus, l.pairs, government(), lexicons(), spec, 2);
  const auto r1 = run_experiment(build.datasets, fast_config(), spec.kind, 1);
  const auto r2 = run_experiment(build.datasets, fast_config(), spec.kind, 3);
  hearings::testing::TempDir a, b;
  const auto fa = emit_tables(a.path(), r1);
  const auto fb = emit_tables(b.path(), r2);
  REQUIRE(fa.size() == fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) CHECK(read_file(fa[i]) == read_file(fb[i]));
  const auto committee = tsv::parse(report_table(r1, TableLayout::ByCommittee));
  CHECK(committee.size() == r1.size() + 1);
  CHECK(committee[0].fields[0] == "committee");
  CHECK(tsv::parse(report_table(r1, TableLayout::HearingTypeGovernment)).size() == 1);
}

TEST_CASE("baseline display") {
  EvalReport r;
  r.task = LabelTask::Affiliation;
  r.baseline_accuracy = 10.0 / 19.0;
  r.baseline_class = 0;
  CHECK(baseline_display(r) == "52.63(D)");
  r.task = LabelTask::Standing;
  r.baseline_class = 1;
  r.baseline_accuracy = 0.5;
  CHECK(baseline_display(r) == "50.00(m)");
}

TEST_CASE("Q/A confusion table totals") {
  QaConfusion a{10, 2, 5, 1, 0}, b{1, 0, 1, 0, 2};
  const auto rows = tsv::parse(qa_confusion_table({{"x", a}, {"y", b}}));
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].fields[0] == "Total");
  CHECK(rows[3].fields[1] == "11");
  CHECK(rows[3].fields[6] == "22");
  CHECK(rows[3].fields[8] == format_fixed(17.0 / 22.0, 2));
}

TEST_CASE("prompt rendering") {
  const std::string tail =
      " The question was asked by a person who is a member of a congressional committee, and "
      "whose party affiliation is either Democrat, Independent, or Republican. Based on the ";
  const std::string ask =
      " above, what is the party affiliation of the person who asked the question? Answer with "
      "either D for Democrat, I for Independent, or R for Republican. Do not explain.";
  CHECK(render_prompt(UtteranceKind::Question, "Why?") ==
        "What follows is a question that has been asked in a congressional hearing: Question: Why?" +
            tail + "question" + ask);
  CHECK(render_prompt(UtteranceKind::Answer, "Why?", "Because.") ==
        "What follows is a response to a question asked in a congressional hearing: Answer: Because." +
            tail + "answer" + ask);
  CHECK(render_prompt(UtteranceKind::Both, "Why?", "Because.") ==
        "What follows is a question and its answer in a congressional hearing: Question: Why? "
        "Answer: Because." + tail + "question and answer" + ask);
  CHECK_THROWS_AS(render_prompt(UtteranceKind::Both, "Why?"), ValidationError);
  CHECK_THROWS_AS(render_prompt(UtteranceKind::Question, "  "), ValidationError);
}

TEST_CASE("external predictions") {
  const auto p = parse_predictions("id\tlabel\nx\tD\ny\tRepublican\nz\tI\n", "p.tsv",
                                   LabelTask::Affiliation);
  CHECK(p.at("x") == 0);
  CHECK(p.at("y") == 1);
  CHECK(p.at("z") == 2);
  CHECK_THROWS_AS(parse_predictions("x\tQ\n", "p.tsv", LabelTask::Affiliation), ParseError);

  SplitDataset s;
  s.key = "all";
  s.data = hearings::testing::separable_dataset(50, 2);
  std::map<std::string, int> perfect;
  for (const auto& r : s.data.rows) perfect[r.row_id] = r.label;
  const auto reports = score_external({s}, perfect, UtteranceKind::Question);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].accuracy == 1.0);
}

TEST_CASE("run manifest") {
  RunManifest m;
  m.subcommand = "train";
  m.config_hash = "abc";
  m.input_checksums["corpus"] = "0123";
  m.tool_version = std::string(kToolVersion);
  m.outputs = {"a.tsv"};
  const auto text = m.to_json_text();
  CHECK(text.find("\"subcommand\"") != std::string::npos);
  CHECK(text.find("\"0123\"") != std::string::npos);
  hearings::testing::TempDir d;
  write_file(d / "x.txt", "hello");
  CHECK(checksum_path(d / "x.txt") == checksum_path(d / "x.txt"));
  const std::string before = checksum_path(d.path());
  write_file(d / "y.txt", "more");
  CHECK(checksum_path(d.path()) != before);
  CHECK(utc_timestamp().size() == 20);
}

}  // TEST_SUITE
