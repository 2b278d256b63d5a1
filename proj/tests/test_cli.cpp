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


#include <sstream>

#include "doctest.h"
#include "hearings/cli.hpp"
#include "hearings/corpus_model.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"
#include "json.hpp"
#include "pipeline.hpp"
#include "test_support.hpp"

using namespace hearings;
using hearings::testing::TempDir;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "hearings");
  std::ostringstream out, err;
  Outcome o;
  o.code = cli_dispatch(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and version exit 0") {
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("segment") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"train", "--help"}).code == 0);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--jobs", "0", "pair"}).code == 1);
  CHECK(run({"classify-qa"}).code == 1);
}

TEST_CASE("missing input files are validation errors") {
  TempDir dir;
  const auto r = run({"--out", dir.path().string(), "pair", "--corpus", "/nonexistent/corpus"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(run({"--out", dir.path().string(), "features", "--corpus", "/nonexistent",
             "--lexicons", "/nonexistent"}).code == 1);
  CHECK(run({"--out", dir.path().string(), "classify-qa", "train", "--ama",
             "/nonexistent.tsv"}).code == 1);
}

TEST_CASE("malformed input names the file and line") {
  TempDir dir;
  write_file(dir / "bad.tsv", "text\tlabel\nfine?\tquestion\noops\tperhaps\n");
  const auto r = run({"--out", (dir / "o").string(), "classify-qa", "train", "--ama",
                      (dir / "bad.tsv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("bad.tsv:3") != std::string::npos);
}

TEST_CASE("segment flags a failed hearing and continues") {
  TempDir dir;
  std::filesystem::create_directories(dir / "raw");
  for (const auto& entry : std::filesystem::directory_iterator(
           hearings::testing::data_dir() / "fixture" / "raw")) {
    std::filesystem::copy(entry.path(), dir / "raw" / entry.path().filename());
  }
  write_file(dir / "raw" / "EMPTY-1.txt", "no speakers here at all\n");
  write_file(dir / "raw" / "EMPTY-1.meta.json",
             "{\"hearing_id\": \"EMPTY-1\", \"session\": 115, \"chamber\": \"House\", "
             "\"committee\": \"Rules\", \"hearing_type\": \"General\", \"people\": []}");
  const auto r = run({"--out", (dir / "o").string(), "segment", "--input", (dir / "raw").string()});
  CHECK(r.code == 0);
  const std::string report = read_file(dir / "o" / "segmentation_report.jsonl");
  CHECK(report.find("EMPTY-1") != std::string::npos);
  CHECK(load_corpus(dir / "o" / "corpus").size() == 3);
}

TEST_CASE("full pipeline on the bundled fixture") {
  TempDir work;
  for (const auto& step : hearings::testing::fixture_pipeline(hearings::testing::data_dir(),
                                                               work.path())) {
    CAPTURE(step.name);
    const auto r = run(step.args);
    INFO(r.err);
    REQUIRE(r.code == 0);
    for (const auto& a : step.artifacts) {
      CAPTURE(a);
      CHECK(std::filesystem::exists(work / a));
    }
  }
  // Every run records its inputs and outputs.
  const auto manifest = nlohmann::json::parse(read_file(work / "train" / "run_manifest.json"));
  CHECK(manifest.at("subcommand") == "train");
  CHECK(manifest.at("seed").get<std::uint64_t>() == kDefaultSeed);
  CHECK_FALSE(manifest.at("input_checksums").empty());
  CHECK_FALSE(manifest.at("outputs").empty());

  const auto corpus = load_corpus(work / "labeled" / "corpus");
  for (const auto& h : corpus) {
    for (const auto& u : h.utterances) CHECK(u.qa_label != QaLabel::Unlabeled);
  }
  const auto heatmap = tsv::parse(read_file(work / "ks" / "heatmap_question.tsv"));
  REQUIRE_FALSE(heatmap.empty());
  CHECK(heatmap[0].fields[0] == "feature");

  SUBCASE("verdict scoring") {
    std::string verdicts = "utterance_id\tverdict\n";
    const auto rows = tsv::parse(read_file(work / "verify" / "verification_manifest.tsv"));
    std::size_t n = 0;
    for (const auto& row : rows) {
      if (row.fields[0] == "session") continue;
      verdicts += row.fields[2] + (n++ % 10 == 0 ? "\tbroken\n" : "\tcorrect\n");
    }
    write_file(work / "verdicts.tsv", verdicts);
    const auto r = run({"--out", (work / "scored").string(), "verify-sample", "--verdicts",
                        (work / "verdicts.tsv").string(), "--manifest",
                        (work / "verify" / "verification_manifest.tsv").string()});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(work / "scored" / "segmentation_verification.tsv"));
  }

  SUBCASE("same seed, same tables") {
    const auto steps = hearings::testing::fixture_pipeline(hearings::testing::data_dir(),
                                                           work.path());
    auto again = steps[8].args;  // evaluate
    again[1] = (work / "eval2").string();
    REQUIRE(run(again).code == 0);
    for (const char* t : {"task_summary.tsv", "by_committee.tsv", "by_input_kind.tsv",
                          "hearing_type_government.tsv"}) {
      CHECK(read_file(work / "eval" / t) == read_file(work / "eval2" / t));
    }
  }
}

TEST_CASE("config file supplies options") {
  TempDir dir;
  write_file(dir / "c.toml", "seed = 7\njobs = 2\n");
  const auto r = run({"--config", (dir / "c.toml").string(), "--out", (dir / "o").string(),
                      "pair", "--corpus", "/nonexistent"});
  CHECK(r.code == 1);
  CHECK(run({"--config", (dir / "missing.toml").string(), "pair"}).code == 1);
}

}  // TEST_SUITE
