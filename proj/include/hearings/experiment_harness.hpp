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

#ifndef HEARINGS_EXPERIMENT_HARNESS_HPP_
#define HEARINGS_EXPERIMENT_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hearings/corpus_model.hpp"
#include "hearings/feature_extractor.hpp"
#include "hearings/party_models.hpp"
#include "hearings/qa_classifier.hpp"
#include "hearings/transcript_segmenter.hpp"

namespace hearings {

enum class SplitDimension { Committee, Session, HearingType, Government, Presidency };
enum class UtteranceKind { Question, Answer, Both };

template <>
struct EnumNames<SplitDimension> {
  static constexpr std::array<std::pair<SplitDimension, std::string_view>, 5> table{
      {{SplitDimension::Committee, "committee"},
       {SplitDimension::Session, "session"},
       {SplitDimension::HearingType, "hearing_type"},
       {SplitDimension::Government, "government"},
       {SplitDimension::Presidency, "presidency"}}};
};

template <>
struct EnumNames<UtteranceKind> {
  static constexpr std::array<std::pair<UtteranceKind, std::string_view>, 3> table{
      {{UtteranceKind::Question, "Question"},
       {UtteranceKind::Answer, "Answer"},
       {UtteranceKind::Both, "Both"}}};
};

struct SplitSpec {
  std::vector<SplitDimension> dimensions;
  UtteranceKind kind = UtteranceKind::Question;
  LabelTask task = LabelTask::Affiliation;
  std::size_t min_rows = 50;
  int folds = 5;
  bool keep_names = false;

  // min_rows must cover two rows per fold.
  void validate() const;
};

// A question (and, for Answer/Both, its paired answer) with the questioner
// who supplies the label.
struct LabeledUnit {
  std::string row_id;
  std::string hearing_id;
  std::string question_text;
  std::string answer_text;
  const Person* questioner = nullptr;
  const Hearing* hearing = nullptr;
  int label = 0;
  GroupKeys keys;
};

struct UnitCollection {
  std::vector<LabeledUnit> units;
  std::size_t unlabeled = 0;  // questioner without a class for the task
};

// Question kind uses every Member question; Answer and Both use QA pairs.
UnitCollection collect_units(const Corpus& corpus, const std::vector<QaPair>& pairs,
                             const GovernmentTable& government, const SplitSpec& spec);

// The text a model sees for a unit: names stripped unless keep_names.
std::string unit_text(const LabeledUnit& unit, UtteranceKind kind, const NameStripper* stripper);

std::vector<DataRow> featurize_units(const std::vector<LabeledUnit>& units, const Corpus& corpus,
                                     const Lexicons& lexicons, const SplitSpec& spec,
                                     unsigned jobs = 1);

std::string dimension_value(SplitDimension dim, const GroupKeys& keys);

struct SplitDataset {
  std::string key;  // "all" or "dim=value|dim=value"
  std::vector<std::pair<std::string, std::string>> parts;
  Dataset data;
};

struct SkipRecord {
  std::string key;
  std::size_t n_rows = 0;
  std::string reason;
};

struct DatasetBuild {
  std::vector<SplitDataset> datasets;
  std::vector<SkipRecord> skipped;
  std::size_t total_rows = 0;
  std::size_t unlabeled = 0;
};

// Every row lands in exactly one dataset or one skip record; keys sort
// lexicographically.
DatasetBuild partition_rows(const std::vector<DataRow>& rows, const SplitSpec& spec);

DatasetBuild build_datasets(const Corpus& corpus, const std::vector<QaPair>& pairs,
                            const GovernmentTable& government, const Lexicons& lexicons,
                            const SplitSpec& spec, unsigned jobs = 1);

enum class ModelKind { Forest, Logistic, Majority };

template <>
struct EnumNames<ModelKind> {
  static constexpr std::array<std::pair<ModelKind, std::string_view>, 3> table{
      {{ModelKind::Forest, "forest"}, {ModelKind::Logistic, "logistic"},
       {ModelKind::Majority, "majority"}}};
};

struct ModelConfig {
  ModelKind model = ModelKind::Forest;
  ForestGrid grid;
  bool grid_search = true;
  int folds = 5;
  double train_fraction = 0.8;
  double validation_fraction = 0.0;
  LinearHyper linear;
  ImportanceMode importance = ImportanceMode::Impurity;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

struct TrainTestSplit {
  std::vector<std::size_t> train, validation, test;
};
// Per-class shuffle from the split key and seed; each class contributes
// round(n * fraction) rows to test and validation.
TrainTestSplit split_rows(const Dataset& data, const ModelConfig& config, std::string_view key);

EvalReport evaluate_split(const SplitDataset& split, const ModelConfig& config,
                          UtteranceKind kind);
std::vector<EvalReport> run_experiment(const std::vector<SplitDataset>& datasets,
                                       const ModelConfig& config, UtteranceKind kind,
                                       unsigned jobs = 1);

enum class TableLayout {
  QaConfusion,
  TaskSummary,
  ByCommittee,
  HearingTypeGovernment,
  ByInputKind,
  SegmentationVerification
};

template <>
struct EnumNames<TableLayout> {
  static constexpr std::array<std::pair<TableLayout, std::string_view>, 6> table{
      {{TableLayout::QaConfusion, "qa_confusion"},
       {TableLayout::TaskSummary, "task_summary"},
       {TableLayout::ByCommittee, "by_committee"},
       {TableLayout::HearingTypeGovernment, "hearing_type_government"},
       {TableLayout::ByInputKind, "by_input_kind"},
       {TableLayout::SegmentationVerification, "segmentation_verification"}}};
};

// Per-group Q/A confusion counts with a Total row appended.
std::string qa_confusion_table(const std::vector<std::pair<std::string, QaConfusion>>& groups);

// Report layouts; rows with split dimensions outside the layout are left out.
std::string report_table(const std::vector<EvalReport>& reports, TableLayout layout);

// Writes <layout>.tsv for every report layout into dir.
std::vector<std::filesystem::path> emit_tables(const std::filesystem::path& dir,
                                               const std::vector<EvalReport>& reports);

// "D", "R" or "M"/"m" marker after the baseline value, e.g. "52.63(D)".
std::string baseline_display(const EvalReport& report);

std::string render_prompt(UtteranceKind kind, std::string_view question_text,
                          std::optional<std::string_view> answer_text = std::nullopt);

// Tab-separated "id  label" lines from an external model; labels are class
// codes (D/R/I, M/m) or party/standing names.
std::map<std::string, int> parse_predictions(std::string_view content, const std::string& source,
                                             LabelTask task);
std::vector<EvalReport> score_external(const std::vector<SplitDataset>& datasets,
                                       const std::map<std::string, int>& predictions,
                                       UtteranceKind kind);

struct RunManifest {
  std::string subcommand;
  std::string config_hash;
  std::map<std::string, std::string> input_checksums;
  std::uint64_t seed = kDefaultSeed;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  std::string to_json_text() const;
};

inline constexpr std::string_view kToolVersion = "1.0.0";

// FNV-1a over a file, or over every file below a directory in path order.
std::string checksum_path(const std::filesystem::path& path);
std::string utc_timestamp();

}  // namespace hearings

#endif  // HEARINGS_EXPERIMENT_HARNESS_HPP_
