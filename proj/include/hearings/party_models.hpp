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

#ifndef HEARINGS_PARTY_MODELS_HPP_
#define HEARINGS_PARTY_MODELS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hearings/corpus_model.hpp"

namespace hearings {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum class LabelTask { Affiliation, Standing };

template <>
struct EnumNames<LabelTask> {
  static constexpr std::array<std::pair<LabelTask, std::string_view>, 2> table{
      {{LabelTask::Affiliation, "Affiliation"}, {LabelTask::Standing, "Standing"}}};
};

// Class codes in tie-break order: D, R, I for affiliation; M, m for standing.
const std::vector<std::string>& task_classes(LabelTask task);
std::optional<int> class_of(LabelTask task, const Person& person);

struct GroupKeys {
  int session = 0;
  std::string committee;
  HearingType hearing_type = HearingType::General;
  bool unified = false;
  Party president = Party::None;
  Chamber chamber = Chamber::House;

  bool operator==(const GroupKeys&) const = default;
};

struct DataRow {
  std::string row_id;  // utterance or pair id
  std::vector<std::optional<double>> x;
  int label = 0;
  GroupKeys keys;
};

struct Dataset {
  LabelTask task = LabelTask::Affiliation;
  std::string schema;
  std::vector<std::string> feature_names;
  std::vector<DataRow> rows;

  std::size_t n_classes() const { return task_classes(task).size(); }
  std::vector<int> labels() const;
  Dataset subset(std::span<const std::size_t> indices) const;
  // Throws ValidationError on ragged rows or out-of-range labels.
  void validate() const;
};

using Matrix = std::vector<std::vector<double>>;

// Train-split column medians; absent values are replaced by them.
struct Imputer {
  std::vector<double> medians;

  static Imputer fit(const Dataset& data);
  std::vector<double> apply(const std::vector<std::optional<double>>& x) const;
  Matrix apply(const Dataset& data) const;
};

// Replaces each roster or directory name (full name or surname, any case,
// whole tokens) with the placeholder. Applying it twice changes nothing.
inline constexpr std::string_view kNamePlaceholder = "\xE2\x9F\xA8NAME\xE2\x9F\xA9";
class NameStripper {
 public:
  NameStripper(const std::vector<Person>& roster, const std::vector<std::string>& directory);
  std::string strip(std::string_view text) const;

 private:
  std::vector<std::vector<std::string>> names_;  // longest first
};
std::string strip_speaker_names(std::string_view text, const std::vector<Person>& roster,
                                const std::vector<std::string>& member_directory);

struct Baseline {
  int label = 0;
  double accuracy = 0.0;
};
// Most frequent label, ties to the smallest class index.
Baseline majority_baseline(std::span<const int> labels, std::size_t n_classes);

struct ForestHyper {
  int n_estimators = 100;
  int max_depth = 0;  // 0 = grow until pure or too small
  int min_samples_split = 2;
  int max_features = 0;  // 0 = floor(sqrt(d)), at least 1
  std::uint64_t seed = kDefaultSeed;

  bool operator==(const ForestHyper&) const = default;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // go left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  std::vector<double> distribution;  // leaves only; sums to 1
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct Prediction {
  int label = 0;
  std::vector<double> probabilities;
};

struct ForestModel {
  ForestHyper hyper;
  LabelTask task = LabelTask::Affiliation;
  std::vector<std::string> feature_names;
  std::size_t n_classes = 0;
  Imputer imputer;
  std::vector<Tree> trees;
  // Total weighted Gini decrease per feature over all trees.
  std::vector<double> impurity_decrease;

  std::string to_json_text() const;
  static ForestModel from_json_text(std::string_view text, const std::string& source);
  void save(const std::filesystem::path& path) const;
  static ForestModel load(const std::filesystem::path& path);
};

// Trees are grown from derive_seed(hyper.seed, tree index) so any `jobs`
// value gives the same forest.
ForestModel train_forest(const Dataset& train, const ForestHyper& hyper, unsigned jobs = 1);
ForestModel train_forest(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                         const ForestHyper& hyper, unsigned jobs = 1);

Prediction predict_tree(const Tree& tree, std::span<const double> row, std::size_t n_classes);
// Averages leaf distributions; the label is their argmax, ties to the
// smallest class index.
Prediction predict_forest(const ForestModel& model, std::span<const double> row);
std::vector<int> predict_forest(const ForestModel& model, const Dataset& data);

struct ForestGrid {
  std::vector<int> n_estimators{50, 100};
  std::vector<int> max_depth{0, 10};
  std::vector<int> min_samples_split{2, 10};

  std::vector<ForestHyper> cells(std::uint64_t seed) const;
};

struct FoldAssignment {
  std::vector<int> fold_of;  // per row
  bool stratified = true;
  std::string warning;
};
// Rows of each class are shuffled and dealt round-robin, continuing the
// deal across classes so fold sizes differ by at most one.
FoldAssignment stratified_folds(std::span<const int> labels, std::size_t n_classes, int k,
                                std::uint64_t seed);

struct CellScore {
  ForestHyper hyper;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct GridResult {
  ForestHyper best;
  std::vector<CellScore> cells;
  FoldAssignment folds;
};

// Smaller model wins ties: fewer trees, then shallower, then larger
// minimum split size.
bool smaller_model(const ForestHyper& a, const ForestHyper& b);
GridResult cross_validate_grid(const Dataset& data, const ForestGrid& grid, int k,
                               std::uint64_t seed, unsigned jobs = 1);

enum class ImportanceMode { Impurity, Permutation };
inline constexpr int kPermutationRepeats = 5;
std::vector<std::pair<std::string, double>> feature_importance(const ForestModel& model,
                                                               const Dataset* validation,
                                                               ImportanceMode mode,
                                                               std::uint64_t seed);

struct LinearHyper {
  double learning_rate = 0.0;  // 0 = the stable step for the design
  int epochs = 500;
  double l2 = 1e-3;
  std::uint64_t seed = kDefaultSeed;
};

// One-vs-rest logistic regression on standardized, median-imputed columns.
struct LinearModel {
  LabelTask task = LabelTask::Affiliation;
  std::vector<std::string> feature_names;
  Imputer imputer;
  std::vector<double> means;
  std::vector<double> scales;  // population std, 1 for constant columns
  std::vector<std::vector<double>> weights;  // per class
  std::vector<double> biases;
  LinearHyper hyper;

  std::vector<double> standardize(std::span<const double> row) const;
  Prediction predict(std::span<const double> raw_row) const;
  std::vector<int> predict(const Dataset& data) const;
};

LinearModel train_logistic(const Dataset& train, const LinearHyper& hyper);

struct EvalReport {
  std::string split_key;
  // (dimension, value) pairs behind split_key, plus ("kind", Q/A/Both).
  std::vector<std::pair<std::string, std::string>> split_parts;
  LabelTask task = LabelTask::Affiliation;
  std::string model;
  double accuracy = 0.0;
  double baseline_accuracy = 0.0;
  int baseline_class = 0;
  std::vector<std::vector<std::size_t>> confusion;  // [truth][prediction]
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::string split_spec;
  std::vector<std::pair<std::string, double>> importances;
  bool degenerate = false;  // the test split holds a single class
  std::string error;        // set when training failed for this split
  std::string note;

  bool beats_baseline() const { return error.empty() && accuracy > baseline_accuracy; }
};

// Accuracy and baseline both come from `truth`, the test labels.
EvalReport score_predictions(std::span<const int> truth, std::span<const int> predicted,
                             std::size_t n_classes);

}  // namespace hearings

#endif  // HEARINGS_PARTY_MODELS_HPP_
