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

#ifndef HEARINGS_QA_CLASSIFIER_HPP_
#define HEARINGS_QA_CLASSIFIER_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hearings/corpus_model.hpp"
#include "hearings/logistic_core.hpp"

namespace hearings {

enum class TrainingSource { AMA, UKParl, HandLabeled };

template <>
struct EnumNames<TrainingSource> {
  static constexpr std::array<std::pair<TrainingSource, std::string_view>, 3> table{
      {{TrainingSource::AMA, "AMA"},
       {TrainingSource::UKParl, "UKParl"},
       {TrainingSource::HandLabeled, "HandLabeled"}}};
};

struct LabeledText {
  std::string text;
  QaLabel label = QaLabel::Question;  // Question or Answer
  TrainingSource source = TrainingSource::HandLabeled;

  bool operator==(const LabeledText&) const = default;
};

struct TrainingCorpus {
  std::vector<LabeledText> records;
  std::size_t duplicates_removed = 0;
  std::size_t count(QaLabel label) const;
};

// Tab-separated file with header `text  label  source`. Label is Question,
// Answer, Q or A; source must be empty or name the declared format.
TrainingCorpus load_training_corpus(const std::filesystem::path& path,
                                    TrainingSource format);
TrainingCorpus parse_training_corpus(std::string_view content, const std::string& source,
                                     TrainingSource format);

using TokenCounts = std::map<std::string, double>;

// Lowercased unigram ("u:") and bigram ("b:") counts plus structural
// features: terminal question mark, interrogative first token and a
// one-hot token-count bucket.
TokenCounts featurize_text(std::string_view text);

struct QaHyper {
  double learning_rate = 0.5;
  int epochs = 300;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
  std::size_t max_bigrams = 50000;
};

struct QaTrainingMeta {
  std::uint64_t seed = 0;
  int epochs = 0;
  double learning_rate = 0.0;
  double l2 = 0.0;
  std::size_t n_examples = 0;
};

// Logistic model over lexical features; P(Question | text).
class LexicalModel {
 public:
  LexicalModel() = default;
  LexicalModel(std::vector<std::string> vocabulary, std::vector<double> weights,
               double bias, QaTrainingMeta meta);

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const QaTrainingMeta& training_meta() const { return meta_; }

  SparseRow encode(const TokenCounts& counts) const;
  double probability_question(std::string_view text) const;

  std::string to_json_text() const;
  static LexicalModel from_json_text(std::string_view text, const std::string& source);
  void save(const std::filesystem::path& path) const;
  static LexicalModel load(const std::filesystem::path& path);

 private:
  std::vector<std::string> vocabulary_;
  std::map<std::string, std::uint32_t> index_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  QaTrainingMeta meta_;
};

struct QaTrainingResult {
  LexicalModel model;
  std::vector<double> loss_history;
};

// Throws ValidationError if the corpus lacks either label.
QaTrainingResult train_qa(std::span<const LabeledText> corpus, const QaHyper& hyper);

// The encoded design matrix train_qa optimizes, for gradient checks.
struct QaDesign {
  std::vector<std::string> vocabulary;
  std::vector<SparseRow> rows;
  std::vector<double> y;
};
QaDesign build_qa_design(std::span<const LabeledText> corpus, std::size_t max_bigrams);

struct QaPrediction {
  QaLabel label = QaLabel::Question;
  double confidence = 0.5;  // probability of the returned label
  double p_question = 0.5;
};

// Question iff P(Question) >= 0.5. When other_threshold > 0.5 and the
// winning probability falls below it the label is Other.
QaPrediction classify_qa(const LexicalModel& model, std::string_view text,
                         double other_threshold = 0.0);

struct QaConfusion {
  std::size_t question_true = 0;   // predicted Question, truly Question
  std::size_t question_false = 0;  // predicted Question, truly Answer
  std::size_t answer_true = 0;
  std::size_t answer_false = 0;
  std::size_t other = 0;  // predictions that were neither label

  std::size_t total() const {
    return question_true + question_false + answer_true + answer_false + other;
  }
  double accuracy() const {
    const auto n = total();
    return n == 0 ? 0.0
                  : static_cast<double>(question_true + answer_true) / static_cast<double>(n);
  }
  QaConfusion& operator+=(const QaConfusion& o);
};

QaConfusion score_confusion(std::span<const QaLabel> predictions,
                            std::span<const QaLabel> truths);

struct PairingResult {
  std::vector<QaPair> pairs;
  std::vector<std::string> unpaired_questions;  // utterance ids
  std::vector<std::string> orphan_answers;      // utterance ids
  std::size_t skipped = 0;  // labeled utterances outside the Member->Witness pattern
};

// Each Member question is paired with the next Witness answer that comes
// before the next Member question.
PairingResult pair_qa(std::span<const Utterance> utterances, const Roster& roster);
PairingResult pair_corpus(const Corpus& corpus);

}  // namespace hearings

#endif  // HEARINGS_QA_CLASSIFIER_HPP_
