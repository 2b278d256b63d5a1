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

#include "hearings/qa_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "json.hpp"

#include "hearings/errors.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"

namespace hearings {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 12> kInterrogatives = {
    "who", "what", "when", "where", "why", "how", "which",
    "is",  "are",  "do",   "does",  "can"};

std::optional<QaLabel> parse_label(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "question" || v == "q") return QaLabel::Question;
  if (v == "answer" || v == "a") return QaLabel::Answer;
  return std::nullopt;
}

std::string len_bucket(std::size_t n) {
  if (n <= 5) return "s:len0";
  if (n <= 15) return "s:len1";
  if (n <= 40) return "s:len2";
  if (n <= 100) return "s:len3";
  return "s:len4";
}

}  // namespace

std::size_t TrainingCorpus::count(QaLabel label) const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [&](const LabeledText& r) { return r.label == label; }));
}

TrainingCorpus parse_training_corpus(std::string_view content, const std::string& source,
                                     TrainingSource format) {
  const auto rows = tsv::parse(content);
  if (rows.empty()) throw ParseError(source, 0, "header", "missing header row");
  const auto& header = rows.front().fields;
  if (header.size() < 2 || header[0] != "text" || header[1] != "label") {
    throw ParseError(source, rows.front().line_no, "header",
                     "expected columns text, label[, source]");
  }
  TrainingCorpus out;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() < 2 || row.fields.size() > 3) {
      throw ParseError(source, row.line_no, "row",
                       "expected 2 or 3 fields, got " + std::to_string(row.fields.size()));
    }
    const std::string text = collapse_whitespace(row.fields[0]);
    if (text.empty()) throw ParseError(source, row.line_no, "text", "empty text");
    const auto label = parse_label(row.fields[1]);
    if (!label) {
      throw ParseError(source, row.line_no, "label", "unknown label '" + row.fields[1] + "'");
    }
    if (row.fields.size() == 3 && !trim(row.fields[2]).empty() &&
        to_lower(trim(row.fields[2])) != to_lower(name_of(format))) {
      throw ParseError(source, row.line_no, "source",
                       "source '" + row.fields[2] + "' does not match format " +
                           std::string(name_of(format)));
    }
    if (!seen.insert(to_lower(text)).second) {
      ++out.duplicates_removed;
      continue;
    }
    out.records.push_back({text, *label, format});
  }
  return out;
}

TrainingCorpus load_training_corpus(const std::filesystem::path& path, TrainingSource format) {
  return parse_training_corpus(read_file(path), path.string(), format);
}

TokenCounts featurize_text(std::string_view text) {
  TokenCounts out;
  const auto tokens = word_tokens(text);
  for (const auto& t : tokens) out["u:" + t] += 1.0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    out["b:" + tokens[i] + "_" + tokens[i + 1]] += 1.0;
  }
  const std::string_view trimmed = trim(text);
  if (!trimmed.empty() && trimmed.back() == '?') out["s:qmark"] = 1.0;
  if (!tokens.empty() && std::find(kInterrogatives.begin(), kInterrogatives.end(),
                                   tokens.front()) != kInterrogatives.end()) {
    out["s:interrogative"] = 1.0;
  }
  out[len_bucket(tokens.size())] = 1.0;
  return out;
}

LexicalModel::LexicalModel(std::vector<std::string> vocabulary, std::vector<double> weights,
                           double bias, QaTrainingMeta meta)
    : vocabulary_(std::move(vocabulary)), weights_(std::move(weights)), bias_(bias), meta_(meta) {
  if (vocabulary_.size() != weights_.size()) {
    throw ValidationError("vocabulary and weight vector differ in length");
  }
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], static_cast<std::uint32_t>(i)).second) {
      throw ValidationError("duplicate vocabulary entry '" + vocabulary_[i] + "'");
    }
  }
}

SparseRow LexicalModel::encode(const TokenCounts& counts) const {
  SparseRow row;
  for (const auto& [name, v] : counts) {
    auto it = index_.find(name);
    if (it == index_.end()) continue;
    row.index.push_back(it->second);
    row.value.push_back(v);
  }
  return row;
}

double LexicalModel::probability_question(std::string_view text) const {
  const SparseRow row = encode(featurize_text(text));
  double z = bias_;
  for (std::size_t k = 0; k < row.index.size(); ++k) z += weights_[row.index[k]] * row.value[k];
  return sigmoid(z);
}

std::string LexicalModel::to_json_text() const {
  json j;
  j["format"] = "hearings-qa-model";
  j["version"] = 1;
  j["vocabulary"] = vocabulary_;
  j["weights"] = weights_;
  j["bias"] = bias_;
  j["training_meta"] = {{"seed", meta_.seed},
                        {"epochs", meta_.epochs},
                        {"learning_rate", meta_.learning_rate},
                        {"l2", meta_.l2},
                        {"n_examples", meta_.n_examples}};
  return j.dump(1) + "\n";
}

LexicalModel LexicalModel::from_json_text(std::string_view text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, "json", e.what());
  }
  if (j.value("format", "") != "hearings-qa-model") {
    throw ParseError(source, 0, "format", "not a Q/A model file");
  }
  try {
    auto vocab = j.at("vocabulary").get<std::vector<std::string>>();
    auto weights = j.at("weights").get<std::vector<double>>();
    const double bias = j.at("bias").get<double>();
    for (double w : weights) {
      if (!std::isfinite(w)) throw ParseError(source, 0, "weights", "non-finite weight");
    }
    QaTrainingMeta meta;
    const auto& m = j.at("training_meta");
    meta.seed = m.at("seed").get<std::uint64_t>();
    meta.epochs = m.at("epochs").get<int>();
    meta.learning_rate = m.at("learning_rate").get<double>();
    meta.l2 = m.at("l2").get<double>();
    meta.n_examples = m.at("n_examples").get<std::size_t>();
    return LexicalModel(std::move(vocab), std::move(weights), bias, meta);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, "model", e.what());
  }
}

void LexicalModel::save(const std::filesystem::path& path) const {
  write_file(path, to_json_text());
}

LexicalModel LexicalModel::load(const std::filesystem::path& path) {
  return from_json_text(read_file(path), path.string());
}

QaDesign build_qa_design(std::span<const LabeledText> corpus, std::size_t max_bigrams) {
  std::vector<TokenCounts> feats;
  feats.reserve(corpus.size());
  std::map<std::string, std::size_t> bigram_df;
  std::set<std::string> others;
  for (const auto& r : corpus) {
    feats.push_back(featurize_text(r.text));
    for (const auto& [name, v] : feats.back()) {
      if (name.rfind("b:", 0) == 0) {
        ++bigram_df[name];
      } else {
        others.insert(name);
      }
    }
  }
  std::vector<std::pair<std::string, std::size_t>> bigrams(bigram_df.begin(), bigram_df.end());
  if (bigrams.size() > max_bigrams) {
    std::stable_sort(bigrams.begin(), bigrams.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    bigrams.resize(max_bigrams);
  }
  std::set<std::string> names(others.begin(), others.end());
  for (const auto& [name, n] : bigrams) names.insert(name);

  QaDesign d;
  d.vocabulary.assign(names.begin(), names.end());
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < d.vocabulary.size(); ++i) {
    index.emplace(d.vocabulary[i], static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    SparseRow row;
    for (const auto& [name, v] : feats[i]) {
      auto it = index.find(name);
      if (it == index.end()) continue;
      row.index.push_back(it->second);
      row.value.push_back(v);
    }
    d.rows.push_back(std::move(row));
    d.y.push_back(corpus[i].label == QaLabel::Question ? 1.0 : 0.0);
  }
  return d;
}

QaTrainingResult train_qa(std::span<const LabeledText> corpus, const QaHyper& hyper) {
  std::size_t nq = 0, na = 0;
  for (const auto& r : corpus) {
    if (r.label == QaLabel::Question) {
      ++nq;
    } else if (r.label == QaLabel::Answer) {
      ++na;
    } else {
      throw ValidationError("training labels must be Question or Answer");
    }
  }
  if (nq == 0 || na == 0) {
    throw ValidationError("training corpus needs both Question and Answer examples");
  }
  if (!(hyper.learning_rate > 0) || hyper.epochs < 0 || hyper.l2 < 0) {
    throw ValidationError("invalid Q/A hyper-parameters");
  }
  QaDesign d = build_qa_design(corpus, hyper.max_bigrams);
  LogisticHyper lh{hyper.learning_rate, hyper.epochs, hyper.l2, hyper.seed};
  LogisticFit fit = fit_logistic(d.rows, d.y, d.vocabulary.size(), lh);
  QaTrainingMeta meta{hyper.seed, hyper.epochs, hyper.learning_rate, hyper.l2, corpus.size()};
  return {LexicalModel(std::move(d.vocabulary), std::move(fit.weights), fit.bias, meta),
          std::move(fit.loss_history)};
}

QaPrediction classify_qa(const LexicalModel& model, std::string_view text,
                         double other_threshold) {
  QaPrediction p;
  p.p_question = model.probability_question(text);
  if (p.p_question >= 0.5) {
    p.label = QaLabel::Question;
    p.confidence = p.p_question;
  } else {
    p.label = QaLabel::Answer;
    p.confidence = 1.0 - p.p_question;
  }
  if (other_threshold > 0.5 && p.confidence < other_threshold) p.label = QaLabel::Other;
  return p;
}

QaConfusion& QaConfusion::operator+=(const QaConfusion& o) {
  question_true += o.question_true;
  question_false += o.question_false;
  answer_true += o.answer_true;
  answer_false += o.answer_false;
  other += o.other;
  return *this;
}

QaConfusion score_confusion(std::span<const QaLabel> predictions,
                            std::span<const QaLabel> truths) {
  if (predictions.size() != truths.size()) {
    throw ValidationError("prediction and truth vectors differ in length");
  }
  QaConfusion c;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const QaLabel t = truths[i];
    if (t != QaLabel::Question && t != QaLabel::Answer) {
      throw ValidationError("truth labels must be Question or Answer (row " +
                            std::to_string(i) + ")");
    }
    switch (predictions[i]) {
      case QaLabel::Question:
        ++(t == QaLabel::Question ? c.question_true : c.question_false);
        break;
      case QaLabel::Answer:
        ++(t == QaLabel::Answer ? c.answer_true : c.answer_false);
        break;
      default:
        ++c.other;
    }
  }
  return c;
}

PairingResult pair_qa(std::span<const Utterance> utterances, const Roster& roster) {
  PairingResult out;
  const Utterance* pending = nullptr;
  std::string current_hearing;
  auto role_of = [&](const Utterance& u) {
    if (!u.speaker) return Role::Unknown;
    const Person* p = roster.find(*u.speaker);
    return p ? p->role : Role::Unknown;
  };
  auto flush = [&] {
    if (pending) out.unpaired_questions.push_back(pending->utterance_id);
    pending = nullptr;
  };
  for (const auto& u : utterances) {
    if (u.hearing_id != current_hearing) {
      flush();
      current_hearing = u.hearing_id;
    }
    const Role role = role_of(u);
    if (u.qa_label == QaLabel::Question) {
      if (role != Role::Member) {
        ++out.skipped;
        continue;
      }
      flush();
      pending = &u;
    } else if (u.qa_label == QaLabel::Answer) {
      if (role != Role::Witness) {
        ++out.skipped;
        continue;
      }
      if (!pending) {
        out.orphan_answers.push_back(u.utterance_id);
        continue;
      }
      char buf[16];
      std::snprintf(buf, sizeof buf, "-p%05zu", out.pairs.size());
      out.pairs.push_back({u.hearing_id + buf, pending->utterance_id, u.utterance_id,
                           *pending->speaker, *u.speaker});
      pending = nullptr;
    }
  }
  flush();
  return out;
}

PairingResult pair_corpus(const Corpus& corpus) {
  PairingResult all;
  for (const auto& h : corpus) {
    PairingResult r = pair_qa(h.utterances, Roster(h.meta.hearing_id, h.people));
    for (auto& p : r.pairs) all.pairs.push_back(std::move(p));
    for (auto& id : r.unpaired_questions) all.unpaired_questions.push_back(std::move(id));
    for (auto& id : r.orphan_answers) all.orphan_answers.push_back(std::move(id));
    all.skipped += r.skipped;
  }
  return all;
}

}  // namespace hearings
