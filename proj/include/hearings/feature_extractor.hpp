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

#ifndef HEARINGS_FEATURE_EXTRACTOR_HPP_
#define HEARINGS_FEATURE_EXTRACTOR_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hearings/corpus_model.hpp"

namespace hearings {

struct TextStats {
  long n_words = 0;
  long n_sentences = 0;
  long n_characters_in_words = 0;  // letters only
  long n_syllables = 0;
  long n_polysyllables = 0;  // three or more syllables
  long n_long_words = 0;     // more than six letters
  long n_unique_words = 0;

  bool operator==(const TextStats&) const = default;
};

// Vowel groups (a e i o u y) with a silent final 'e' dropped unless the
// word ends in consonant + "le"; every word has at least one syllable.
int count_syllables(std::string_view word);

// Sentence boundaries are runs of . ! ? not preceded by a known
// abbreviation or single-letter initial and not inside a decimal number.
std::vector<std::string> split_sentences(std::string_view text);

TextStats compute_stats(std::string_view text);

// Phrases are matched as contiguous word-token sequences, overlapping
// occurrences included.
class WordList {
 public:
  WordList() = default;
  explicit WordList(const std::vector<std::string>& entries);

  const std::vector<std::string>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  long count(const std::vector<std::string>& tokens) const;

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::vector<std::vector<std::string>>> by_first_;
};

struct Lexicons {
  WordList weak_pos, weak_neg, weak_neu;
  WordList strong_pos, strong_neg, strong_neu;
  WordList bias_words, assertives, factives, hedges, implicatives, report_verbs;
  WordList positive_opinion, negative_opinion;
  WordList gazetteer;
  std::unordered_map<std::string, double> sentiment_valence;
  // Checksum over the list contents, recorded in run manifests.
  std::string checksum;

  // Reads <name>.txt lists and sentiment_valence.tsv. When the directory
  // has a MANIFEST, every listed checksum must match.
  static Lexicons load(const std::filesystem::path& dir);
  static const std::vector<std::string>& list_names();
};

// Writes MANIFEST lines "<file>\t<fnv1a64 hex>" for the lexicon files.
void write_lexicon_manifest(const std::filesystem::path& dir);

inline constexpr std::string_view kFeatureSchemaVersion = "nela-lite-1";
inline constexpr std::size_t kFeatureCount = 30;
const std::array<std::string_view, kFeatureCount>& feature_schema();
std::optional<std::size_t> feature_index(std::string_view name);
bool is_count_feature(std::string_view name);

// An absent value marks a degenerate input (no words or no sentences).
using PartialFeatures = std::vector<std::pair<std::string, std::optional<double>>>;

struct FeatureVector {
  std::array<std::optional<double>, kFeatureCount> values{};

  std::optional<double> get(std::string_view name) const;
  bool operator==(const FeatureVector&) const = default;
};

PartialFeatures complexity_features(const TextStats& stats);
PartialFeatures affect_features(std::string_view text, const Lexicons& lex);
PartialFeatures bias_features(std::string_view text, const Lexicons& lex);
PartialFeatures style_event_features(std::string_view text, const Lexicons& lex);

long count_date_mentions(std::string_view text);

FeatureVector extract_features(std::string_view text, const Lexicons& lex);

struct FeatureRow {
  std::string utterance_id;
  FeatureVector features;
};

// Every utterance in corpus order; work is split across `jobs` threads.
std::vector<FeatureRow> extract_corpus_features(const Corpus& corpus, const Lexicons& lex,
                                                unsigned jobs = 1);

// Tab-separated with header "utterance_id" + schema; absent values are NA.
std::string feature_matrix_tsv(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> parse_feature_matrix(std::string_view content, const std::string& source);
void write_feature_matrix(const std::filesystem::path& path, const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> read_feature_matrix(const std::filesystem::path& path);

}  // namespace hearings

#endif  // HEARINGS_FEATURE_EXTRACTOR_HPP_
