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


#ifndef HEARINGS_TESTS_TEST_SUPPORT_HPP_
#define HEARINGS_TESTS_TEST_SUPPORT_HPP_

#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <unistd.h>

#include "hearings/corpus_model.hpp"
#include "hearings/feature_extractor.hpp"
#include "hearings/party_models.hpp"
#include "hearings/rng.hpp"
#include "hearings/transcript_segmenter.hpp"
#include "hearings/transcript_synth.hpp"

namespace hearings::testing {

inline std::filesystem::path data_dir() { return HEARINGS_DATA_DIR; }

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("hearings-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline const GovernmentTable& government() {
  static const GovernmentTable table =
      load_government_contexts(data_dir() / "government" / "contexts.json");
  return table;
}

inline const Lexicons& lexicons() {
  static const Lexicons lex = Lexicons::load(data_dir() / "lexicons");
  return lex;
}

// Ground-truth corpus straight from the synthesizer (speakers and Q/A labels
// known), with standings derived from the bundled government table.
inline Corpus synthetic_corpus(std::size_t n_hearings, std::size_t utterances,
                               std::uint64_t seed) {
  Corpus corpus;
  for (auto& s : synthesize_corpus(n_hearings, utterances, seed, &government())) {
    corpus.push_back(std::move(s.hearing));
  }
  return corpus;
}

struct BoundaryScore {
  std::size_t truth = 0;
  std::size_t predicted = 0;
  std::size_t matched = 0;       // same raw offset
  std::size_t speaker_ok = 0;    // matched and resolved to the true person
  std::size_t speaker_wrong = 0; // matched and resolved to someone else
  std::size_t lossless = 0;      // hearings reconstructed byte-for-byte
  std::size_t hearings = 0;

  // Exact boundaries over the union of true and predicted boundaries, so
  // both missed and spurious splits count against it.
  double accuracy() const {
    const std::size_t uni = truth + predicted - matched;
    return uni == 0 ? 1.0 : static_cast<double>(matched) / static_cast<double>(uni);
  }
};

inline void score_segmentation(const SynthHearing& s, const SegmenterRules& rules,
                               BoundaryScore& score) {
  HeuristicRecognizer recognizer;
  const Roster roster(s.hearing.meta.hearing_id, s.hearing.people, s.aliases);
  const auto seg = segment_hearing(s.raw, s.hearing.meta, roster, rules, recognizer);
  ++score.hearings;
  if (reconstruct(seg.trim, seg.segments) == s.raw) ++score.lossless;
  std::map<std::size_t, const Utterance*> predicted;
  for (std::size_t i = 0; i < seg.segments.utterances.size(); ++i) {
    predicted[seg.trim.head.size() + seg.segments.utterances[i].body_offset] =
        &seg.hearing.utterances[i];
  }
  score.truth += s.truth.size();
  score.predicted += predicted.size();
  for (const auto& t : s.truth) {
    auto it = predicted.find(t.marker_offset);
    if (it == predicted.end()) continue;
    ++score.matched;
    const auto& who = it->second->speaker;
    if (who && *who == t.speaker) {
      ++score.speaker_ok;
    } else if (who) {
      ++score.speaker_wrong;
    }
  }
}

// Verdict rows (utterance_id, verdict, session) with the given per-session
// counts of clubbed and broken utterances out of `per_session` verified.
struct SessionVerdicts {
  int session;
  std::size_t clubbed;
  std::size_t broken;
};

inline std::string verdict_rows(const std::vector<SessionVerdicts>& sessions,
                                std::size_t per_session) {
  std::string out = "utterance_id\tverdict\tsession\n";
  for (const auto& s : sessions) {
    for (std::size_t i = 0; i < per_session; ++i) {
      const char* v = i < s.clubbed ? "clubbed" : (i < s.clubbed + s.broken ? "broken" : "correct");
      out += "S" + std::to_string(s.session) + "-" + std::to_string(i) + "\t" + v + "\t" +
             std::to_string(s.session) + "\n";
    }
  }
  return out;
}

// Standing task: class 0 when x0 + x1 < 1, class 1 otherwise, with a gap of
// 0.2 around the boundary and two noise columns.
inline Dataset separable_dataset(std::size_t n, std::uint64_t seed) {
  Dataset d;
  d.task = LabelTask::Standing;
  d.feature_names = {"x0", "x1", "noise0", "noise1"};
  Rng rng(seed);
  while (d.rows.size() < n) {
    const double x0 = rng.uniform(), x1 = rng.uniform();
    if (std::abs(x0 + x1 - 1.0) < 0.1) continue;
    DataRow r;
    r.row_id = "r" + std::to_string(d.rows.size());
    r.x = {x0, x1, rng.uniform(), rng.uniform()};
    r.label = x0 + x1 < 1.0 ? 0 : 1;
    d.rows.push_back(r);
  }
  return d;
}

// Balanced random labels over pure-noise features.
inline Dataset noise_dataset(std::size_t n, std::uint64_t seed) {
  Dataset d;
  d.task = LabelTask::Standing;
  d.feature_names = {"a", "b", "c", "d", "e"};
  Rng rng(seed);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 2);
  rng.shuffle(labels);
  for (std::size_t i = 0; i < n; ++i) {
    DataRow r;
    r.row_id = "n" + std::to_string(i);
    for (int j = 0; j < 5; ++j) r.x.push_back(rng.uniform());
    r.label = labels[i];
    d.rows.push_back(r);
  }
  return d;
}

inline double holdout_accuracy(const ForestModel& model, const Dataset& test) {
  const auto pred = predict_forest(model, test);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) ok += pred[i] == test.rows[i].label;
  return static_cast<double>(ok) / static_cast<double>(pred.size());
}

}  // namespace hearings::testing

#endif  // HEARINGS_TESTS_TEST_SUPPORT_HPP_
