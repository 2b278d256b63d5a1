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

#ifndef HEARINGS_TRANSCRIPT_SEGMENTER_HPP_
#define HEARINGS_TRANSCRIPT_SEGMENTER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "hearings/corpus_model.hpp"

namespace hearings {

class SegmentationFailed : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct Warning {
  std::size_t line_no = 0;
  std::string message;

  bool operator==(const Warning&) const = default;
};

// Pattern lists that drive trimming and marker detection.
//
// Start/end anchors are searched case-insensitively anywhere in the text.
// Marker patterns are tried in order at each line start with
// std::regex_constants::match_continuous; capture group 1 is the speaker
// marker, the whole match is the marker region (indentation, marker and
// the delimiter that follows it).
class SegmenterRules {
 public:
  SegmenterRules(std::vector<std::string> start_patterns,
                 std::vector<std::string> end_patterns,
                 std::vector<std::string> marker_patterns,
                 std::vector<std::string> honorifics,
                 bool require_terminator_before = true);

  static SegmenterRules defaults();
  // JSON object with keys start_patterns, end_patterns, marker_patterns,
  // honorifics and optionally require_terminator_before.
  static SegmenterRules from_json_text(std::string_view text,
                                       const std::string& source);
  static SegmenterRules load(const std::filesystem::path& path);
  std::string to_json_text() const;

  const std::vector<std::string>& start_patterns() const { return start_; }
  const std::vector<std::string>& end_patterns() const { return end_; }
  const std::vector<std::string>& marker_patterns() const { return marker_; }
  const std::vector<std::string>& honorifics() const { return honorifics_; }
  // When set, a line only opens an utterance if it is the first line, follows
  // a blank line, or the previous non-blank text ends with a terminator.
  bool require_terminator_before() const { return require_terminator_; }

  const std::vector<std::regex>& start_regex() const { return compiled_->start; }
  const std::vector<std::regex>& end_regex() const { return compiled_->end; }
  const std::vector<std::regex>& marker_regex() const { return compiled_->marker; }

 private:
  struct Compiled {
    std::vector<std::regex> start, end, marker;
  };
  std::vector<std::string> start_, end_, marker_, honorifics_;
  bool require_terminator_ = true;
  std::shared_ptr<const Compiled> compiled_;
};

struct TrimResult {
  std::string head;
  std::string body;
  std::string tail;
  std::vector<Warning> warnings;
};

TrimResult trim_proceedings(std::string_view raw, const SegmenterRules& rules);

struct StageDirection {
  std::size_t offset = 0;  // position inside the utterance's original text
  std::string content;     // including the brackets

  bool operator==(const StageDirection&) const = default;
};

struct RawUtterance {
  std::size_t body_offset = 0;  // start of the marker region in the body
  std::string lead;             // indentation before the marker
  std::string raw_marker;
  std::string delimiter;        // text between marker and speech
  std::string text;             // speech with stage directions removed
  std::vector<StageDirection> stage_directions;

  std::string original_text() const;
  bool operator==(const RawUtterance&) const = default;
};

struct SegmentationResult {
  std::string preamble;  // body text before the first marker
  std::vector<RawUtterance> utterances;
  std::vector<Warning> warnings;  // line numbers relative to the body
};

// Throws SegmentationFailed when no marker is found.
SegmentationResult segment_utterances(std::string_view body,
                                      const SegmenterRules& rules);

// Inverse of trim + segment: head + preamble + markers + texts + stage
// directions + tail.
std::string reconstruct(const TrimResult& trim, const SegmentationResult& seg);
std::string reconstruct_body(const SegmentationResult& seg);

struct ResolveContext {
  std::optional<Role> previous_role;
  std::optional<QaLabel> previous_label;
};

struct Resolution {
  std::optional<std::string> person_id;
  std::optional<std::string> warning;
  bool used_tiebreak = false;
};

// Pluggable speaker recognition. The heuristic recognizer is the only
// built-in; a learned recognizer can be slotted in behind this interface.
class SpeakerRecognizer {
 public:
  virtual ~SpeakerRecognizer() = default;
  virtual Resolution resolve(std::string_view raw_marker, const Roster& roster,
                             const ResolveContext& ctx) const = 0;
};

class HeuristicRecognizer : public SpeakerRecognizer {
 public:
  Resolution resolve(std::string_view raw_marker, const Roster& roster,
                     const ResolveContext& ctx) const override;
};

Resolution resolve_speaker(std::string_view raw_marker, const Roster& roster,
                           const ResolveContext& ctx = {});

struct SegmentationReport {
  std::string hearing_id;
  std::size_t n_utterances = 0;
  std::size_t n_unresolved_speakers = 0;
  std::size_t trimmed_head_chars = 0;
  std::size_t trimmed_tail_chars = 0;
  std::vector<Warning> warnings;  // line numbers relative to the raw text
};

std::string report_record(const SegmentationReport& r);

struct SegmentedHearing {
  Hearing hearing;
  SegmentationReport report;
  TrimResult trim;
  SegmentationResult segments;
};

// Trim, segment and resolve speakers for one raw transcript.
SegmentedHearing segment_hearing(std::string_view raw, const HearingMeta& meta,
                                 const Roster& roster, const SegmenterRules& rules,
                                 const SpeakerRecognizer& recognizer);

// --- verification sampling --------------------------------------------------

struct SampleSpec {
  std::size_t hearings_per_session = 50;
  std::size_t utterances_per_hearing = 10;
};

struct ManifestRow {
  int session = 0;
  std::string hearing_id;
  std::string utterance_id;

  bool operator==(const ManifestRow&) const = default;
};

struct SamplingManifest {
  std::vector<ManifestRow> rows;
  std::vector<std::string> warnings;
};

SamplingManifest verify_sample(const Corpus& corpus, const SampleSpec& spec,
                               std::uint64_t seed);

// Columns: session, hearing_id, utterance_id, verdict (blank, to be filled
// with correct / clubbed / broken).
std::string manifest_tsv(const SamplingManifest& manifest);
SamplingManifest parse_manifest_tsv(std::string_view text, const std::string& source);

enum class Verdict { Correct, Clubbed, Broken };

std::optional<Verdict> parse_verdict(std::string_view s);

struct VerdictTally {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t clubbed = 0;
  std::size_t broken = 0;

  double correctness_rate() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
  // The error taxonomy is exhaustive: every incorrect row is clubbed or broken.
  bool consistent() const {
    return clubbed + broken == incorrect && correct + incorrect == total;
  }
};

struct VerificationSummary {
  std::map<int, VerdictTally> by_session;
  VerdictTally total;
};

// Verdict rows: utterance_id, verdict[, session]. Sessions come from the
// third column, else from the manifest, else 0.
VerificationSummary ingest_verdicts(std::string_view verdict_tsv,
                                    const std::string& source,
                                    const SamplingManifest* manifest = nullptr);

// Session, #incorrect, #clubbed, #broken, #verified, correctness rate.
std::string verification_table_tsv(const VerificationSummary& summary);

}  // namespace hearings

#endif  // HEARINGS_TRANSCRIPT_SEGMENTER_HPP_
