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

#ifndef HEARINGS_TRANSCRIPT_SYNTH_HPP_
#define HEARINGS_TRANSCRIPT_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hearings/corpus_model.hpp"

namespace hearings {

// Generator of GPO-style hearing transcripts with known ground truth. Used by
// the golden-corpus tests and the bundled smoke fixture.
struct SynthOptions {
  std::string hearing_id = "SYN-0001";
  int session = 115;
  Chamber chamber = Chamber::House;
  std::string committee = "Oversight and Reform";
  HearingType hearing_type = HearingType::Oversight;
  std::size_t n_utterances = 120;
  // Mix honorific/case variants in markers and wrap speech so that names
  // land at line starts without opening a new utterance.
  bool adversarial = true;
  // When set, member standings are derived from this table.
  const GovernmentTable* government = nullptr;
};

struct TrueUtterance {
  std::size_t marker_offset = 0;  // start of the marker line in the raw text
  std::string raw_marker;
  std::string speaker;
  std::string text;  // whitespace-collapsed, stage directions removed
  QaLabel label = QaLabel::Other;
};

struct SynthHearing {
  Hearing hearing;  // meta, roster people, ground-truth utterances with labels
  std::map<std::string, std::string> aliases;  // e.g. "the chairman" -> chair id
  std::string raw;
  std::vector<TrueUtterance> truth;
};

SynthHearing synthesize_hearing(const SynthOptions& options, std::uint64_t seed);

// n hearings spread over sessions 108-117 and a fixed committee list.
std::vector<SynthHearing> synthesize_corpus(std::size_t n_hearings,
                                            std::size_t utterances_per_hearing,
                                            std::uint64_t seed,
                                            const GovernmentTable* government = nullptr);

}  // namespace hearings

#endif  // HEARINGS_TRANSCRIPT_SYNTH_HPP_
