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


#include <regex>

#include "doctest.h"
#include "hearings/text_util.hpp"
#include "hearings/transcript_segmenter.hpp"
#include "test_support.hpp"

using namespace hearings;
using hearings::testing::BoundaryScore;

namespace {

const char* kTranscript =
    "                    [House Hearing, 115th Congress]\n"
    "\n"
    "    The committee met, pursuant to notice, at 10:00 a.m.\n"
    "\n"
    "    Chairman GOWDY. The committee will come to order. Mr.\n"
    "Cummings is recognized.\n"
    "    Mr. CUMMINGS. Thank you. [Laughter.] Dr. Lee, did you\n"
    "approve the contract?\n"
    "    Dr. LEE. I did not.\n"
    "    Mr. Cummings. Who did?\n"
    "    Mr. NOBODY. Point of order.\n"
    "    [Whereupon, at 11:00 a.m., the committee was adjourned.]\n";

Hearing roster_hearing() {
  Hearing h;
  h.meta.hearing_id = "H1";
  h.meta.session = 115;
  auto add = [&](std::string id, std::string name, Role role, Party party) {
    Person p;
    p.person_id = std::move(id);
    p.display_name = name;
    p.surname = normalized_surname(name);
    p.role = role;
    p.party = party;
    h.people.push_back(p);
  };
  add("gowdy", "Trey Gowdy", Role::Member, Party::Republican);
  add("cummings", "Elijah Cummings", Role::Member, Party::Democrat);
  add("lee", "Dr. Lee", Role::Witness, Party::None);
  return h;
}

}  // namespace

TEST_SUITE("transcript_segmenter") {

TEST_CASE("hand-built transcript") {
  const auto rules = SegmenterRules::defaults();
  const Hearing h = roster_hearing();
  const Roster roster("H1", h.people);
  HeuristicRecognizer recognizer;
  const auto seg = segment_hearing(kTranscript, h.meta, roster, rules, recognizer);

  const auto& u = seg.hearing.utterances;
  REQUIRE(u.size() == 5);
  CHECK(u[0].raw_marker == "Chairman GOWDY");
  CHECK(u[0].speaker == std::optional<std::string>("gowdy"));
  // "Mr.\nCummings" mid-sentence does not open an utterance.
  CHECK(u[0].text == "The committee will come to order. Mr. Cummings is recognized.");
  CHECK(u[1].speaker == std::optional<std::string>("cummings"));
  CHECK(u[1].text.find("[Laughter.]") == std::string::npos);
  CHECK(u[2].speaker == std::optional<std::string>("lee"));
  CHECK(u[3].raw_marker == "Mr. Cummings");
  CHECK(u[3].speaker == std::optional<std::string>("cummings"));
  CHECK_FALSE(u[4].speaker.has_value());
  CHECK(seg.report.n_unresolved_speakers == 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(u[i].sequence_no == static_cast<std::int64_t>(i));
    CHECK(u[i].utterance_id == make_utterance_id("H1", static_cast<std::int64_t>(i)));
  }
  CHECK(reconstruct(seg.trim, seg.segments) == kTranscript);
  CHECK(seg.trim.head.find("House Hearing") != std::string::npos);
  // The adjournment line closes the body and is dropped as a stage direction.
  CHECK(seg.trim.tail.empty());
  CHECK(u[4].text == "Point of order.");
  CHECK_NOTHROW(validate_corpus(Corpus{seg.hearing}));
}

TEST_CASE("no marker is a segmentation failure") {
  const auto rules = SegmenterRules::defaults();
  CHECK_THROWS_AS(segment_utterances("just some prose without speakers.\n", rules),
                  SegmentationFailed);
}

TEST_CASE("speaker resolution") {
  const Hearing h = roster_hearing();
  const Roster roster("H1", h.people, {{"the chairman", "gowdy"}});
  CHECK(resolve_speaker("Mr. Cummings", roster).person_id == std::optional<std::string>("cummings"));
  CHECK(resolve_speaker("CHAIRMAN GOWDY", roster).person_id == std::optional<std::string>("gowdy"));
  CHECK(resolve_speaker("The Chairman", roster).person_id == std::optional<std::string>("gowdy"));
  const auto miss = resolve_speaker("Mr. Nobody", roster);
  CHECK_FALSE(miss.person_id.has_value());
  CHECK(miss.warning.has_value());
}

TEST_CASE("duplicate surname prefers the member after an answer") {
  std::vector<Person> people;
  Person m;
  m.person_id = "m";
  m.display_name = "John Smith";
  m.surname = "smith";
  m.role = Role::Member;
  m.party = Party::Democrat;
  Person w = m;
  w.person_id = "w";
  w.role = Role::Witness;
  w.party = Party::None;
  const Roster roster("H", {m, w});
  ResolveContext ctx;
  ctx.previous_role = Role::Witness;
  ctx.previous_label = QaLabel::Answer;
  const auto r = resolve_speaker("Mr. SMITH", roster, ctx);
  CHECK(r.person_id == std::optional<std::string>("m"));
  CHECK(r.used_tiebreak);
}

TEST_CASE("rules round-trip through JSON and reject bad patterns") {
  const auto rules = SegmenterRules::defaults();
  const auto back = SegmenterRules::from_json_text(rules.to_json_text(), "rules.json");
  CHECK(back.marker_patterns() == rules.marker_patterns());
  CHECK(back.start_patterns() == rules.start_patterns());
  CHECK(back.honorifics() == rules.honorifics());
  CHECK_THROWS_AS(SegmenterRules::from_json_text("{\"marker_patterns\": [\"(\"]}", "r.json"),
                  ValidationError);
  const auto bundled = SegmenterRules::load(hearings::testing::data_dir() / "rules" /
                                            "segmenter_rules.json");
  CHECK(bundled.marker_patterns() == rules.marker_patterns());
}

TEST_CASE("synthetic corpus: lossless, exact boundaries, deterministic") {
  const auto rules = SegmenterRules::defaults();
  BoundaryScore score;
  for (const auto& s : synthesize_corpus(12, 80, 4242, &hearings::testing::government())) {
    hearings::testing::score_segmentation(s, rules, score);
  }
  CHECK(score.lossless == score.hearings);
  CHECK(score.accuracy() >= 0.99);
  CHECK(static_cast<double>(score.speaker_ok) / static_cast<double>(score.truth) >= 0.9);
  CHECK(static_cast<double>(score.speaker_wrong) / static_cast<double>(score.truth) <= 0.01);
}

TEST_CASE("segmentation ignores trailing whitespace") {
  const auto rules = SegmenterRules::defaults();
  const auto s = synthesize_hearing(SynthOptions{}, 11);
  const std::string stripped = std::regex_replace(s.raw, std::regex("[ \\t]+\\n"), "\n");
  HeuristicRecognizer rec;
  const Roster roster(s.hearing.meta.hearing_id, s.hearing.people, s.aliases);
  const auto a = segment_hearing(s.raw, s.hearing.meta, roster, rules, rec);
  const auto b = segment_hearing(stripped, s.hearing.meta, roster, rules, rec);
  const auto again = segment_hearing(s.raw, s.hearing.meta, roster, rules, rec);
  CHECK(a.hearing == again.hearing);
  REQUIRE(a.hearing.utterances.size() == b.hearing.utterances.size());
  for (std::size_t i = 0; i < a.hearing.utterances.size(); ++i) {
    CHECK(a.hearing.utterances[i].text == b.hearing.utterances[i].text);
    CHECK(a.hearing.utterances[i].speaker == b.hearing.utterances[i].speaker);
  }
}

TEST_CASE("verification sample") {
  const Corpus corpus = hearings::testing::synthetic_corpus(20, 30, 3);
  const SampleSpec spec{3, 10};
  const auto m1 = verify_sample(corpus, spec, 99);
  const auto m2 = verify_sample(corpus, spec, 99);
  CHECK(m1.rows == m2.rows);
  // 20 hearings over 10 sessions: two per session, so every session warns.
  CHECK(m1.rows.size() == 10 * 2 * 10);
  CHECK(m1.warnings.size() == 10);
  const auto parsed = parse_manifest_tsv(manifest_tsv(m1), "manifest.tsv");
  CHECK(parsed.rows == m1.rows);
  CHECK(verify_sample(corpus, spec, 100).rows != m1.rows);
}

TEST_CASE("verdict ingest keeps the error taxonomy exhaustive") {
  const std::string tsv = hearings::testing::verdict_rows({{108, 3, 2}, {109, 0, 1}}, 10);
  const auto s = ingest_verdicts(tsv, "v.tsv");
  CHECK(s.total.total == 20);
  CHECK(s.total.incorrect == 6);
  CHECK(s.total.consistent());
  for (const auto& [session, t] : s.by_session) CHECK(t.consistent());
  CHECK(s.by_session.at(108).correctness_rate() == doctest::Approx(0.5));
  CHECK_THROWS_AS(ingest_verdicts("u1\tmaybe\n", "v.tsv"), ParseError);
  CHECK(parse_verdict("CLUBBED") == Verdict::Clubbed);
  const std::string table = verification_table_tsv(s);
  CHECK(table.find("108\t5\t3\t2\t10\t0.5\t50.00") != std::string::npos);
}

}  // TEST_SUITE
