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


#include <fstream>

#include "doctest.h"
#include "hearings/corpus_model.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"
#include "test_support.hpp"

using namespace hearings;
using hearings::testing::TempDir;

namespace {

Person member(std::string id, std::string name, Party party) {
  Person p;
  p.person_id = std::move(id);
  p.display_name = name;
  p.surname = normalized_surname(name);
  p.role = Role::Member;
  p.party = party;
  return p;
}

Hearing tiny_hearing() {
  Hearing h;
  h.meta.hearing_id = "CHRG-115hhrg1";
  h.meta.session = 115;
  h.meta.committee = "Oversight";
  h.people = {member("m1", "Mr. Jordan", Party::Republican),
              member("m2", "Ms. Speier", Party::Democrat)};
  Person w;
  w.person_id = "w1";
  w.display_name = "Dr. Lee";
  w.surname = "lee";
  w.role = Role::Witness;
  h.people.push_back(w);
  for (int i = 0; i < 3; ++i) {
    Utterance u;
    u.hearing_id = h.meta.hearing_id;
    u.sequence_no = i;
    u.utterance_id = make_utterance_id(h.meta.hearing_id, i);
    u.speaker = i == 1 ? std::optional<std::string>("w1") : std::optional<std::string>("m1");
    u.raw_marker = i == 1 ? "Dr. LEE." : "Mr. JORDAN.";
    u.text = i == 1 ? "Yes, sir.\nWith a tab\tand \"quotes\"." : "Did you know?";
    u.qa_label = i == 1 ? QaLabel::Answer : QaLabel::Question;
    h.utterances.push_back(u);
  }
  return h;
}

}  // namespace

TEST_SUITE("corpus_model") {

TEST_CASE("enum names round-trip") {
  for (const auto& [v, n] : EnumNames<Party>::table) CHECK(parse_enum<Party>(n) == v);
  for (const auto& [v, n] : EnumNames<HearingType>::table) CHECK(parse_enum<HearingType>(n) == v);
  CHECK_FALSE(parse_enum<Standing>("majority").has_value());
  CHECK(party_code(Party::Republican) == "R");
  CHECK(standing_code(Standing::Minority) == "m");
}

TEST_CASE("person invariants") {
  Person w;
  w.person_id = "w";
  w.role = Role::Witness;
  CHECK_NOTHROW(validate_person(w));
  w.party = Party::Democrat;
  CHECK_THROWS_AS(validate_person(w), ValidationError);

  Person m = member("m", "Mr. Smith", Party::None);
  CHECK_THROWS_AS(validate_person(m), ValidationError);
}

TEST_CASE("name normalization is idempotent and drops honorifics") {
  for (std::string_view raw : {"Mr. JORDAN", "The Honorable Jim Jordan", "Chairman Jordan",
                               "Ms. Norton of the District", "  Dr.  O'Brien,  "}) {
    const std::string once = normalize_name(raw);
    CHECK(normalize_name(once) == once);
  }
  CHECK(normalize_name("Mr. JORDAN") == "jordan");
  CHECK(normalized_surname("Mr. Davis of Illinois") == "davis");
  CHECK(normalized_surname("The Honorable Jim Jordan") == "jordan");
}

TEST_CASE("roster lookup by surname and alias") {
  auto h = tiny_hearing();
  Roster roster(h.meta.hearing_id, h.people, {{"the chairman", "m1"}});
  CHECK(roster.lookup("jordan") == std::vector<std::string>{"m1"});
  CHECK(roster.lookup("the chairman") == std::vector<std::string>{"m1"});
  CHECK(roster.lookup("nobody").empty());
  CHECK(roster.find("w1")->role == Role::Witness);
  CHECK_THROWS_AS(Roster("x", h.people, {{"ghost", "zz"}}), ValidationError);
  auto dup = h.people;
  dup.push_back(dup.front());
  CHECK_THROWS_AS(Roster("x", dup), ValidationError);
}

TEST_CASE("standing follows the chamber majority") {
  GovernmentContext ctx;
  ctx.session = 115;
  ctx.president_party = Party::Republican;
  ctx.house_majority = Party::Republican;
  ctx.senate_majority = Party::Republican;
  HearingMeta meta;
  meta.hearing_id = "h";
  meta.session = 115;
  meta.chamber = Chamber::House;
  CHECK(ctx.unified());
  CHECK(derive_standing(member("a", "A", Party::Republican), meta, ctx) == Standing::Majority);
  CHECK(derive_standing(member("b", "B", Party::Democrat), meta, ctx) == Standing::Minority);

  Person ind = member("c", "C", Party::Independent);
  CHECK(derive_standing(ind, meta, ctx) == Standing::Minority);
  ind.caucus = Party::Republican;
  CHECK(derive_standing(ind, meta, ctx) == Standing::Majority);

  ctx.standing_overrides["b"] = Standing::Majority;
  CHECK(derive_standing(member("b", "B", Party::Democrat), meta, ctx) == Standing::Majority);

  meta.chamber = Chamber::Joint;
  CHECK_THROWS_AS(derive_standing(member("a", "A", Party::Republican), meta, ctx),
                  ValidationError);
  meta.session = 116;
  CHECK_THROWS_AS(derive_standing(member("a", "A", Party::Republican), meta, ctx),
                  ValidationError);
}

TEST_CASE("bundled government table") {
  const auto& table = hearings::testing::government();
  REQUIRE(table.size() == 10);
  CHECK(table.begin()->first == 108);
  CHECK(table.rbegin()->first == 117);
  // Unified in 115 (Trump, GOP House and Senate), divided in 116.
  CHECK(table.at(115).unified());
  CHECK_FALSE(table.at(116).unified());
}

TEST_CASE("government table rejects malformed documents") {
  CHECK_THROWS_AS(parse_government_contexts("{}", "g.json"), ParseError);
  CHECK_THROWS_AS(parse_government_contexts("[{\"session\": \"x\"}]", "g.json"), ParseError);
  try {
    parse_government_contexts("not json", "g.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.file() == "g.json");
  }
}

TEST_CASE("corpus store/load round trip") {
  TempDir dir;
  Corpus corpus{tiny_hearing()};
  store_corpus(corpus, dir.path());
  const Corpus back = load_corpus(dir.path());
  REQUIRE(back.size() == 1);
  CHECK(back[0] == corpus[0]);
}

TEST_CASE("synthetic corpus survives a store/load round trip") {
  TempDir dir;
  const Corpus corpus = hearings::testing::synthetic_corpus(4, 40, 7);
  CHECK_NOTHROW(validate_corpus(corpus));
  store_corpus(corpus, dir.path());
  CHECK(load_corpus(dir.path()) == corpus);
}

TEST_CASE("corpus invariants") {
  auto h = tiny_hearing();
  SUBCASE("duplicate hearing") {
    Corpus c{h, h};
    CHECK_THROWS_AS(validate_corpus(c), ValidationError);
  }
  SUBCASE("sequence gap") {
    h.utterances[2].sequence_no = 5;
    CHECK_THROWS_AS(validate_corpus(Corpus{h}), ValidationError);
  }
  SUBCASE("marker left in text") {
    h.utterances[0].text = "Mr. JORDAN. Did you know?";
    CHECK_THROWS_AS(validate_corpus(Corpus{h}), ValidationError);
  }
  SUBCASE("unknown speaker") {
    h.utterances[0].speaker = "ghost";
    CHECK_THROWS_AS(validate_corpus(Corpus{h}), ValidationError);
  }
  SUBCASE("unsafe id") {
    h.meta.hearing_id = "../etc";
    for (auto& u : h.utterances) u.hearing_id = h.meta.hearing_id;
    CHECK_THROWS_AS(validate_corpus(Corpus{h}), ValidationError);
  }
}

TEST_CASE("utterance record errors carry file and line") {
  try {
    parse_utterance_record("{\"utterance_id\": 3}", "u.jsonl", 17);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.file() == "u.jsonl");
    CHECK(e.line() == 17);
  }
  CHECK_THROWS_AS(parse_utterance_record("[1,2]", "u.jsonl", 1), ParseError);
}

TEST_CASE("missing corpus root is an IoError") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/hearings/corpus"), IoError);
}

TEST_CASE("pairs round trip") {
  TempDir dir;
  std::vector<QaPair> pairs{{"h-p00000", "h-0", "h-1", "m1", "w1"},
                            {"h-p00001", "h-2", "h-3", "m2", "w1"}};
  store_pairs(pairs, dir / "pairs.jsonl");
  CHECK(load_pairs(dir / "pairs.jsonl") == pairs);
}

}  // TEST_SUITE

TEST_SUITE("text_util") {

TEST_CASE("tsv escaping round trips arbitrary fields") {
  const std::vector<std::string> fields{"plain", "tab\there", "line\nbreak", "back\\slash", ""};
  const auto rows = tsv::parse(tsv::format_row(fields));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fields == fields);
}

TEST_CASE("fixed formatting rounds half away from zero") {
  CHECK(format_fixed(0.125, 2) == "0.13");
  CHECK(format_fixed(-0.125, 2) == "-0.13");
  CHECK(format_fixed(87.14, 2) == "87.14");
  CHECK(format_fixed(0.8714285714, 2) == "0.87");
}

TEST_CASE("word tokens") {
  CHECK(word_tokens("Don't STOP 'now' 42x!") ==
        std::vector<std::string>{"don't", "stop", "now", "42x"});
}

}  // TEST_SUITE
