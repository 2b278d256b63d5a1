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

#ifndef HEARINGS_CORPUS_MODEL_HPP_
#define HEARINGS_CORPUS_MODEL_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hearings/errors.hpp"

namespace hearings {

enum class Chamber { House, Senate, Joint };
enum class HearingType {
  General,
  Field,
  Oversight,
  Authorization,
  Nomination,
  Treaty,
  Markup
};
enum class Role { Member, Witness, Unknown };
// Declaration order is the tie-break order used by baselines and classifiers.
enum class Party { Democrat, Republican, Independent, None };
enum class Standing { Majority, Minority, NotApplicable };
enum class QaLabel { Question, Answer, Other, Unlabeled };

template <class E>
struct EnumNames;

#define HEARINGS_ENUM_NAMES(E, N, ...)                                   \
  template <>                                                            \
  struct EnumNames<E> {                                                  \
    static constexpr std::array<std::pair<E, std::string_view>, N> table{ \
        {__VA_ARGS__}};                                                  \
  }

HEARINGS_ENUM_NAMES(Chamber, 3, {Chamber::House, "House"},
                    {Chamber::Senate, "Senate"}, {Chamber::Joint, "Joint"});
HEARINGS_ENUM_NAMES(HearingType, 7, {HearingType::General, "General"},
                    {HearingType::Field, "Field"},
                    {HearingType::Oversight, "Oversight"},
                    {HearingType::Authorization, "Authorization"},
                    {HearingType::Nomination, "Nomination"},
                    {HearingType::Treaty, "Treaty"},
                    {HearingType::Markup, "Markup"});
HEARINGS_ENUM_NAMES(Role, 3, {Role::Member, "Member"}, {Role::Witness, "Witness"},
                    {Role::Unknown, "Unknown"});
HEARINGS_ENUM_NAMES(Party, 4, {Party::Democrat, "Democrat"},
                    {Party::Republican, "Republican"},
                    {Party::Independent, "Independent"}, {Party::None, "None"});
HEARINGS_ENUM_NAMES(Standing, 3, {Standing::Majority, "Majority"},
                    {Standing::Minority, "Minority"},
                    {Standing::NotApplicable, "NotApplicable"});
HEARINGS_ENUM_NAMES(QaLabel, 4, {QaLabel::Question, "Question"},
                    {QaLabel::Answer, "Answer"}, {QaLabel::Other, "Other"},
                    {QaLabel::Unlabeled, "Unlabeled"});

#undef HEARINGS_ENUM_NAMES

template <class E>
constexpr std::string_view name_of(E e) {
  for (const auto& [v, n] : EnumNames<E>::table) {
    if (v == e) return n;
  }
  return "?";
}

template <class E>
constexpr std::optional<E> parse_enum(std::string_view s) {
  for (const auto& [v, n] : EnumNames<E>::table) {
    if (n == s) return v;
  }
  return std::nullopt;
}

// One-letter party code used in tables: D, R, I.
std::string_view party_code(Party p);
// One-letter standing code: M (majority), m (minority).
std::string_view standing_code(Standing s);

struct HearingMeta {
  std::string hearing_id;
  int session = 0;
  Chamber chamber = Chamber::House;
  std::string committee;
  HearingType hearing_type = HearingType::General;
  // "metadata" when the type came from the hearing record, "default" when
  // it fell back to General.
  std::string hearing_type_source = "default";
  std::optional<std::string> date;

  bool operator==(const HearingMeta&) const = default;
};

struct Person {
  std::string person_id;
  std::string display_name;
  std::string surname;
  Role role = Role::Unknown;
  Party party = Party::None;
  std::optional<Chamber> chamber;
  Standing standing = Standing::NotApplicable;
  // Optional cue for disambiguating duplicate surnames ("Mr", "Ms", ...).
  std::string honorific;
  // Party an Independent caucuses with, if any.
  std::optional<Party> caucus;

  bool operator==(const Person&) const = default;
};

// Throws ValidationError when role and party/standing disagree.
void validate_person(const Person& p);

// Lowercase, drop periods and commas, drop honorific tokens. Idempotent.
std::string normalize_name(std::string_view name);
// Last token of the normalized name, ignoring an "of <State>" suffix.
std::string normalized_surname(std::string_view name);

std::span<const std::string_view> default_honorifics();

class Roster {
 public:
  Roster() = default;
  // Aliases map extra normalized keys (e.g. "chairman") to person ids.
  Roster(std::string hearing_id, std::vector<Person> people,
         const std::map<std::string, std::string>& aliases = {});

  const std::string& hearing_id() const { return hearing_id_; }
  const std::vector<Person>& people() const { return people_; }
  const std::map<std::string, std::vector<std::string>>& name_index() const {
    return name_index_;
  }
  const Person* find(std::string_view person_id) const;
  // All person ids registered under a normalized surname or alias.
  std::vector<std::string> lookup(std::string_view normalized_key) const;

 private:
  std::string hearing_id_;
  std::vector<Person> people_;
  std::map<std::string, std::vector<std::string>> name_index_;
};

struct Utterance {
  std::string utterance_id;
  std::string hearing_id;
  std::int64_t sequence_no = 0;
  std::optional<std::string> speaker;  // nullopt = Unknown
  std::string raw_marker;
  std::string text;
  QaLabel qa_label = QaLabel::Unlabeled;

  bool operator==(const Utterance&) const = default;
};

std::string make_utterance_id(std::string_view hearing_id, std::int64_t seq);

struct QaPair {
  std::string pair_id;
  std::string question_utterance_id;
  std::string answer_utterance_id;
  std::string questioner;
  std::string answerer;

  bool operator==(const QaPair&) const = default;
};

struct GovernmentContext {
  int session = 0;
  Party president_party = Party::Democrat;
  Party house_majority = Party::Democrat;
  Party senate_majority = Party::Democrat;
  // Per-person standing overrides (person_id -> standing).
  std::map<std::string, Standing> standing_overrides;

  bool unified() const {
    return president_party == house_majority &&
           house_majority == senate_majority;
  }
  Party majority_in(Chamber c) const {
    return c == Chamber::Senate ? senate_majority : house_majority;
  }
};

using GovernmentTable = std::map<int, GovernmentContext>;

GovernmentTable load_government_contexts(const std::filesystem::path& path);
GovernmentTable parse_government_contexts(std::string_view json_text,
                                          const std::string& source);

// Majority iff the member's (or caucus) party controls the relevant chamber.
Standing derive_standing(const Person& person, const HearingMeta& meta,
                         const GovernmentContext& ctx);

struct Hearing {
  HearingMeta meta;
  std::vector<Person> people;
  std::vector<Utterance> utterances;

  bool operator==(const Hearing&) const = default;
};

using Corpus = std::vector<Hearing>;

// Checks every corpus invariant; throws ValidationError naming the offender.
void validate_corpus(std::span<const Hearing> corpus);

// Layout: <root>/<hearing_id>/meta.json and <root>/<hearing_id>/utterances.jsonl.
void store_corpus(std::span<const Hearing> corpus,
                  const std::filesystem::path& root);
// Hearings sorted by id, utterances by sequence_no.
Corpus load_corpus(const std::filesystem::path& root);

// Record codecs, exposed for tools that stream single files.
std::string meta_record(const Hearing& h);
Hearing parse_meta_record(std::string_view json_text, const std::string& source);
std::string utterance_record(const Utterance& u);
Utterance parse_utterance_record(std::string_view line, const std::string& source,
                                 std::size_t line_no);

// QA pairs are stored one JSON object per line.
void store_pairs(std::span<const QaPair> pairs, const std::filesystem::path& path);
std::vector<QaPair> load_pairs(const std::filesystem::path& path);

}  // namespace hearings

#endif  // HEARINGS_CORPUS_MODEL_HPP_
