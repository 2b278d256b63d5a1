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

#include "hearings/corpus_model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "hearings/text_util.hpp"

namespace hearings {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 9> kHonorifics = {
    "mr", "mrs", "ms", "dr", "senator", "chairman", "chairwoman", "chair",
    "honorable"};

template <class E>
E field_enum(const json& j, const char* key, const std::string& src,
             std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(src, line, key, "missing or not a string");
  }
  auto v = parse_enum<E>(j[key].get<std::string>());
  if (!v) {
    throw ParseError(src, line, key,
                     "unknown value '" + j[key].get<std::string>() + "'");
  }
  return *v;
}

std::string field_string(const json& j, const char* key, const std::string& src,
                         std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(src, line, key, "missing or not a string");
  }
  return j[key].get<std::string>();
}

std::int64_t field_int(const json& j, const char* key, const std::string& src,
                       std::size_t line) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(src, line, key, "missing or not an integer");
  }
  return j[key].get<std::int64_t>();
}

template <class E>
json opt_enum(const std::optional<E>& v) {
  return v ? json(std::string(name_of(*v))) : json(nullptr);
}

json person_json(const Person& p) {
  return json{{"person_id", p.person_id},
              {"display_name", p.display_name},
              {"surname", p.surname},
              {"role", name_of(p.role)},
              {"party", name_of(p.party)},
              {"chamber", opt_enum(p.chamber)},
              {"standing", name_of(p.standing)},
              {"honorific", p.honorific},
              {"caucus", opt_enum(p.caucus)}};
}

Person parse_person(const json& j, const std::string& src) {
  Person p;
  p.person_id = field_string(j, "person_id", src, 1);
  p.display_name = j.value("display_name", p.person_id);
  p.surname = j.value("surname", std::string());
  if (p.surname.empty()) p.surname = normalized_surname(p.display_name);
  p.role = field_enum<Role>(j, "role", src, 1);
  p.party = j.contains("party") ? field_enum<Party>(j, "party", src, 1)
                                : Party::None;
  if (j.contains("chamber") && !j["chamber"].is_null()) {
    p.chamber = field_enum<Chamber>(j, "chamber", src, 1);
  }
  p.standing = j.contains("standing")
                   ? field_enum<Standing>(j, "standing", src, 1)
                   : Standing::NotApplicable;
  p.honorific = j.value("honorific", std::string());
  if (j.contains("caucus") && !j["caucus"].is_null()) {
    p.caucus = field_enum<Party>(j, "caucus", src, 1);
  }
  return p;
}

bool safe_id(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return is_ascii_alnum(c) || c == '-' || c == '_' || c == '.';
  });
}

}  // namespace

std::string_view party_code(Party p) {
  switch (p) {
    case Party::Democrat: return "D";
    case Party::Republican: return "R";
    case Party::Independent: return "I";
    case Party::None: return "-";
  }
  return "?";
}

std::string_view standing_code(Standing s) {
  switch (s) {
    case Standing::Majority: return "M";
    case Standing::Minority: return "m";
    case Standing::NotApplicable: return "-";
  }
  return "?";
}

std::span<const std::string_view> default_honorifics() { return kHonorifics; }

void validate_person(const Person& p) {
  if (p.person_id.empty()) throw ValidationError("person with empty person_id");
  if (p.role == Role::Witness &&
      (p.party != Party::None || p.standing != Standing::NotApplicable)) {
    throw ValidationError("witness " + p.person_id +
                          " must have party None and standing NotApplicable");
  }
  if (p.role == Role::Member && p.party == Party::None) {
    throw ValidationError("member " + p.person_id + " must have a party");
  }
}

std::string normalize_name(std::string_view name) {
  std::string cleaned;
  cleaned.reserve(name.size());
  for (char c : name) {
    if (c == '.' || c == ',') {
      cleaned.push_back(' ');
    } else {
      cleaned.push_back(c);
    }
  }
  std::vector<std::string> tokens;
  for (auto& t : split(collapse_whitespace(to_lower(cleaned)), ' ')) {
    if (!t.empty()) tokens.push_back(t);
  }
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "the" && i + 1 < tokens.size() &&
        tokens[i + 1] == "honorable") {
      ++i;
      continue;
    }
    if (std::find(kHonorifics.begin(), kHonorifics.end(), tokens[i]) !=
        kHonorifics.end()) {
      continue;
    }
    kept.push_back(tokens[i]);
  }
  return join(kept, " ");
}

std::string normalized_surname(std::string_view name) {
  auto tokens = split(normalize_name(name), ' ');
  std::vector<std::string> kept;
  for (auto& t : tokens) {
    if (t.empty()) continue;
    if (t == "of" && !kept.empty()) break;
    kept.push_back(t);
  }
  return kept.empty() ? std::string() : kept.back();
}

Roster::Roster(std::string hearing_id, std::vector<Person> people,
               const std::map<std::string, std::string>& aliases)
    : hearing_id_(std::move(hearing_id)), people_(std::move(people)) {
  std::set<std::string> ids;
  for (const auto& p : people_) {
    validate_person(p);
    if (!ids.insert(p.person_id).second) {
      throw ValidationError("duplicate person_id in roster: " + p.person_id);
    }
    const std::string key = normalized_surname(
        p.surname.empty() ? p.display_name : p.surname);
    if (!key.empty()) name_index_[key].push_back(p.person_id);
  }
  for (const auto& [alias, id] : aliases) {
    if (!ids.count(id)) {
      throw ValidationError("alias '" + alias + "' points to unknown person " + id);
    }
    name_index_[to_lower(collapse_whitespace(alias))].push_back(id);
  }
}

const Person* Roster::find(std::string_view person_id) const {
  for (const auto& p : people_) {
    if (p.person_id == person_id) return &p;
  }
  return nullptr;
}

std::vector<std::string> Roster::lookup(std::string_view normalized_key) const {
  auto it = name_index_.find(std::string(normalized_key));
  if (it == name_index_.end()) return {};
  return it->second;
}

std::string make_utterance_id(std::string_view hearing_id, std::int64_t seq) {
  std::string n = std::to_string(seq);
  if (n.size() < 5) n.insert(0, 5 - n.size(), '0');
  return std::string(hearing_id) + "-u" + n;
}

GovernmentTable parse_government_contexts(std::string_view json_text,
                                          const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(source, 1, "(document)", e.what());
  }
  if (!doc.is_array()) throw ParseError(source, 1, "(document)", "expected array");
  GovernmentTable table;
  std::size_t idx = 0;
  for (const auto& rec : doc) {
    ++idx;
    GovernmentContext ctx;
    ctx.session = static_cast<int>(field_int(rec, "session", source, idx));
    ctx.president_party = field_enum<Party>(rec, "president_party", source, idx);
    ctx.house_majority = field_enum<Party>(rec, "house_majority", source, idx);
    ctx.senate_majority = field_enum<Party>(rec, "senate_majority", source, idx);
    if (rec.contains("unified")) {
      if (!rec["unified"].is_boolean() ||
          rec["unified"].get<bool>() != ctx.unified()) {
        throw ParseError(source, idx, "unified",
                         "does not match the three-way party equality");
      }
    }
    if (rec.contains("standing_overrides")) {
      for (const auto& [pid, v] : rec["standing_overrides"].items()) {
        auto s = v.is_string() ? parse_enum<Standing>(v.get<std::string>())
                               : std::nullopt;
        if (!s) throw ParseError(source, idx, "standing_overrides", "bad value for " + pid);
        ctx.standing_overrides[pid] = *s;
      }
    }
    if (!table.emplace(ctx.session, ctx).second) {
      throw ParseError(source, idx, "session",
                       "duplicate session " + std::to_string(ctx.session));
    }
  }
  return table;
}

GovernmentTable load_government_contexts(const std::filesystem::path& path) {
  return parse_government_contexts(read_file(path), path.string());
}

Standing derive_standing(const Person& person, const HearingMeta& meta,
                         const GovernmentContext& ctx) {
  if (person.role != Role::Member) {
    throw ValidationError("standing is only defined for members: " +
                          person.person_id);
  }
  if (ctx.session != meta.session) {
    throw ValidationError("government context session " +
                          std::to_string(ctx.session) + " != hearing session " +
                          std::to_string(meta.session));
  }
  if (auto it = ctx.standing_overrides.find(person.person_id);
      it != ctx.standing_overrides.end()) {
    return it->second;
  }
  Chamber chamber = meta.chamber;
  if (chamber == Chamber::Joint) {
    if (!person.chamber || *person.chamber == Chamber::Joint) {
      throw ValidationError("cannot resolve chamber of " + person.person_id +
                            " in joint hearing " + meta.hearing_id);
    }
    chamber = *person.chamber;
  }
  Party party = person.party;
  if (party == Party::Independent) {
    if (!person.caucus) return Standing::Minority;
    party = *person.caucus;
  }
  return party == ctx.majority_in(chamber) ? Standing::Majority
                                           : Standing::Minority;
}

void validate_corpus(std::span<const Hearing> corpus) {
  std::set<std::string> hearing_ids;
  for (const auto& h : corpus) {
    const auto& id = h.meta.hearing_id;
    if (!safe_id(id)) {
      throw ValidationError("hearing_id must be non-empty and use [A-Za-z0-9._-]: '" +
                            id + "'");
    }
    if (!hearing_ids.insert(id).second) {
      throw ValidationError("duplicate hearing_id: " + id);
    }
    std::set<std::string> person_ids;
    for (const auto& p : h.people) {
      validate_person(p);
      person_ids.insert(p.person_id);
    }
    std::set<std::string> utterance_ids;
    for (std::size_t i = 0; i < h.utterances.size(); ++i) {
      const auto& u = h.utterances[i];
      if (u.hearing_id != id) {
        throw ValidationError("utterance " + u.utterance_id +
                              " belongs to hearing " + u.hearing_id +
                              ", stored under " + id);
      }
      if (u.sequence_no != static_cast<std::int64_t>(i)) {
        throw ValidationError("utterance " + u.utterance_id + " has sequence_no " +
                              std::to_string(u.sequence_no) + ", expected " +
                              std::to_string(i));
      }
      if (u.utterance_id.empty() || !utterance_ids.insert(u.utterance_id).second) {
        throw ValidationError("empty or duplicate utterance_id '" + u.utterance_id +
                              "' in hearing " + id);
      }
      if (!u.raw_marker.empty() &&
          trim(u.text).substr(0, u.raw_marker.size()) == u.raw_marker) {
        throw ValidationError("utterance " + u.utterance_id +
                              " text still carries its speaker marker");
      }
      if (u.speaker && !person_ids.empty() && !person_ids.count(*u.speaker)) {
        throw ValidationError("utterance " + u.utterance_id +
                              " names unknown speaker " + *u.speaker);
      }
    }
  }
}

std::string meta_record(const Hearing& h) {
  json people = json::array();
  for (const auto& p : h.people) people.push_back(person_json(p));
  json j{{"hearing_id", h.meta.hearing_id},
         {"session", h.meta.session},
         {"chamber", name_of(h.meta.chamber)},
         {"committee", h.meta.committee},
         {"hearing_type", name_of(h.meta.hearing_type)},
         {"hearing_type_source", h.meta.hearing_type_source},
         {"date", h.meta.date ? json(*h.meta.date) : json(nullptr)},
         {"people", people}};
  return j.dump(2) + "\n";
}

Hearing parse_meta_record(std::string_view json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(source, 1, "(document)", e.what());
  }
  Hearing h;
  h.meta.hearing_id = field_string(j, "hearing_id", source, 1);
  h.meta.session = static_cast<int>(field_int(j, "session", source, 1));
  h.meta.chamber = field_enum<Chamber>(j, "chamber", source, 1);
  h.meta.committee = j.value("committee", std::string());
  if (j.contains("hearing_type") && !j["hearing_type"].is_null()) {
    h.meta.hearing_type = field_enum<HearingType>(j, "hearing_type", source, 1);
    h.meta.hearing_type_source = j.value("hearing_type_source", std::string("metadata"));
  } else {
    h.meta.hearing_type = HearingType::General;
    h.meta.hearing_type_source = "default";
  }
  if (j.contains("date") && j["date"].is_string()) {
    h.meta.date = j["date"].get<std::string>();
  }
  if (j.contains("people")) {
    if (!j["people"].is_array()) throw ParseError(source, 1, "people", "expected array");
    for (const auto& pj : j["people"]) {
      Person p = parse_person(pj, source);
      try {
        validate_person(p);
      } catch (const ValidationError& e) {
        throw ParseError(source, 1, "people", e.what());
      }
      h.people.push_back(std::move(p));
    }
  }
  return h;
}

std::string utterance_record(const Utterance& u) {
  json j{{"utterance_id", u.utterance_id},
         {"hearing_id", u.hearing_id},
         {"sequence_no", u.sequence_no},
         {"speaker", u.speaker ? json(*u.speaker) : json(nullptr)},
         {"raw_marker", u.raw_marker},
         {"text", u.text},
         {"qa_label", name_of(u.qa_label)}};
  return j.dump();
}

Utterance parse_utterance_record(std::string_view line, const std::string& source,
                                 std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(source, line_no, "(record)", e.what());
  }
  if (!j.is_object()) throw ParseError(source, line_no, "(record)", "expected object");
  Utterance u;
  u.utterance_id = field_string(j, "utterance_id", source, line_no);
  u.hearing_id = field_string(j, "hearing_id", source, line_no);
  u.sequence_no = field_int(j, "sequence_no", source, line_no);
  if (u.sequence_no < 0) throw ParseError(source, line_no, "sequence_no", "negative");
  if (j.contains("speaker") && !j["speaker"].is_null()) {
    u.speaker = field_string(j, "speaker", source, line_no);
  }
  u.raw_marker = field_string(j, "raw_marker", source, line_no);
  u.text = field_string(j, "text", source, line_no);
  u.qa_label = field_enum<QaLabel>(j, "qa_label", source, line_no);
  return u;
}

void store_corpus(std::span<const Hearing> corpus,
                  const std::filesystem::path& root) {
  validate_corpus(corpus);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw IoError("cannot create corpus root " + root.string() + ": " + ec.message());
  for (const auto& h : corpus) {
    const auto dir = root / h.meta.hearing_id;
    write_file(dir / "meta.json", meta_record(h));
    std::string lines;
    for (const auto& u : h.utterances) {
      lines += utterance_record(u);
      lines.push_back('\n');
    }
    write_file(dir / "utterances.jsonl", lines);
  }
}

Corpus load_corpus(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) {
    throw IoError("corpus root is not a directory: " + root.string());
  }
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "meta.json")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  Corpus corpus;
  for (const auto& dir : dirs) {
    const auto meta_path = dir / "meta.json";
    Hearing h = parse_meta_record(read_file(meta_path), meta_path.string());
    if (h.meta.hearing_id != dir.filename().string()) {
      throw ParseError(meta_path.string(), 1, "hearing_id",
                       "does not match directory name");
    }
    const auto utt_path = dir / "utterances.jsonl";
    const std::string content = read_file(utt_path);
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < content.size()) {
      ++line_no;
      const std::size_t end = content.find('\n', start);
      if (end == std::string::npos) {
        throw ParseError(utt_path.string(), line_no, "(record)",
                         "truncated record: missing line terminator");
      }
      const std::string_view line(content.data() + start, end - start);
      start = end + 1;
      if (trim(line).empty()) continue;
      h.utterances.push_back(parse_utterance_record(line, utt_path.string(), line_no));
    }
    std::sort(h.utterances.begin(), h.utterances.end(),
              [](const Utterance& a, const Utterance& b) {
                return a.sequence_no < b.sequence_no;
              });
    corpus.push_back(std::move(h));
  }
  std::sort(corpus.begin(), corpus.end(), [](const Hearing& a, const Hearing& b) {
    return a.meta.hearing_id < b.meta.hearing_id;
  });
  validate_corpus(corpus);
  return corpus;
}

void store_pairs(std::span<const QaPair> pairs, const std::filesystem::path& path) {
  std::string out;
  for (const auto& p : pairs) {
    json j{{"pair_id", p.pair_id},
           {"question_utterance_id", p.question_utterance_id},
           {"answer_utterance_id", p.answer_utterance_id},
           {"questioner", p.questioner},
           {"answerer", p.answerer}};
    out += j.dump();
    out.push_back('\n');
  }
  write_file(path, out);
}

std::vector<QaPair> load_pairs(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  std::vector<QaPair> pairs;
  std::size_t line_no = 0;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, "(record)", e.what());
    }
    QaPair p;
    p.pair_id = field_string(j, "pair_id", path.string(), line_no);
    p.question_utterance_id = field_string(j, "question_utterance_id", path.string(), line_no);
    p.answer_utterance_id = field_string(j, "answer_utterance_id", path.string(), line_no);
    p.questioner = field_string(j, "questioner", path.string(), line_no);
    p.answerer = field_string(j, "answerer", path.string(), line_no);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace hearings
