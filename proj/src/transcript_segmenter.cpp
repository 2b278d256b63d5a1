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

#include "hearings/transcript_segmenter.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "hearings/rng.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"

namespace hearings {

using nlohmann::json;

namespace {

std::vector<std::regex> compile_all(const std::vector<std::string>& patterns,
                                    const char* list_name, bool icase) {
  if (patterns.empty()) {
    throw ValidationError(std::string("segmenter rules: ") + list_name +
                          " must not be empty");
  }
  std::vector<std::regex> out;
  auto flags = std::regex::ECMAScript | std::regex::optimize;
  if (icase) flags |= std::regex::icase;
  for (const auto& p : patterns) {
    try {
      out.emplace_back(p, flags);
    } catch (const std::regex_error& e) {
      throw ValidationError(std::string("segmenter rules: ") + list_name +
                            " pattern does not compile: " + p + " (" + e.what() + ")");
    }
  }
  return out;
}

bool is_terminator(char c) {
  switch (c) {
    case '.': case '?': case '!': case ':': case ';':
    case '"': case '\'': case ')': case ']':
      return true;
    default:
      return false;
  }
}

// Whether the line starting at `pos` may open an utterance.
bool line_start_allowed(std::string_view body, std::size_t pos) {
  if (pos == 0) return true;
  // pos - 1 is the '\n' ending the previous line.
  std::size_t i = pos - 1;
  bool saw_newline = false;
  while (true) {
    const char c = body[i];
    if (c == '\n') {
      if (saw_newline) return true;  // blank line in between
      saw_newline = true;
    } else if (!is_ascii_space(c)) {
      if (is_terminator(c)) return true;
      return c == '-' && i > 0 && body[i - 1] == '-';  // interrupted speech "--"
    }
    if (i == 0) return true;
    --i;
  }
}

std::string strip_stage_directions(std::string_view text,
                                   std::vector<StageDirection>& out) {
  std::string kept;
  kept.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      const std::size_t close = text.find_first_of("[]", i + 1);
      if (close != std::string_view::npos && text[close] == ']') {
        out.push_back({i, std::string(text.substr(i, close - i + 1))});
        i = close + 1;
        continue;
      }
    }
    kept.push_back(text[i]);
    ++i;
  }
  return kept;
}

std::string honorific_cue(std::string_view marker) {
  const auto tokens = split(collapse_whitespace(to_lower(marker)), ' ');
  if (tokens.empty()) return {};
  std::string first = tokens.front();
  first.erase(std::remove(first.begin(), first.end(), '.'), first.end());
  return first;
}

}  // namespace

SegmenterRules::SegmenterRules(std::vector<std::string> start_patterns,
                               std::vector<std::string> end_patterns,
                               std::vector<std::string> marker_patterns,
                               std::vector<std::string> honorifics,
                               bool require_terminator_before)
    : start_(std::move(start_patterns)),
      end_(std::move(end_patterns)),
      marker_(std::move(marker_patterns)),
      honorifics_(std::move(honorifics)),
      require_terminator_(require_terminator_before) {
  auto compiled = std::make_shared<Compiled>();
  compiled->start = compile_all(start_, "start_patterns", true);
  compiled->end = compile_all(end_, "end_patterns", true);
  compiled->marker = compile_all(marker_, "marker_patterns", false);
  for (std::size_t i = 0; i < compiled->marker.size(); ++i) {
    if (compiled->marker[i].mark_count() < 1) {
      throw ValidationError("segmenter rules: marker pattern needs a capture group: " +
                            marker_[i]);
    }
  }
  if (honorifics_.empty()) {
    throw ValidationError("segmenter rules: honorifics must not be empty");
  }
  compiled_ = std::move(compiled);
}

SegmenterRules SegmenterRules::defaults() {
  const std::string name = R"([A-Z][A-Za-z'\-]+(?:[ \t]+[A-Z][A-Za-z'\-]+){0,2})";
  const std::string delim = R"(\.(?:[ \t]+|$))";
  return SegmenterRules(
      {"committee met", "met, pursuant to", "will come to order"},
      {R"(\[Whereupon)", R"(adjourned\]?)"},
      {
          R"([ \t]*((?:Mr|Mrs|Ms|Dr|MR|MRS|MS|DR)\.[ \t]+)" + name +
              R"((?:[ \t]+of[ \t]+[A-Z][A-Za-z]+(?:[ \t]+[A-Z][A-Za-z]+)?)?))" + delim,
          R"([ \t]*((?:Senator|SENATOR|Chairman|CHAIRMAN|Chairwoman|CHAIRWOMAN|Chair|CHAIR|Representative|REPRESENTATIVE|Secretary|SECRETARY)[ \t]+)" +
              name + ")" + delim,
          R"([ \t]*((?:The|THE) (?:Chairman|CHAIRMAN|Chairwoman|CHAIRWOMAN|Chair|CHAIR|Clerk|CLERK|Vice Chairman|VICE CHAIRMAN|Presiding Officer|PRESIDING OFFICER)))" +
              delim,
          R"([ \t]*(Voice|VOICE|Voices|VOICES))" + delim,
      },
      {"Mr", "Mrs", "Ms", "Dr", "Senator", "Chairman", "Chairwoman", "Chair",
       "The Honorable"});
}

SegmenterRules SegmenterRules::from_json_text(std::string_view text,
                                              const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(source, 1, "(document)", e.what());
  }
  auto list = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw ParseError(source, 1, key, "missing or not a list");
    }
    std::vector<std::string> out;
    for (const auto& v : j[key]) {
      if (!v.is_string()) throw ParseError(source, 1, key, "entries must be strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  return SegmenterRules(list("start_patterns"), list("end_patterns"),
                        list("marker_patterns"), list("honorifics"),
                        j.value("require_terminator_before", true));
}

SegmenterRules SegmenterRules::load(const std::filesystem::path& path) {
  return from_json_text(read_file(path), path.string());
}

std::string SegmenterRules::to_json_text() const {
  json j{{"start_patterns", start_},
         {"end_patterns", end_},
         {"marker_patterns", marker_},
         {"honorifics", honorifics_},
         {"require_terminator_before", require_terminator_}};
  return j.dump(2) + "\n";
}

TrimResult trim_proceedings(std::string_view raw, const SegmenterRules& rules) {
  TrimResult out;
  std::size_t begin = 0;
  std::size_t end = raw.size();

  std::optional<std::size_t> first_start;
  for (const auto& re : rules.start_regex()) {
    std::cmatch m;
    if (std::regex_search(raw.data(), raw.data() + raw.size(), m, re)) {
      const auto pos = static_cast<std::size_t>(m.position(0));
      if (!first_start || pos < *first_start) first_start = pos;
    }
  }
  if (first_start) {
    const std::size_t nl = raw.rfind('\n', *first_start);
    begin = nl == std::string_view::npos ? 0 : nl + 1;
  } else {
    out.warnings.push_back({1, "no start-of-proceedings anchor found; keeping head"});
  }

  std::optional<std::size_t> last_end;
  for (const auto& re : rules.end_regex()) {
    auto it = std::cregex_iterator(raw.data() + begin, raw.data() + raw.size(), re);
    for (; it != std::cregex_iterator(); ++it) {
      const std::size_t pos = begin + static_cast<std::size_t>(it->position(0)) +
                              static_cast<std::size_t>(it->length(0));
      if (!last_end || pos > *last_end) last_end = pos;
    }
  }
  if (last_end) {
    const std::size_t nl = raw.find('\n', *last_end == 0 ? 0 : *last_end - 1);
    end = nl == std::string_view::npos ? raw.size() : nl + 1;
  } else {
    out.warnings.push_back({line_of_offset(raw, raw.size()),
                            "no end-of-proceedings anchor found; keeping tail"});
  }
  out.head = std::string(raw.substr(0, begin));
  out.body = std::string(raw.substr(begin, end - begin));
  out.tail = std::string(raw.substr(end));
  return out;
}

std::string RawUtterance::original_text() const {
  std::string out;
  out.reserve(text.size() + 32);
  std::size_t kept_pos = 0;
  std::size_t orig_pos = 0;
  for (const auto& sd : stage_directions) {
    const std::size_t take = sd.offset - orig_pos;
    out.append(text, kept_pos, take);
    kept_pos += take;
    out += sd.content;
    orig_pos = sd.offset + sd.content.size();
  }
  out.append(text, kept_pos, std::string::npos);
  return out;
}

SegmentationResult segment_utterances(std::string_view body,
                                      const SegmenterRules& rules) {
  struct Hit {
    std::size_t start, marker_pos, marker_len, end;
  };
  std::vector<Hit> hits;
  std::size_t line_start = 0;
  while (line_start < body.size()) {
    std::size_t line_end = body.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = body.size();
    std::size_t first = line_start;
    while (first < line_end && (body[first] == ' ' || body[first] == '\t')) ++first;
    const bool candidate = first < line_end && body[first] >= 'A' && body[first] <= 'Z';
    if (candidate &&
        (!rules.require_terminator_before() || line_start_allowed(body, line_start))) {
      for (const auto& re : rules.marker_regex()) {
        std::cmatch m;
        if (std::regex_search(body.data() + line_start, body.data() + line_end, m, re,
                              std::regex_constants::match_continuous)) {
          hits.push_back({line_start,
                          line_start + static_cast<std::size_t>(m.position(1)),
                          static_cast<std::size_t>(m.length(1)),
                          line_start + static_cast<std::size_t>(m.length(0))});
          break;
        }
      }
    }
    line_start = line_end + 1;
  }
  if (hits.empty()) {
    throw SegmentationFailed("no speaker markers found");
  }

  SegmentationResult out;
  out.preamble = std::string(body.substr(0, hits.front().start));
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const Hit& h = hits[i];
    const std::size_t text_end = i + 1 < hits.size() ? hits[i + 1].start : body.size();
    RawUtterance u;
    u.body_offset = h.start;
    u.lead = std::string(body.substr(h.start, h.marker_pos - h.start));
    u.raw_marker = std::string(body.substr(h.marker_pos, h.marker_len));
    u.delimiter = std::string(
        body.substr(h.marker_pos + h.marker_len, h.end - h.marker_pos - h.marker_len));
    u.text = strip_stage_directions(body.substr(h.end, text_end - h.end),
                                    u.stage_directions);
    for (const auto& sd : u.stage_directions) {
      out.warnings.push_back({line_of_offset(body, h.end + sd.offset),
                              "stage direction removed: " + collapse_whitespace(sd.content)});
    }
    out.utterances.push_back(std::move(u));
  }
  return out;
}

std::string reconstruct_body(const SegmentationResult& seg) {
  std::string out = seg.preamble;
  for (const auto& u : seg.utterances) {
    out += u.lead;
    out += u.raw_marker;
    out += u.delimiter;
    out += u.original_text();
  }
  return out;
}

std::string reconstruct(const TrimResult& trim, const SegmentationResult& seg) {
  return trim.head + reconstruct_body(seg) + trim.tail;
}

Resolution HeuristicRecognizer::resolve(std::string_view raw_marker,
                                        const Roster& roster,
                                        const ResolveContext& ctx) const {
  Resolution res;
  const std::string marker = collapse_whitespace(raw_marker);
  std::vector<std::string> candidates = roster.lookup(to_lower(marker));
  if (candidates.empty()) candidates = roster.lookup(normalized_surname(marker));
  if (candidates.empty()) {
    res.warning = "unresolved speaker marker '" + marker + "'";
    return res;
  }
  // Deduplicate while keeping roster order.
  std::vector<std::string> unique;
  for (const auto& c : candidates) {
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
  }
  candidates = unique;
  if (candidates.size() == 1) {
    res.person_id = candidates.front();
    return res;
  }

  auto filter = [&](auto pred) {
    std::vector<std::string> kept;
    for (const auto& id : candidates) {
      const Person* p = roster.find(id);
      if (p && pred(*p)) kept.push_back(id);
    }
    if (!kept.empty()) candidates = kept;
  };

  const std::string cue = honorific_cue(marker);
  static const std::set<std::string> member_titles = {
      "senator", "chairman", "chairwoman", "chair", "representative"};
  if (member_titles.count(cue) || to_lower(marker).find(" of ") != std::string::npos) {
    filter([](const Person& p) { return p.role == Role::Member; });
  } else if (cue == "mr" || cue == "ms" || cue == "mrs" || cue == "dr") {
    filter([&](const Person& p) {
      std::string h = to_lower(p.honorific);
      h.erase(std::remove(h.begin(), h.end(), '.'), h.end());
      if (h.empty()) return false;
      if (cue == "ms" || cue == "mrs") return h == "ms" || h == "mrs";
      return h == cue;
    });
  }
  if (candidates.size() == 1) {
    res.person_id = candidates.front();
    return res;
  }

  const bool after_answer = (ctx.previous_label && *ctx.previous_label == QaLabel::Answer) ||
                            (ctx.previous_role && *ctx.previous_role == Role::Witness);
  if (after_answer) {
    std::vector<std::string> members;
    for (const auto& id : candidates) {
      const Person* p = roster.find(id);
      if (p && p->role == Role::Member) members.push_back(id);
    }
    if (members.size() == 1) {
      res.person_id = members.front();
      res.used_tiebreak = true;
      res.warning = "ambiguous marker '" + marker +
                    "' resolved to member after an answer (alternation heuristic)";
      return res;
    }
  }
  res.warning = "ambiguous speaker marker '" + marker + "' (" +
                std::to_string(candidates.size()) + " roster entries)";
  return res;
}

Resolution resolve_speaker(std::string_view raw_marker, const Roster& roster,
                           const ResolveContext& ctx) {
  return HeuristicRecognizer{}.resolve(raw_marker, roster, ctx);
}

std::string report_record(const SegmentationReport& r) {
  json warnings = json::array();
  for (const auto& w : r.warnings) {
    warnings.push_back({{"line", w.line_no}, {"message", w.message}});
  }
  json j{{"hearing_id", r.hearing_id},
         {"n_utterances", r.n_utterances},
         {"n_unresolved_speakers", r.n_unresolved_speakers},
         {"trimmed_head_chars", r.trimmed_head_chars},
         {"trimmed_tail_chars", r.trimmed_tail_chars},
         {"warnings", warnings}};
  return j.dump();
}

SegmentedHearing segment_hearing(std::string_view raw, const HearingMeta& meta,
                                 const Roster& roster, const SegmenterRules& rules,
                                 const SpeakerRecognizer& recognizer) {
  SegmentedHearing out;
  out.trim = trim_proceedings(raw, rules);
  out.segments = segment_utterances(out.trim.body, rules);

  auto& report = out.report;
  report.hearing_id = meta.hearing_id;
  report.trimmed_head_chars = out.trim.head.size();
  report.trimmed_tail_chars = out.trim.tail.size();
  report.warnings = out.trim.warnings;
  const std::size_t head_lines = line_of_offset(out.trim.head, out.trim.head.size()) - 1;
  for (const auto& w : out.segments.warnings) {
    report.warnings.push_back({w.line_no + head_lines, w.message});
  }

  out.hearing.meta = meta;
  out.hearing.people = roster.people();
  ResolveContext ctx;
  std::int64_t seq = 0;
  for (const auto& ru : out.segments.utterances) {
    Utterance u;
    u.hearing_id = meta.hearing_id;
    u.sequence_no = seq;
    u.utterance_id = make_utterance_id(meta.hearing_id, seq);
    u.raw_marker = ru.raw_marker;
    u.text = collapse_whitespace(ru.text);
    Resolution r = recognizer.resolve(ru.raw_marker, roster, ctx);
    const std::size_t line =
        head_lines + line_of_offset(out.trim.body, ru.body_offset);
    if (r.warning) report.warnings.push_back({line, *r.warning});
    u.speaker = r.person_id;
    if (!u.speaker) {
      ++report.n_unresolved_speakers;
      ctx.previous_role = Role::Unknown;
    } else {
      const Person* p = roster.find(*u.speaker);
      ctx.previous_role = p ? p->role : Role::Unknown;
    }
    out.hearing.utterances.push_back(std::move(u));
    ++seq;
  }
  report.n_utterances = out.hearing.utterances.size();
  return out;
}

SamplingManifest verify_sample(const Corpus& corpus, const SampleSpec& spec,
                               std::uint64_t seed) {
  std::map<int, std::vector<const Hearing*>> by_session;
  for (const auto& h : corpus) by_session[h.meta.session].push_back(&h);
  SamplingManifest out;
  Rng rng(seed);
  for (auto& [session, hearings] : by_session) {
    std::sort(hearings.begin(), hearings.end(), [](const Hearing* a, const Hearing* b) {
      return a->meta.hearing_id < b->meta.hearing_id;
    });
    if (hearings.size() < spec.hearings_per_session) {
      out.warnings.push_back("session " + std::to_string(session) + " has only " +
                             std::to_string(hearings.size()) + " hearings; sampling all");
    }
    for (std::size_t hi : rng.sample(hearings.size(), spec.hearings_per_session)) {
      const Hearing& h = *hearings[hi];
      if (h.utterances.size() < spec.utterances_per_hearing) {
        out.warnings.push_back("hearing " + h.meta.hearing_id + " has only " +
                               std::to_string(h.utterances.size()) +
                               " utterances; sampling all");
      }
      for (std::size_t ui : rng.sample(h.utterances.size(), spec.utterances_per_hearing)) {
        out.rows.push_back({session, h.meta.hearing_id, h.utterances[ui].utterance_id});
      }
    }
  }
  return out;
}

std::string manifest_tsv(const SamplingManifest& manifest) {
  std::string out = "# verdict: one of correct, clubbed, broken\n";
  out += tsv::format_row({"session", "hearing_id", "utterance_id", "verdict"});
  for (const auto& r : manifest.rows) {
    out += tsv::format_row({std::to_string(r.session), r.hearing_id, r.utterance_id, ""});
  }
  return out;
}

SamplingManifest parse_manifest_tsv(std::string_view text, const std::string& source) {
  SamplingManifest m;
  for (const auto& row : tsv::parse(text)) {
    if (!row.fields.empty() && row.fields[0] == "session") continue;
    if (row.fields.size() < 3) {
      throw ParseError(source, row.line_no, "(row)", "expected at least 3 columns");
    }
    ManifestRow r;
    try {
      r.session = std::stoi(row.fields[0]);
    } catch (const std::exception&) {
      throw ParseError(source, row.line_no, "session", "not an integer");
    }
    r.hearing_id = row.fields[1];
    r.utterance_id = row.fields[2];
    m.rows.push_back(std::move(r));
  }
  return m;
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "correct") return Verdict::Correct;
  if (v == "clubbed") return Verdict::Clubbed;
  if (v == "broken") return Verdict::Broken;
  return std::nullopt;
}

VerificationSummary ingest_verdicts(std::string_view verdict_tsv,
                                    const std::string& source,
                                    const SamplingManifest* manifest) {
  std::map<std::string, int> session_of;
  if (manifest) {
    for (const auto& r : manifest->rows) session_of[r.utterance_id] = r.session;
  }
  VerificationSummary s;
  for (const auto& row : tsv::parse(verdict_tsv)) {
    if (!row.fields.empty() && row.fields[0] == "utterance_id") continue;
    if (row.fields.size() < 2) {
      throw ParseError(source, row.line_no, "(row)", "expected utterance_id and verdict");
    }
    const auto verdict = parse_verdict(row.fields[1]);
    if (!verdict) {
      throw ParseError(source, row.line_no, "verdict",
                       "unknown verdict '" + row.fields[1] + "'");
    }
    int session = 0;
    if (row.fields.size() >= 3 && !row.fields[2].empty()) {
      try {
        session = std::stoi(row.fields[2]);
      } catch (const std::exception&) {
        throw ParseError(source, row.line_no, "session", "not an integer");
      }
    } else if (auto it = session_of.find(row.fields[0]); it != session_of.end()) {
      session = it->second;
    }
    for (VerdictTally* t : {&s.by_session[session], &s.total}) {
      ++t->total;
      if (*verdict == Verdict::Correct) {
        ++t->correct;
      } else {
        ++t->incorrect;
        if (*verdict == Verdict::Clubbed) ++t->clubbed;
        if (*verdict == Verdict::Broken) ++t->broken;
      }
    }
  }
  return s;
}

std::string verification_table_tsv(const VerificationSummary& summary) {
  std::string out = tsv::format_row({"session", "incorrect", "clubbed", "broken",
                                     "verified", "correct_rate", "correct_pct_display"});
  auto row = [&](const std::string& key, const VerdictTally& t) {
    out += tsv::format_row({key, std::to_string(t.incorrect), std::to_string(t.clubbed),
                            std::to_string(t.broken), std::to_string(t.total),
                            format_double(t.correctness_rate()),
                            format_fixed(100.0 * t.correctness_rate(), 2)});
  };
  for (const auto& [session, t] : summary.by_session) row(std::to_string(session), t);
  row("Total", summary.total);
  return out;
}

}  // namespace hearings
