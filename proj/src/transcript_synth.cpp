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

#include "hearings/transcript_synth.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "hearings/rng.hpp"
#include "hearings/text_util.hpp"

namespace hearings {

namespace {

constexpr std::array kSurnames = {
    "Abbott", "Baldwin", "Castro", "Delgado", "Ellison", "Fletcher", "Garamendi",
    "Hartley", "Iverson", "Jordan", "Kessler", "Lombardi", "Maloney", "Norcross",
    "Okafor", "Pressley", "Quigley", "Rouzer", "Sarbanes", "Tierney", "Underwood",
    "Vasquez", "Whitfield", "Yarmuth", "Zeldin", "Brennan", "Comer", "DeSaulnier",
    "Foxx", "Grothman", "Higgins", "Khanna", "Lynch", "McHenry", "Norton", "O'Brien",
    "Porter", "Raskin", "Sessions", "Turner", "Wasserman", "Connolly", "Mfume",
    "Gosar", "Biggs", "Donalds", "Mace", "Luna", "Burchett", "Timmons", "Clyde",
    "Fallon", "Edwards", "Langworthy", "Burlison", "Goldman", "Moskowitz", "Lee",
    "Frost", "Stansbury", "Garcia", "Crockett", "Casar", "Brown", "McClain"};
constexpr std::array kFirstNames = {
    "John", "Mary", "Robert", "Patricia", "James", "Jennifer", "Michael", "Linda",
    "William", "Elizabeth", "David", "Barbara", "Richard", "Susan", "Joseph",
    "Jessica", "Thomas", "Sarah", "Charles", "Karen", "Daniel", "Nancy", "Matthew",
    "Lisa", "Anthony", "Betty", "Mark", "Margaret", "Steven", "Sandra"};
constexpr std::array kStates = {
    "Ohio", "Texas", "Florida", "Georgia", "Virginia", "Maryland", "Michigan",
    "Arizona", "Colorado", "Oregon", "Kentucky", "Iowa", "Nevada", "Utah",
    "California", "New York", "North Carolina", "South Carolina"};
constexpr std::array kTopics = {
    "the budget request", "cybersecurity at the agency", "the pandemic response",
    "border security", "rural broadband deployment", "the backlog of disability claims",
    "prescription drug prices", "the procurement process", "wildfire preparedness",
    "veterans' health care", "small business lending", "the census count",
    "election security", "supply chain resilience", "student loan servicing",
    "the flood insurance program", "nuclear waste storage",
    "air traffic control modernization", "opioid treatment programs",
    "food safety inspections", "the housing voucher program", "water infrastructure"};
constexpr std::array kAgencies = {
    "the Department", "the agency", "your office", "the Administration",
    "the Bureau", "the program office", "the Commission"};
constexpr std::array kQuestions = {
    "Can you tell the committee how {agency} plans to address {topic}?",
    "What specific steps has {agency} taken on {topic} since the last hearing?",
    "How many employees are currently assigned to {topic}?",
    "Why did {agency} miss the statutory deadline for {topic}?",
    "Is it true that {agency} has not completed its review of {topic}?",
    "Would you commit to providing this committee a written briefing on {topic}?",
    "Do you believe the current funding level for {topic} is adequate?",
    "When will {agency} finalize the rule on {topic}?",
    "Who at {agency} is responsible for {topic}?",
    "I would like you to explain to this committee why {topic} has fallen behind schedule.",
    "Please walk us through the timeline for {topic}.",
    "Has {agency} consulted with state and local officials about {topic}?",
    "Are you aware of any complaints from constituents regarding {topic}?",
    "What would you need from Congress to fix {topic}?",
    "How do you respond to the inspector general's findings on {topic}?"};
constexpr std::array kQuestionLeads = {
    "Thank you, Mr. Chairman.", "Thank you for being here today.",
    "I want to follow up on {topic}.", "Let me turn to {topic}.",
    "I appreciate your testimony.", "I have a few questions about {topic}."};
constexpr std::array kAnswers = {
    "Thank you for the question. {Agency} has assigned a dedicated team to {topic}, and we expect to complete that work by the end of the fiscal year.",
    "That is correct. We did not meet the original deadline because of staffing shortages, and we have since adjusted our plan.",
    "We have taken several steps on {topic}. First, we updated our guidance. Second, we hired additional staff.",
    "I would be happy to provide that briefing to the committee.",
    "I do not have that number with me today, but I will get it to your office.",
    "Yes. We consulted with more than forty States on {topic}.",
    "No, the current funding level is not sufficient to address {topic}.",
    "The final rule is expected in the spring, pending review.",
    "Our assessment is that {topic} remains a significant challenge for the agency.",
    "We take those findings seriously and have accepted every recommendation.",
    "That decision was made before I arrived, but I have reviewed it carefully.",
    "We are working closely with our partners to resolve the remaining issues."};
constexpr std::array kDemocratFlavor = {
    "This program has delivered real benefits for working families, and I support the progress we have made.",
    "I am encouraged by the strong improvement and I welcome this opportunity to help our communities.",
    "We can protect consumers and create good jobs at the same time."};
constexpr std::array kRepublicanFlavor = {
    "Frankly, it appears the agency may have overstated its results, and perhaps taxpayers deserve better.",
    "Clearly the regulation is a burden, and it seems the costs could possibly outweigh any benefit.",
    "I think we must certainly insist on accountability for this waste."};

std::string fill(std::string_view tmpl, std::string_view topic, std::string_view agency) {
  std::string out(tmpl);
  auto replace_all = [&](std::string_view key, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = out.find(key, pos)) != std::string::npos) {
      out.replace(pos, key.size(), value);
      pos += value.size();
    }
  };
  std::string agency_cap(agency);
  if (!agency_cap.empty()) agency_cap[0] = static_cast<char>(std::toupper(agency_cap[0]));
  replace_all("{topic}", topic);
  replace_all("{agency}", agency);
  replace_all("{Agency}", agency_cap);
  return out;
}

template <class Pool>
std::string_view pick(Rng& rng, const Pool& pool) {
  return pool[rng.index(pool.size())];
}

// The name pool alternates masculine and feminine entries.
std::string first_name_for(Rng& rng, const std::string& honorific) {
  const std::size_t pairs = kFirstNames.size() / 2;
  std::size_t parity = honorific == "Mr" ? 0 : 1;
  if (honorific == "Dr") parity = rng.index(2);
  return std::string(kFirstNames[2 * rng.index(pairs) + parity]);
}

std::string ordinal(int n) {
  const int tens = n % 100;
  const char* suffix = "th";
  if (tens < 11 || tens > 13) {
    if (n % 10 == 1) suffix = "st";
    else if (n % 10 == 2) suffix = "nd";
    else if (n % 10 == 3) suffix = "rd";
  }
  return std::to_string(n) + suffix;
}

struct Speaker {
  std::size_t person;  // index into people
  std::string first;
  std::string state;
  bool chair = false;
  bool senate = false;
};

constexpr char kForcedBreak = '\x01';

// Word-wraps at 70 columns. The first line starts with `prefix`; continuation
// lines start at column 0 like GPO text. kForcedBreak forces a line break.
void wrap_into(std::string& out, const std::string& prefix, const std::string& text) {
  constexpr std::size_t kWidth = 70;
  std::string line = prefix;
  std::size_t i = 0;
  bool line_has_words = false;
  while (i < text.size()) {
    if (text[i] == kForcedBreak) {
      out += std::string(trim_right(line)) + "\n";
      line.clear();
      line_has_words = false;
      ++i;
      while (i < text.size() && text[i] == ' ') ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != kForcedBreak) ++j;
    const std::string word = text.substr(i, j - i);
    if (line_has_words && line.size() + 1 + word.size() > kWidth) {
      out += line + "\n";
      line.clear();
      line_has_words = false;
    }
    if (line_has_words) line.push_back(' ');
    line += word;
    line_has_words = true;
    i = j;
    while (i < text.size() && text[i] == ' ') ++i;
  }
  out += line + "\n";
}

std::string strip_brackets(std::string_view s) {
  std::string out;
  int depth = 0;
  for (char c : s) {
    if (c == '[') {
      ++depth;
    } else if (c == ']' && depth > 0) {
      --depth;
    } else if (depth == 0) {
      out.push_back(c == kForcedBreak ? ' ' : c);
    }
  }
  return out;
}

}  // namespace

SynthHearing synthesize_hearing(const SynthOptions& opt, std::uint64_t seed) {
  Rng rng(seed);
  SynthHearing out;
  auto& meta = out.hearing.meta;
  meta.hearing_id = opt.hearing_id;
  meta.session = opt.session;
  meta.chamber = opt.chamber;
  meta.committee = opt.committee;
  meta.hearing_type = opt.hearing_type;
  meta.hearing_type_source = "metadata";
  const int year = 2 * opt.session + 1787 + static_cast<int>(rng.index(2));
  const int month = 1 + static_cast<int>(rng.index(12));
  const int day = 1 + static_cast<int>(rng.index(28));
  char date[48];
  std::snprintf(date, sizeof date, "%04d-%02d-%02d", year, month, day);
  meta.date = date;
  const bool senate = opt.chamber == Chamber::Senate;

  Party majority = rng.index(2) ? Party::Democrat : Party::Republican;
  if (opt.government) {
    if (auto it = opt.government->find(opt.session); it != opt.government->end()) {
      majority = it->second.majority_in(senate ? Chamber::Senate : Chamber::House);
    }
  }
  const Party minority = majority == Party::Democrat ? Party::Republican : Party::Democrat;

  // Roster.
  std::vector<std::size_t> surname_order(kSurnames.size());
  for (std::size_t i = 0; i < surname_order.size(); ++i) surname_order[i] = i;
  rng.shuffle(surname_order);
  std::size_t next_surname = 0;
  std::vector<Speaker> members, witnesses;
  auto& people = out.hearing.people;
  const std::size_t n_members = 6 + rng.index(7);
  for (std::size_t i = 0; i < n_members; ++i) {
    Person p;
    const std::string surname = kSurnames[surname_order[next_surname++]];
    p.honorific = rng.index(2) ? "Mr" : "Ms";
    const std::string first = first_name_for(rng, p.honorific);
    p.person_id = opt.hearing_id + "-M" + std::to_string(i);
    p.display_name = first + " " + surname;
    p.surname = surname;
    p.role = Role::Member;
    p.party = i == 0 ? majority : (i == 1 ? minority : (rng.index(2) ? majority : minority));
    if (senate && i > 1 && rng.index(8) == 0) {
      p.party = Party::Independent;
      p.caucus = Party::Democrat;
    }
    p.chamber = senate ? Chamber::Senate : Chamber::House;
    people.push_back(p);
    members.push_back({people.size() - 1, first, std::string(pick(rng, kStates)), i == 0, senate});
  }
  const std::size_t n_witnesses = 2 + rng.index(3);
  for (std::size_t i = 0; i < n_witnesses; ++i) {
    Person p;
    // Occasionally reuse a member surname to exercise disambiguation.
    const bool clash = opt.adversarial && rng.index(6) == 0;
    const std::string surname = clash ? people[2 + rng.index(n_members - 2)].surname
                                      : std::string(kSurnames[surname_order[next_surname++]]);
    const std::size_t h = rng.index(3);
    p.honorific = h == 0 ? "Mr" : (h == 1 ? "Ms" : "Dr");
    const std::string first = first_name_for(rng, p.honorific);
    p.person_id = opt.hearing_id + "-W" + std::to_string(i);
    p.display_name = first + " " + surname;
    p.surname = surname;
    p.role = Role::Witness;
    people.push_back(p);
    witnesses.push_back({people.size() - 1, first, "", false, false});
  }
  if (opt.government) {
    if (auto it = opt.government->find(opt.session); it != opt.government->end()) {
      for (auto& p : people) {
        if (p.role == Role::Member) p.standing = derive_standing(p, meta, it->second);
      }
    }
  }
  const Person& chair = people[members[0].person];
  out.aliases["the chairman"] = chair.person_id;
  out.aliases["the chairwoman"] = chair.person_id;
  out.aliases["the chair"] = chair.person_id;

  auto marker_for = [&](const Speaker& s) -> std::string {
    const Person& p = people[s.person];
    const std::string hon = p.honorific + ".";
    if (!opt.adversarial) return hon + " " + p.surname;
    const std::size_t r = rng.index(20);
    if (s.chair) {
      const std::string title = p.honorific == "Ms" ? "Chairwoman" : "Chairman";
      if (r < 6) return title + " " + p.surname;
      if (r < 8) return to_upper(title) + " " + to_upper(p.surname);
      if (r < 11) return "The " + title;
      if (r < 12) return "The " + to_upper(title);
      if (r < 13) return "The Chair";
    }
    if (p.role == Role::Member) {
      if (s.senate && r < 9) return r < 7 ? "Senator " + p.surname : "SENATOR " + to_upper(p.surname);
      if (r < 10) return hon + " " + p.surname;
      if (r < 13) return to_upper(hon) + " " + to_upper(p.surname);
      if (r < 16) return hon + " " + to_upper(p.surname);
      if (!s.senate) return hon + " " + p.surname + " of " + s.state;
      return hon + " " + p.surname;
    }
    if (r < 10) return hon + " " + p.surname;
    if (r < 13) return to_upper(hon) + " " + to_upper(p.surname);
    if (r < 16) return hon + " " + s.first + " " + p.surname;
    if (r < 18) return hon + " " + to_upper(p.surname);
    return hon + " " + to_upper(s.first) + " " + to_upper(p.surname);
  };

  // --- head and preamble -------------------------------------------------
  std::string& raw = out.raw;
  const std::string chamber_name = senate ? "UNITED STATES SENATE" : "HOUSE OF REPRESENTATIVES";
  const std::string topic0 = std::string(pick(rng, kTopics));
  raw += "\n\n" + std::string(20, ' ') + (senate ? "[Senate Hearing, " : "[House Hearing, ") +
         ordinal(opt.session) + " Congress]\n";
  raw += std::string(20, ' ') + "[From the U.S. Government Publishing Office]\n\n\n\n";
  raw += std::string(30, ' ') + "HEARING\n\n" + std::string(28, ' ') + "BEFORE THE\n\n";
  raw += std::string(12, ' ') + "COMMITTEE ON " + to_upper(opt.committee) + "\n";
  raw += std::string(24, ' ') + chamber_name + "\n\n";
  raw += std::string(10, ' ') + to_upper(ordinal(opt.session)) + " CONGRESS\n\n";
  raw += std::string(20, ' ') + "HEARING HELD " + std::string(date) + "\n\n";
  raw += std::string(12, ' ') + "Serial No. " + std::to_string(opt.session) + "-" +
         std::to_string(1 + rng.index(150)) + "\n\n";
  raw += std::string(4, ' ') + "Printed for the use of the Committee on " + opt.committee + "\n\n";
  raw += std::string(18, ' ') + "U.S. GOVERNMENT PUBLISHING OFFICE\n";
  raw += std::string(18, ' ') + "WASHINGTON : " + std::to_string(year) + "\n\n";
  raw += std::string(37, ' ') + (senate ? "U.S. Senate," : "House of Representatives,") + "\n";
  raw += std::string(37, ' ') + "Committee on " + opt.committee + ",\n";
  raw += std::string(37, ' ') + "Washington, DC.\n\n";
  std::string preamble = "The " + std::string(senate ? "Committee" : "committee") +
                         " met, pursuant to notice, at 10:00 a.m., in room 2154, " +
                         (senate ? "Dirksen Senate" : "Rayburn House") +
                         " Office Building, Hon. " + chair.display_name +
                         " [chairman of the committee] presiding.";
  wrap_into(raw, "    ", preamble);
  std::string present = "Present: " + std::string(senate ? "Senators " : "Representatives ");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) present += ", ";
    present += people[members[i].person].surname;
  }
  present += ".";
  wrap_into(raw, "    ", present);

  // --- utterances ----------------------------------------------------------
  auto emit = [&](const Speaker& s, const std::vector<std::string>& paragraphs, QaLabel label) {
    TrueUtterance t;
    t.marker_offset = raw.size();
    t.raw_marker = marker_for(s);
    t.speaker = people[s.person].person_id;
    t.label = label;
    std::string full;
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      wrap_into(raw, i == 0 ? "    " + t.raw_marker + ". " : "    ", paragraphs[i]);
      full += " " + paragraphs[i];
    }
    if (rng.index(15) == 0) raw += "\n";
    t.text = collapse_whitespace(strip_brackets(full));
    out.truth.push_back(std::move(t));
  };

  auto flavor = [&](const Person& p) -> std::string {
    if (p.party == Party::Democrat) return std::string(pick(rng, kDemocratFlavor));
    if (p.party == Party::Republican) return std::string(pick(rng, kRepublicanFlavor));
    return "";
  };

  const Speaker& chair_s = members[0];
  const Speaker& ranking_s = members[1];
  const Person& ranking = people[ranking_s.person];
  const std::string rm_title = std::string(ranking.honorific) + ". " + ranking.surname;
  emit(chair_s,
       {"Good morning. The committee will come to order. Without objection, the chair is "
        "authorized to declare a recess of the committee at any time.",
        "Today we are examining " + topic0 + ". " + flavor(chair) +
            " I now recognize the ranking member, " + rm_title + ", for an opening statement."},
       QaLabel::Other);
  emit(ranking_s,
       {"Thank you. I want to thank our witnesses for appearing today to discuss " + topic0 +
        ". " + flavor(ranking)},
       QaLabel::Other);
  std::string intro = "Our witnesses today are ";
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) intro += i + 1 == witnesses.size() ? " and " : ", ";
    intro += people[witnesses[i].person].display_name;
  }
  intro += ". Pursuant to committee rules, all witnesses will be sworn in before they testify. "
           "[Witnesses sworn.] Let the record show that the witnesses answered in the affirmative.";
  emit(chair_s, {intro}, QaLabel::Other);
  for (const auto& w : witnesses) {
    const Person& wp = people[w.person];
    emit(w,
         {"Chairman " + chair.surname + ", Ranking Member " + ranking.surname +
              ", and members of the committee, thank you for the opportunity to testify today on " +
              topic0 + ".",
          fill(pick(rng, kAnswers), pick(rng, kTopics), pick(rng, kAgencies)),
          "[The prepared statement of " + wp.honorific + ". " + wp.surname + " follows:]",
          "Prepared Statement of " + wp.display_name + " " +
              fill(pick(rng, kAnswers), topic0, pick(rng, kAgencies))},
         QaLabel::Other);
  }

  const std::size_t closing_reserve = 1;
  std::size_t member_turn = 1;
  while (out.truth.size() + closing_reserve < opt.n_utterances) {
    const Speaker& m = members[member_turn % members.size()];
    ++member_turn;
    const Person& mp = people[m.person];
    const std::string title = mp.party == Party::Independent || senate
                                  ? "Senator " + mp.surname
                                  : mp.honorific + ". " + mp.surname;
    std::string recog = "The chair recognizes " + title + " for five minutes.";
    if (opt.adversarial && rng.index(4) == 0) {
      // Forces a line break before a name so it sits at a line start.
      recog = "The chair now recognizes the " +
              std::string(mp.honorific == "Ms" ? "gentlewoman" : "gentleman") +
              " from " + m.state + "," + kForcedBreak + title +
              ". You are recognized for five minutes.";
    }
    emit(chair_s, {recog}, QaLabel::Other);
    const std::size_t rounds = 1 + rng.index(3);
    for (std::size_t r = 0; r < rounds && out.truth.size() + closing_reserve < opt.n_utterances;
         ++r) {
      const std::string topic = std::string(pick(rng, kTopics));
      const std::string agency = std::string(pick(rng, kAgencies));
      std::string q;
      if (r == 0 || rng.index(3) == 0) q = fill(pick(rng, kQuestionLeads), topic, agency) + " ";
      if (rng.index(3) == 0) q += flavor(mp) + " ";
      if (opt.adversarial && rng.index(5) == 0) {
        const Person& other = people[members[rng.index(members.size())].person];
        q += "I agree with the concern raised by" + std::string(1, kForcedBreak) +
             (senate ? "Senator " : other.honorific + ". ") + other.surname +
             ". It came up earlier today. ";
      }
      q += fill(pick(rng, kQuestions), topic, agency);
      if (rng.index(10) == 0) q += " [Laughter.]";
      const bool interrupted = rng.index(12) == 0;
      if (interrupted) q += " So you are telling us--";
      emit(m, {q}, QaLabel::Question);
      const Speaker& w = witnesses[rng.index(witnesses.size())];
      std::string a = fill(pick(rng, kAnswers), topic, agency);
      if (rng.index(3) == 0) a += " " + fill(pick(rng, kAnswers), topic, agency);
      emit(w, {a}, QaLabel::Answer);
      if (rng.index(6) == 0 && out.truth.size() + closing_reserve < opt.n_utterances) {
        emit(m, {"Thank you. I will follow up in writing."}, QaLabel::Other);
      }
    }
    if (rng.index(3) == 0 && out.truth.size() + closing_reserve < opt.n_utterances) {
      emit(chair_s, {"The " + std::string(mp.honorific == "Ms" ? "gentlewoman's" : "gentleman's") +
                     " time has expired."},
           QaLabel::Other);
    }
  }
  emit(chair_s,
       {"I thank the witnesses for their testimony. Without objection, members will have five "
        "legislative days to submit additional written questions. The hearing is adjourned.",
        "[Whereupon, at 12:15 p.m., the committee was adjourned.]"},
       QaLabel::Other);

  raw += "\n\n" + std::string(32, ' ') + "APPENDIX\n\n";
  raw += "    Material Submitted for the Hearing Record\n\n";
  raw += "    Questions for the record submitted to " +
         people[witnesses[0].person].display_name + " regarding " + topic0 + ".\n";

  std::int64_t seq = 0;
  for (const auto& t : out.truth) {
    Utterance u;
    u.hearing_id = opt.hearing_id;
    u.sequence_no = seq;
    u.utterance_id = make_utterance_id(opt.hearing_id, seq);
    u.speaker = t.speaker;
    u.raw_marker = t.raw_marker;
    u.text = t.text;
    u.qa_label = t.label;
    out.hearing.utterances.push_back(std::move(u));
    ++seq;
  }
  return out;
}

std::vector<SynthHearing> synthesize_corpus(std::size_t n_hearings,
                                            std::size_t utterances_per_hearing,
                                            std::uint64_t seed,
                                            const GovernmentTable* government) {
  static const std::array<std::pair<const char*, Chamber>, 8> committees = {{
      {"Oversight and Reform", Chamber::House},
      {"Energy and Commerce", Chamber::House},
      {"Financial Services", Chamber::House},
      {"the Judiciary", Chamber::House},
      {"Armed Services", Chamber::House},
      {"Homeland Security and Governmental Affairs", Chamber::Senate},
      {"Commerce, Science, and Transportation", Chamber::Senate},
      {"Veterans' Affairs", Chamber::Senate},
  }};
  static const std::array<HearingType, 5> types = {
      HearingType::General, HearingType::Oversight, HearingType::Field,
      HearingType::Authorization, HearingType::Nomination};
  Rng rng(seed);
  std::vector<SynthHearing> out;
  for (std::size_t i = 0; i < n_hearings; ++i) {
    SynthOptions opt;
    char id[32];
    std::snprintf(id, sizeof id, "SYN-%04zu", i);
    opt.hearing_id = id;
    opt.session = 108 + static_cast<int>(i % 10);
    const auto& [name, chamber] = committees[rng.index(committees.size())];
    opt.committee = name;
    opt.chamber = chamber;
    opt.hearing_type = types[rng.index(types.size())];
    opt.n_utterances = utterances_per_hearing;
    opt.government = government;
    out.push_back(synthesize_hearing(opt, derive_seed(seed, i)));
  }
  return out;
}

}  // namespace hearings
