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

#include "hearings/feature_extractor.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <thread>

#include "hearings/errors.hpp"
#include "hearings/text_util.hpp"
#include "hearings/tsv.hpp"

namespace hearings {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kSchema = {
    "ttr",          "avgWlen",       "wCount",       "FKGLvl",         "SmgIn",
    "CLIn",         "lix",           "vneg",         "vneu",           "vpos",
    "wneg",         "wpos",          "wneu",         "sneg",           "spos",
    "sneu",         "bias",          "assert",       "facts",          "hedges",
    "implctv",      "repVerb",       "poWords",      "noWords",        "punct_count",
    "symbol_count", "quote_count",   "allcaps_count", "date_mentions", "location_mentions"};

constexpr std::array<std::string_view, 22> kAbbreviations = {
    "mr", "mrs", "ms", "dr", "st", "jr", "sr", "sen", "rep", "gen", "gov",
    "no", "vs", "etc", "inc", "co", "corp", "dept", "u.s", "e.g", "i.e", "p.m"};

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool has_letter(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) { return is_ascii_alpha(c); });
}

// Lowercased word immediately before position `end` (exclusive), including
// interior periods so "U.S" and "e.g" are recognized.
std::string word_before(std::string_view text, std::size_t end) {
  std::size_t b = end;
  while (b > 0 && (is_ascii_alnum(text[b - 1]) || text[b - 1] == '.')) --b;
  return to_lower(text.substr(b, end - b));
}

bool is_abbreviation(std::string_view text, std::size_t dot) {
  const std::string w = word_before(text, dot);
  if (w.empty()) return false;
  if (w.size() == 1 && is_ascii_alpha(w[0])) return true;  // initial
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), w) != kAbbreviations.end();
}

}  // namespace

int count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (is_ascii_alpha(c)) w.push_back(static_cast<char>(c | 0x20));
  }
  if (w.empty()) return 1;
  int groups = 0;
  bool prev = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !prev) ++groups;
    prev = v;
  }
  const std::size_t n = w.size();
  if (n >= 2 && w[n - 1] == 'e' && groups > 1) {
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
    if (!consonant_le && !is_vowel(w[n - 2])) --groups;
  }
  return std::max(groups, 1);
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    const std::string_view s = trim(text.substr(start, end - start));
    if (!word_tokens(s).empty()) out.emplace_back(s);
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (c == '.') {
      if (i + 1 < text.size() && is_ascii_digit(text[i + 1]) && i > 0 &&
          is_ascii_digit(text[i - 1])) {
        continue;
      }
      if (is_abbreviation(text, i)) continue;
    }
    std::size_t j = i;
    while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?' ||
                               text[j] == '"' || text[j] == '\'' || text[j] == ')')) {
      ++j;
    }
    emit(j);
    i = j - 1;
  }
  if (start < text.size()) emit(text.size());
  return out;
}

TextStats compute_stats(std::string_view text) {
  TextStats s;
  std::set<std::string> unique;
  for (const auto& w : word_tokens(text)) {
    if (!has_letter(w)) continue;
    ++s.n_words;
    unique.insert(w);
    const long letters = static_cast<long>(
        std::count_if(w.begin(), w.end(), [](char c) { return is_ascii_alpha(c); }));
    s.n_characters_in_words += letters;
    if (letters > 6) ++s.n_long_words;
    const int syl = count_syllables(w);
    s.n_syllables += syl;
    if (syl >= 3) ++s.n_polysyllables;
  }
  s.n_unique_words = static_cast<long>(unique.size());
  if (s.n_words > 0) {
    s.n_sentences = std::max<long>(1, static_cast<long>(split_sentences(text).size()));
  }
  return s;
}

WordList::WordList(const std::vector<std::string>& entries) {
  std::set<std::string> norm;
  for (const auto& e : entries) {
    const auto toks = word_tokens(e);
    if (!toks.empty()) norm.insert(join(toks, " "));
  }
  entries_.assign(norm.begin(), norm.end());
  for (const auto& e : entries_) {
    auto toks = split(e, ' ');
    by_first_[toks.front()].push_back(std::move(toks));
  }
}

long WordList::count(const std::vector<std::string>& tokens) const {
  long n = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = by_first_.find(tokens[i]);
    if (it == by_first_.end()) continue;
    for (const auto& phrase : it->second) {
      if (i + phrase.size() > tokens.size()) continue;
      if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<long>(i))) ++n;
    }
  }
  return n;
}

const std::vector<std::string>& Lexicons::list_names() {
  static const std::vector<std::string> names = {
      "weak_pos",    "weak_neg",     "weak_neu",         "strong_pos",
      "strong_neg",  "strong_neu",   "bias_words",       "assertives",
      "factives",    "hedges",       "implicatives",     "report_verbs",
      "positive_opinion", "negative_opinion", "gazetteer"};
  return names;
}

namespace {

std::vector<std::string> read_list(const std::filesystem::path& path) {
  std::vector<std::string> out;
  for (const auto& line : split(read_file(path), '\n')) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(to_lower(t));
  }
  return out;
}

std::vector<std::string> lexicon_files() {
  std::vector<std::string> files;
  for (const auto& n : Lexicons::list_names()) files.push_back(n + ".txt");
  files.push_back("sentiment_valence.tsv");
  return files;
}

}  // namespace

Lexicons Lexicons::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("lexicon directory not found: " + dir.string());
  }
  const auto manifest = dir / "MANIFEST";
  if (std::filesystem::exists(manifest)) {
    for (const auto& row : tsv::read(manifest)) {
      if (row.fields.size() != 2) {
        throw ParseError(manifest.string(), row.line_no, "row", "expected file and checksum");
      }
      const auto path = dir / row.fields[0];
      if (!std::filesystem::exists(path)) {
        throw IoError("lexicon file listed in MANIFEST is missing: " + path.string());
      }
      if (hex64(fnv1a64(read_file(path))) != row.fields[1]) {
        throw ValidationError("lexicon checksum mismatch for " + path.string() +
                              " (regenerate MANIFEST after editing lists)");
      }
    }
  }
  Lexicons lex;
  WordList* slots[] = {&lex.weak_pos,     &lex.weak_neg,         &lex.weak_neu,
                       &lex.strong_pos,   &lex.strong_neg,       &lex.strong_neu,
                       &lex.bias_words,   &lex.assertives,       &lex.factives,
                       &lex.hedges,       &lex.implicatives,     &lex.report_verbs,
                       &lex.positive_opinion, &lex.negative_opinion, &lex.gazetteer};
  std::uint64_t h = fnv1a64(kFeatureSchemaVersion);
  const auto& names = list_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto path = dir / (names[i] + ".txt");
    if (!std::filesystem::exists(path)) throw IoError("missing lexicon file: " + path.string());
    *slots[i] = WordList(read_list(path));
    h = fnv1a64(names[i], h);
    for (const auto& e : slots[i]->entries()) h = fnv1a64(e + "\n", h);
  }
  const auto vpath = dir / "sentiment_valence.tsv";
  if (!std::filesystem::exists(vpath)) throw IoError("missing lexicon file: " + vpath.string());
  for (const auto& row : tsv::read(vpath)) {
    if (row.fields.size() != 2) {
      throw ParseError(vpath.string(), row.line_no, "row", "expected word and valence");
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(row.fields[1], &used);
      if (used != row.fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(vpath.string(), row.line_no, "valence", "not a number");
    }
    if (!std::isfinite(v)) throw ParseError(vpath.string(), row.line_no, "valence", "not finite");
    const auto toks = word_tokens(row.fields[0]);
    if (toks.size() != 1) {
      throw ParseError(vpath.string(), row.line_no, "word", "expected a single word");
    }
    lex.sentiment_valence[toks.front()] = v;
  }
  std::vector<std::pair<std::string, double>> sorted(lex.sentiment_valence.begin(),
                                                     lex.sentiment_valence.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [w, v] : sorted) h = fnv1a64(w + "\t" + format_double(v) + "\n", h);
  lex.checksum = hex64(h);
  return lex;
}

void write_lexicon_manifest(const std::filesystem::path& dir) {
  std::string out = "# file\tfnv1a64\n";
  for (const auto& f : lexicon_files()) {
    out += tsv::format_row({f, hex64(fnv1a64(read_file(dir / f)))});
  }
  write_file(dir / "MANIFEST", out);
}

const std::array<std::string_view, kFeatureCount>& feature_schema() { return kSchema; }

std::optional<std::size_t> feature_index(std::string_view name) {
  for (std::size_t i = 0; i < kSchema.size(); ++i) {
    if (kSchema[i] == name) return i;
  }
  return std::nullopt;
}

bool is_count_feature(std::string_view name) {
  const auto i = feature_index(name);
  return i && (*i == 2 || *i >= 10);
}

std::optional<double> FeatureVector::get(std::string_view name) const {
  const auto i = feature_index(name);
  if (!i) throw ValidationError("unknown feature '" + std::string(name) + "'");
  return values[*i];
}

PartialFeatures complexity_features(const TextStats& s) {
  PartialFeatures out;
  const bool ok = s.n_words >= 1 && s.n_sentences >= 1;
  auto put = [&](const char* name, double v) {
    out.emplace_back(name, ok ? std::optional<double>(v) : std::nullopt);
  };
  const double w = static_cast<double>(s.n_words);
  const double sn = static_cast<double>(s.n_sentences);
  put("ttr", ok ? s.n_unique_words / w : 0.0);
  put("avgWlen", ok ? s.n_characters_in_words / w : 0.0);
  out.emplace_back("wCount", w);
  put("FKGLvl", ok ? 0.39 * (w / sn) + 11.8 * (s.n_syllables / w) - 15.59 : 0.0);
  put("SmgIn", ok ? 1.0430 * std::sqrt(s.n_polysyllables * 30.0 / sn) + 3.1291 : 0.0);
  const double L = ok ? 100.0 * s.n_characters_in_words / w : 0.0;
  const double S = ok ? 100.0 * sn / w : 0.0;
  put("CLIn", 0.0588 * L - 0.296 * S - 15.8);
  put("lix", ok ? w / sn + 100.0 * s.n_long_words / w : 0.0);
  return out;
}

PartialFeatures affect_features(std::string_view text, const Lexicons& lex) {
  const auto tokens = word_tokens(text);
  double pos = 0.0, neg = 0.0, neu = 0.0;
  for (const auto& t : tokens) {
    auto it = lex.sentiment_valence.find(t);
    const double v = it == lex.sentiment_valence.end() ? 0.0 : it->second;
    if (v > 0) {
      pos += v;
    } else if (v < 0) {
      neg -= v;
    } else {
      neu += 1.0;
    }
  }
  const double total = pos + neg + neu;
  PartialFeatures out;
  out.emplace_back("vneg", total > 0 ? neg / total : 0.0);
  out.emplace_back("vneu", total > 0 ? neu / total : 1.0);
  out.emplace_back("vpos", total > 0 ? pos / total : 0.0);
  out.emplace_back("wneg", static_cast<double>(lex.weak_neg.count(tokens)));
  out.emplace_back("wpos", static_cast<double>(lex.weak_pos.count(tokens)));
  out.emplace_back("wneu", static_cast<double>(lex.weak_neu.count(tokens)));
  out.emplace_back("sneg", static_cast<double>(lex.strong_neg.count(tokens)));
  out.emplace_back("spos", static_cast<double>(lex.strong_pos.count(tokens)));
  out.emplace_back("sneu", static_cast<double>(lex.strong_neu.count(tokens)));
  return out;
}

PartialFeatures bias_features(std::string_view text, const Lexicons& lex) {
  const auto tokens = word_tokens(text);
  PartialFeatures out;
  auto put = [&](const char* name, const WordList& list) {
    out.emplace_back(name, static_cast<double>(list.count(tokens)));
  };
  put("bias", lex.bias_words);
  put("assert", lex.assertives);
  put("facts", lex.factives);
  put("hedges", lex.hedges);
  put("implctv", lex.implicatives);
  put("repVerb", lex.report_verbs);
  put("poWords", lex.positive_opinion);
  put("noWords", lex.negative_opinion);
  return out;
}

long count_date_mentions(std::string_view text) {
  // "May" only counts when followed by a day number; the modal verb is
  // far more common in testimony.
  static const std::regex re(
      R"(\b(?:\d{1,2}/\d{1,2}/\d{4}|january|february|march|april|june|july|august|september|october|november|december|may(?=\s+\d)|(?:19|20)\d\d)\b)",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  const std::string s(text);
  return static_cast<long>(
      std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

PartialFeatures style_event_features(std::string_view text, const Lexicons& lex) {
  static constexpr std::string_view kPunct = ".,;:!?-()[]'\"";
  long punct = 0, symbol = 0, quote = 0, caps = 0;
  for (char c : text) {
    if (c == '"') ++quote;
    if (kPunct.find(c) != std::string_view::npos) {
      ++punct;
    } else if (std::ispunct(static_cast<unsigned char>(c))) {
      ++symbol;
    }
  }
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ascii_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    int letters = 0;
    bool all_upper = true;
    while (j < text.size() && is_ascii_alnum(text[j])) {
      if (is_ascii_alpha(text[j])) {
        ++letters;
        if (text[j] >= 'a' && text[j] <= 'z') all_upper = false;
      }
      ++j;
    }
    if (letters >= 2 && all_upper) ++caps;
    i = j;
  }
  PartialFeatures out;
  out.emplace_back("punct_count", static_cast<double>(punct));
  out.emplace_back("symbol_count", static_cast<double>(symbol));
  out.emplace_back("quote_count", static_cast<double>(quote));
  out.emplace_back("allcaps_count", static_cast<double>(caps));
  out.emplace_back("date_mentions", static_cast<double>(count_date_mentions(text)));
  out.emplace_back("location_mentions",
                   static_cast<double>(lex.gazetteer.count(word_tokens(text))));
  return out;
}

FeatureVector extract_features(std::string_view text, const Lexicons& lex) {
  FeatureVector fv;
  std::size_t k = 0;
  auto take = [&](const PartialFeatures& part) {
    for (const auto& [name, v] : part) {
      if (kSchema[k] != name) throw std::logic_error("feature schema order broken at " + name);
      fv.values[k++] = v;
    }
  };
  take(complexity_features(compute_stats(text)));
  take(affect_features(text, lex));
  take(bias_features(text, lex));
  take(style_event_features(text, lex));
  if (k != kFeatureCount) throw std::logic_error("feature schema incomplete");
  return fv;
}

std::vector<FeatureRow> extract_corpus_features(const Corpus& corpus, const Lexicons& lex,
                                                unsigned jobs) {
  std::vector<const Utterance*> items;
  for (const auto& h : corpus) {
    for (const auto& u : h.utterances) items.push_back(&u);
  }
  std::vector<FeatureRow> rows(items.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rows[i] = {items[i]->utterance_id, extract_features(items[i]->text, lex)};
    }
  };
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs, items.size()));
  if (n_threads <= 1) {
    work(0, items.size());
    return rows;
  }
  std::vector<std::thread> threads;
  const std::size_t chunk = (items.size() + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(items.size(), b + chunk);
    if (b < e) threads.emplace_back(work, b, e);
  }
  for (auto& th : threads) th.join();
  return rows;
}

std::string feature_matrix_tsv(const std::vector<FeatureRow>& rows) {
  std::vector<std::string> header{"utterance_id"};
  for (auto n : kSchema) header.emplace_back(n);
  std::string out = tsv::format_row(header);
  for (const auto& r : rows) {
    std::vector<std::string> f{r.utterance_id};
    for (const auto& v : r.features.values) f.push_back(v ? format_double(*v) : "NA");
    out += tsv::format_row(f);
  }
  return out;
}

std::vector<FeatureRow> parse_feature_matrix(std::string_view content, const std::string& source) {
  const auto rows = tsv::parse(content);
  if (rows.empty()) throw ParseError(source, 0, "header", "missing header");
  const auto& header = rows.front().fields;
  if (header.size() != kFeatureCount + 1 || header[0] != "utterance_id" ||
      !std::equal(kSchema.begin(), kSchema.end(), header.begin() + 1)) {
    throw ParseError(source, rows.front().line_no, "header",
                     "header does not match feature schema " + std::string(kFeatureSchemaVersion));
  }
  std::vector<FeatureRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.fields.size() != kFeatureCount + 1) {
      throw ParseError(source, r.line_no, "row", "wrong field count");
    }
    FeatureRow fr;
    fr.utterance_id = r.fields[0];
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      const auto& cell = r.fields[k + 1];
      if (cell == "NA") continue;
      try {
        std::size_t used = 0;
        fr.features.values[k] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(source, r.line_no, std::string(kSchema[k]), "not a number: " + cell);
      }
    }
    out.push_back(std::move(fr));
  }
  return out;
}

void write_feature_matrix(const std::filesystem::path& path, const std::vector<FeatureRow>& rows) {
  write_file(path, feature_matrix_tsv(rows));
}

std::vector<FeatureRow> read_feature_matrix(const std::filesystem::path& path) {
  return parse_feature_matrix(read_file(path), path.string());
}

}  // namespace hearings
