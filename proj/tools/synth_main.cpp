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

// Writes synthetic GPO-style transcripts with known utterance boundaries:
//   <out>/raw/<id>.txt         transcript text
//   <out>/raw/<id>.meta.json   hearing record with roster and aliases
//   <out>/truth/<id>.jsonl     one line per true utterance

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hearings/corpus_model.hpp"
#include "hearings/errors.hpp"
#include "hearings/party_models.hpp"
#include "hearings/text_util.hpp"
#include "hearings/transcript_synth.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  using namespace hearings;
  std::size_t n_hearings = 3;
  std::size_t n_utterances = 150;
  std::uint64_t seed = kDefaultSeed;
  std::string out = "synthetic";
  std::string government_path = std::string(HEARINGS_DATA_DIR) + "/government/contexts.json";

  CLI::App app{"Synthetic hearing transcript generator", "hearings-synth"};
  app.add_option("--hearings", n_hearings, "Number of hearings")->capture_default_str();
  app.add_option("--utterances", n_utterances, "Utterances per hearing")->capture_default_str();
  app.add_option("--seed", seed, "Root random seed")->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--government", government_path, "Government contexts JSON")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const GovernmentTable government = load_government_contexts(government_path);
    const auto corpus = synthesize_corpus(n_hearings, n_utterances, seed, &government);
    for (const auto& s : corpus) {
      const std::string& id = s.hearing.meta.hearing_id;
      write_file(fs::path(out) / "raw" / (id + ".txt"), s.raw);
      auto meta = nlohmann::json::parse(meta_record(s.hearing));
      meta["aliases"] = s.aliases;
      write_file(fs::path(out) / "raw" / (id + ".meta.json"), meta.dump(2) + "\n");
      std::string truth;
      for (const auto& t : s.truth) {
        nlohmann::json j{{"marker_offset", t.marker_offset},
                         {"raw_marker", t.raw_marker},
                         {"speaker", t.speaker},
                         {"label", name_of(t.label)},
                         {"text", t.text}};
        truth += j.dump() + "\n";
      }
      write_file(fs::path(out) / "truth" / (id + ".jsonl"), truth);
    }
    std::cerr << "hearings-synth: wrote " << corpus.size() << " hearings to " << out << "\n";
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
