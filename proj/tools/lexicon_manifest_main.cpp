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

// Regenerates MANIFEST checksums after lexicon lists are edited.

#include <iostream>

#include "hearings/errors.hpp"
#include "hearings/feature_extractor.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: hearings-lexicon-manifest <lexicon-dir>\n";
    return 1;
  }
  try {
    hearings::write_lexicon_manifest(argv[1]);
    const auto lex = hearings::Lexicons::load(argv[1]);
    std::cout << lex.checksum << "\n";
  } catch (const hearings::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
