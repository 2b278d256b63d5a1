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

#ifndef HEARINGS_TSV_HPP_
#define HEARINGS_TSV_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hearings::tsv {

// Tab-separated values with backslash escapes for \t, \n, \r and \\.
std::string escape(std::string_view field);
std::string unescape(std::string_view field);

std::string format_row(const std::vector<std::string>& fields);

struct Row {
  std::size_t line_no = 0;
  std::vector<std::string> fields;
};

// Lines starting with '#' and blank lines are skipped. Fields are unescaped.
std::vector<Row> parse(std::string_view content);
std::vector<Row> read(const std::filesystem::path& path);

}  // namespace hearings::tsv

#endif  // HEARINGS_TSV_HPP_
