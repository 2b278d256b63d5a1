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

#ifndef HEARINGS_CLI_HPP_
#define HEARINGS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hearings {

// Exit codes: 0 success, 1 invalid input or usage, 2 internal error.
int cli_dispatch(int argc, char** argv);
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hearings

#endif  // HEARINGS_CLI_HPP_
