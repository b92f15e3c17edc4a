// Copyright 2026 The modmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODMARK_CLI_HPP
#define MODMARK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace modmark::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;       // bad flags or malformed input file
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitShape = 4;

// Parses "2,3+1" into {{2}, {3, 1}}: commas separate algebras, '+' separates
// blocks. Throws Error(BadSpec).
std::vector<std::vector<int>> parse_dims_list(const std::string& text);
// Parses "2,2" into the block list {2, 2}.
std::vector<int> parse_dims(const std::string& text);

// Runs the tool on argv-style arguments, excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modmark::cli

#endif  // MODMARK_CLI_HPP
