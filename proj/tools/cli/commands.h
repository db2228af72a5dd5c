// Copyright 2026 The enercal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENERCAL_TOOLS_CLI_COMMANDS_H_
#define ENERCAL_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace enercal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime or fit failure
inline constexpr int kExitUsage = 2;    // bad flags or flag values

// Runs one `enercal` invocation. args[0] is the program name. Subcommands:
// gen (alias gen-synthetic), fit, apply, eval, bench.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace enercal::cli

#endif  // ENERCAL_TOOLS_CLI_COMMANDS_H_
