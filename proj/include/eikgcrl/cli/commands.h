// Copyright 2026 The EikGCRL Authors
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

#ifndef EIKGCRL_CLI_COMMANDS_H_
#define EIKGCRL_CLI_COMMANDS_H_

#include <ostream>

namespace eikgcrl::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a check suite failed
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCorrupt = 3;
inline constexpr int kExitNumerical = 4;

// Entry point for `eikgcrl <subcommand> ...`. Reports go to `out`,
// diagnostics to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace eikgcrl::cli

#endif  // EIKGCRL_CLI_COMMANDS_H_
