/*
 * Copyright 2026 The balsplit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BALSPLIT_TOOLS_CLI_HPP_
#define BALSPLIT_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace balsplit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

// Runs the balsplit command line. `args` excludes the program name. Summaries
// go to `out`, diagnostics to `err`; data is only ever written to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace balsplit::cli

#endif  // BALSPLIT_TOOLS_CLI_HPP_
