/**
 * Copyright 2026 The polysched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef POLYSCHED_CLI_HPP_
#define POLYSCHED_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace polysched::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // bad flags, unreadable or malformed input
  kInfeasible = 2,  // ConfigInfeasible, ConflictingPlan, IllegalDistribution
  kIllegal = 3,     // verification found violations
};

/// Runs one invocation. args excludes the program name. The primary
/// artifact goes to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace polysched::cli

#endif  // POLYSCHED_CLI_HPP_
