// Copyright 2026 The qpure Authors
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

#ifndef QPURE_CLI_HPP
#define QPURE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qpure::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,   // invalid channel, violated bound, infeasible USD
  kUsage = 2,      // bad arguments or incompatible dimensions
  kMalformed = 3,  // unreadable or invalid input file
};

/// Runs one `qpure` command. `args` excludes the program name. Reports go
/// to `out` as JSON, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpure::cli

#endif  // QPURE_CLI_HPP
