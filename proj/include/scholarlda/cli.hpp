// Copyright 2026 The scholarlda Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHOLARLDA_CLI_HPP_
#define SCHOLARLDA_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace scholarlda::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitInternal = 4,
};

// Runs one subcommand (ingest, train, topics, trends, recommend, eval).
// `args` excludes the program name. Results go to `out` unless --out is
// given; diagnostics and the JSON error record go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace scholarlda::cli

#endif  // SCHOLARLDA_CLI_HPP_
