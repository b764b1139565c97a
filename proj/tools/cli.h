// Copyright 2026 The smult Authors
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

#ifndef SMULT_TOOLS_CLI_H_
#define SMULT_TOOLS_CLI_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace smult {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 1,
  kExitVerificationFailed = 2,
  kExitSizeCap = 3,
};

// Size caps, overridable through SMULT_MAX_TREE_VERTICES,
// SMULT_MAX_EIG_DIM and SMULT_MAX_AUT_VERTICES.
struct SizeCaps {
  std::size_t tree_vertices;
  std::size_t eig_dimension;
  std::size_t aut_vertices;
};

// kInvalidArgument when a variable is set but not a positive integer.
SizeCaps SizeCapsFromEnvironment();

// args excludes the program name. Reports go to --out when given, else to
// out; the human summary goes to out only when --out is given.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);
int RunCli(int argc, char** argv);

}  // namespace smult

#endif  // SMULT_TOOLS_CLI_H_
