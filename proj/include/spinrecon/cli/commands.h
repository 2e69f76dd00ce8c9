// Copyright 2026 The spinrecon Authors
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

#ifndef SPINRECON_CLI_COMMANDS_H_
#define SPINRECON_CLI_COMMANDS_H_

#include <iosfwd>

namespace spinrecon::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kInconclusive = 3,
    kZeroSearchFailed = 4,
};

/// Entry point shared by the binary and the tests. Results go to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace spinrecon::cli

#endif  // SPINRECON_CLI_COMMANDS_H_
