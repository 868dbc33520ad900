/* Copyright 2026 The Memotion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// The `memotion` command line. Exit codes:
//   0 ok, 1 internal error, 2 bad arguments or configuration,
//   3 missing input (including a missing image modality),
//   4 schema or format error, 5 numeric failure.

#ifndef MEMOTION_CLI_H_
#define MEMOTION_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "memotion/error.h"

namespace memotion {

inline constexpr const char* kToolVersion = "0.1.0";

// Relative input paths that do not exist are looked up here.
inline constexpr const char* kDataDirEnv = "MEMOTION_DATA_DIR";

enum ExitCode {
  kExitOk = 0,
  kExitInternal = 1,
  kExitBadArgs = 2,
  kExitMissingInput = 3,
  kExitSchema = 4,
  kExitNumeric = 5,
};

int ExitCodeFor(ErrorCode code);

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace memotion

#endif  // MEMOTION_CLI_H_
