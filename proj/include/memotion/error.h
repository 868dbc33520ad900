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

#ifndef MEMOTION_ERROR_H_
#define MEMOTION_ERROR_H_

#include <stdexcept>
#include <string>

namespace memotion {

enum class ErrorCode {
  kMissingColumn,
  kEmptyCorpus,
  kDimensionMismatch,
  kUnreadableFile,
  kBadMagic,
  kDuplicateId,
  kShapeMismatch,
  kRankError,
  kIndexOutOfRange,
  kNotScalar,
  kNonFinite,
  kBackwardTwice,
  kMissingHead,
  kVersionMismatch,
  kCorruptFile,
  kNonFiniteLoss,
  kLengthMismatch,
  kClassOutOfRange,
  kInvalidArgument,
  kConfigError,
  kMissingModality,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace memotion

#endif  // MEMOTION_ERROR_H_
