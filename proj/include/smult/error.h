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

#ifndef SMULT_ERROR_H_
#define SMULT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace smult {

enum class ErrorCode {
  kInvalidArgument,
  kTooLarge,
  kUnsupported,
  kPreconditionFailed,
  kDegenerateDisorder,
  kIncompleteSubtree,
  kTilingMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
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

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kTooLarge:
      return "too-large";
    case ErrorCode::kUnsupported:
      return "unsupported";
    case ErrorCode::kPreconditionFailed:
      return "precondition-failure";
    case ErrorCode::kDegenerateDisorder:
      return "degenerate-disorder";
    case ErrorCode::kIncompleteSubtree:
      return "incomplete-subtree";
    case ErrorCode::kTilingMismatch:
      return "tiling-mismatch";
  }
  return "unknown";
}

}  // namespace smult

#endif  // SMULT_ERROR_H_
