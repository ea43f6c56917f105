// Copyright 2026 The PIMS Authorization Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pims {

enum class ErrorCode {
  kInvalidParams,
  kInvalidKey,
  kDecodeError,
  kAuthenticationFailure,
  kCapsuleCheckFailure,
  kInvalidPolicy,
  kInsufficientShares,
  kDuplicateIndex,
  kInvalidKFrag,
  kInvalidCFrag,
  kInsufficientFragments,
  kDuplicateFragment,
  kOpeningCheckFailure,
  kBadSignature,
  kDuplicateRecord,
  kUnauthorized,
  kUnknownRecord,
  kNotFound,
  kIntegrityMismatch,
  kStorageFailure,
  kCountMismatch,
  kInsufficientResponses,
  kConfigInvalid,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pims
