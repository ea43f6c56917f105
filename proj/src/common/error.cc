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

#include "pims/common/error.hpp"

namespace pims {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInvalidKey: return "InvalidKey";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kAuthenticationFailure: return "AuthenticationFailure";
    case ErrorCode::kCapsuleCheckFailure: return "CapsuleCheckFailure";
    case ErrorCode::kInvalidPolicy: return "InvalidPolicy";
    case ErrorCode::kInsufficientShares: return "InsufficientShares";
    case ErrorCode::kDuplicateIndex: return "DuplicateIndex";
    case ErrorCode::kInvalidKFrag: return "InvalidKFrag";
    case ErrorCode::kInvalidCFrag: return "InvalidCFrag";
    case ErrorCode::kInsufficientFragments: return "InsufficientFragments";
    case ErrorCode::kDuplicateFragment: return "DuplicateFragment";
    case ErrorCode::kOpeningCheckFailure: return "OpeningCheckFailure";
    case ErrorCode::kBadSignature: return "BadSignature";
    case ErrorCode::kDuplicateRecord: return "DuplicateRecord";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kUnknownRecord: return "UnknownRecord";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kIntegrityMismatch: return "IntegrityMismatch";
    case ErrorCode::kStorageFailure: return "StorageFailure";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kInsufficientResponses: return "InsufficientResponses";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace pims
