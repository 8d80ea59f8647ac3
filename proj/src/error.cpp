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

#include "scholarlda/error.hpp"

namespace scholarlda {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kSchemaMismatch: return "schema-mismatch";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kIncompatibleVocabulary: return "incompatible-vocabulary";
    case ErrorCode::kEmptySelection: return "empty-selection";
    case ErrorCode::kUnknownVenue: return "unknown-venue";
    case ErrorCode::kYearNotInSeries: return "year-not-in-series";
    case ErrorCode::kUnknownEntity: return "unknown-entity";
    case ErrorCode::kFingerprintMismatch: return "fingerprint-mismatch";
    case ErrorCode::kInvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

}  // namespace scholarlda
