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

#ifndef SCHOLARLDA_ERROR_HPP_
#define SCHOLARLDA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scholarlda {

enum class ErrorCode {
  kInvalidArgument,
  kFileNotFound,
  kIoError,
  kSchemaMismatch,
  kDuplicateId,
  kEmptyCorpus,
  kIndexOutOfRange,
  kIncompatibleVocabulary,
  kEmptySelection,
  kUnknownVenue,
  kYearNotInSeries,
  kUnknownEntity,
  kFingerprintMismatch,
  kInvariantViolation,
};

// Stable kebab-case name used in machine-readable error records.
std::string_view error_code_name(ErrorCode code);

// All library failures are reported as scholarlda::Error. The code is what
// callers switch on; what() carries a human-readable description.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scholarlda

#endif  // SCHOLARLDA_ERROR_HPP_
