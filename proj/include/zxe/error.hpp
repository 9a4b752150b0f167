// Copyright 2026 The zxe Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace zxe {

// Stable error categories. The C API maps these one-to-one onto zxe_status.
enum class ErrorCode {
  kArityMismatch = 1,
  kInvariantViolation,
  kNotDaggerable,
  kBudgetExceeded,
  kHasDiscard,
  kShapeMismatch,
  kNotHermitianInput,
  kMonadMismatch,
  kInvalidWeights,
  kWrongRuleClass,
  kStaleMatch,
  kSiteInvalid,
  kSoundnessViolation,
  kStepBudgetExceeded,
  kParamOutOfRange,
  kUnsupportedSymmetry,
  kNotScalar,
  kNonRealResult,
  kParse,
  kInvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zxe
