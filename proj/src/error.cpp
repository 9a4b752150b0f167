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

#include "zxe/error.hpp"

namespace zxe {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kNotDaggerable: return "NotDaggerable";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kHasDiscard: return "HasDiscard";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotHermitianInput: return "NotHermitianInput";
    case ErrorCode::kMonadMismatch: return "MonadMismatch";
    case ErrorCode::kInvalidWeights: return "InvalidWeights";
    case ErrorCode::kWrongRuleClass: return "WrongRuleClass";
    case ErrorCode::kStaleMatch: return "StaleMatch";
    case ErrorCode::kSiteInvalid: return "SiteInvalid";
    case ErrorCode::kSoundnessViolation: return "SoundnessViolation";
    case ErrorCode::kStepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kUnsupportedSymmetry: return "UnsupportedSymmetry";
    case ErrorCode::kNotScalar: return "NotScalar";
    case ErrorCode::kNonRealResult: return "NonRealResult";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace zxe
