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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "zxe/diagram.hpp"
#include "zxe/enrichment.hpp"
#include "zxe/error.hpp"
#include "zxe/matrix.hpp"

namespace zxe {

/// Diagram rules: F spider fusion, I1 phase-free spider removal, I2 HH
/// cancellation, H colour change, Pi pi-commutation, C state copy, B
/// bialgebra. Sum rules: ES/EP sequential/parallel distribution, EC branch
/// permutation, EDelta Dirac (un)wrapping, EPlus merging identical
/// branches, EZero dropping zero branches.
enum class RuleId { kF, kI1, kI2, kH, kPi, kC, kB, kES, kEP, kEC, kEDelta, kEPlus, kEZero };

enum class Orientation { kForward, kBackward };

std::string_view rule_name(RuleId r);
/// Accepts the names printed by rule_name, case-insensitively. Throws kInvalidArgument.
RuleId parse_rule(std::string_view name);
bool is_diagram_rule(RuleId r);

struct Match {
  RuleId rule = RuleId::kF;
  /// Pattern node name -> diagram node id (or branch index for sum rules).
  std::vector<std::pair<std::string, NodeId>> binding;
  Orientation orientation = Orientation::kForward;
  /// True when the match uses the rule with Z and X exchanged.
  bool color_swapped = false;

  NodeId at(std::string_view name) const;
};

/// An unevaluated product of two sums, the left-hand side of ES/EP.
struct EnrichedProduct {
  enum class Kind { kSeq, kPar };
  Kind kind;
  EnrichedZX left;   // applied first for kSeq
  EnrichedZX right;
};

using Term = std::variant<Diagram, EnrichedZX, EnrichedProduct>;

struct RewriteStep {
  RuleId rule;
  Match match;
  Term before;
  Term after;
  /// before ≈ fitted_scalar * after (CP-map level); 1 when unchecked.
  Complex fitted_scalar{1.0, 0.0};
  bool checked = false;
  long node_delta = 0;
};

struct RewriteOptions {
  bool check_soundness = true;
  ScalarPolicy policy = ScalarPolicy::kUpToScalar;
  double tol = 1e-9;
};

/// All bindings of the rule's left-hand side in d (both colour variants),
/// ordered by ascending node ids. H and B also have a backward form.
/// Throws kWrongRuleClass for sum rules.
std::vector<Match> find_matches(const Diagram& d, RuleId rule,
                                Orientation orientation = Orientation::kForward);

/// Whether m still binds a valid left-hand side in d.
bool match_is_valid(const Diagram& d, const Match& m);

/// Rewrites d at m and verifies the result. Throws kStaleMatch,
/// kSoundnessViolation.
RewriteStep apply(const Diagram& d, const Match& m, const RewriteOptions& opts = {});

enum class Strategy { kExhaustive, kFusionOnly };

struct SimplifyResult {
  Diagram result;
  std::vector<RewriteStep> steps;
};

/// Thrown by simplify when max_steps is reached with matches remaining.
class StepBudgetExceeded : public Error {
 public:
  explicit StepBudgetExceeded(SimplifyResult partial)
      : Error(ErrorCode::kStepBudgetExceeded, "rewrite step budget exhausted"),
        partial_(std::move(partial)) {}
  const SimplifyResult& partial() const noexcept { return partial_; }

 private:
  SimplifyResult partial_;
};

/// Applies the first available match in priority F > I1 > I2 > H > C > Pi > B
/// until none remain. Colour change only runs X -> Z and bialgebra only in
/// its shrinking direction, so the exhaustive strategy terminates;
/// kFusionOnly uses F, I1 and I2.
SimplifyResult simplify(const Diagram& d, Strategy strategy = Strategy::kExhaustive,
                        std::size_t max_steps = 1000, const RewriteOptions& opts = {});

/// Where a sum rule applies.
struct EnrichedSite {
  std::vector<std::size_t> branches;
  Orientation orientation = Orientation::kForward;
  /// Proposed factorisation for ES/EP backward.
  std::optional<EnrichedProduct> factorization;
};

/// Applies a sum rule. Soundness is checked under the exact policy unless
/// opts says otherwise. Throws kWrongRuleClass, kSiteInvalid, kSoundnessViolation.
RewriteStep apply_enriched(const Term& t, RuleId rule, const EnrichedSite& site,
                           RewriteOptions opts = {true, ScalarPolicy::kExact, 1e-9});

/// Semantics of a term: CP map for diagrams and distribution terms, matrix
/// for multiset terms.
Evaluation evaluate_term(const Term& t);

/// One JSON object per step (rule, orientation, binding, fitted scalar,
/// node-count delta), without a trailing newline.
std::string step_to_json_line(const RewriteStep& step);

}  // namespace zxe
