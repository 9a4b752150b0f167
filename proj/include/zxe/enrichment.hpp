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

#include <string>
#include <utility>
#include <variant>

#include "zxe/diagram.hpp"
#include "zxe/formal_sum.hpp"
#include "zxe/semantics.hpp"

namespace zxe {

template <>
struct PayloadTraits<Diagram> {
  static std::pair<std::size_t, std::size_t> arity(const Diagram& d) {
    return {d.in_arity(), d.out_arity()};
  }
  /// Canonically relabelled copy.
  static Diagram normalize(const Diagram& d);
  /// (node count, edge count, canonical form), fixed-width so string order
  /// is the lexicographic order of the triple.
  static std::string key(const Diagram& d);
};

template <>
struct PayloadTraits<Superoperator> {
  static std::pair<std::size_t, std::size_t> arity(const Superoperator& s);
  static Superoperator normalize(const Superoperator& s) { return s; }
  /// Exact bytes of the matrix entries.
  static std::string key(const Superoperator& s);
};

/// Formal sums of diagrams: the morphisms of the enriched calculus.
using EnrichedZX = FormalSum<Diagram>;

/// Sum_{j,i} q_j p_i [b_j . a_i]: b after a. Throws kArityMismatch, kMonadMismatch.
EnrichedZX seq_compose(const EnrichedZX& a, const EnrichedZX& b);
/// Sum_{i,j} p_i q_j [a_i (x) b_j]. Throws kMonadMismatch.
EnrichedZX par_tensor(const EnrichedZX& a, const EnrichedZX& b);

struct CanonicalizeOptions {
  /// Also merge branches whose CP-map interpretations agree within `tol`,
  /// even when the diagrams differ syntactically. Off by default.
  bool semantic_merge = false;
  double tol = 1e-12;
};

EnrichedZX canonicalize(const EnrichedZX& s, const CanonicalizeOptions& opts);

/// Each branch replaced by its CP map (no summation yet).
FormalSum<Superoperator> interpret_branches(const EnrichedZX& s);
/// Sum_i w_i S_i in fixed branch order.
Superoperator evaluate(const FormalSum<Superoperator>& s);

/// Distribution sums evaluate to a CP map; multiset sums to the matrix
/// sum_i c_i [[D_i]].
using Evaluation = std::variant<Superoperator, ComplexMatrix>;
Evaluation evaluate(const EnrichedZX& s);

/// evaluate() for a distribution sum, as a superoperator. For multiset sums
/// this returns the superoperator of the evaluated matrix.
Superoperator evaluate_cpm(const EnrichedZX& s);

}  // namespace zxe
