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
#include <string>
#include <vector>

#include "zxe/diagram.hpp"

namespace zxe {

inline constexpr std::size_t kDefaultIsoBudget = 24;

/// A relabeling-invariant description of a diagram: two diagrams have the
/// same canonical form iff they are isomorphic as labelled open graphs.
struct CanonicalForm {
  std::string key;            // serialized canonical graph
  std::vector<NodeId> order;  // order[k] = original id of canonical node k
};

/// Individualisation-refinement canonical labelling. Throws
/// Error(kBudgetExceeded) when the diagram has more than `budget` nodes.
CanonicalForm canonical_form(const Diagram& d, std::size_t budget = kDefaultIsoBudget);

/// Same diagram with node ids renumbered 0..n-1 in canonical order.
Diagram canonical_relabel(const Diagram& d, std::size_t budget = kDefaultIsoBudget);

/// Syntactic equality up to node relabeling: node kinds, phases and boundary
/// positions must match. Float phases are compared on a 1e-12 grid.
bool iso_equal(const Diagram& f, const Diagram& g, std::size_t budget = kDefaultIsoBudget);

}  // namespace zxe
