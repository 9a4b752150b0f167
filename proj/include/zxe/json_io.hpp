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
#include <string_view>

#include "zxe/diagram.hpp"
#include "zxe/enrichment.hpp"
#include "zxe/matrix.hpp"

namespace zxe {

/// Diagram files: {"format": 1, "in_arity", "out_arity", "nodes": [{"id",
/// "kind", "phase", "pos"}], "edges": [[a, b], ...]}. Kinds are Z, X, H, IN,
/// OUT, GND; phases are {"num", "den"} (multiples of pi) or {"float"}
/// (radians). Spiders always carry a phase, boundaries always a pos.
///
/// Parsing throws kParse for malformed JSON or schema errors and
/// kInvariantViolation for well-formed files describing an invalid diagram.
Diagram diagram_from_json(std::string_view text);
std::string diagram_to_json(const Diagram& d);

/// {"format": 1, "monad", "in", "out", "branches": [{"weight", "diagram"}]}.
/// Real weights print as numbers, complex ones as [re, im].
EnrichedZX sum_from_json(std::string_view text);
std::string sum_to_json(const EnrichedZX& s);

/// True if the document looks like a formal sum rather than a diagram.
/// Throws kParse on malformed JSON.
bool json_is_sum(std::string_view text);

/// {"rows", "cols", "entries": [[re, im], ...]} row-major.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(std::string_view text);

}  // namespace zxe
