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
#include <cstdint>
#include <optional>

#include "zxe/diagram.hpp"
#include "zxe/matrix.hpp"

namespace zxe {

/// A completely positive map stored as a matrix on column-stacked density
/// matrices: vec(A rho B) = (B^T kron A) vec(rho), so the doubling of a pure
/// map M is conj(M) kron M.
struct Superoperator {
  std::size_t dim_in = 1;
  std::size_t dim_out = 1;
  ComplexMatrix mat = ComplexMatrix::identity(1);

  static Superoperator identity(std::size_t dim);
  /// rho -> M rho M^dagger.
  static Superoperator from_pure(const ComplexMatrix& m);

  bool operator==(const Superoperator&) const = default;
};

/// Contraction order for the tensor network. Greedy picks the pair whose
/// result is smallest; a seeded random order exists to test independence.
struct ContractionOptions {
  std::optional<std::uint64_t> random_seed;
};

/// Standard interpretation as a 2^out x 2^in matrix. Boundary position 0 is
/// the most significant qubit. Throws kHasDiscard.
ComplexMatrix interpret(const Diagram& d, const ContractionOptions& opts = {});

/// CP-map interpretation; discards trace out their wire.
Superoperator interpret_cpm(const Diagram& d, const ContractionOptions& opts = {});

/// Un-vectorised s(rho). Throws kShapeMismatch, kNotHermitianInput.
ComplexMatrix apply_superop(const Superoperator& s, const ComplexMatrix& rho);

/// `after` following `before`.
Superoperator superop_compose(const Superoperator& before, const Superoperator& after);
/// Parallel composition, matching interpret_cpm(tensor(f, g)).
Superoperator superop_tensor(const Superoperator& a, const Superoperator& b);
Superoperator superop_scale(const Superoperator& s, double w);
Superoperator superop_add(const Superoperator& a, const Superoperator& b);

/// Choi matrix sum_ij |i><j| kron s(|i><j|), (dim_in*dim_out)^2 entries.
ComplexMatrix choi_matrix(const Superoperator& s);

}  // namespace zxe
