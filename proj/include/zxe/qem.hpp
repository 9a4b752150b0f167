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

#include <complex>
#include <string>
#include <vector>

#include "zxe/diagram.hpp"
#include "zxe/enrichment.hpp"

namespace zxe {

enum class Pauli { kX, kY, kZ };

const char* pauli_name(Pauli p);
/// "X", "Y" or "Z" (case-insensitive). Throws kUnsupportedSymmetry.
Pauli parse_pauli(std::string_view name);

/// X = X(pi), Z = Z(pi), Y = i X Z with the i carried by a scalar diagram.
Diagram pauli_diagram(Pauli p);

struct NoiseChannel {
  std::string name;
  EnrichedZX formal_sum;
  double p = 0.0;
  /// One label per branch of formal_sum, in branch order.
  std::vector<std::string> labels;
};

/// (1-p)[I] + p/3 ([X] + [Y] + [Z]). Throws kParamOutOfRange.
NoiseChannel depolarizing(double p);
/// (1-p)[I] + p[P]. Throws kParamOutOfRange.
NoiseChannel pauli_channel(double p, Pauli pauli);

/// A +1 eigenstate of the symmetry: H|0> for X, S H|0> for Y, |0> for Z.
Diagram default_prep(Pauli symmetry);

/// 2-qubit controlled-P with the control on wire 1 and the target on wire 0.
Diagram controlled_pauli(Pauli p);

/// Ancilla |0>, H, controlled-symmetry, H, <0| on the ancilla and a discard
/// on the data qubit: the 1 -> 0 map rho -> tr(P_{+1} rho).
Diagram verification_circuit(Pauli symmetry);

/// prep, then the noise branches, then the verification circuit. Throws
/// kArityMismatch if prep is not 0 -> 1 and kInvariantViolation if the
/// symmetry does not fix the noiseless state.
EnrichedZX build_sv_instance(Pauli symmetry, const Diagram& prep, const NoiseChannel& noise);

/// The scalar an instance evaluates to. Throws kNotScalar, kNonRealResult.
double acceptance_probability(const EnrichedZX& instance);

struct BranchContribution {
  std::string label;
  double weight;
  double acceptance;     // of the branch on its own
  double contribution;   // weight * acceptance
};

/// Per-branch breakdown of acceptance_probability. labels may be empty.
std::vector<BranchContribution> branch_acceptance(const EnrichedZX& instance,
                                                  const std::vector<std::string>& labels = {});

/// cos(alpha)[I] + i sin(alpha)[P] as a multiset sum.
EnrichedZX gate_split(double alpha, Pauli pauli);

struct SweepRow {
  double p;
  double acceptance_numeric;
  double acceptance_closed_form;
  double abs_error;
};

/// Depolarizing sweep over `grid` with the default preparation. Points are
/// computed in parallel and returned in grid order.
std::vector<SweepRow> sv_sweep(const std::vector<double>& grid, Pauli symmetry);

/// "p,acceptance_numeric,acceptance_closed_form,abs_error" plus one line
/// per row, `digits` significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows, int digits = 17);

}  // namespace zxe
