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

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <numbers>

#include "oracles.hpp"
#include "zxe/iso.hpp"
#include "zxe/qem.hpp"
#include "zxe/rewrite.hpp"

namespace zxe {
namespace {

constexpr Pauli kPaulis[] = {Pauli::kX, Pauli::kY, Pauli::kZ};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

ComplexMatrix oracle_pauli(Pauli p) {
  return p == Pauli::kX ? oracle::X() : p == Pauli::kY ? oracle::Y() : oracle::Z();
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(Eigen::Index(r), Eigen::Index(c)) = m(r, c);
  return e;
}

TEST(Pauli, DiagramsAreExact) {
  for (Pauli p : kPaulis) EXPECT_LT(max_abs_diff(interpret(pauli_diagram(p)), oracle_pauli(p)), 1e-12) << pauli_name(p);
  EXPECT_EQ(parse_pauli("y"), Pauli::kY);
  EXPECT_EQ(code_of([] { parse_pauli("W"); }), ErrorCode::kUnsupportedSymmetry);
}

TEST(Pauli, ControlledPauli) {
  for (Pauli p : kPaulis) {
    ComplexMatrix want = oracle::okron(oracle::I2(), ComplexMatrix{{1, 0}, {0, 0}}) +
                         oracle::okron(oracle_pauli(p), ComplexMatrix{{0, 0}, {0, 1}});
    EXPECT_LT(max_abs_diff(interpret(controlled_pauli(p)), want), 1e-12) << pauli_name(p);
  }
}

TEST(Depolarizing, MatchesKrausForm) {
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    NoiseChannel ch = depolarizing(p);
    EXPECT_EQ(ch.formal_sum.size(), 4u);
    EXPECT_EQ(ch.labels.size(), 4u);
    Superoperator s = evaluate_cpm(ch.formal_sum);
    ComplexMatrix rho{{0.65, Complex(0.1, -0.3)}, {Complex(0.1, 0.3), 0.35}};
    EXPECT_LT(max_abs_diff(apply_superop(s, rho), oracle::depolarize(rho, p)), 1e-12) << p;
  }
  ComplexMatrix mixed = apply_superop(evaluate_cpm(depolarizing(0.75).formal_sum), oracle::density(oracle::ket(2, 0)));
  EXPECT_LT(max_abs_diff(mixed, oracle::I2() * Complex(0.5, 0.0)), 1e-12);
}

TEST(Depolarizing, ParameterRange) {
  EXPECT_EQ(code_of([] { depolarizing(-0.01); }), ErrorCode::kParamOutOfRange);
  EXPECT_EQ(code_of([] { depolarizing(1.5); }), ErrorCode::kParamOutOfRange);
  EXPECT_EQ(code_of([] { pauli_channel(2.0, Pauli::kX); }), ErrorCode::kParamOutOfRange);
}

TEST(Depolarizing, CompletelyPositiveTracePreserving) {
  for (double p : {0.0, 0.2, 0.6, 1.0}) {
    ComplexMatrix c = choi_matrix(evaluate_cpm(depolarizing(p).formal_sum));
    Eigen::MatrixXcd e = to_eigen(c);
    EXPECT_LT((e - e.adjoint()).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
    EXPECT_GT(solver.eigenvalues().minCoeff(), -1e-12);
    // Tracing out the output factor leaves the identity.
    Eigen::Matrix2cd reduced = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) reduced(i, j) += e(2 * i + k, 2 * j + k);
    EXPECT_LT((reduced - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
  }
}

TEST(Verification, PrepIsFixedBySymmetry) {
  for (Pauli p : kPaulis) {
    ComplexMatrix psi = interpret(default_prep(p));
    ComplexMatrix sp = oracle_pauli(p) * psi;
    EXPECT_LT(max_abs_diff(sp, psi), 1e-12) << pauli_name(p);
  }
}

TEST(Verification, CircuitIsProjectorTrace) {
  for (Pauli p : kPaulis) {
    Superoperator v = interpret_cpm(verification_circuit(p));
    ComplexMatrix rho{{0.3, Complex(0.2, 0.1)}, {Complex(0.2, -0.1), 0.7}};
    ComplexMatrix proj = (oracle::I2() + oracle_pauli(p)) * Complex(0.5, 0.0);
    Complex want = (proj * rho).trace();
    EXPECT_LT(std::abs(apply_superop(v, rho)(0, 0) - want), 1e-12) << pauli_name(p);
  }
}

TEST(SymmetryVerification, KnownAcceptance) {
  for (Pauli s : kPaulis) {
    auto acc = [&](double p) { return acceptance_probability(build_sv_instance(s, default_prep(s), depolarizing(p))); };
    EXPECT_NEAR(acc(0.0), 1.0, 1e-12);
    EXPECT_NEAR(acc(0.3), 0.8, 1e-12);
    EXPECT_NEAR(acc(0.75), 0.5, 1e-12);
    double last = 1.0 + 1e-12;
    for (int i = 0; i <= 20; ++i) {
      double a = acc(i / 20.0);
      EXPECT_LE(a, last + 1e-12);
      last = a;
    }
  }
}

TEST(SymmetryVerification, BranchContributions) {
  NoiseChannel ch = depolarizing(0.3);
  EnrichedZX inst = build_sv_instance(Pauli::kZ, default_prep(Pauli::kZ), ch);
  auto rows = branch_acceptance(inst, ch.labels);
  ASSERT_EQ(rows.size(), 4u);
  double total = 0.0;
  for (const auto& r : rows) {
    EXPECT_NEAR(r.contribution, r.weight * r.acceptance, 1e-15);
    total += r.contribution;
  }
  EXPECT_NEAR(total, acceptance_probability(inst), 1e-12);
  // Under a Z symmetry only X and Y errors are caught.
  for (const auto& r : rows) {
    double want = (r.label == "I" || r.label == "Z") ? 1.0 : 0.0;
    EXPECT_NEAR(r.acceptance, want, 1e-12) << r.label;
  }
}

TEST(SymmetryVerification, CommutingErrorIsInvisible) {
  for (Pauli s : kPaulis)
    for (Pauli e : kPaulis)
      for (double p : {0.1, 0.5, 0.9}) {
        double a = acceptance_probability(build_sv_instance(s, default_prep(s), pauli_channel(p, e)));
        EXPECT_NEAR(a, s == e ? 1.0 : 1.0 - p, 1e-12) << pauli_name(s) << pauli_name(e) << p;
      }
}

TEST(SymmetryVerification, Errors) {
  EXPECT_EQ(code_of([] { build_sv_instance(Pauli::kZ, z_spider(0, 1), depolarizing(0.1)); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([] { build_sv_instance(Pauli::kZ, z_spider(1, 1), depolarizing(0.1)); }),
            ErrorCode::kArityMismatch);
  EXPECT_EQ(code_of([] { acceptance_probability(depolarizing(0.1).formal_sum); }), ErrorCode::kNotScalar);
}

TEST(SymmetryVerification, SweepMatchesClosedForm) {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  for (Pauli s : kPaulis) {
    auto rows = sv_sweep(grid, s);
    ASSERT_EQ(rows.size(), grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].p, grid[i]);
      EXPECT_NEAR(rows[i].acceptance_closed_form, 1.0 - 2.0 * grid[i] / 3.0, 1e-15);
      EXPECT_LT(rows[i].abs_error, 1e-12);
    }
  }
  std::string csv = sweep_csv(sv_sweep({0.3}, Pauli::kZ));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,acceptance_numeric,acceptance_closed_form,abs_error");
}

TEST(SymmetryVerification, SimplifiedBranchesAgree) {
  EnrichedZX inst = build_sv_instance(Pauli::kZ, default_prep(Pauli::kZ), depolarizing(0.3));
  std::vector<Branch<Diagram>> simplified;
  for (const auto& b : inst.branches())
    simplified.push_back({b.weight, simplify(b.payload, Strategy::kExhaustive, 10000, {false}).result});
  EXPECT_NEAR(acceptance_probability(EnrichedZX(inst.monad(), simplified)), 0.8, 1e-12);
}

// ---- gate split ----

TEST(GateSplit, EvaluatesToRotation) {
  for (Pauli p : kPaulis)
    for (int k = 0; k < 16; ++k) {
      double a = k * std::numbers::pi / 8 - 0.3;
      auto m = std::get<ComplexMatrix>(evaluate(gate_split(a, p)));
      EXPECT_LT(max_abs_diff(m, oracle::exp_i(a, oracle_pauli(p))), 1e-12) << pauli_name(p) << k;
    }
}

TEST(GateSplit, SpecialAngles) {
  for (Pauli p : kPaulis) {
    EnrichedZX zero = canonicalize(gate_split(0.0, p), {});
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(iso_equal(zero.branches()[0].payload, identity()));
    EXPECT_LT(std::abs(zero.branches()[0].weight - Complex(1.0, 0.0)), 1e-15);

    EnrichedZX quarter = canonicalize(gate_split(std::numbers::pi / 2, p), {});
    ASSERT_EQ(quarter.size(), 1u);
    EXPECT_LT(std::abs(quarter.branches()[0].weight - oracle::kI), 1e-15);
    EXPECT_LT(max_abs_diff(interpret(quarter.branches()[0].payload), oracle_pauli(p)), 1e-12);
  }
  EnrichedZX third = gate_split(std::numbers::pi / 3, Pauli::kZ);
  auto m = std::get<ComplexMatrix>(evaluate(third));
  ComplexMatrix want{{std::polar(1.0, std::numbers::pi / 3), 0}, {0, std::polar(1.0, -std::numbers::pi / 3)}};
  EXPECT_LT(max_abs_diff(m, want), 1e-12);
}

}  // namespace
}  // namespace zxe
