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

#include "oracles.hpp"
#include "random_diagrams.hpp"
#include "zxe/enrichment.hpp"
#include "zxe/iso.hpp"
#include "zxe/json_io.hpp"

namespace zxe {
namespace {

using testing::Rng;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

Superoperator cpm_of(const EnrichedZX& s) { return std::get<Superoperator>(evaluate(s)); }

EnrichedZX mix(double p, const Diagram& a, const Diagram& b) {
  return EnrichedZX(Monad::kDistribution, {{p, a}, {1.0 - p, b}});
}

// ---- construction ----

TEST(FormalSum, DistributionWeightsValidated) {
  Diagram d = identity();
  EXPECT_EQ(code_of([&] { EnrichedZX(Monad::kDistribution, {{0.5, d}, {0.4, d}}); }), ErrorCode::kInvalidWeights);
  EXPECT_EQ(code_of([&] { EnrichedZX(Monad::kDistribution, {{1.5, d}, {-0.5, d}}); }), ErrorCode::kInvalidWeights);
  EXPECT_EQ(code_of([&] { EnrichedZX(Monad::kDistribution, {{Weight(0.5, 0.5), d}, {0.5, d}}); }),
            ErrorCode::kInvalidWeights);
  EXPECT_NO_THROW(EnrichedZX(Monad::kDistribution, {{0.5, d}, {0.5 + 1e-12, d}}));
  EXPECT_NO_THROW(EnrichedZX(Monad::kMultiset, {{Weight(3.0, -2.0), d}}));
}

TEST(FormalSum, ArityMismatch) {
  EXPECT_EQ(code_of([] { EnrichedZX(Monad::kMultiset, {{1.0, identity()}, {1.0, identity(2)}}); }),
            ErrorCode::kArityMismatch);
  EXPECT_EQ(code_of([] { seq_compose(dirac(identity()), dirac(identity(2))); }), ErrorCode::kArityMismatch);
}

TEST(FormalSum, MonadMismatch) {
  EXPECT_EQ(code_of([] { nabla(dirac(identity()), dirac(identity(), Monad::kMultiset)); }),
            ErrorCode::kMonadMismatch);
  FormalSum<EnrichedZX> nested(Monad::kDistribution, {{1.0, dirac(identity(), Monad::kMultiset)}});
  EXPECT_EQ(code_of([&] { flatten(nested); }), ErrorCode::kMonadMismatch);
}

// ---- monad structure ----

TEST(Monad, DiracIsUnit) {
  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    EnrichedZX s = testing::random_sum(rng, 1);
    // mu . eta = id
    FormalSum<EnrichedZX> outer = dirac(s);
    EXPECT_TRUE(same_terms(canonicalize(flatten(outer)), canonicalize(s)));
    // mu . D(eta) = id
    auto inner = map_sum(s, [](const Diagram& d) { return dirac(d); });
    EXPECT_TRUE(same_terms(canonicalize(flatten(inner)), canonicalize(s)));
  }
}

TEST(Monad, FlattenAssociative) {
  Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    auto level2 = [&] {
      std::vector<Branch<EnrichedZX>> b;
      double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      b.push_back({p, testing::random_sum(rng, 1, 3)});
      b.push_back({1.0 - p, testing::random_sum(rng, 1, 3)});
      return FormalSum<EnrichedZX>(Monad::kDistribution, std::move(b));
    };
    FormalSum<FormalSum<EnrichedZX>> sss(Monad::kDistribution, {{0.3, level2()}, {0.7, level2()}});
    EnrichedZX left = flatten(flatten(sss));
    EnrichedZX right = flatten(map_sum(sss, [](const FormalSum<EnrichedZX>& x) { return flatten(x); }));
    EXPECT_LT(max_abs_diff(cpm_of(left).mat, cpm_of(right).mat), 1e-12);
    EXPECT_EQ(canonicalize(left).size(), canonicalize(right).size());
  }
}

TEST(Monad, FlattenMultipliesWeights) {
  Diagram a = z_spider(1, 1, Phase::rational(1, 2)), b = hadamard();
  FormalSum<EnrichedZX> ss(Monad::kDistribution, {{0.5, mix(0.2, a, b)}, {0.5, dirac(b)}});
  EnrichedZX f = canonicalize(flatten(ss));
  ASSERT_EQ(f.size(), 2u);
  double wa = 0, wb = 0;
  for (const auto& br : f.branches()) (iso_equal(br.payload, a) ? wa : wb) = br.weight.real();
  EXPECT_NEAR(wa, 0.1, 1e-15);
  EXPECT_NEAR(wb, 0.9, 1e-15);
}

TEST(Monad, NablaPairsWeights) {
  auto ab = nabla(mix(0.25, identity(), hadamard()), mix(0.5, swap(), identity(2)));
  ASSERT_EQ(ab.size(), 4u);
  EXPECT_NEAR(ab.branches()[0].weight.real(), 0.125, 1e-15);
  EXPECT_NEAR(ab.branches()[3].weight.real(), 0.375, 1e-15);
  EXPECT_EQ(ab.in_arity(), 3u);
}

TEST(Monad, AffineSinglePayloadIsDirac) {
  Rng rng(53);
  Diagram d = testing::random_circuit(rng, 2);
  EnrichedZX s(Monad::kDistribution,
               {{0.2, d}, {0.3, testing::relabel_randomly(d, rng)}, {0.5, testing::relabel_randomly(d, rng)}});
  EnrichedZX c = canonicalize(s);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c.branches()[0].weight.real(), 1.0, 1e-15);
  EXPECT_TRUE(same_terms(c, canonicalize(dirac(d))));
}

// ---- composition and evaluation ----

TEST(Enriched, SequentialMatchesSuperopComposition) {
  Rng rng(54);
  for (int t = 0; t < 30; ++t) {
    EnrichedZX a = testing::random_sum(rng, 2), b = testing::random_sum(rng, 2);
    EXPECT_LT(max_abs_diff(cpm_of(seq_compose(a, b)).mat, superop_compose(cpm_of(a), cpm_of(b)).mat), 1e-10);
    EXPECT_LT(max_abs_diff(cpm_of(par_tensor(a, b)).mat, superop_tensor(cpm_of(a), cpm_of(b)).mat), 1e-10);
  }
}

TEST(Enriched, InterchangeWithConvexSum) {
  // (G1 +_0.9 E) (x) G2 evaluates to 0.9 [G1 (x) G2] + 0.1 [E (x) G2].
  Rng rng(55);
  for (int t = 0; t < 50; ++t) {
    Diagram g1 = testing::random_one_qubit(rng), e = testing::random_one_qubit(rng), g2 = testing::random_one_qubit(rng);
    ComplexMatrix m1 = oracle::okron(interpret(g1), interpret(g2));
    ComplexMatrix me = oracle::okron(interpret(e), interpret(g2));
    ComplexMatrix want = 0.9 * oracle::okron(m1.conj(), m1) + 0.1 * oracle::okron(me.conj(), me);
    EXPECT_LT(max_abs_diff(cpm_of(par_tensor(mix(0.9, g1, e), dirac(g2))).mat, want), 1e-12);
  }
}

TEST(Enriched, BiConvexity) {
  // Sequential and parallel composition are affine in each argument separately.
  Rng rng(56);
  for (int t = 0; t < 40; ++t) {
    double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Diagram a = testing::random_circuit(rng, 1, 2), a2 = testing::random_circuit(rng, 1, 2);
    Diagram b = testing::random_circuit(rng, 1, 2), b2 = testing::random_circuit(rng, 1, 2);
    Superoperator pa = interpret_cpm(a), pa2 = interpret_cpm(a2), pb = interpret_cpm(b), pb2 = interpret_cpm(b2);
    auto convex = [&](const Superoperator& x, const Superoperator& y) {
      return superop_add(superop_scale(x, p), superop_scale(y, 1.0 - p));
    };
    EXPECT_LT(max_abs_diff(cpm_of(seq_compose(mix(p, a, a2), dirac(b))).mat,
                           convex(superop_compose(pa, pb), superop_compose(pa2, pb)).mat),
              1e-12);
    EXPECT_LT(max_abs_diff(cpm_of(seq_compose(dirac(a), mix(p, b, b2))).mat,
                           convex(superop_compose(pa, pb), superop_compose(pa, pb2)).mat),
              1e-12);
    EXPECT_LT(max_abs_diff(cpm_of(par_tensor(mix(p, a, a2), dirac(b))).mat,
                           convex(superop_tensor(pa, pb), superop_tensor(pa2, pb)).mat),
              1e-12);
    EXPECT_LT(max_abs_diff(cpm_of(par_tensor(dirac(a), mix(p, b, b2))).mat,
                           convex(superop_tensor(pa, pb), superop_tensor(pa, pb2)).mat),
              1e-12);
  }
}

TEST(Enriched, MultisetEvaluatesLinearly) {
  Rng rng(57);
  for (int t = 0; t < 20; ++t) {
    EnrichedZX s = testing::random_sum(rng, 2, 4, Monad::kMultiset);
    ComplexMatrix want(4, 4);
    for (const auto& b : s.branches()) want += b.weight * interpret(b.payload);
    EXPECT_LT(max_abs_diff(std::get<ComplexMatrix>(evaluate(s)), want), 1e-12);
    EXPECT_LT(max_abs_diff(evaluate_cpm(s).mat, Superoperator::from_pure(want).mat), 1e-12);
  }
}

TEST(Enriched, EvaluateMatchesInterpretBranches) {
  Rng rng(58);
  EnrichedZX s = testing::random_sum(rng, 2);
  EXPECT_EQ(evaluate(interpret_branches(s)).mat, cpm_of(s).mat);
}

// ---- canonical form ----

TEST(Canonicalize, DropsZeroAndMergesIsoCopies) {
  Rng rng(59);
  Diagram d = z_spider(1, 1, Phase::rational(1, 4));
  EnrichedZX s(Monad::kMultiset, {{Weight(1.0, 1.0), d},
                                  {0.0, hadamard()},
                                  {Weight(2.0, -1.0), testing::relabel_randomly(d, rng)},
                                  {1e-13, identity()}});
  EnrichedZX c = canonicalize(s);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.branches()[0].weight, Weight(3.0, 0.0));
}

TEST(Canonicalize, CancellingWeightsDisappear) {
  EnrichedZX s(Monad::kMultiset, {{1.0, hadamard()}, {-1.0, hadamard()}, {0.5, identity()}});
  EnrichedZX c = canonicalize(s);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(iso_equal(c.branches()[0].payload, identity()));
}

TEST(Canonicalize, SemanticMergeIsOptIn) {
  EnrichedZX s(Monad::kDistribution, {{0.5, z_spider(1, 1)}, {0.5, x_spider(1, 1)}});
  EXPECT_EQ(canonicalize(s, CanonicalizeOptions{}).size(), 2u);
  EnrichedZX merged = canonicalize(s, CanonicalizeOptions{true, 1e-12});
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_NEAR(merged.branches()[0].weight.real(), 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(cpm_of(merged).mat, cpm_of(s).mat), 1e-12);
}

TEST(Canonicalize, PropertyIdempotentAndPermutationInvariant) {
  Rng rng(60);
  for (int t = 0; t < 200; ++t) {
    Monad m = t % 2 ? Monad::kMultiset : Monad::kDistribution;
    EnrichedZX s = testing::random_sum_with_repeats(rng, 1 + t % 3, 4, m);
    EnrichedZX c = canonicalize(s);
    EXPECT_EQ(sum_to_json(canonicalize(c)), sum_to_json(c));
    auto b = s.branches();
    std::shuffle(b.begin(), b.end(), rng);
    for (auto& x : b) x.payload = testing::relabel_randomly(x.payload, rng);
    EXPECT_EQ(sum_to_json(canonicalize(EnrichedZX(m, b))), sum_to_json(c));
  }
}

TEST(Canonicalize, PreservesEvaluation) {
  Rng rng(61);
  for (int t = 0; t < 40; ++t) {
    EnrichedZX s = testing::random_sum_with_repeats(rng, 2, 4, Monad::kDistribution);
    EXPECT_LT(max_abs_diff(cpm_of(canonicalize(s)).mat, cpm_of(s).mat), 1e-12);
  }
}

}  // namespace
}  // namespace zxe
