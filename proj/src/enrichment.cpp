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

#include "zxe/enrichment.hpp"

#include <bit>
#include <cstdio>
#include <cstring>

#include "zxe/iso.hpp"

namespace zxe {

Diagram PayloadTraits<Diagram>::normalize(const Diagram& d) { return canonical_relabel(d); }

std::string PayloadTraits<Diagram>::key(const Diagram& d) {
  char head[48];
  std::snprintf(head, sizeof head, "%08zu.%08zu.", d.node_count(), d.edge_count());
  return head + canonical_form(d).key;
}

std::pair<std::size_t, std::size_t> PayloadTraits<Superoperator>::arity(const Superoperator& s) {
  return {std::size_t(std::countr_zero(s.dim_in)), std::size_t(std::countr_zero(s.dim_out))};
}

std::string PayloadTraits<Superoperator>::key(const Superoperator& s) {
  const auto& e = s.mat.entries();
  std::string k(e.size() * sizeof(Complex), '\0');
  std::memcpy(k.data(), e.data(), k.size());
  return k;
}

EnrichedZX seq_compose(const EnrichedZX& a, const EnrichedZX& b) {
  if (a.out_arity() != b.in_arity())
    throw Error(ErrorCode::kArityMismatch, "sequential composition of sums with mismatched arity");
  auto pairs = nabla(a, b);
  return map_sum(pairs, [](const std::pair<Diagram, Diagram>& p) { return compose(p.first, p.second); });
}

EnrichedZX par_tensor(const EnrichedZX& a, const EnrichedZX& b) {
  auto pairs = nabla(a, b);
  return map_sum(pairs, [](const std::pair<Diagram, Diagram>& p) { return tensor(p.first, p.second); });
}

EnrichedZX canonicalize(const EnrichedZX& s, const CanonicalizeOptions& opts) {
  EnrichedZX c = canonicalize(s);
  if (!opts.semantic_merge) return c;
  std::vector<Branch<Diagram>> out;
  std::vector<Superoperator> seen;
  for (const auto& b : c.branches()) {
    Superoperator phi = interpret_cpm(b.payload);
    bool merged = false;
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (max_abs_diff(seen[i].mat, phi.mat) <= opts.tol) {
        out[i].weight += b.weight;
        merged = true;
        break;
      }
    if (!merged) {
      out.push_back(b);
      seen.push_back(std::move(phi));
    }
  }
  return EnrichedZX(c.monad(), std::move(out), c.arity());
}

FormalSum<Superoperator> interpret_branches(const EnrichedZX& s) {
  std::vector<Branch<Superoperator>> out;
  for (const auto& b : s.branches()) out.push_back({b.weight, interpret_cpm(b.payload)});
  return FormalSum<Superoperator>(s.monad(), std::move(out),
                                  std::make_pair(s.in_arity(), s.out_arity()));
}

Superoperator evaluate(const FormalSum<Superoperator>& s) {
  std::size_t din = std::size_t{1} << s.in_arity(), dout = std::size_t{1} << s.out_arity();
  Superoperator acc{din, dout, ComplexMatrix(dout * dout, din * din)};
  for (const auto& b : s.branches()) acc.mat += b.payload.mat * b.weight;
  return acc;
}

Evaluation evaluate(const EnrichedZX& s) {
  if (s.monad() == Monad::kDistribution) return evaluate(interpret_branches(s));
  std::size_t din = std::size_t{1} << s.in_arity(), dout = std::size_t{1} << s.out_arity();
  ComplexMatrix acc(dout, din);
  for (const auto& b : s.branches()) acc += interpret(b.payload) * b.weight;
  return acc;
}

Superoperator evaluate_cpm(const EnrichedZX& s) {
  Evaluation e = evaluate(s);
  if (auto* so = std::get_if<Superoperator>(&e)) return *so;
  return Superoperator::from_pure(std::get<ComplexMatrix>(e));
}

}  // namespace zxe
