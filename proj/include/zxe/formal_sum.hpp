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

#include <algorithm>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zxe/error.hpp"

namespace zxe {

/// Distribution: convex sums with real weights in [0,1] summing to 1.
/// Multiset: linear combinations with complex coefficients.
enum class Monad { kDistribution, kMultiset };

inline const char* monad_name(Monad m) {
  return m == Monad::kDistribution ? "distribution" : "multiset";
}

using Weight = std::complex<double>;

inline constexpr double kZeroWeight = 1e-12;     // (e0) threshold
inline constexpr double kNormalization = 1e-9;   // sum of probabilities

template <class T>
struct Branch {
  Weight weight;
  T payload;
};

/// What a FormalSum needs from its payload type. Specialised per payload.
///   arity(x)      -> (in, out), shared by all branches of a sum
///   normalize(x)  -> representative used by canonical forms
///   key(x)        -> deterministic sort key of a normalized payload; equal
///                    keys mean the payloads are interchangeable
template <class T>
struct PayloadTraits;

/// A formal weighted sum of payloads. Weights never move between branches:
/// the only weight arithmetic is multiplication (flatten, nabla) and adding
/// weights of interchangeable payloads (canonicalize).
template <class T>
class FormalSum {
 public:
  using Arity = std::pair<std::size_t, std::size_t>;

  FormalSum(Monad monad, std::vector<Branch<T>> branches,
            std::optional<Arity> arity = std::nullopt)
      : monad_(monad), branches_(std::move(branches)) {
    if (!branches_.empty())
      arity_ = PayloadTraits<T>::arity(branches_.front().payload);
    else if (arity)
      arity_ = *arity;
    validate();
  }

  Monad monad() const noexcept { return monad_; }
  const std::vector<Branch<T>>& branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }
  std::size_t in_arity() const noexcept { return arity_.first; }
  std::size_t out_arity() const noexcept { return arity_.second; }
  Arity arity() const noexcept { return arity_; }

  Weight total_weight() const {
    Weight t = 0.0;
    for (const auto& b : branches_) t += b.weight;
    return t;
  }

 private:
  void validate() const {
    for (const auto& b : branches_)
      if (PayloadTraits<T>::arity(b.payload) != arity_)
        throw Error(ErrorCode::kArityMismatch, "branches of a formal sum have different arities");
    if (monad_ != Monad::kDistribution) return;
    for (const auto& b : branches_) {
      double p = b.weight.real();
      if (std::abs(b.weight.imag()) > kZeroWeight || p < -kZeroWeight || p > 1.0 + kZeroWeight)
        throw Error(ErrorCode::kInvalidWeights,
                    "distribution weight outside [0,1]: " + std::to_string(p));
    }
    double total = total_weight().real();
    if (std::abs(total - 1.0) > kNormalization)
      throw Error(ErrorCode::kInvalidWeights,
                  "distribution weights sum to " + std::to_string(total) + ", not 1");
  }

  Monad monad_;
  std::vector<Branch<T>> branches_;
  Arity arity_{0, 0};
};

/// The unit: 1[x].
template <class T>
FormalSum<T> dirac(T payload, Monad monad = Monad::kDistribution) {
  return FormalSum<T>(monad, {Branch<T>{Weight(1.0, 0.0), std::move(payload)}});
}

/// Applies f to every payload, keeping weights and branch order.
template <class T, class F>
auto map_sum(const FormalSum<T>& s, F&& f) {
  using U = std::decay_t<decltype(f(s.branches().front().payload))>;
  std::vector<Branch<U>> out;
  out.reserve(s.size());
  for (const auto& b : s.branches()) out.push_back({b.weight, f(b.payload)});
  return FormalSum<U>(s.monad(), std::move(out));
}

/// Interchangeable-payload grouping: branches whose normalized payloads have
/// equal keys are combined, summing weights, first occurrence keeps its place.
template <class T>
std::vector<Branch<T>> combine_like_terms(const std::vector<Branch<T>>& in) {
  std::vector<Branch<T>> out;
  std::vector<std::string> keys;
  for (const auto& b : in) {
    std::string k = PayloadTraits<T>::key(PayloadTraits<T>::normalize(b.payload));
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) {
      keys.push_back(std::move(k));
      out.push_back(b);
    } else {
      out[std::size_t(it - keys.begin())].weight += b.weight;
    }
  }
  return out;
}

/// The multiplication: r_a = sum_q p_q q_a. Throws kMonadMismatch when an
/// inner sum uses a different monad from the outer one.
template <class T>
FormalSum<T> flatten(const FormalSum<FormalSum<T>>& ss) {
  std::vector<Branch<T>> flat;
  std::optional<typename FormalSum<T>::Arity> arity;
  for (const auto& outer : ss.branches()) {
    if (outer.payload.monad() != ss.monad())
      throw Error(ErrorCode::kMonadMismatch, "inner and outer sums use different monads");
    arity = outer.payload.arity();
    for (const auto& inner : outer.payload.branches())
      flat.push_back({outer.weight * inner.weight, inner.payload});
  }
  return FormalSum<T>(ss.monad(), combine_like_terms(flat), arity);
}

/// sum_{a,b} p_a q_b [(a, b)].
template <class A, class B>
FormalSum<std::pair<A, B>> nabla(const FormalSum<A>& a, const FormalSum<B>& b) {
  if (a.monad() != b.monad())
    throw Error(ErrorCode::kMonadMismatch, "cannot pair sums over different monads");
  std::vector<Branch<std::pair<A, B>>> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.branches())
    for (const auto& y : b.branches())
      out.push_back({x.weight * y.weight, {x.payload, y.payload}});
  return FormalSum<std::pair<A, B>>(a.monad(), std::move(out));
}

/// Canonical form: zero-weight branches dropped, interchangeable payloads
/// merged, branches sorted by payload key. Weights inside a merged group are
/// summed in sorted order so the result does not depend on branch order.
template <class T>
FormalSum<T> canonicalize(const FormalSum<T>& s) {
  struct Entry {
    std::string key;
    T payload;
    std::vector<Weight> weights;
  };
  std::vector<Entry> groups;
  for (const auto& b : s.branches()) {
    if (std::abs(b.weight) <= kZeroWeight) continue;
    T norm = PayloadTraits<T>::normalize(b.payload);
    std::string k = PayloadTraits<T>::key(norm);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Entry& e) { return e.key == k; });
    if (it == groups.end())
      groups.push_back({std::move(k), std::move(norm), {b.weight}});
    else
      it->weights.push_back(b.weight);
  }
  std::sort(groups.begin(), groups.end(),
            [](const Entry& x, const Entry& y) { return x.key < y.key; });
  std::vector<Branch<T>> out;
  for (auto& g : groups) {
    std::sort(g.weights.begin(), g.weights.end(), [](const Weight& x, const Weight& y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    Weight w = 0.0;
    for (const auto& x : g.weights) w += x;
    if (std::abs(w) <= kZeroWeight) continue;
    out.push_back({w, std::move(g.payload)});
  }
  return FormalSum<T>(s.monad(), std::move(out), s.arity());
}

/// Exact structural equality: same monad, same weights, same payload keys,
/// branch for branch.
template <class T>
bool same_terms(const FormalSum<T>& a, const FormalSum<T>& b) {
  if (a.monad() != b.monad() || a.size() != b.size() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.branches()[i];
    const auto& y = b.branches()[i];
    if (x.weight != y.weight) return false;
    if (PayloadTraits<T>::key(PayloadTraits<T>::normalize(x.payload)) !=
        PayloadTraits<T>::key(PayloadTraits<T>::normalize(y.payload)))
      return false;
  }
  return true;
}

template <class A, class B>
struct PayloadTraits<std::pair<A, B>> {
  static std::pair<std::size_t, std::size_t> arity(const std::pair<A, B>& p) {
    auto a = PayloadTraits<A>::arity(p.first);
    auto b = PayloadTraits<B>::arity(p.second);
    return {a.first + b.first, a.second + b.second};
  }
  static std::pair<A, B> normalize(const std::pair<A, B>& p) {
    return {PayloadTraits<A>::normalize(p.first), PayloadTraits<B>::normalize(p.second)};
  }
  static std::string key(const std::pair<A, B>& p) {
    return PayloadTraits<A>::key(p.first) + '\x1f' + PayloadTraits<B>::key(p.second);
  }
};

template <class T>
struct PayloadTraits<FormalSum<T>> {
  static std::pair<std::size_t, std::size_t> arity(const FormalSum<T>& s) { return s.arity(); }
  static FormalSum<T> normalize(const FormalSum<T>& s) { return canonicalize(s); }
  static std::string key(const FormalSum<T>& s) {
    std::string k = monad_name(s.monad());
    char buf[64];
    for (const auto& b : s.branches()) {
      std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", b.weight.real(), b.weight.imag());
      k += buf;
      k += PayloadTraits<T>::key(b.payload);
      k += '\x1e';
    }
    return k;
  }
};

}  // namespace zxe
