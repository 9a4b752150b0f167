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
#include <map>
#include <utility>
#include <vector>

#include "zxe/phase.hpp"

namespace zxe {

using NodeId = int;

enum class NodeType { kZ, kX, kHadamard, kInput, kOutput, kDiscard };

/// The label carried by a diagram node. Phase is meaningful for spiders only;
/// pos is meaningful for boundaries only.
struct Node {
  NodeType type = NodeType::kZ;
  Phase phase;
  int pos = -1;

  bool is_spider() const noexcept { return type == NodeType::kZ || type == NodeType::kX; }
  bool is_boundary() const noexcept {
    return type == NodeType::kInput || type == NodeType::kOutput;
  }

  static Node z(Phase p = {}) { return {NodeType::kZ, p, -1}; }
  static Node x(Phase p = {}) { return {NodeType::kX, p, -1}; }
  static Node hadamard() { return {NodeType::kHadamard, {}, -1}; }
  static Node input(int pos) { return {NodeType::kInput, {}, pos}; }
  static Node output(int pos) { return {NodeType::kOutput, {}, pos}; }
  static Node discard() { return {NodeType::kDiscard, {}, -1}; }

  bool operator==(const Node& o) const {
    return type == o.type && pos == o.pos && (!is_spider() || phase == o.phase);
  }
};

/// Unordered edge, stored with first <= second.
using Edge = std::pair<NodeId, NodeId>;

/// An open graph of spiders, Hadamard boxes, discards and boundary nodes.
///
/// Only connectivity carries meaning: node ids are arbitrary labels and the
/// edge list is a multiset, so parallel edges and spider self-loops are
/// representable. Boundary nodes are ordered by their position field.
///
/// The free functions below (compose, tensor, dagger, ...) never modify
/// their arguments. The mutators are used by constructors and by the rewrite
/// engine on private copies.
class Diagram {
 public:
  Diagram() = default;

  std::size_t in_arity() const noexcept { return in_arity_; }
  std::size_t out_arity() const noexcept { return out_arity_; }
  const std::map<NodeId, Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
  const Node& node(NodeId id) const;

  /// Number of edge ends at `id`; a self-loop counts twice.
  std::size_t degree(NodeId id) const;
  /// Neighbours with multiplicity, ascending; a self-loop lists `id` twice.
  std::vector<NodeId> neighbors(NodeId id) const;
  std::size_t edges_between(NodeId a, NodeId b) const;
  std::size_t self_loops(NodeId id) const { return edges_between(id, id); }

  NodeId input(std::size_t pos) const;
  NodeId output(std::size_t pos) const;
  bool has_discard() const;
  NodeId next_id() const { return nodes_.empty() ? 0 : nodes_.rbegin()->first + 1; }

  // -- mutators -------------------------------------------------------------
  void set_arity(std::size_t in, std::size_t out) {
    in_arity_ = in;
    out_arity_ = out;
  }
  NodeId add_node(const Node& n);
  void add_node_with_id(NodeId id, const Node& n);
  /// Removes the node and every incident edge.
  void remove_node(NodeId id);
  void add_edge(NodeId a, NodeId b);
  /// Removes one instance of the edge; returns false if absent.
  bool remove_edge(NodeId a, NodeId b);
  Node& mutable_node(NodeId id);

  /// Removes a node with exactly two edge ends and joins its two neighbours.
  /// A node whose only edge is a self-loop becomes a free loop, i.e. the
  /// scalar 2, represented as a legless phase-0 Z spider.
  void splice_out(NodeId id);
  /// Adds a wire between a and b. When a == b the wire closes on itself:
  /// spiders take a self-loop, a Hadamard becomes its trace (the scalar 0).
  void join(NodeId a, NodeId b);

  /// Throws Error(kInvariantViolation) describing the first broken invariant.
  void validate() const;

 private:
  std::map<NodeId, Node> nodes_;
  std::vector<Edge> edges_;
  std::size_t in_arity_ = 0;
  std::size_t out_arity_ = 0;
};

/// Generators of the calculus.
struct GeneratorSpec {
  enum class Kind { kZSpider, kXSpider, kHadamard, kIdentity, kSwap, kCup, kCap, kEmpty, kDiscard };
  Kind kind = Kind::kEmpty;
  std::size_t n = 0;  // inputs (spiders only)
  std::size_t m = 0;  // outputs (spiders only)
  Phase phase;

  static GeneratorSpec z_spider(std::size_t n, std::size_t m, Phase a = {}) {
    return {Kind::kZSpider, n, m, a};
  }
  static GeneratorSpec x_spider(std::size_t n, std::size_t m, Phase a = {}) {
    return {Kind::kXSpider, n, m, a};
  }
  static GeneratorSpec of(Kind k) { return {k, 0, 0, {}}; }
};

Diagram generator(const GeneratorSpec& spec);

Diagram z_spider(std::size_t n, std::size_t m, Phase a = {});
Diagram x_spider(std::size_t n, std::size_t m, Phase a = {});
Diagram hadamard();
/// `wires` parallel identity wires (the generator is wires == 1).
Diagram identity(std::size_t wires = 1);
Diagram swap();
Diagram cup();
Diagram cap();
Diagram empty();
Diagram discard();

/// g after f. Throws kArityMismatch unless f.out_arity == g.in_arity.
Diagram compose(const Diagram& f, const Diagram& g);
/// f beside g; g's boundary positions are shifted past f's.
Diagram tensor(const Diagram& f, const Diagram& g);
/// Swaps inputs and outputs and negates every phase. Throws kNotDaggerable
/// for diagrams containing a discard.
Diagram dagger(const Diagram& f);

/// (0,0) diagram whose standard interpretation is (sqrt 2)^sqrt2_power * e^{i phase}.
Diagram scalar_diagram(int sqrt2_power, Phase phase = {});
/// d tensored with scalar_diagram(sqrt2_power, phase).
Diagram with_scalar(const Diagram& d, int sqrt2_power, Phase phase = {});

}  // namespace zxe
