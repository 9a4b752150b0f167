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

#include "zxe/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "zxe/error.hpp"

namespace zxe {

namespace {

Edge normalized(NodeId a, NodeId b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

[[noreturn]] void invariant(const std::string& msg) {
  throw Error(ErrorCode::kInvariantViolation, msg);
}

}  // namespace

const Node& Diagram::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) invariant("no node with id " + std::to_string(id));
  return it->second;
}

Node& Diagram::mutable_node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) invariant("no node with id " + std::to_string(id));
  return it->second;
}

std::size_t Diagram::degree(NodeId id) const {
  std::size_t d = 0;
  for (const auto& [a, b] : edges_) {
    if (a == id) ++d;
    if (b == id) ++d;
  }
  return d;
}

std::vector<NodeId> Diagram::neighbors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& [a, b] : edges_) {
    if (a == id) out.push_back(b);
    if (b == id) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Diagram::edges_between(NodeId a, NodeId b) const {
  Edge e = normalized(a, b);
  return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), e));
}

NodeId Diagram::input(std::size_t pos) const {
  for (const auto& [id, n] : nodes_)
    if (n.type == NodeType::kInput && n.pos == static_cast<int>(pos)) return id;
  invariant("missing input " + std::to_string(pos));
}

NodeId Diagram::output(std::size_t pos) const {
  for (const auto& [id, n] : nodes_)
    if (n.type == NodeType::kOutput && n.pos == static_cast<int>(pos)) return id;
  invariant("missing output " + std::to_string(pos));
}

bool Diagram::has_discard() const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [](const auto& kv) { return kv.second.type == NodeType::kDiscard; });
}

NodeId Diagram::add_node(const Node& n) {
  NodeId id = next_id();
  nodes_.emplace(id, n);
  return id;
}

void Diagram::add_node_with_id(NodeId id, const Node& n) {
  if (!nodes_.emplace(id, n).second) invariant("duplicate node id " + std::to_string(id));
}

void Diagram::remove_node(NodeId id) {
  nodes_.erase(id);
  std::erase_if(edges_, [id](const Edge& e) { return e.first == id || e.second == id; });
}

void Diagram::add_edge(NodeId a, NodeId b) {
  Edge e = normalized(a, b);
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
}

bool Diagram::remove_edge(NodeId a, NodeId b) {
  Edge e = normalized(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return false;
  edges_.erase(it);
  return true;
}

void Diagram::splice_out(NodeId id) {
  std::vector<NodeId> nb = neighbors(id);
  if (nb.size() != 2) invariant("splice_out needs a degree-2 node");
  remove_node(id);
  if (nb[0] == id && nb[1] == id) {
    add_node(Node::z());
    return;
  }
  join(nb[0], nb[1]);
}

void Diagram::join(NodeId a, NodeId b) {
  if (a != b) {
    add_edge(a, b);
    return;
  }
  Node& n = mutable_node(a);
  switch (n.type) {
    case NodeType::kZ:
    case NodeType::kX:
      add_edge(a, a);
      return;
    case NodeType::kHadamard:
      // tr(H) = 0; a legless Z(pi) spider interprets to 1 + e^{i pi} = 0.
      n = Node::z(Phase::pi());
      return;
    default:
      // Degree-1 nodes can't close a loop; a pending glue boundary can.
      add_edge(a, a);
      return;
  }
}

void Diagram::validate() const {
  std::vector<int> in_seen(in_arity_, 0), out_seen(out_arity_, 0);
  for (const auto& [a, b] : edges_) {
    if (!has_node(a) || !has_node(b))
      invariant("edge (" + std::to_string(a) + "," + std::to_string(b) +
                ") references a missing node");
  }
  for (const auto& [id, n] : nodes_) {
    std::size_t deg = degree(id);
    std::size_t loops = self_loops(id);
    const std::string where = "node " + std::to_string(id);
    switch (n.type) {
      case NodeType::kZ:
      case NodeType::kX:
        break;
      case NodeType::kHadamard:
        if (deg != 2 || loops != 0) invariant(where + ": Hadamard must have degree 2");
        break;
      case NodeType::kDiscard:
        if (deg != 1 || loops != 0) invariant(where + ": discard must have degree 1");
        break;
      case NodeType::kInput:
      case NodeType::kOutput: {
        if (deg != 1 || loops != 0) invariant(where + ": boundary must have degree 1");
        bool in = n.type == NodeType::kInput;
        auto& seen = in ? in_seen : out_seen;
        if (n.pos < 0 || static_cast<std::size_t>(n.pos) >= seen.size())
          invariant(where + ": boundary position " + std::to_string(n.pos) + " out of range");
        if (seen[n.pos]++) invariant(where + ": duplicate boundary position " + std::to_string(n.pos));
        break;
      }
    }
  }
  for (std::size_t i = 0; i < in_seen.size(); ++i)
    if (!in_seen[i]) invariant("missing input " + std::to_string(i));
  for (std::size_t i = 0; i < out_seen.size(); ++i)
    if (!out_seen[i]) invariant("missing output " + std::to_string(i));
}

// -- generators ---------------------------------------------------------------

Diagram generator(const GeneratorSpec& spec) {
  using K = GeneratorSpec::Kind;
  Diagram d;
  switch (spec.kind) {
    case K::kZSpider:
    case K::kXSpider: {
      d.set_arity(spec.n, spec.m);
      NodeId s = d.add_node(spec.kind == K::kZSpider ? Node::z(spec.phase) : Node::x(spec.phase));
      for (std::size_t i = 0; i < spec.n; ++i) d.add_edge(d.add_node(Node::input(int(i))), s);
      for (std::size_t j = 0; j < spec.m; ++j) d.add_edge(s, d.add_node(Node::output(int(j))));
      break;
    }
    case K::kHadamard: {
      d.set_arity(1, 1);
      NodeId in = d.add_node(Node::input(0));
      NodeId h = d.add_node(Node::hadamard());
      NodeId out = d.add_node(Node::output(0));
      d.add_edge(in, h);
      d.add_edge(h, out);
      break;
    }
    case K::kIdentity: {
      d.set_arity(1, 1);
      NodeId in = d.add_node(Node::input(0));
      d.add_edge(in, d.add_node(Node::output(0)));
      break;
    }
    case K::kSwap: {
      d.set_arity(2, 2);
      NodeId i0 = d.add_node(Node::input(0));
      NodeId i1 = d.add_node(Node::input(1));
      NodeId o0 = d.add_node(Node::output(0));
      NodeId o1 = d.add_node(Node::output(1));
      d.add_edge(i0, o1);
      d.add_edge(i1, o0);
      break;
    }
    case K::kCup: {
      d.set_arity(0, 2);
      NodeId o0 = d.add_node(Node::output(0));
      d.add_edge(o0, d.add_node(Node::output(1)));
      break;
    }
    case K::kCap: {
      d.set_arity(2, 0);
      NodeId i0 = d.add_node(Node::input(0));
      d.add_edge(i0, d.add_node(Node::input(1)));
      break;
    }
    case K::kEmpty:
      break;
    case K::kDiscard: {
      d.set_arity(1, 0);
      NodeId in = d.add_node(Node::input(0));
      d.add_edge(in, d.add_node(Node::discard()));
      break;
    }
  }
  return d;
}

Diagram z_spider(std::size_t n, std::size_t m, Phase a) {
  return generator(GeneratorSpec::z_spider(n, m, a));
}
Diagram x_spider(std::size_t n, std::size_t m, Phase a) {
  return generator(GeneratorSpec::x_spider(n, m, a));
}
Diagram hadamard() { return generator(GeneratorSpec::of(GeneratorSpec::Kind::kHadamard)); }
Diagram swap() { return generator(GeneratorSpec::of(GeneratorSpec::Kind::kSwap)); }
Diagram cup() { return generator(GeneratorSpec::of(GeneratorSpec::Kind::kCup)); }
Diagram cap() { return generator(GeneratorSpec::of(GeneratorSpec::Kind::kCap)); }
Diagram empty() { return Diagram(); }
Diagram discard() { return generator(GeneratorSpec::of(GeneratorSpec::Kind::kDiscard)); }

Diagram identity(std::size_t wires) {
  Diagram d;
  for (std::size_t i = 0; i < wires; ++i)
    d = tensor(d, generator(GeneratorSpec::of(GeneratorSpec::Kind::kIdentity)));
  return d;
}

// -- composition --------------------------------------------------------------

namespace {

// Copies g's nodes into `into` with fresh ids; returns the id map.
std::map<NodeId, NodeId> append_nodes(Diagram& into, const Diagram& g) {
  std::map<NodeId, NodeId> remap;
  NodeId base = into.next_id();
  for (const auto& [id, n] : g.nodes()) {
    NodeId fresh = base++;
    into.add_node_with_id(fresh, n);
    remap[id] = fresh;
  }
  for (const auto& [a, b] : g.edges()) into.add_edge(remap.at(a), remap.at(b));
  return remap;
}

}  // namespace

Diagram compose(const Diagram& f, const Diagram& g) {
  if (f.out_arity() != g.in_arity()) {
    std::ostringstream os;
    os << "cannot compose: first has " << f.out_arity() << " outputs, second has "
       << g.in_arity() << " inputs";
    throw Error(ErrorCode::kArityMismatch, os.str());
  }
  Diagram d = f;
  std::vector<NodeId> glue;
  std::vector<NodeId> f_out(f.out_arity());
  for (std::size_t i = 0; i < f.out_arity(); ++i) f_out[i] = f.output(i);
  std::map<NodeId, NodeId> remap = append_nodes(d, g);
  for (std::size_t i = 0; i < f.out_arity(); ++i) {
    NodeId a = f_out[i];
    NodeId b = remap.at(g.input(i));
    d.add_edge(a, b);
    glue.push_back(a);
    glue.push_back(b);
  }
  // Each glued boundary now has degree 2 (or is part of a closed loop).
  for (NodeId x : glue) {
    if (!d.has_node(x)) continue;
    d.splice_out(x);
  }
  d.set_arity(f.in_arity(), g.out_arity());
  d.validate();
  return d;
}

Diagram tensor(const Diagram& f, const Diagram& g) {
  Diagram d = f;
  std::map<NodeId, NodeId> remap = append_nodes(d, g);
  for (const auto& [old_id, fresh] : remap) {
    Node& n = d.mutable_node(fresh);
    if (n.type == NodeType::kInput) n.pos += static_cast<int>(f.in_arity());
    if (n.type == NodeType::kOutput) n.pos += static_cast<int>(f.out_arity());
  }
  d.set_arity(f.in_arity() + g.in_arity(), f.out_arity() + g.out_arity());
  d.validate();
  return d;
}

Diagram dagger(const Diagram& f) {
  if (f.has_discard())
    throw Error(ErrorCode::kNotDaggerable, "diagram contains a discard and has no dagger");
  Diagram d = f;
  for (const auto& [id, n0] : f.nodes()) {
    Node& n = d.mutable_node(id);
    if (n.type == NodeType::kInput)
      n.type = NodeType::kOutput;
    else if (n.type == NodeType::kOutput)
      n.type = NodeType::kInput;
    else if (n.is_spider())
      n.phase = -n.phase;
  }
  d.set_arity(f.out_arity(), f.in_arity());
  d.validate();
  return d;
}

// -- scalars ------------------------------------------------------------------

Diagram scalar_diagram(int sqrt2_power, Phase phase) {
  Diagram d;
  int k = sqrt2_power;
  if (!phase.is_zero()) {
    // Z(alpha) -- X(pi) evaluates to sqrt2 * e^{i alpha}.
    NodeId z = d.add_node(Node::z(phase));
    NodeId x = d.add_node(Node::x(Phase::pi()));
    d.add_edge(z, x);
    --k;
  }
  for (; k > 0; --k) {
    // Z -- X, single wire: sqrt2.
    NodeId z = d.add_node(Node::z());
    NodeId x = d.add_node(Node::x());
    d.add_edge(z, x);
  }
  for (; k < 0; ++k) {
    // Z ≡ X, three parallel wires: 1/sqrt2.
    NodeId z = d.add_node(Node::z());
    NodeId x = d.add_node(Node::x());
    for (int w = 0; w < 3; ++w) d.add_edge(z, x);
  }
  return d;
}

Diagram with_scalar(const Diagram& d, int sqrt2_power, Phase phase) {
  if (sqrt2_power == 0 && phase.is_zero()) return d;
  return tensor(d, scalar_diagram(sqrt2_power, phase));
}

}  // namespace zxe
