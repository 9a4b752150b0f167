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

#include "zxe/iso.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "zxe/error.hpp"

namespace zxe {

namespace {

// Upper bound on search-tree leaves per component before giving up.
constexpr std::size_t kLeafBudget = 200000;

std::string node_label(const Node& n, std::size_t self_loops) {
  std::ostringstream os;
  switch (n.type) {
    case NodeType::kZ: os << 'Z'; break;
    case NodeType::kX: os << 'X'; break;
    case NodeType::kHadamard: os << 'H'; break;
    case NodeType::kInput: os << 'I' << n.pos; break;
    case NodeType::kOutput: os << 'O' << n.pos; break;
    case NodeType::kDiscard: os << 'G'; break;
  }
  if (n.is_spider()) {
    if (n.phase.is_exact())
      os << 'r' << n.phase.numerator() << '/' << n.phase.denominator();
    else
      os << 'f' << std::llround(n.phase.to_radians() / 1e-12);
  }
  os << 'L' << self_loops;
  return os.str();
}

using Colors = std::vector<int>;
using Adjacency = std::vector<std::vector<int>>;

template <class Key>
Colors rank_by(const std::vector<Key>& keys) {
  std::vector<Key> uniq = keys;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  Colors out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = int(std::lower_bound(uniq.begin(), uniq.end(), keys[i]) - uniq.begin());
  return out;
}

int count_colors(const Colors& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

// One component, indexed 0..n-1.
class ComponentCanonizer {
 public:
  ComponentCanonizer(std::vector<std::string> labels, Adjacency adj)
      : labels_(std::move(labels)), adj_(std::move(adj)), n_(labels_.size()) {}

  // Returns (key, order) where order[k] is the local index of canonical node k.
  std::pair<std::string, std::vector<int>> run() {
    Colors c = refine(rank_by(labels_));
    search(c);
    return {*best_key_, best_order_};
  }

 private:
  Colors refine(Colors c) const {
    int k = count_colors(c);
    while (true) {
      std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        sig[i].first = c[i];
        for (std::size_t j = 0; j < n_; ++j)
          if (j != i && adj_[i][j] > 0) sig[i].second.emplace_back(c[j], adj_[i][j]);
        std::sort(sig[i].second.begin(), sig[i].second.end());
      }
      Colors next = rank_by(sig);
      int k2 = count_colors(next);
      if (k2 == k) return next;
      c = std::move(next);
      k = k2;
    }
  }

  bool twins(std::size_t u, std::size_t v) const {
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == u || k == v) continue;
      if (adj_[u][k] != adj_[v][k]) return false;
    }
    return adj_[u][u] == adj_[v][v];
  }

  void search(const Colors& c) {
    int k = count_colors(c);
    if (k == int(n_)) {
      leaf(c);
      return;
    }
    // First non-singleton cell, by colour.
    std::vector<int> size(k, 0);
    for (int x : c) ++size[x];
    int cell = int(std::find_if(size.begin(), size.end(), [](int s) { return s > 1; }) - size.begin());
    std::vector<std::size_t> explored;
    for (std::size_t v = 0; v < n_; ++v) {
      if (c[v] != cell) continue;
      bool redundant = std::any_of(explored.begin(), explored.end(),
                                   [&](std::size_t u) { return twins(u, v); });
      if (redundant) continue;
      explored.push_back(v);
      std::vector<std::pair<int, int>> key(n_);
      for (std::size_t i = 0; i < n_; ++i) key[i] = {c[i], i == v ? 0 : 1};
      search(refine(rank_by(key)));
    }
  }

  void leaf(const Colors& c) {
    if (++leaves_ > kLeafBudget)
      throw Error(ErrorCode::kBudgetExceeded, "canonical labelling search exceeded its leaf budget");
    std::vector<int> order(n_);
    for (std::size_t i = 0; i < n_; ++i) order[c[i]] = int(i);
    std::string key;
    for (int i : order) {
      key += labels_[i];
      key += ';';
    }
    key += '|';
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a; b < n_; ++b) {
        int m = adj_[order[a]][order[b]];
        if (m > 0) key += std::to_string(a) + '-' + std::to_string(b) + 'x' + std::to_string(m) + ',';
      }
    if (!best_key_ || key < *best_key_) {
      best_key_ = std::move(key);
      best_order_ = std::move(order);
    }
  }

  std::vector<std::string> labels_;
  Adjacency adj_;
  std::size_t n_;
  std::size_t leaves_ = 0;
  std::optional<std::string> best_key_;
  std::vector<int> best_order_;
};

}  // namespace

CanonicalForm canonical_form(const Diagram& d, std::size_t budget) {
  if (d.node_count() > budget)
    throw Error(ErrorCode::kBudgetExceeded, "diagram has " + std::to_string(d.node_count()) +
                                                " nodes, above the isomorphism budget of " +
                                                std::to_string(budget));
  std::vector<NodeId> ids;
  std::map<NodeId, int> index;
  for (const auto& [id, n] : d.nodes()) {
    index[id] = int(ids.size());
    ids.push_back(id);
  }
  const std::size_t n = ids.size();
  Adjacency adj(n, std::vector<int>(n, 0));
  for (const auto& [a, b] : d.edges()) {
    int i = index.at(a), j = index.at(b);
    if (i == j) {
      ++adj[i][i];
    } else {
      ++adj[i][j];
      ++adj[j][i];
    }
  }

  // Connected components, so identical disconnected pieces never branch.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (adj[u][v] > 0 && comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }

  std::vector<std::pair<std::string, std::vector<NodeId>>> parts;
  for (int k = 0; k < ncomp; ++k) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == k) members.push_back(i);
    std::vector<std::string> labels;
    Adjacency sub(members.size(), std::vector<int>(members.size(), 0));
    for (std::size_t a = 0; a < members.size(); ++a) {
      std::size_t i = members[a];
      labels.push_back(node_label(d.node(ids[i]), std::size_t(adj[i][i])));
      for (std::size_t b = 0; b < members.size(); ++b) sub[a][b] = adj[i][members[b]];
    }
    auto [key, order] = ComponentCanonizer(std::move(labels), std::move(sub)).run();
    std::vector<NodeId> original;
    for (int local : order) original.push_back(ids[members[local]]);
    parts.emplace_back(std::move(key), std::move(original));
  }
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  CanonicalForm out;
  out.key = "in" + std::to_string(d.in_arity()) + "out" + std::to_string(d.out_arity());
  for (auto& [key, order] : parts) {
    out.key += '{' + key + '}';
    out.order.insert(out.order.end(), order.begin(), order.end());
  }
  return out;
}

Diagram canonical_relabel(const Diagram& d, std::size_t budget) {
  CanonicalForm cf = canonical_form(d, budget);
  std::map<NodeId, NodeId> remap;
  for (std::size_t k = 0; k < cf.order.size(); ++k) remap[cf.order[k]] = NodeId(k);
  Diagram out;
  out.set_arity(d.in_arity(), d.out_arity());
  for (std::size_t k = 0; k < cf.order.size(); ++k)
    out.add_node_with_id(NodeId(k), d.node(cf.order[k]));
  for (const auto& [a, b] : d.edges()) out.add_edge(remap.at(a), remap.at(b));
  return out;
}

bool iso_equal(const Diagram& f, const Diagram& g, std::size_t budget) {
  if (f.in_arity() != g.in_arity() || f.out_arity() != g.out_arity()) return false;
  if (f.node_count() != g.node_count() || f.edge_count() != g.edge_count()) {
    // Still honour the budget contract for oversized inputs.
    if (f.node_count() > budget || g.node_count() > budget)
      throw Error(ErrorCode::kBudgetExceeded, "diagram above the isomorphism budget");
    return false;
  }
  return canonical_form(f, budget).key == canonical_form(g, budget).key;
}

}  // namespace zxe
