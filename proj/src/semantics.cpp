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

#include "zxe/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "zxe/error.hpp"

namespace zxe {

namespace {

// A rank-r tensor of qubit legs. labels[0] is the most significant bit of
// the flat index into data.
struct Tensor {
  std::vector<int> labels;
  std::vector<Complex> data;
};

std::size_t bit_of(std::size_t index, std::size_t pos, std::size_t rank) {
  return (index >> (rank - 1 - pos)) & 1u;
}

// Sums over the diagonal of every label that occurs twice in t.
Tensor self_trace(Tensor t) {
  while (true) {
    std::size_t r = t.labels.size();
    std::size_t p = r, q = r;
    for (std::size_t i = 0; i < r && p == r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        if (t.labels[i] == t.labels[j]) {
          p = i;
          q = j;
          break;
        }
    if (p == r) return t;
    Tensor out;
    for (std::size_t i = 0; i < r; ++i)
      if (i != p && i != q) out.labels.push_back(t.labels[i]);
    std::size_t rr = out.labels.size();
    out.data.assign(std::size_t{1} << rr, Complex(0.0, 0.0));
    for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
      if (bit_of(idx, p, r) != bit_of(idx, q, r)) continue;
      std::size_t o = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (i != p && i != q) o = (o << 1) | bit_of(idx, i, r);
      out.data[o] += t.data[idx];
    }
    t = std::move(out);
  }
}

Tensor contract(const Tensor& a, const Tensor& b) {
  std::vector<int> shared;
  for (int l : a.labels)
    if (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end()) shared.push_back(l);
  Tensor out;
  for (int l : a.labels)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) out.labels.push_back(l);
  for (int l : b.labels)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) out.labels.push_back(l);

  const std::size_t ra = a.labels.size(), rb = b.labels.size();
  const std::size_t r = out.labels.size(), s = shared.size();
  const std::size_t nr = std::size_t{1} << r, ns = std::size_t{1} << s;

  // Offsets contributed to the a/b flat index by result bits and shared bits.
  auto offsets = [](const std::vector<int>& from, const std::vector<int>& target_labels,
                    std::size_t target_rank) {
    std::vector<std::size_t> off(std::size_t{1} << from.size(), 0);
    for (std::size_t idx = 0; idx < off.size(); ++idx) {
      std::size_t o = 0;
      for (std::size_t k = 0; k < from.size(); ++k) {
        if (!bit_of(idx, k, from.size())) continue;
        auto it = std::find(target_labels.begin(), target_labels.end(), from[k]);
        if (it == target_labels.end()) continue;
        std::size_t pos = std::size_t(it - target_labels.begin());
        o |= std::size_t{1} << (target_rank - 1 - pos);
      }
      off[idx] = o;
    }
    return off;
  };
  auto ra_off = offsets(out.labels, a.labels, ra);
  auto rb_off = offsets(out.labels, b.labels, rb);
  auto sa_off = offsets(shared, a.labels, ra);
  auto sb_off = offsets(shared, b.labels, rb);

  out.data.assign(nr, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < nr; ++i) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < ns; ++k) acc += a.data[ra_off[i] | sa_off[k]] * b.data[rb_off[i] | sb_off[k]];
    out.data[i] = acc;
  }
  return out;
}

std::size_t shared_count(const Tensor& a, const Tensor& b) {
  std::size_t n = 0;
  for (int l : a.labels)
    if (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end()) ++n;
  return n;
}

Tensor contract_all(std::vector<Tensor> ts, const ContractionOptions& opts) {
  std::mt19937_64 rng(opts.random_seed.value_or(0));
  while (ts.size() > 1) {
    std::size_t bi = 0, bj = 1;
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        std::size_t s = shared_count(ts[i], ts[j]);
        if (s == 0) continue;
        candidates.emplace_back(i, j);
        std::size_t rank = ts[i].labels.size() + ts[j].labels.size() - 2 * s;
        if (rank < best) {
          best = rank;
          bi = i;
          bj = j;
        }
      }
    if (candidates.empty()) {
      // Disconnected pieces: outer product of the two smallest.
      std::vector<std::size_t> order(ts.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return ts[x].labels.size() < ts[y].labels.size();
      });
      bi = std::min(order[0], order[1]);
      bj = std::max(order[0], order[1]);
    } else if (opts.random_seed) {
      auto pick = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
      bi = pick.first;
      bj = pick.second;
    }
    Tensor merged = contract(ts[bi], ts[bj]);
    ts.erase(ts.begin() + std::ptrdiff_t(bj));
    ts[bi] = std::move(merged);
  }
  if (ts.empty()) return Tensor{{}, {Complex(1.0, 0.0)}};
  return std::move(ts.front());
}

Tensor spider_tensor(NodeType type, const Phase& phase, std::vector<int> legs) {
  Tensor t;
  const std::size_t k = legs.size();
  t.labels = std::move(legs);
  t.data.assign(std::size_t{1} << k, Complex(0.0, 0.0));
  t.data.front() += 1.0;
  t.data.back() += std::polar(1.0, phase.to_radians());
  if (type == NodeType::kX) {
    // Hadamard on every leg.
    const double h = 1.0 / std::numbers::sqrt2;
    for (std::size_t pos = 0; pos < k; ++pos) {
      std::size_t bit = std::size_t{1} << (k - 1 - pos);
      for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
        if (idx & bit) continue;
        Complex a0 = t.data[idx], a1 = t.data[idx | bit];
        t.data[idx] = h * (a0 + a1);
        t.data[idx | bit] = h * (a0 - a1);
      }
    }
  }
  return self_trace(std::move(t));
}

Tensor hadamard_tensor(int a, int b) {
  const double h = 1.0 / std::numbers::sqrt2;
  return self_trace(Tensor{{a, b}, {h, h, h, -h}});
}

Tensor wire_tensor(int a, int b) { return self_trace(Tensor{{a, b}, {1.0, 0.0, 0.0, 1.0}}); }

Tensor conj_tensor(Tensor t, int label_shift) {
  for (int& l : t.labels) l += label_shift;
  for (auto& z : t.data) z = std::conj(z);
  return t;
}

// Legs (edge labels) per node, in edge order.
std::map<NodeId, std::vector<int>> legs_by_node(const Diagram& d) {
  std::map<NodeId, std::vector<int>> legs;
  for (const auto& [id, n] : d.nodes()) legs[id];
  int label = 0;
  for (const auto& [a, b] : d.edges()) {
    legs[a].push_back(label);
    legs[b].push_back(label);
    ++label;
  }
  return legs;
}

Tensor node_tensor(const Node& n, const std::vector<int>& legs, int external) {
  switch (n.type) {
    case NodeType::kZ:
    case NodeType::kX:
      return spider_tensor(n.type, n.phase, legs);
    case NodeType::kHadamard:
      return hadamard_tensor(legs.at(0), legs.at(1));
    case NodeType::kInput:
    case NodeType::kOutput:
      return wire_tensor(legs.at(0), external);
    case NodeType::kDiscard:
      break;
  }
  throw Error(ErrorCode::kHasDiscard, "discard has no pure tensor");
}

// Reads the fully contracted tensor into a matrix with the given row and
// column label orders (first label = most significant bit).
ComplexMatrix to_matrix(const Tensor& t, const std::vector<int>& row_labels,
                        const std::vector<int>& col_labels) {
  const std::size_t r = t.labels.size();
  std::vector<std::size_t> src(r);
  std::vector<int> order = row_labels;
  order.insert(order.end(), col_labels.begin(), col_labels.end());
  if (order.size() != r) throw Error(ErrorCode::kInvariantViolation, "dangling tensor legs");
  for (std::size_t k = 0; k < r; ++k) {
    auto it = std::find(t.labels.begin(), t.labels.end(), order[k]);
    if (it == t.labels.end()) throw Error(ErrorCode::kInvariantViolation, "missing open leg");
    src[k] = std::size_t(it - t.labels.begin());
  }
  const std::size_t nrow = std::size_t{1} << row_labels.size();
  const std::size_t ncol = std::size_t{1} << col_labels.size();
  ComplexMatrix m(nrow, ncol);
  for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < r; ++k) flat = (flat << 1) | bit_of(idx, src[k], r);
    m(flat / ncol, flat % ncol) = t.data[idx];
  }
  return m;
}

}  // namespace

ComplexMatrix interpret(const Diagram& d, const ContractionOptions& opts) {
  if (d.has_discard())
    throw Error(ErrorCode::kHasDiscard, "diagram contains a discard; use the CP-map interpretation");
  const int n_edges = int(d.edge_count());
  auto legs = legs_by_node(d);
  const int in_base = n_edges;
  const int out_base = n_edges + int(d.in_arity());
  std::vector<Tensor> ts;
  for (const auto& [id, n] : d.nodes()) {
    int ext = n.type == NodeType::kInput ? in_base + n.pos : out_base + n.pos;
    ts.push_back(node_tensor(n, legs.at(id), ext));
  }
  Tensor t = contract_all(std::move(ts), opts);
  std::vector<int> rows, cols;
  for (std::size_t j = 0; j < d.out_arity(); ++j) rows.push_back(out_base + int(j));
  for (std::size_t i = 0; i < d.in_arity(); ++i) cols.push_back(in_base + int(i));
  return to_matrix(t, rows, cols);
}

Superoperator interpret_cpm(const Diagram& d, const ContractionOptions& opts) {
  const int n_edges = int(d.edge_count());
  const int nin = int(d.in_arity()), nout = int(d.out_arity());
  auto legs = legs_by_node(d);
  // Label layout: [edges][conj edges][in][out][conj in][conj out].
  const int in_base = 2 * n_edges;
  const int out_base = in_base + nin;
  const int ext_shift = nin + nout;
  std::vector<Tensor> ts;
  for (const auto& [id, n] : d.nodes()) {
    const auto& l = legs.at(id);
    if (n.type == NodeType::kDiscard) {
      ts.push_back(wire_tensor(l.at(0), l.at(0) + n_edges));
      continue;
    }
    int ext = n.type == NodeType::kInput ? in_base + n.pos : out_base + n.pos;
    Tensor t = node_tensor(n, l, ext);
    Tensor c = conj_tensor(t, 0);
    for (int& lab : c.labels) lab += lab < 2 * n_edges ? n_edges : ext_shift;
    ts.push_back(std::move(t));
    ts.push_back(std::move(c));
  }
  Tensor t = contract_all(std::move(ts), opts);
  // row = i + j*dim_out with i the plain outputs, j the conjugate outputs.
  std::vector<int> rows, cols;
  for (int j = 0; j < nout; ++j) rows.push_back(out_base + ext_shift + j);
  for (int j = 0; j < nout; ++j) rows.push_back(out_base + j);
  for (int i = 0; i < nin; ++i) cols.push_back(in_base + ext_shift + i);
  for (int i = 0; i < nin; ++i) cols.push_back(in_base + i);
  Superoperator s;
  s.dim_in = std::size_t{1} << nin;
  s.dim_out = std::size_t{1} << nout;
  s.mat = to_matrix(t, rows, cols);
  return s;
}

Superoperator Superoperator::identity(std::size_t dim) {
  return {dim, dim, ComplexMatrix::identity(dim * dim)};
}

Superoperator Superoperator::from_pure(const ComplexMatrix& m) {
  return {m.cols(), m.rows(), kron(m.conj(), m)};
}

ComplexMatrix apply_superop(const Superoperator& s, const ComplexMatrix& rho) {
  if (rho.rows() != s.dim_in || rho.cols() != s.dim_in)
    throw Error(ErrorCode::kShapeMismatch, "density matrix does not match the superoperator input");
  if (max_abs_diff(rho, rho.adjoint()) > 1e-9)
    throw Error(ErrorCode::kNotHermitianInput, "input density matrix is not Hermitian");
  const std::size_t din = s.dim_in, dout = s.dim_out;
  ComplexMatrix vec(din * din, 1);
  for (std::size_t c = 0; c < din; ++c)
    for (std::size_t r = 0; r < din; ++r) vec(r + c * din, 0) = rho(r, c);
  ComplexMatrix out_vec = s.mat * vec;
  ComplexMatrix out(dout, dout);
  for (std::size_t c = 0; c < dout; ++c)
    for (std::size_t r = 0; r < dout; ++r) out(r, c) = out_vec(r + c * dout, 0);
  // Symmetrise away rounding noise.
  ComplexMatrix sym = (out + out.adjoint()) * Complex(0.5, 0.0);
  return sym;
}

Superoperator superop_compose(const Superoperator& before, const Superoperator& after) {
  if (before.dim_out != after.dim_in)
    throw Error(ErrorCode::kArityMismatch, "superoperator dimensions do not chain");
  return {before.dim_in, after.dim_out, after.mat * before.mat};
}

Superoperator superop_tensor(const Superoperator& a, const Superoperator& b) {
  const std::size_t ai = a.dim_in, ao = a.dim_out, bi = b.dim_in, bo = b.dim_out;
  const std::size_t din = ai * bi, dout = ao * bo;
  Superoperator s{din, dout, ComplexMatrix(dout * dout, din * din)};
  // vec index of (row, col) on A⊗B: (ra*db + rb) + (ca*db + cb) * d.
  for (std::size_t ora = 0; ora < ao; ++ora)
    for (std::size_t orb = 0; orb < bo; ++orb)
      for (std::size_t oca = 0; oca < ao; ++oca)
        for (std::size_t ocb = 0; ocb < bo; ++ocb) {
          std::size_t row = (ora * bo + orb) + (oca * bo + ocb) * dout;
          std::size_t arow = ora + oca * ao, brow = orb + ocb * bo;
          for (std::size_t ira = 0; ira < ai; ++ira)
            for (std::size_t irb = 0; irb < bi; ++irb)
              for (std::size_t ica = 0; ica < ai; ++ica)
                for (std::size_t icb = 0; icb < bi; ++icb) {
                  std::size_t col = (ira * bi + irb) + (ica * bi + icb) * din;
                  s.mat(row, col) = a.mat(arow, ira + ica * ai) * b.mat(brow, irb + icb * bi);
                }
        }
  return s;
}

Superoperator superop_scale(const Superoperator& s, double w) {
  return {s.dim_in, s.dim_out, s.mat * Complex(w, 0.0)};
}

Superoperator superop_add(const Superoperator& a, const Superoperator& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out)
    throw Error(ErrorCode::kShapeMismatch, "superoperator dimensions differ");
  return {a.dim_in, a.dim_out, a.mat + b.mat};
}

ComplexMatrix choi_matrix(const Superoperator& s) {
  const std::size_t din = s.dim_in, dout = s.dim_out;
  ComplexMatrix c(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      // s(|i><j|) is column (i + j*din) of mat, un-vectorised.
      for (std::size_t r = 0; r < dout; ++r)
        for (std::size_t col = 0; col < dout; ++col)
          c(i * dout + r, j * dout + col) = s.mat(r + col * dout, i + j * din);
    }
  return c;
}

}  // namespace zxe
