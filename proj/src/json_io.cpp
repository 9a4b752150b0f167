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

#include "zxe/json_io.hpp"

#include <json.hpp>

namespace zxe {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kFormat = 1;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::kParse, msg); }

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) parse_error(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::size_t count_field(const Json& j, const char* key) {
  std::int64_t v = int_field(j, key);
  if (v < 0) parse_error(std::string("field '") + key + "' must be non-negative");
  return std::size_t(v);
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) parse_error(std::string(what) + " must be a number");
  return v.get<double>();
}

void check_format(const Json& j) {
  auto it = j.find("format");
  if (it != j.end() && (!it->is_number_integer() || it->get<int>() != kFormat))
    parse_error("unsupported format version");
}

NodeType parse_kind(const std::string& k) {
  if (k == "Z") return NodeType::kZ;
  if (k == "X") return NodeType::kX;
  if (k == "H") return NodeType::kHadamard;
  if (k == "IN") return NodeType::kInput;
  if (k == "OUT") return NodeType::kOutput;
  if (k == "GND") return NodeType::kDiscard;
  parse_error("unknown node kind '" + k + "'");
}

const char* kind_name(NodeType t) {
  switch (t) {
    case NodeType::kZ: return "Z";
    case NodeType::kX: return "X";
    case NodeType::kHadamard: return "H";
    case NodeType::kInput: return "IN";
    case NodeType::kOutput: return "OUT";
    case NodeType::kDiscard: return "GND";
  }
  return "?";
}

Phase parse_phase(const Json& j) {
  if (!j.is_object()) parse_error("phase must be an object");
  if (j.contains("float")) return Phase::radians(number(j["float"], "phase.float"));
  std::int64_t den = int_field(j, "den");
  if (den == 0) parse_error("phase denominator is zero");
  return Phase::rational(int_field(j, "num"), den);
}

Json phase_json(const Phase& p) {
  Json j = Json::object();
  if (p.is_exact()) {
    j["num"] = p.numerator();
    j["den"] = p.denominator();
  } else {
    j["float"] = p.to_radians();
  }
  return j;
}

Diagram diagram_from(const Json& j) {
  check_format(j);
  Diagram d;
  d.set_arity(count_field(j, "in_arity"), count_field(j, "out_arity"));
  const Json& nodes = field(j, "nodes");
  if (!nodes.is_array()) parse_error("'nodes' must be an array");
  for (const Json& n : nodes) {
    std::int64_t id = int_field(n, "id");
    if (id < 0) parse_error("node ids must be non-negative");
    const Json& kind = field(n, "kind");
    if (!kind.is_string()) parse_error("node kind must be a string");
    Node node{parse_kind(kind.get<std::string>()), {}, -1};
    if (n.contains("phase")) node.phase = parse_phase(n["phase"]);
    if (node.is_boundary()) node.pos = int(int_field(n, "pos"));
    d.add_node_with_id(NodeId(id), node);
  }
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) parse_error("'edges' must be an array");
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      parse_error("edges must be [id, id] pairs");
    auto a = e[0].get<std::int64_t>(), b = e[1].get<std::int64_t>();
    if (a < 0 || b < 0 || !d.has_node(NodeId(a)) || !d.has_node(NodeId(b)))
      throw Error(ErrorCode::kInvariantViolation, "edge refers to an unknown node");
    d.add_edge(NodeId(a), NodeId(b));
  }
  d.validate();
  return d;
}

Json diagram_json(const Diagram& d, bool with_format) {
  Json j = Json::object();
  if (with_format) j["format"] = kFormat;
  j["in_arity"] = d.in_arity();
  j["out_arity"] = d.out_arity();
  Json nodes = Json::array();
  for (const auto& [id, n] : d.nodes()) {
    Json o = Json::object();
    o["id"] = id;
    o["kind"] = kind_name(n.type);
    if (n.is_spider()) o["phase"] = phase_json(n.phase);
    if (n.is_boundary()) o["pos"] = n.pos;
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& [a, b] : d.edges()) edges.push_back(Json::array({a, b}));
  j["edges"] = std::move(edges);
  return j;
}

Weight parse_weight(const Json& w) {
  if (w.is_number()) return {w.get<double>(), 0.0};
  if (w.is_array() && w.size() == 2) return {number(w[0], "weight"), number(w[1], "weight")};
  parse_error("weight must be a number or [re, im]");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

Diagram diagram_from_json(std::string_view text) { return diagram_from(parse(text)); }

std::string diagram_to_json(const Diagram& d) { return dump(diagram_json(d, true)); }

EnrichedZX sum_from_json(std::string_view text) {
  Json j = parse(text);
  check_format(j);
  const Json& m = field(j, "monad");
  Monad monad;
  if (m == "distribution")
    monad = Monad::kDistribution;
  else if (m == "multiset")
    monad = Monad::kMultiset;
  else
    parse_error("monad must be \"distribution\" or \"multiset\"");
  std::pair<std::size_t, std::size_t> arity{count_field(j, "in"), count_field(j, "out")};
  const Json& branches = field(j, "branches");
  if (!branches.is_array()) parse_error("'branches' must be an array");
  std::vector<Branch<Diagram>> out;
  for (const Json& b : branches) {
    Diagram d = diagram_from(field(b, "diagram"));
    if (std::make_pair(d.in_arity(), d.out_arity()) != arity)
      throw Error(ErrorCode::kArityMismatch, "branch arity differs from the declared in/out");
    out.push_back({parse_weight(field(b, "weight")), std::move(d)});
  }
  return EnrichedZX(monad, std::move(out), arity);
}

std::string sum_to_json(const EnrichedZX& s) {
  Json j = Json::object();
  j["format"] = kFormat;
  j["monad"] = monad_name(s.monad());
  j["in"] = s.in_arity();
  j["out"] = s.out_arity();
  Json branches = Json::array();
  for (const auto& b : s.branches()) {
    Json o = Json::object();
    if (b.weight.imag() == 0.0)
      o["weight"] = b.weight.real();
    else
      o["weight"] = Json::array({b.weight.real(), b.weight.imag()});
    o["diagram"] = diagram_json(b.payload, false);
    branches.push_back(std::move(o));
  }
  j["branches"] = std::move(branches);
  return dump(j);
}

bool json_is_sum(std::string_view text) {
  Json j = parse(text);
  return j.is_object() && j.contains("monad");
}

std::string matrix_to_json(const ComplexMatrix& m) {
  Json j = Json::object();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (const Complex& c : m.entries()) entries.push_back(Json::array({c.real(), c.imag()}));
  j["entries"] = std::move(entries);
  return j.dump() + "\n";
}

ComplexMatrix matrix_from_json(std::string_view text) {
  Json j = parse(text);
  std::size_t r = count_field(j, "rows"), c = count_field(j, "cols");
  const Json& e = field(j, "entries");
  if (!e.is_array() || e.size() != r * c) parse_error("matrix entry count does not match its shape");
  std::vector<Complex> v;
  for (const Json& x : e) v.push_back(parse_weight(x));
  return ComplexMatrix(r, c, std::move(v));
}

}  // namespace zxe
