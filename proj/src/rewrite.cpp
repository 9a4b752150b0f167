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

#include "zxe/rewrite.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include <json.hpp>

#include "zxe/iso.hpp"

namespace zxe {

namespace {

constexpr std::array<std::pair<RuleId, std::string_view>, 13> kRuleNames{{
    {RuleId::kF, "F"},
    {RuleId::kI1, "I1"},
    {RuleId::kI2, "I2"},
    {RuleId::kH, "H"},
    {RuleId::kPi, "Pi"},
    {RuleId::kC, "C"},
    {RuleId::kB, "B"},
    {RuleId::kES, "ES"},
    {RuleId::kEP, "EP"},
    {RuleId::kEC, "EC"},
    {RuleId::kEDelta, "EDelta"},
    {RuleId::kEPlus, "EPlus"},
    {RuleId::kEZero, "EZero"},
}};

// Colour that plays "Z" in the rule as drawn, and its partner.
NodeType primary(bool swapped) { return swapped ? NodeType::kX : NodeType::kZ; }
NodeType secondary(bool swapped) { return swapped ? NodeType::kZ : NodeType::kX; }

bool is_type(const Diagram& d, NodeId id, NodeType t) {
  return d.has_node(id) && d.node(id).type == t;
}

// Neighbours of id with one occurrence of `skip` removed.
std::vector<NodeId> others(const Diagram& d, NodeId id, NodeId skip) {
  std::vector<NodeId> nb = d.neighbors(id);
  auto it = std::find(nb.begin(), nb.end(), skip);
  if (it != nb.end()) nb.erase(it);
  return nb;
}

bool phase_is_zero_or_pi(const Phase& p) { return p.is_zero() || p.is_pi(); }

// -- per-rule validity --------------------------------------------------------

bool valid_f(const Diagram& d, NodeId a, NodeId b, bool sw) {
  NodeType c = primary(sw);
  return a != b && is_type(d, a, c) && is_type(d, b, c) && d.edges_between(a, b) >= 1;
}

bool valid_i1(const Diagram& d, NodeId s, bool sw) {
  return is_type(d, s, primary(sw)) && d.node(s).phase.is_zero() && d.degree(s) == 2 &&
         d.self_loops(s) == 0;
}

bool valid_i2(const Diagram& d, NodeId h1, NodeId h2) {
  return h1 != h2 && is_type(d, h1, NodeType::kHadamard) && is_type(d, h2, NodeType::kHadamard) &&
         d.edges_between(h1, h2) == 1;
}

// Forward: a secondary-colour spider becomes primary with H on every leg.
bool valid_h_forward(const Diagram& d, NodeId s, bool sw) {
  return is_type(d, s, secondary(sw)) && d.self_loops(s) == 0;
}

// Backward: a primary spider whose every leg ends in its own Hadamard.
bool valid_h_backward(const Diagram& d, NodeId s, const std::vector<NodeId>& hs, bool sw) {
  if (!is_type(d, s, primary(sw)) || d.self_loops(s) != 0) return false;
  std::vector<NodeId> nb = d.neighbors(s);
  std::sort(nb.begin(), nb.end());
  std::vector<NodeId> sorted_hs = hs;
  std::sort(sorted_hs.begin(), sorted_hs.end());
  if (nb != sorted_hs) return false;
  if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
  for (NodeId h : hs) {
    if (!is_type(d, h, NodeType::kHadamard)) return false;
    std::vector<NodeId> o = others(d, h, s);
    if (o.size() != 1 || o[0] == s) return false;
    if (std::find(hs.begin(), hs.end(), o[0]) != hs.end()) return false;
  }
  return true;
}

bool valid_pi(const Diagram& d, NodeId p, NodeId s, bool sw) {
  if (!is_type(d, p, secondary(sw)) || !is_type(d, s, primary(sw))) return false;
  const Node& pn = d.node(p);
  const Node& sn = d.node(s);
  if (!pn.phase.is_pi() || !sn.phase.is_exact()) return false;
  if (d.degree(p) != 2 || d.self_loops(p) != 0 || d.self_loops(s) != 0) return false;
  if (d.edges_between(p, s) != 1) return false;
  return true;
}

bool valid_c(const Diagram& d, NodeId k, NodeId s, bool sw) {
  if (!is_type(d, k, secondary(sw)) || !is_type(d, s, primary(sw))) return false;
  if (!phase_is_zero_or_pi(d.node(k).phase) || !d.node(s).phase.is_exact()) return false;
  return d.degree(k) == 1 && d.edges_between(k, s) == 1 && d.self_loops(s) == 0;
}

bool valid_b_forward(const Diagram& d, NodeId z, NodeId x, bool sw) {
  if (!is_type(d, z, primary(sw)) || !is_type(d, x, secondary(sw))) return false;
  if (!d.node(z).phase.is_zero() || !d.node(x).phase.is_zero()) return false;
  return d.edges_between(z, x) == 1 && d.degree(z) == 3 && d.degree(x) == 3 &&
         d.self_loops(z) == 0 && d.self_loops(x) == 0;
}

bool valid_b_backward(const Diagram& d, NodeId z1, NodeId z2, NodeId x1, NodeId x2, bool sw) {
  const std::array<NodeId, 4> set{z1, z2, x1, x2};
  if (z1 == z2 || x1 == x2) return false;
  for (NodeId z : {z1, z2})
    if (!is_type(d, z, primary(sw))) return false;
  for (NodeId x : {x1, x2})
    if (!is_type(d, x, secondary(sw))) return false;
  for (NodeId n : set) {
    if (!d.node(n).phase.is_zero() || d.degree(n) != 3 || d.self_loops(n) != 0) return false;
    std::size_t external = 0;
    for (NodeId o : d.neighbors(n))
      if (std::find(set.begin(), set.end(), o) == set.end()) ++external;
    if (external != 1) return false;
  }
  for (NodeId z : {z1, z2})
    for (NodeId x : {x1, x2})
      if (d.edges_between(z, x) != 1) return false;
  return true;
}

NodeId external_neighbor(const Diagram& d, NodeId n, const std::array<NodeId, 4>& set) {
  for (NodeId o : d.neighbors(n))
    if (std::find(set.begin(), set.end(), o) == set.end()) return o;
  throw Error(ErrorCode::kStaleMatch, "bialgebra node lost its external leg");
}

// -- rewriting ----------------------------------------------------------------

// Inserts `n` on one instance of the edge (a, b).
void insert_on_edge(Diagram& d, NodeId a, NodeId b, const Node& n) {
  d.remove_edge(a, b);
  NodeId m = d.add_node(n);
  d.add_edge(a, m);
  d.add_edge(m, b);
}

void strip_self_loops(Diagram& d, NodeId s) {
  while (d.remove_edge(s, s)) {
  }
}

Diagram rewrite_f(Diagram d, NodeId a, NodeId b) {
  Node& an = d.mutable_node(a);
  an.phase = an.phase + d.node(b).phase;
  d.remove_edge(a, b);
  for (NodeId o : d.neighbors(b))
    if (o != b) d.add_edge(a, o);
  d.remove_node(b);
  // A plain self-loop on a spider traces out two legs exactly.
  strip_self_loops(d, a);
  return d;
}

Diagram rewrite_h_forward(Diagram d, NodeId s, bool sw) {
  Node& sn = d.mutable_node(s);
  sn.type = primary(sw);
  for (NodeId o : d.neighbors(s)) insert_on_edge(d, s, o, Node::hadamard());
  return d;
}

Diagram rewrite_h_backward(Diagram d, NodeId s, const std::vector<NodeId>& hs, bool sw) {
  for (NodeId h : hs) {
    NodeId o = others(d, h, s).at(0);
    d.remove_node(h);
    d.add_edge(s, o);
  }
  d.mutable_node(s).type = secondary(sw);
  return d;
}

Diagram rewrite_pi(Diagram d, NodeId p, NodeId s, bool sw) {
  Phase alpha = d.node(s).phase;
  NodeId o = others(d, p, s).at(0);
  std::vector<NodeId> legs = others(d, s, p);
  for (NodeId n : legs) insert_on_edge(d, s, n, Node{secondary(sw), Phase::pi(), -1});
  d.remove_node(p);
  d.add_edge(s, o);
  d.mutable_node(s).phase = -alpha;
  // Z(a) after X(pi) = e^{ia} X(pi)^{(x)n} Z(-a).
  return with_scalar(d, 0, alpha);
}

Diagram rewrite_c(Diagram d, NodeId k, NodeId s, bool sw) {
  Phase state = d.node(k).phase;
  Phase alpha = d.node(s).phase;
  std::vector<NodeId> legs = others(d, s, k);
  d.remove_node(k);
  d.remove_node(s);
  for (NodeId n : legs) d.add_edge(d.add_node(Node{secondary(sw), state, -1}), n);
  // Copying sqrt2|a> through the spider yields sqrt2 e^{i a alpha} |a..a>,
  // while n copies of the state carry sqrt2^n.
  Phase phase = state.is_pi() ? alpha : Phase::zero();
  return with_scalar(d, 1 - int(legs.size()), phase);
}

Diagram rewrite_b_forward(Diagram d, NodeId z, NodeId x, bool sw) {
  std::vector<NodeId> zo = others(d, z, x);
  std::vector<NodeId> xo = others(d, x, z);
  d.remove_node(z);
  d.remove_node(x);
  std::array<NodeId, 2> zs{}, xs{};
  for (int i = 0; i < 2; ++i) {
    zs[i] = d.add_node(Node{primary(sw), {}, -1});
    d.add_edge(zs[i], xo[i]);
  }
  for (int j = 0; j < 2; ++j) {
    xs[j] = d.add_node(Node{secondary(sw), {}, -1});
    d.add_edge(xs[j], zo[j]);
  }
  for (NodeId zi : zs)
    for (NodeId xj : xs) d.add_edge(zi, xj);
  return with_scalar(d, 1);
}

Diagram rewrite_b_backward(Diagram d, NodeId z1, NodeId z2, NodeId x1, NodeId x2, bool sw) {
  const std::array<NodeId, 4> set{z1, z2, x1, x2};
  NodeId oz1 = external_neighbor(d, z1, set), oz2 = external_neighbor(d, z2, set);
  NodeId ox1 = external_neighbor(d, x1, set), ox2 = external_neighbor(d, x2, set);
  for (NodeId n : set) d.remove_node(n);
  NodeId x = d.add_node(Node{secondary(sw), {}, -1});
  NodeId z = d.add_node(Node{primary(sw), {}, -1});
  d.add_edge(x, oz1);
  d.add_edge(x, oz2);
  d.add_edge(z, ox1);
  d.add_edge(z, ox2);
  d.add_edge(z, x);
  return with_scalar(d, -1);
}

std::vector<NodeId> hadamards_of(const Match& m) {
  std::vector<NodeId> hs;
  for (const auto& [name, id] : m.binding)
    if (name != "s") hs.push_back(id);
  return hs;
}

std::size_t term_nodes(const Term& t) {
  if (auto* d = std::get_if<Diagram>(&t)) return d->node_count();
  auto count = [](const EnrichedZX& s) {
    std::size_t n = 0;
    for (const auto& b : s.branches()) n += b.payload.node_count();
    return n;
  };
  if (auto* s = std::get_if<EnrichedZX>(&t)) return count(*s);
  const auto& p = std::get<EnrichedProduct>(t);
  return count(p.left) + count(p.right);
}

ComplexMatrix evaluation_matrix(const Evaluation& e) {
  if (auto* s = std::get_if<Superoperator>(&e)) return s->mat;
  return std::get<ComplexMatrix>(e);
}

void check_step(RewriteStep& step, const RewriteOptions& opts) {
  if (!opts.check_soundness) return;
  ComplexMatrix before = evaluation_matrix(evaluate_term(step.before));
  ComplexMatrix after = evaluation_matrix(evaluate_term(step.after));
  if (before.rows() != after.rows() || before.cols() != after.cols())
    throw Error(ErrorCode::kSoundnessViolation,
                std::string("rule ") + std::string(rule_name(step.rule)) + " changed the type");
  ScalarFit fit = fit_scalar(before, after, opts.policy, opts.tol);
  if (!fit.equal)
    throw Error(ErrorCode::kSoundnessViolation,
                std::string("rule ") + std::string(rule_name(step.rule)) +
                    " changed the interpretation (residual " + std::to_string(fit.residual) + ")");
  step.fitted_scalar = fit.lambda;
  step.checked = true;
}

}  // namespace

std::string_view rule_name(RuleId r) {
  for (const auto& [id, name] : kRuleNames)
    if (id == r) return name;
  return "?";
}

RuleId parse_rule(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  for (const auto& [id, n] : kRuleNames)
    if (lower(n) == lower(name)) return id;
  throw Error(ErrorCode::kInvalidArgument, "unknown rule '" + std::string(name) + "'");
}

bool is_diagram_rule(RuleId r) {
  switch (r) {
    case RuleId::kF:
    case RuleId::kI1:
    case RuleId::kI2:
    case RuleId::kH:
    case RuleId::kPi:
    case RuleId::kC:
    case RuleId::kB:
      return true;
    default:
      return false;
  }
}

NodeId Match::at(std::string_view name) const {
  for (const auto& [n, id] : binding)
    if (n == name) return id;
  throw Error(ErrorCode::kStaleMatch, "match has no binding for '" + std::string(name) + "'");
}

std::vector<Match> find_matches(const Diagram& d, RuleId rule, Orientation orientation) {
  if (!is_diagram_rule(rule))
    throw Error(ErrorCode::kWrongRuleClass,
                std::string(rule_name(rule)) + " rewrites formal sums, not diagrams");
  if (orientation == Orientation::kBackward && rule != RuleId::kH && rule != RuleId::kB)
    throw Error(ErrorCode::kInvalidArgument,
                std::string(rule_name(rule)) + " has no backward form");
  std::vector<Match> out;
  auto emit = [&](std::vector<std::pair<std::string, NodeId>> binding, bool sw) {
    out.push_back(Match{rule, std::move(binding), orientation, sw});
  };
  std::vector<NodeId> ids;
  for (const auto& [id, n] : d.nodes()) ids.push_back(id);

  for (bool sw : {false, true}) {
    switch (rule) {
      case RuleId::kF:
        for (NodeId a : ids)
          for (NodeId b : ids)
            if (a < b && valid_f(d, a, b, sw)) emit({{"a", a}, {"b", b}}, sw);
        break;
      case RuleId::kI1:
        for (NodeId s : ids)
          if (valid_i1(d, s, sw)) emit({{"s", s}}, sw);
        break;
      case RuleId::kI2:
        if (sw) break;  // colourless
        for (NodeId a : ids)
          for (NodeId b : ids)
            if (a < b && valid_i2(d, a, b)) emit({{"h1", a}, {"h2", b}}, false);
        break;
      case RuleId::kH:
        for (NodeId s : ids) {
          if (orientation == Orientation::kForward) {
            if (valid_h_forward(d, s, sw)) emit({{"s", s}}, sw);
          } else if (is_type(d, s, primary(sw))) {
            std::vector<NodeId> hs = d.neighbors(s);
            if (valid_h_backward(d, s, hs, sw)) {
              std::vector<std::pair<std::string, NodeId>> b{{"s", s}};
              for (std::size_t k = 0; k < hs.size(); ++k) b.push_back({"h" + std::to_string(k), hs[k]});
              emit(std::move(b), sw);
            }
          }
        }
        break;
      case RuleId::kPi:
        for (NodeId p : ids)
          for (NodeId s : ids)
            if (valid_pi(d, p, s, sw)) emit({{"pi", p}, {"s", s}}, sw);
        break;
      case RuleId::kC:
        for (NodeId k : ids)
          for (NodeId s : ids)
            if (valid_c(d, k, s, sw)) emit({{"state", k}, {"s", s}}, sw);
        break;
      case RuleId::kB:
        if (orientation == Orientation::kForward) {
          for (NodeId z : ids)
            for (NodeId x : ids)
              if (valid_b_forward(d, z, x, sw)) emit({{"z", z}, {"x", x}}, sw);
        } else {
          std::vector<NodeId> zs, xs;
          for (NodeId n : ids) {
            if (is_type(d, n, primary(sw))) zs.push_back(n);
            if (is_type(d, n, secondary(sw))) xs.push_back(n);
          }
          for (std::size_t i = 0; i < zs.size(); ++i)
            for (std::size_t j = i + 1; j < zs.size(); ++j)
              for (std::size_t k = 0; k < xs.size(); ++k)
                for (std::size_t l = k + 1; l < xs.size(); ++l)
                  if (valid_b_backward(d, zs[i], zs[j], xs[k], xs[l], sw))
                    emit({{"z1", zs[i]}, {"z2", zs[j]}, {"x1", xs[k]}, {"x2", xs[l]}}, sw);
        }
        break;
      default:
        break;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    std::vector<NodeId> ka, kb;
    for (const auto& p : a.binding) ka.push_back(p.second);
    for (const auto& p : b.binding) kb.push_back(p.second);
    return ka < kb;
  });
  return out;
}

bool match_is_valid(const Diagram& d, const Match& m) {
  try {
    const bool sw = m.color_swapped;
    const bool fwd = m.orientation == Orientation::kForward;
    switch (m.rule) {
      case RuleId::kF: return valid_f(d, m.at("a"), m.at("b"), sw);
      case RuleId::kI1: return valid_i1(d, m.at("s"), sw);
      case RuleId::kI2: return valid_i2(d, m.at("h1"), m.at("h2"));
      case RuleId::kH:
        return fwd ? valid_h_forward(d, m.at("s"), sw)
                   : valid_h_backward(d, m.at("s"), hadamards_of(m), sw);
      case RuleId::kPi: return valid_pi(d, m.at("pi"), m.at("s"), sw);
      case RuleId::kC: return valid_c(d, m.at("state"), m.at("s"), sw);
      case RuleId::kB:
        return fwd ? valid_b_forward(d, m.at("z"), m.at("x"), sw)
                   : valid_b_backward(d, m.at("z1"), m.at("z2"), m.at("x1"), m.at("x2"), sw);
      default: return false;
    }
  } catch (const Error&) {
    return false;
  }
}

RewriteStep apply(const Diagram& d, const Match& m, const RewriteOptions& opts) {
  if (!is_diagram_rule(m.rule))
    throw Error(ErrorCode::kWrongRuleClass, "sum rules go through apply_enriched");
  if (!match_is_valid(d, m))
    throw Error(ErrorCode::kStaleMatch,
                std::string("match for rule ") + std::string(rule_name(m.rule)) + " no longer applies");
  const bool sw = m.color_swapped;
  const bool fwd = m.orientation == Orientation::kForward;
  Diagram out;
  switch (m.rule) {
    case RuleId::kF: out = rewrite_f(d, m.at("a"), m.at("b")); break;
    case RuleId::kI1:
      out = d;
      out.splice_out(m.at("s"));
      break;
    case RuleId::kI2: {
      out = d;
      NodeId h1 = m.at("h1"), h2 = m.at("h2");
      NodeId a = others(d, h1, h2).at(0), b = others(d, h2, h1).at(0);
      out.remove_node(h1);
      out.remove_node(h2);
      out.join(a, b);
      break;
    }
    case RuleId::kH:
      out = fwd ? rewrite_h_forward(d, m.at("s"), sw)
                : rewrite_h_backward(d, m.at("s"), hadamards_of(m), sw);
      break;
    case RuleId::kPi: out = rewrite_pi(d, m.at("pi"), m.at("s"), sw); break;
    case RuleId::kC: out = rewrite_c(d, m.at("state"), m.at("s"), sw); break;
    case RuleId::kB:
      out = fwd ? rewrite_b_forward(d, m.at("z"), m.at("x"), sw)
                : rewrite_b_backward(d, m.at("z1"), m.at("z2"), m.at("x1"), m.at("x2"), sw);
      break;
    default: break;
  }
  out.validate();
  RewriteStep step{m.rule, m, d, out};
  step.node_delta = long(out.node_count()) - long(d.node_count());
  check_step(step, opts);
  return step;
}

SimplifyResult simplify(const Diagram& d, Strategy strategy, std::size_t max_steps,
                        const RewriteOptions& opts) {
  struct Pass {
    RuleId rule;
    Orientation orientation;
  };
  std::vector<Pass> passes{{RuleId::kF, Orientation::kForward},
                           {RuleId::kI1, Orientation::kForward},
                           {RuleId::kI2, Orientation::kForward}};
  if (strategy == Strategy::kExhaustive) {
    passes.push_back({RuleId::kH, Orientation::kForward});
    passes.push_back({RuleId::kC, Orientation::kForward});
    passes.push_back({RuleId::kPi, Orientation::kForward});
    passes.push_back({RuleId::kB, Orientation::kBackward});
  }
  SimplifyResult res{d, {}};
  while (true) {
    std::optional<Match> next;
    for (const Pass& p : passes) {
      for (Match& m : find_matches(res.result, p.rule, p.orientation)) {
        if (p.rule == RuleId::kH && m.color_swapped) continue;  // X -> Z only
        next = std::move(m);
        break;
      }
      if (next) break;
    }
    if (!next) return res;
    if (res.steps.size() >= max_steps) throw StepBudgetExceeded(std::move(res));
    RewriteStep step = apply(res.result, *next, opts);
    res.result = std::get<Diagram>(step.after);
    res.steps.push_back(std::move(step));
  }
}

// -- sum rules ----------------------------------------------------------------

Evaluation evaluate_term(const Term& t) {
  if (auto* d = std::get_if<Diagram>(&t)) return interpret_cpm(*d);
  if (auto* s = std::get_if<EnrichedZX>(&t)) return evaluate(*s);
  const auto& p = std::get<EnrichedProduct>(t);
  Evaluation l = evaluate(p.left), r = evaluate(p.right);
  if (p.left.monad() == Monad::kMultiset) {
    const auto& a = std::get<ComplexMatrix>(l);
    const auto& b = std::get<ComplexMatrix>(r);
    return p.kind == EnrichedProduct::Kind::kSeq ? b * a : kron(a, b);
  }
  const auto& a = std::get<Superoperator>(l);
  const auto& b = std::get<Superoperator>(r);
  return p.kind == EnrichedProduct::Kind::kSeq ? superop_compose(a, b) : superop_tensor(a, b);
}

namespace {

Monad term_monad(const Term& t) {
  if (auto* s = std::get_if<EnrichedZX>(&t)) return s->monad();
  if (auto* p = std::get_if<EnrichedProduct>(&t)) return p->left.monad();
  return Monad::kDistribution;
}

// Multiset terms compare as matrices, so a bare diagram on either side is
// read through its standard interpretation in that case.
Evaluation evaluate_in_context(const Term& t, Monad monad) {
  if (auto* d = std::get_if<Diagram>(&t); d && monad == Monad::kMultiset) return interpret(*d);
  return evaluate_term(t);
}

EnrichedZX expand(const EnrichedProduct& p) {
  return p.kind == EnrichedProduct::Kind::kSeq ? seq_compose(p.left, p.right)
                                               : par_tensor(p.left, p.right);
}

[[noreturn]] void bad_site(const std::string& msg) { throw Error(ErrorCode::kSiteInvalid, msg); }

const EnrichedZX& need_sum(const Term& t, RuleId rule) {
  auto* s = std::get_if<EnrichedZX>(&t);
  if (!s) bad_site(std::string(rule_name(rule)) + " applies to a formal sum");
  return *s;
}

std::size_t branch_at(const EnrichedSite& site, std::size_t k, const EnrichedZX& s) {
  if (site.branches.size() <= k) bad_site("missing branch index");
  std::size_t i = site.branches[k];
  if (i >= s.size()) bad_site("branch index " + std::to_string(i) + " out of range");
  return i;
}

}  // namespace

RewriteStep apply_enriched(const Term& t, RuleId rule, const EnrichedSite& site,
                           RewriteOptions opts) {
  if (is_diagram_rule(rule))
    throw Error(ErrorCode::kWrongRuleClass,
                std::string(rule_name(rule)) + " rewrites diagrams, not formal sums");
  const bool fwd = site.orientation == Orientation::kForward;
  Match m{rule, {}, site.orientation, false};
  for (std::size_t k = 0; k < site.branches.size(); ++k)
    m.binding.push_back({"branch" + std::to_string(k), NodeId(site.branches[k])});
  std::optional<Term> after;

  switch (rule) {
    case RuleId::kES:
    case RuleId::kEP: {
      auto kind = rule == RuleId::kES ? EnrichedProduct::Kind::kSeq : EnrichedProduct::Kind::kPar;
      if (fwd) {
        auto* p = std::get_if<EnrichedProduct>(&t);
        if (!p || p->kind != kind) bad_site("forward ES/EP needs a matching product of sums");
        after = expand(*p);
      } else {
        const EnrichedZX& s = need_sum(t, rule);
        if (!site.factorization || site.factorization->kind != kind)
          bad_site("backward ES/EP needs a proposed factorisation of the matching kind");
        EnrichedZX expanded = expand(*site.factorization);
        if (!same_terms(canonicalize(expanded), canonicalize(s)))
          bad_site("proposed factorisation does not expand to the given sum");
        after = *site.factorization;
      }
      break;
    }
    case RuleId::kEC: {
      const EnrichedZX& s = need_sum(t, rule);
      std::size_t i = branch_at(site, 0, s), j = branch_at(site, 1, s);
      if (i == j) bad_site("EC needs two distinct branches");
      auto b = s.branches();
      std::swap(b[i], b[j]);
      after = EnrichedZX(s.monad(), std::move(b), s.arity());
      break;
    }
    case RuleId::kEDelta: {
      if (fwd) {
        const EnrichedZX& s = need_sum(t, rule);
        if (s.size() != 1 || std::abs(s.branches()[0].weight - Weight(1.0, 0.0)) > kZeroWeight)
          bad_site("EDelta unwraps only a single branch of weight 1");
        after = s.branches()[0].payload;
      } else {
        auto* d = std::get_if<Diagram>(&t);
        if (!d) bad_site("backward EDelta wraps a bare diagram");
        after = dirac(*d);
      }
      break;
    }
    case RuleId::kEPlus: {
      const EnrichedZX& s = need_sum(t, rule);
      if (!fwd) bad_site("EPlus has no backward form here");
      std::size_t i = branch_at(site, 0, s), j = branch_at(site, 1, s);
      if (i == j) bad_site("EPlus needs two distinct branches");
      if (!iso_equal(s.branches()[i].payload, s.branches()[j].payload))
        bad_site("EPlus branches are not the same diagram");
      auto b = s.branches();
      b[i].weight += b[j].weight;
      b.erase(b.begin() + std::ptrdiff_t(j));
      after = EnrichedZX(s.monad(), std::move(b), s.arity());
      break;
    }
    case RuleId::kEZero: {
      const EnrichedZX& s = need_sum(t, rule);
      if (!fwd) bad_site("EZero has no backward form here");
      std::size_t i = branch_at(site, 0, s);
      if (std::abs(s.branches()[i].weight) > kZeroWeight) bad_site("EZero branch has nonzero weight");
      auto b = s.branches();
      b.erase(b.begin() + std::ptrdiff_t(i));
      after = EnrichedZX(s.monad(), std::move(b), s.arity());
      break;
    }
    default:
      break;
  }

  RewriteStep step{rule, m, t, *after};
  step.node_delta = long(term_nodes(*after)) - long(term_nodes(t));
  if (opts.check_soundness) {
    Monad monad = term_monad(t) == Monad::kMultiset || term_monad(*after) == Monad::kMultiset
                      ? Monad::kMultiset
                      : Monad::kDistribution;
    ComplexMatrix before = evaluation_matrix(evaluate_in_context(t, monad));
    ComplexMatrix aft = evaluation_matrix(evaluate_in_context(*after, monad));
    ScalarFit fit = fit_scalar(before, aft, opts.policy, opts.tol);
    if (!fit.equal)
      throw Error(ErrorCode::kSoundnessViolation,
                  std::string("rule ") + std::string(rule_name(rule)) +
                      " changed the evaluation (residual " + std::to_string(fit.residual) + ")");
    step.fitted_scalar = fit.lambda;
    step.checked = true;
  }
  return step;
}

std::string step_to_json_line(const RewriteStep& step) {
  nlohmann::ordered_json j;
  j["rule"] = std::string(rule_name(step.rule));
  j["orientation"] = step.match.orientation == Orientation::kForward ? "forward" : "backward";
  j["color_swapped"] = step.match.color_swapped;
  nlohmann::ordered_json binding = nlohmann::ordered_json::object();
  for (const auto& [name, id] : step.match.binding) binding[name] = id;
  j["binding"] = binding;
  if (step.checked)
    j["fitted_scalar"] = {step.fitted_scalar.real(), step.fitted_scalar.imag()};
  else
    j["fitted_scalar"] = nullptr;
  j["node_delta"] = step.node_delta;
  return j.dump();
}

}  // namespace zxe
