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

#include "zxe/qem.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>

#include "zxe/semantics.hpp"

namespace zxe {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorCode::kParamOutOfRange, "noise parameter must lie in [0,1], got " + std::to_string(p));
}

Diagram ket0() { return with_scalar(x_spider(0, 1), -1); }
Diagram bra0() { return with_scalar(x_spider(1, 0), -1); }

Diagram on_target(const Diagram& gate) { return tensor(gate, identity(1)); }
Diagram on_control(const Diagram& gate) { return tensor(identity(1), gate); }

}  // namespace

const char* pauli_name(Pauli p) {
  switch (p) {
    case Pauli::kX: return "X";
    case Pauli::kY: return "Y";
    case Pauli::kZ: return "Z";
  }
  return "?";
}

Pauli parse_pauli(std::string_view name) {
  if (name.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(name[0]))) {
      case 'X': return Pauli::kX;
      case 'Y': return Pauli::kY;
      case 'Z': return Pauli::kZ;
    }
  }
  throw Error(ErrorCode::kUnsupportedSymmetry, "unsupported symmetry '" + std::string(name) + "'");
}

Diagram pauli_diagram(Pauli p) {
  switch (p) {
    case Pauli::kX: return x_spider(1, 1, Phase::pi());
    case Pauli::kZ: return z_spider(1, 1, Phase::pi());
    case Pauli::kY:
      return with_scalar(compose(z_spider(1, 1, Phase::pi()), x_spider(1, 1, Phase::pi())), 0,
                         Phase::rational(1, 2));
  }
  throw Error(ErrorCode::kUnsupportedSymmetry, "unknown Pauli");
}

NoiseChannel depolarizing(double p) {
  check_probability(p);
  std::vector<Branch<Diagram>> b{{1.0 - p, identity(1)},
                                 {p / 3.0, pauli_diagram(Pauli::kX)},
                                 {p / 3.0, pauli_diagram(Pauli::kY)},
                                 {p / 3.0, pauli_diagram(Pauli::kZ)}};
  return {"depolarizing", EnrichedZX(Monad::kDistribution, std::move(b)), p, {"I", "X", "Y", "Z"}};
}

NoiseChannel pauli_channel(double p, Pauli pauli) {
  check_probability(p);
  std::vector<Branch<Diagram>> b{{1.0 - p, identity(1)}, {p, pauli_diagram(pauli)}};
  return {std::string("pauli-") + pauli_name(pauli), EnrichedZX(Monad::kDistribution, std::move(b)), p,
          {"I", pauli_name(pauli)}};
}

Diagram default_prep(Pauli symmetry) {
  Diagram plus = compose(ket0(), hadamard());
  switch (symmetry) {
    case Pauli::kX: return plus;
    case Pauli::kY: return compose(plus, z_spider(1, 1, Phase::rational(1, 2)));
    case Pauli::kZ: return ket0();
  }
  throw Error(ErrorCode::kUnsupportedSymmetry, "unknown Pauli");
}

Diagram controlled_pauli(Pauli p) {
  if (p == Pauli::kY) {
    // CY = (S on target) CX (S^dagger on target).
    Diagram sdg = on_target(z_spider(1, 1, Phase::rational(-1, 2)));
    Diagram s = on_target(z_spider(1, 1, Phase::rational(1, 2)));
    return compose(compose(sdg, controlled_pauli(Pauli::kX)), s);
  }
  Diagram d;
  d.set_arity(2, 2);
  NodeId in_t = d.add_node(Node::input(0)), in_c = d.add_node(Node::input(1));
  NodeId out_t = d.add_node(Node::output(0)), out_c = d.add_node(Node::output(1));
  NodeId c = d.add_node(Node::z());
  NodeId t = d.add_node(p == Pauli::kX ? Node::x() : Node::z());
  d.add_edge(in_c, c);
  d.add_edge(c, out_c);
  d.add_edge(in_t, t);
  d.add_edge(t, out_t);
  if (p == Pauli::kX) {
    d.add_edge(c, t);
  } else {
    NodeId h = d.add_node(Node::hadamard());
    d.add_edge(c, h);
    d.add_edge(h, t);
  }
  return with_scalar(d, 1);
}

Diagram verification_circuit(Pauli symmetry) {
  Diagram d = on_control(ket0());
  d = compose(d, on_control(hadamard()));
  d = compose(d, controlled_pauli(symmetry));
  d = compose(d, on_control(hadamard()));
  return compose(d, tensor(discard(), bra0()));
}

EnrichedZX build_sv_instance(Pauli symmetry, const Diagram& prep, const NoiseChannel& noise) {
  if (prep.in_arity() != 0 || prep.out_arity() != 1)
    throw Error(ErrorCode::kArityMismatch, "state preparation must be a 0 -> 1 diagram");
  ComplexMatrix rho = apply_superop(interpret_cpm(prep), ComplexMatrix::identity(1));
  ComplexMatrix s = interpret(pauli_diagram(symmetry));
  if (max_abs_diff(s * rho * s, rho) > 1e-9)
    throw Error(ErrorCode::kInvariantViolation,
                std::string("symmetry ") + pauli_name(symmetry) + " does not fix the prepared state");
  EnrichedZX noisy = seq_compose(dirac(prep), noise.formal_sum);
  return seq_compose(noisy, dirac(verification_circuit(symmetry)));
}

namespace {

Complex scalar_value(const Evaluation& e) {
  const ComplexMatrix& m =
      std::holds_alternative<Superoperator>(e) ? std::get<Superoperator>(e).mat : std::get<ComplexMatrix>(e);
  if (m.rows() != 1 || m.cols() != 1)
    throw Error(ErrorCode::kNotScalar, "instance does not evaluate to a scalar");
  return m(0, 0);
}

double real_part(Complex v) {
  if (std::abs(v.imag()) > 1e-9)
    throw Error(ErrorCode::kNonRealResult, "acceptance has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

}  // namespace

double acceptance_probability(const EnrichedZX& instance) {
  if (instance.in_arity() != 0 || instance.out_arity() != 0)
    throw Error(ErrorCode::kNotScalar, "instance is not a 0 -> 0 sum");
  return real_part(scalar_value(evaluate(instance)));
}

std::vector<BranchContribution> branch_acceptance(const EnrichedZX& instance,
                                                  const std::vector<std::string>& labels) {
  if (instance.in_arity() != 0 || instance.out_arity() != 0)
    throw Error(ErrorCode::kNotScalar, "instance is not a 0 -> 0 sum");
  std::vector<BranchContribution> out;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto& b = instance.branches()[i];
    double w = real_part(b.weight);
    double a = real_part(scalar_value(evaluate(dirac(b.payload, instance.monad()))));
    out.push_back({i < labels.size() ? labels[i] : std::to_string(i), w, a, w * a});
  }
  return out;
}

EnrichedZX gate_split(double alpha, Pauli pauli) {
  std::vector<Branch<Diagram>> b{{Weight(std::cos(alpha), 0.0), identity(1)},
                                 {Weight(0.0, std::sin(alpha)), pauli_diagram(pauli)}};
  return EnrichedZX(Monad::kMultiset, std::move(b));
}

std::vector<SweepRow> sv_sweep(const std::vector<double>& grid, Pauli symmetry) {
  Diagram prep = default_prep(symmetry);
  std::vector<std::future<SweepRow>> jobs;
  for (double p : grid) {
    check_probability(p);
    jobs.push_back(std::async(std::launch::async, [=] {
      double numeric = acceptance_probability(build_sv_instance(symmetry, prep, depolarizing(p)));
      double closed = 1.0 - 2.0 * p / 3.0;
      return SweepRow{p, numeric, closed, std::abs(numeric - closed)};
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, int digits) {
  std::string out = "p,acceptance_numeric,acceptance_closed_form,abs_error\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.*g,%.*g,%.*g,%.*g\n", digits, r.p, digits, r.acceptance_numeric,
                  digits, r.acceptance_closed_form, digits, r.abs_error);
    out += buf;
  }
  return out;
}

}  // namespace zxe
