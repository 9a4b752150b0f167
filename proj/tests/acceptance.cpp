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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "random_diagrams.hpp"
#include "rule_sampler.hpp"
#include "zxe/json_io.hpp"
#include "zxe/qem.hpp"
#include "zxe/rewrite.hpp"

#ifndef ZXE_CLI_PATH
#error "ZXE_CLI_PATH must point at the zxe executable"
#endif

namespace {

using namespace zxe;
using testing::Rng;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

ComplexMatrix pauli_matrix(Pauli p) {
  return p == Pauli::kX ? oracle::X() : p == Pauli::kY ? oracle::Y() : oracle::Z();
}

double cpm_diff(const Superoperator& a, const Superoperator& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out) return 1e300;
  return max_abs_diff(a.mat, b.mat);
}

// ---- 1 ----
Outcome symmetry_verification_cli() {
  Outcome o;
  for (const char* sym : {"X", "Y", "Z"}) {
    std::string cmd = std::string(ZXE_CLI_PATH) + " noise-sv --p-grid 0:0.9:0.1 --symmetry " + sym;
    auto t0 = std::chrono::steady_clock::now();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      o.fail("cannot run " + cmd);
      continue;
    }
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (status != 0) o.fail(std::string(sym) + ": exit status " + std::to_string(status));
    if (secs >= 1.0) o.fail(std::string(sym) + ": took " + std::to_string(secs) + " s");
    std::istringstream in(out);
    std::string line;
    std::getline(in, line);
    if (line != "p,acceptance_numeric,acceptance_closed_form,abs_error") o.fail("bad header: " + line);
    int rows = 0;
    while (std::getline(in, line)) {
      double p, num, cf, err;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &p, &num, &cf, &err) != 4) {
        o.fail("bad row: " + line);
        continue;
      }
      double want = 1.0 - 2.0 * (rows / 10.0) / 3.0;
      if (std::abs(p - rows / 10.0) > 1e-12) o.fail("unexpected p " + line);
      if (std::abs(num - want) > 1e-9 || err > 1e-9) o.fail(std::string(sym) + " row " + line);
      ++rows;
    }
    if (rows != 10) o.fail(std::string(sym) + ": " + std::to_string(rows) + " rows");
  }
  return o;
}

// ---- 2 ----
EnrichedZX small_sum(Rng& rng) {
  std::size_t q = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  return testing::random_sum(rng, q, 4);
}

Outcome enriched_rules() {
  Outcome o;
  Rng rng(2001);
  const RewriteOptions unchecked{false};
  auto check = [&](const char* rule, double diff) {
    if (!(diff <= 1e-9)) o.fail(std::string(rule) + " off by " + std::to_string(diff));
  };
  for (int t = 0; t < 100; ++t) {
    // (es): <<b . a>> = <<b>> o <<a>>
    EnrichedZX a = small_sum(rng);
    EnrichedZX b0 = testing::random_sum(rng, a.out_arity(), 4);
    EnrichedProduct seq{EnrichedProduct::Kind::kSeq, a, b0};
    RewriteStep s = apply_enriched(seq, RuleId::kES, {}, unchecked);
    Superoperator lhs = evaluate_cpm(std::get<EnrichedZX>(s.after));
    ComplexMatrix rhs = evaluate_cpm(b0).mat * evaluate_cpm(a).mat;
    check("es", max_abs_diff(lhs.mat, rhs));

    // (ep): <<a (x) b>> = <<a>> (x) <<b>>
    EnrichedZX c = testing::random_sum(rng, std::uniform_int_distribution<std::size_t>(1, 2)(rng), 4);
    EnrichedZX d = testing::random_sum(rng, 1, 4);
    s = apply_enriched(EnrichedProduct{EnrichedProduct::Kind::kPar, c, d}, RuleId::kEP, {}, unchecked);
    check("ep", cpm_diff(evaluate_cpm(std::get<EnrichedZX>(s.after)), superop_tensor(evaluate_cpm(c), evaluate_cpm(d))));

    // (ec): branch order is irrelevant
    EnrichedZX e = small_sum(rng);
    while (e.size() < 2) e = small_sum(rng);
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng), j = i;
    while (j == i) j = std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng);
    s = apply_enriched(e, RuleId::kEC, {{i, j}}, unchecked);
    check("ec", cpm_diff(evaluate_cpm(std::get<EnrichedZX>(s.after)), evaluate_cpm(e)));

    // (e-delta): 1[D] = D
    Diagram g = testing::random_circuit(rng, std::uniform_int_distribution<std::size_t>(1, 3)(rng), 2);
    s = apply_enriched(dirac(g), RuleId::kEDelta, {}, unchecked);
    check("edelta", cpm_diff(interpret_cpm(std::get<Diagram>(s.after)), interpret_cpm(g)));
    s = apply_enriched(g, RuleId::kEDelta, {{}, Orientation::kBackward}, unchecked);
    check("edelta", cpm_diff(evaluate_cpm(std::get<EnrichedZX>(s.after)), interpret_cpm(g)));

    // (e+): p[D] + q[D] = (p+q)[D]
    EnrichedZX f = testing::random_sum_with_repeats(rng, std::uniform_int_distribution<std::size_t>(1, 3)(rng), 4,
                                                    Monad::kDistribution);
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t x = 0; x < f.size() && !pair; ++x)
      for (std::size_t y = x + 1; y < f.size() && !pair; ++y)
        if (PayloadTraits<Diagram>::key(PayloadTraits<Diagram>::normalize(f.branches()[x].payload)) ==
            PayloadTraits<Diagram>::key(PayloadTraits<Diagram>::normalize(f.branches()[y].payload)))
          pair = {x, y};
    if (!pair) {
      --t;  // redraw
      continue;
    }
    s = apply_enriched(f, RuleId::kEPlus, {{pair->first, pair->second}}, unchecked);
    check("e+", cpm_diff(evaluate_cpm(std::get<EnrichedZX>(s.after)), evaluate_cpm(f)));

    // (e0): 0[D] + rest = rest
    EnrichedZX h = small_sum(rng);
    std::vector<Branch<Diagram>> with_zero = h.branches();
    std::size_t at = std::uniform_int_distribution<std::size_t>(0, with_zero.size())(rng);
    with_zero.insert(with_zero.begin() + long(at),
                     {Weight(0.0, 0.0), testing::random_circuit(rng, h.in_arity(), 1)});
    EnrichedZX hz(Monad::kDistribution, with_zero);
    s = apply_enriched(hz, RuleId::kEZero, {{at}}, unchecked);
    check("e0", cpm_diff(evaluate_cpm(std::get<EnrichedZX>(s.after)), evaluate_cpm(h)));
  }
  return o;
}

// ---- 3 ----
Outcome zx_rules() {
  Outcome o;
  Rng rng(3001);
  struct Kind {
    RuleId r;
    Orientation dir;
  };
  std::vector<Kind> kinds{{RuleId::kF, Orientation::kForward},  {RuleId::kI1, Orientation::kForward},
                          {RuleId::kI2, Orientation::kForward}, {RuleId::kH, Orientation::kForward},
                          {RuleId::kH, Orientation::kBackward}, {RuleId::kC, Orientation::kForward},
                          {RuleId::kPi, Orientation::kForward}, {RuleId::kB, Orientation::kForward},
                          {RuleId::kB, Orientation::kBackward}};
  std::map<std::string, int> scalars;
  std::map<std::string, int> per_rule;
  for (int t = 0; t < 200; ++t) {
    const Kind& k = kinds[std::size_t(t / 2) % kinds.size()];
    bool swapped = t % 2 && k.r != RuleId::kI2;  // I2 involves no spiders
    auto sample = testing::sample_rule(rng, k.r, k.dir, swapped, 8, true);
    std::string name = std::string(rule_name(k.r)) + (k.dir == Orientation::kBackward ? "<-" : "") +
                       (k.r == RuleId::kI2 ? "" : swapped ? "(X/Z)" : "(Z/X)");
    if (!sample) {
      o.fail("no instance for " + name);
      continue;
    }
    RewriteStep step = apply(sample->diagram, sample->match, RewriteOptions{false});
    const Diagram& after = std::get<Diagram>(step.after);
    ScalarFit fit = fit_scalar(interpret_cpm(sample->diagram).mat, interpret_cpm(after).mat,
                               ScalarPolicy::kUpToScalar, 1e-9);
    if (!fit.equal || std::abs(fit.lambda) < 1e-12) {
      o.fail(name + " unsound, residual " + std::to_string(fit.residual));
      continue;
    }
    char buf[64];
    auto chop = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", chop(fit.lambda.real()), chop(fit.lambda.imag()));
    ++scalars[buf];
    ++per_rule[name];
  }
  std::string report = "fitted scalars:";
  for (const auto& [s, n] : scalars) report += " " + s + " x" + std::to_string(n);
  report += "; applications:";
  for (const auto& [r, n] : per_rule) report += " " + r + "=" + std::to_string(n);
  if (o.ok) o.detail = report;
  else o.detail += " | " + report;
  return o;
}

// ---- 4 ----
Outcome interchange() {
  Outcome o;
  Rng rng(4001);
  for (int t = 0; t < 50; ++t) {
    Diagram g1 = testing::random_one_qubit(rng), e = testing::random_one_qubit(rng),
            g2 = testing::random_one_qubit(rng);
    EnrichedZX mix(Monad::kDistribution, {{0.9, g1}, {0.1, e}});
    Superoperator got = evaluate_cpm(par_tensor(mix, dirac(g2)));
    ComplexMatrix a = oracle::okron(interpret(g1), interpret(g2)), b = oracle::okron(interpret(e), interpret(g2));
    auto conj_by = [](const ComplexMatrix& k) {
      return oracle::superop_of(4, 4, [&](const ComplexMatrix& rho) { return k * rho * k.adjoint(); });
    };
    ComplexMatrix want = 0.9 * conj_by(a) + 0.1 * conj_by(b);
    double diff = max_abs_diff(got.mat, want);
    if (diff > 1e-12) o.fail("case " + std::to_string(t) + " off by " + std::to_string(diff));
  }
  return o;
}

// ---- 5 ----
Outcome depolarizing_channel() {
  Outcome o;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    ComplexMatrix want = oracle::superop_of(2, 2, [&](const ComplexMatrix& rho) { return oracle::depolarize(rho, p); });
    double diff = max_abs_diff(evaluate_cpm(depolarizing(p).formal_sum).mat, want);
    if (diff > 1e-12) o.fail("p=" + std::to_string(p) + " off by " + std::to_string(diff));
  }
  ComplexMatrix rho = apply_superop(evaluate_cpm(depolarizing(0.75).formal_sum), oracle::density(oracle::ket(2, 0)));
  if (max_abs_diff(rho, 0.5 * oracle::I2()) > 1e-12) o.fail("depolarizing(3/4)|0><0| is not I/2");
  return o;
}

// ---- 6 ----
Outcome gate_splitting() {
  Outcome o;
  for (Pauli p : {Pauli::kX, Pauli::kY, Pauli::kZ})
    for (int k = 0; k < 16; ++k) {
      double alpha = -std::numbers::pi + k * (2 * std::numbers::pi / 16) + 0.05;
      auto got = std::get<ComplexMatrix>(evaluate(gate_split(alpha, p)));
      ComplexMatrix want =
          std::cos(alpha) * oracle::I2() + Complex(0.0, std::sin(alpha)) * pauli_matrix(p);
      double diff = max_abs_diff(got, want);
      if (diff > 1e-12) o.fail(std::string(pauli_name(p)) + " alpha=" + std::to_string(alpha));
    }
  return o;
}

// ---- 7 ----
Outcome functoriality() {
  Outcome o;
  Rng rng(7001);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    Diagram f = testing::random_diagram(rng, n);
    Diagram g = testing::random_diagram(rng, f.out_arity());
    double seq = max_abs_diff(interpret(compose(f, g)), interpret(g) * interpret(f));
    double par = max_abs_diff(interpret(tensor(f, g)), oracle::okron(interpret(f), interpret(g)));
    if (seq > 1e-10 || par > 1e-10) o.fail("pair " + std::to_string(t));
  }
  return o;
}

// ---- 8 ----
Outcome canonical_form() {
  Outcome o;
  Rng rng(8001);
  for (int t = 0; t < 500; ++t) {
    Monad m = t % 2 ? Monad::kMultiset : Monad::kDistribution;
    EnrichedZX s = testing::random_sum_with_repeats(rng, std::uniform_int_distribution<std::size_t>(1, 2)(rng), 6, m);
    std::string once = sum_to_json(canonicalize(s, {}));
    if (sum_to_json(canonicalize(canonicalize(s, {}), {})) != once) o.fail("not idempotent, case " + std::to_string(t));
    std::vector<Branch<Diagram>> shuffled = s.branches();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& b : shuffled) b.payload = testing::relabel_randomly(b.payload, rng);
    if (sum_to_json(canonicalize(EnrichedZX(m, shuffled), {})) != once)
      o.fail("not permutation invariant, case " + std::to_string(t));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  std::vector<Criterion> all{
      {1, "symmetry verification closed form (CLI)", symmetry_verification_cli, 3.0},
      {2, "enriched-rule soundness", enriched_rules, 30.0},
      {3, "ZX-rule soundness", zx_rules, 60.0},
      {4, "interchange of tensor and convex sum", interchange, 0.0},
      {5, "depolarizing channel", depolarizing_channel, 0.0},
      {6, "gate splitting", gate_splitting, 0.0},
      {7, "functoriality", functoriality, 0.0},
      {8, "canonical form", canonical_form, 0.0},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.fail("over time budget");
    failed += !o.ok;
    std::printf("criterion %d %s: %s (%.3f s)%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, secs,
                o.detail.empty() ? "" : " ", o.detail.c_str());
  }
  return failed ? 1 : 0;
}
