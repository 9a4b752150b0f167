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

#include "zxe/zxe.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "zxe/iso.hpp"
#include "zxe/json_io.hpp"
#include "zxe/qem.hpp"
#include "zxe/rewrite.hpp"

struct zxe_diagram {
  zxe::Diagram value;
};
struct zxe_sum {
  zxe::EnrichedZX value;
};
struct zxe_matrix {
  zxe::ComplexMatrix value;
};

namespace {

thread_local std::string g_last_error;

zxe_status fail(zxe_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
zxe_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return ZXE_OK;
  } catch (const zxe::Error& e) {
    return fail(static_cast<zxe_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ZXE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ZXE_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw zxe::Error(zxe::ErrorCode::kInvalidArgument, std::string("null argument: ") + what);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

zxe::RewriteOptions options(const zxe_rewrite_options* o) {
  zxe::RewriteOptions r;
  if (o) {
    r.check_soundness = o->check_soundness != 0;
    r.policy = o->policy == ZXE_POLICY_EXACT ? zxe::ScalarPolicy::kExact : zxe::ScalarPolicy::kUpToScalar;
    r.tol = o->tol;
  }
  return r;
}

zxe::Orientation orientation(int backward) {
  return backward ? zxe::Orientation::kBackward : zxe::Orientation::kForward;
}

std::string trace_of(const std::vector<zxe::RewriteStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += zxe::step_to_json_line(s) + "\n";
  return out;
}

zxe_status make_diagram(zxe_diagram** out, zxe::Diagram (*make)()) {
  return guarded([&] {
    require(out, "out");
    *out = new zxe_diagram{make()};
  });
}

zxe_status make_spider(bool z, size_t n, size_t m, int64_t num, int64_t den, zxe_diagram** out) {
  return guarded([&] {
    require(out, "out");
    if (den == 0) throw zxe::Error(zxe::ErrorCode::kInvalidArgument, "phase denominator is zero");
    zxe::Phase p = zxe::Phase::rational(num, den);
    *out = new zxe_diagram{z ? zxe::z_spider(n, m, p) : zxe::x_spider(n, m, p)};
  });
}

}  // namespace

extern "C" {

const char* zxe_last_error(void) { return g_last_error.c_str(); }

const char* zxe_status_name(zxe_status status) {
  if (status == ZXE_OK) return "ok";
  if (status == ZXE_ERR_INTERNAL) return "internal";
  if (status >= ZXE_ERR_ARITY_MISMATCH && status <= ZXE_ERR_INVALID_ARGUMENT)
    return zxe::error_code_name(static_cast<zxe::ErrorCode>(status));
  return "unknown";
}

void zxe_string_free(char* s) { std::free(s); }

zxe_rewrite_options zxe_rewrite_options_default(void) {
  zxe::RewriteOptions d;
  return {d.check_soundness ? 1 : 0, ZXE_POLICY_UP_TO_SCALAR, d.tol};
}

zxe_status zxe_diagram_from_json(const char* json, zxe_diagram** out) {
  return guarded([&] {
    require(json && out, "json/out");
    *out = new zxe_diagram{zxe::diagram_from_json(json)};
  });
}

zxe_status zxe_diagram_to_json(const zxe_diagram* d, char** out) {
  return guarded([&] {
    require(d && out, "diagram/out");
    *out = dup(zxe::diagram_to_json(d->value));
  });
}

void zxe_diagram_free(zxe_diagram* d) { delete d; }

zxe_status zxe_diagram_z_spider(size_t n, size_t m, int64_t num, int64_t den, zxe_diagram** out) {
  return make_spider(true, n, m, num, den, out);
}
zxe_status zxe_diagram_x_spider(size_t n, size_t m, int64_t num, int64_t den, zxe_diagram** out) {
  return make_spider(false, n, m, num, den, out);
}
zxe_status zxe_diagram_hadamard(zxe_diagram** out) { return make_diagram(out, zxe::hadamard); }
zxe_status zxe_diagram_swap(zxe_diagram** out) { return make_diagram(out, zxe::swap); }
zxe_status zxe_diagram_cup(zxe_diagram** out) { return make_diagram(out, zxe::cup); }
zxe_status zxe_diagram_cap(zxe_diagram** out) { return make_diagram(out, zxe::cap); }
zxe_status zxe_diagram_discard(zxe_diagram** out) { return make_diagram(out, zxe::discard); }
zxe_status zxe_diagram_empty(zxe_diagram** out) { return make_diagram(out, zxe::empty); }

zxe_status zxe_diagram_identity(size_t wires, zxe_diagram** out) {
  return guarded([&] {
    require(out, "out");
    *out = new zxe_diagram{zxe::identity(wires)};
  });
}

zxe_status zxe_diagram_compose(const zxe_diagram* f, const zxe_diagram* g, zxe_diagram** out) {
  return guarded([&] {
    require(f && g && out, "f/g/out");
    *out = new zxe_diagram{zxe::compose(f->value, g->value)};
  });
}

zxe_status zxe_diagram_tensor(const zxe_diagram* f, const zxe_diagram* g, zxe_diagram** out) {
  return guarded([&] {
    require(f && g && out, "f/g/out");
    *out = new zxe_diagram{zxe::tensor(f->value, g->value)};
  });
}

zxe_status zxe_diagram_dagger(const zxe_diagram* f, zxe_diagram** out) {
  return guarded([&] {
    require(f && out, "f/out");
    *out = new zxe_diagram{zxe::dagger(f->value)};
  });
}

zxe_status zxe_diagram_arity(const zxe_diagram* d, size_t* in, size_t* out) {
  return guarded([&] {
    require(d && in && out, "diagram/in/out");
    *in = d->value.in_arity();
    *out = d->value.out_arity();
  });
}

zxe_status zxe_diagram_node_count(const zxe_diagram* d, size_t* count) {
  return guarded([&] {
    require(d && count, "diagram/count");
    *count = d->value.node_count();
  });
}

zxe_status zxe_diagram_has_discard(const zxe_diagram* d, int* result) {
  return guarded([&] {
    require(d && result, "diagram/result");
    *result = d->value.has_discard() ? 1 : 0;
  });
}

zxe_status zxe_diagram_validate(const zxe_diagram* d) {
  return guarded([&] {
    require(d, "diagram");
    d->value.validate();
  });
}

zxe_status zxe_diagram_iso_equal(const zxe_diagram* a, const zxe_diagram* b, int* equal) {
  return guarded([&] {
    require(a && b && equal, "a/b/equal");
    *equal = zxe::iso_equal(a->value, b->value) ? 1 : 0;
  });
}

zxe_status zxe_interpret(const zxe_diagram* d, zxe_matrix** out) {
  return guarded([&] {
    require(d && out, "diagram/out");
    *out = new zxe_matrix{zxe::interpret(d->value)};
  });
}

zxe_status zxe_interpret_cpm(const zxe_diagram* d, zxe_matrix** out) {
  return guarded([&] {
    require(d && out, "diagram/out");
    *out = new zxe_matrix{zxe::interpret_cpm(d->value).mat};
  });
}

zxe_status zxe_matrix_from_json(const char* json, zxe_matrix** out) {
  return guarded([&] {
    require(json && out, "json/out");
    *out = new zxe_matrix{zxe::matrix_from_json(json)};
  });
}

zxe_status zxe_matrix_to_json(const zxe_matrix* m, char** out) {
  return guarded([&] {
    require(m && out, "matrix/out");
    *out = dup(zxe::matrix_to_json(m->value));
  });
}

void zxe_matrix_free(zxe_matrix* m) { delete m; }
size_t zxe_matrix_rows(const zxe_matrix* m) { return m ? m->value.rows() : 0; }
size_t zxe_matrix_cols(const zxe_matrix* m) { return m ? m->value.cols() : 0; }

zxe_status zxe_matrix_get(const zxe_matrix* m, size_t row, size_t col, double* re, double* im) {
  return guarded([&] {
    require(m && re && im, "matrix/re/im");
    if (row >= m->value.rows() || col >= m->value.cols())
      throw zxe::Error(zxe::ErrorCode::kInvalidArgument, "matrix index out of range");
    *re = m->value(row, col).real();
    *im = m->value(row, col).imag();
  });
}

zxe_status zxe_matrix_scalar_equal(const zxe_matrix* a, const zxe_matrix* b, zxe_policy policy, double tol,
                                   int* equal, double* lambda_re, double* lambda_im, double* residual) {
  return guarded([&] {
    require(a && b && equal, "a/b/equal");
    if (a->value.rows() != b->value.rows() || a->value.cols() != b->value.cols())
      throw zxe::Error(zxe::ErrorCode::kShapeMismatch, "matrices have different shapes");
    auto fit = zxe::fit_scalar(a->value, b->value,
                               policy == ZXE_POLICY_EXACT ? zxe::ScalarPolicy::kExact
                                                          : zxe::ScalarPolicy::kUpToScalar,
                               tol);
    *equal = fit.equal ? 1 : 0;
    if (lambda_re) *lambda_re = fit.lambda.real();
    if (lambda_im) *lambda_im = fit.lambda.imag();
    if (residual) *residual = fit.residual;
  });
}

zxe_status zxe_sum_from_json(const char* json, zxe_sum** out) {
  return guarded([&] {
    require(json && out, "json/out");
    *out = new zxe_sum{zxe::sum_from_json(json)};
  });
}

zxe_status zxe_sum_to_json(const zxe_sum* s, char** out) {
  return guarded([&] {
    require(s && out, "sum/out");
    *out = dup(zxe::sum_to_json(s->value));
  });
}

void zxe_sum_free(zxe_sum* s) { delete s; }

zxe_status zxe_json_is_sum(const char* json, int* is_sum) {
  return guarded([&] {
    require(json && is_sum, "json/is_sum");
    *is_sum = zxe::json_is_sum(json) ? 1 : 0;
  });
}

zxe_status zxe_sum_dirac(const zxe_diagram* d, zxe_monad monad, zxe_sum** out) {
  return guarded([&] {
    require(d && out, "diagram/out");
    *out = new zxe_sum{zxe::dirac(d->value, monad == ZXE_MONAD_MULTISET ? zxe::Monad::kMultiset
                                                                         : zxe::Monad::kDistribution)};
  });
}

zxe_status zxe_sum_size(const zxe_sum* s, size_t* size) {
  return guarded([&] {
    require(s && size, "sum/size");
    *size = s->value.size();
  });
}

zxe_status zxe_sum_seq_compose(const zxe_sum* a, const zxe_sum* b, zxe_sum** out) {
  return guarded([&] {
    require(a && b && out, "a/b/out");
    *out = new zxe_sum{zxe::seq_compose(a->value, b->value)};
  });
}

zxe_status zxe_sum_par_tensor(const zxe_sum* a, const zxe_sum* b, zxe_sum** out) {
  return guarded([&] {
    require(a && b && out, "a/b/out");
    *out = new zxe_sum{zxe::par_tensor(a->value, b->value)};
  });
}

zxe_status zxe_sum_canonicalize(const zxe_sum* s, int semantic_merge, zxe_sum** out) {
  return guarded([&] {
    require(s && out, "sum/out");
    zxe::CanonicalizeOptions opts;
    opts.semantic_merge = semantic_merge != 0;
    *out = new zxe_sum{zxe::canonicalize(s->value, opts)};
  });
}

zxe_status zxe_sum_evaluate(const zxe_sum* s, zxe_matrix** out, int* is_superop) {
  return guarded([&] {
    require(s && out, "sum/out");
    zxe::Evaluation e = zxe::evaluate(s->value);
    bool so = std::holds_alternative<zxe::Superoperator>(e);
    *out = new zxe_matrix{so ? std::get<zxe::Superoperator>(e).mat : std::get<zxe::ComplexMatrix>(e)};
    if (is_superop) *is_superop = so ? 1 : 0;
  });
}

zxe_status zxe_find_matches(const zxe_diagram* d, const char* rule, int backward, char** json) {
  return guarded([&] {
    require(d && rule && json, "diagram/rule/json");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& m : zxe::find_matches(d->value, zxe::parse_rule(rule), orientation(backward))) {
      nlohmann::ordered_json o;
      o["rule"] = std::string(zxe::rule_name(m.rule));
      o["orientation"] = backward ? "backward" : "forward";
      o["color_swapped"] = m.color_swapped;
      nlohmann::ordered_json b = nlohmann::ordered_json::object();
      for (const auto& [name, id] : m.binding) b[name] = id;
      o["binding"] = b;
      arr.push_back(o);
    }
    *json = dup(arr.dump() + "\n");
  });
}

zxe_status zxe_rewrite(const zxe_diagram* d, const char* rule, int backward, size_t index,
                       const zxe_rewrite_options* opts, zxe_diagram** out, char** trace) {
  return guarded([&] {
    require(d && rule && out, "diagram/rule/out");
    auto matches = zxe::find_matches(d->value, zxe::parse_rule(rule), orientation(backward));
    if (index >= matches.size())
      throw zxe::Error(zxe::ErrorCode::kSiteInvalid, "rule " + std::string(rule) + " has " +
                                                         std::to_string(matches.size()) +
                                                         " matches, index " + std::to_string(index) +
                                                         " requested");
    zxe::RewriteStep step = zxe::apply(d->value, matches[index], options(opts));
    std::string line = zxe::step_to_json_line(step) + "\n";
    *out = new zxe_diagram{std::get<zxe::Diagram>(step.after)};
    if (trace) *trace = dup(line);
  });
}

zxe_status zxe_simplify(const zxe_diagram* d, int fusion_only, size_t max_steps, const zxe_rewrite_options* opts,
                        zxe_diagram** out, char** trace) {
  std::string budget_msg;
  zxe_status s = guarded([&] {
    require(d && out, "diagram/out");
    zxe::SimplifyResult r;
    try {
      r = zxe::simplify(d->value, fusion_only ? zxe::Strategy::kFusionOnly : zxe::Strategy::kExhaustive,
                        max_steps, options(opts));
    } catch (const zxe::StepBudgetExceeded& e) {
      r = e.partial();
      budget_msg = e.what();
    }
    std::string t = trace_of(r.steps);
    *out = new zxe_diagram{std::move(r.result)};
    if (trace) *trace = dup(t);
  });
  if (s == ZXE_OK && !budget_msg.empty()) return fail(ZXE_ERR_STEP_BUDGET_EXCEEDED, budget_msg);
  return s;
}

zxe_status zxe_rewrite_sum(const char* json, const char* rule, int backward, const size_t* branches,
                           size_t n_branches, const zxe_rewrite_options* opts, char** result_json, char** trace) {
  return guarded([&] {
    require(json && rule && result_json, "json/rule/result");
    zxe::RuleId r = zxe::parse_rule(rule);
    if (r == zxe::RuleId::kES || r == zxe::RuleId::kEP)
      throw zxe::Error(zxe::ErrorCode::kInvalidArgument, "ES/EP take two sums; use zxe_rewrite_distribute");
    zxe::Term t = zxe::json_is_sum(json) ? zxe::Term(zxe::sum_from_json(json))
                                         : zxe::Term(zxe::diagram_from_json(json));
    zxe::EnrichedSite site;
    if (n_branches) require(branches, "branches");
    site.branches.assign(branches, branches + n_branches);
    site.orientation = orientation(backward);
    zxe::RewriteOptions o = opts ? options(opts) : zxe::RewriteOptions{true, zxe::ScalarPolicy::kExact, 1e-9};
    zxe::RewriteStep step = zxe::apply_enriched(t, r, site, o);
    std::string line = zxe::step_to_json_line(step) + "\n";
    if (auto* dd = std::get_if<zxe::Diagram>(&step.after))
      *result_json = dup(zxe::diagram_to_json(*dd));
    else
      *result_json = dup(zxe::sum_to_json(std::get<zxe::EnrichedZX>(step.after)));
    if (trace) *trace = dup(line);
  });
}

zxe_status zxe_rewrite_distribute(const zxe_sum* a, const zxe_sum* b, int parallel,
                                  const zxe_rewrite_options* opts, zxe_sum** out, char** trace) {
  return guarded([&] {
    require(a && b && out, "a/b/out");
    zxe::EnrichedProduct p{parallel ? zxe::EnrichedProduct::Kind::kPar : zxe::EnrichedProduct::Kind::kSeq,
                           a->value, b->value};
    zxe::RewriteOptions o = opts ? options(opts) : zxe::RewriteOptions{true, zxe::ScalarPolicy::kExact, 1e-9};
    zxe::RewriteStep step =
        zxe::apply_enriched(p, parallel ? zxe::RuleId::kEP : zxe::RuleId::kES, zxe::EnrichedSite{}, o);
    std::string line = zxe::step_to_json_line(step) + "\n";
    *out = new zxe_sum{std::get<zxe::EnrichedZX>(step.after)};
    if (trace) *trace = dup(line);
  });
}

zxe_status zxe_depolarizing(double p, zxe_sum** out) {
  return guarded([&] {
    require(out, "out");
    *out = new zxe_sum{zxe::depolarizing(p).formal_sum};
  });
}

zxe_status zxe_gate_split(double alpha, const char* pauli, zxe_sum** out) {
  return guarded([&] {
    require(pauli && out, "pauli/out");
    *out = new zxe_sum{zxe::gate_split(alpha, zxe::parse_pauli(pauli))};
  });
}

zxe_status zxe_sv_instance(const char* symmetry, double p, zxe_sum** out) {
  return guarded([&] {
    require(symmetry && out, "symmetry/out");
    zxe::Pauli s = zxe::parse_pauli(symmetry);
    *out = new zxe_sum{zxe::build_sv_instance(s, zxe::default_prep(s), zxe::depolarizing(p))};
  });
}

zxe_status zxe_acceptance_probability(const zxe_sum* instance, double* out) {
  return guarded([&] {
    require(instance && out, "instance/out");
    *out = zxe::acceptance_probability(instance->value);
  });
}

zxe_status zxe_sv_sweep(const double* grid, size_t n, const char* symmetry, double* numeric, double* closed_form,
                        double* abs_error) {
  return guarded([&] {
    require(symmetry && (n == 0 || (grid && numeric && closed_form && abs_error)), "grid/outputs");
    auto rows = zxe::sv_sweep(std::vector<double>(grid, grid + n), zxe::parse_pauli(symmetry));
    for (size_t i = 0; i < n; ++i) {
      numeric[i] = rows[i].acceptance_numeric;
      closed_form[i] = rows[i].acceptance_closed_form;
      abs_error[i] = rows[i].abs_error;
    }
  });
}

zxe_status zxe_sv_branch_report(double p, const char* symmetry, char** csv) {
  return guarded([&] {
    require(symmetry && csv, "symmetry/csv");
    zxe::Pauli s = zxe::parse_pauli(symmetry);
    zxe::NoiseChannel noise = zxe::depolarizing(p);
    auto rows = zxe::branch_acceptance(zxe::build_sv_instance(s, zxe::default_prep(s), noise), noise.labels);
    std::string out = "branch,weight,acceptance,contribution\n";
    char buf[128];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g\n", r.label.c_str(), r.weight, r.acceptance,
                    r.contribution);
      out += buf;
    }
    *csv = dup(out);
  });
}

}  // extern "C"
