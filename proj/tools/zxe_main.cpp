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

// zxe command-line front end. Uses only the C interface.
//
// Exit codes:
//   0  success / equal
//   1  not equal
//   2  parse error (malformed or unreadable input)
//   3  semantic error (arity, invariants, rule sites, ...)
//   4  shape mismatch
//   5  tolerance failure (sweep error above tolerance, soundness check)
//   64 usage error

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zxe/zxe.h"

namespace {

enum Exit { kOk = 0, kNotEqual = 1, kParseError = 2, kSemantic = 3, kShape = 4, kTolerance = 5, kUsage = 64 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(zxe_status s) {
  switch (s) {
    case ZXE_OK: return kOk;
    case ZXE_ERR_PARSE: return kParseError;
    case ZXE_ERR_SHAPE_MISMATCH: return kShape;
    case ZXE_ERR_SOUNDNESS_VIOLATION: return kTolerance;
    case ZXE_ERR_INVALID_ARGUMENT: return kUsage;
    default: return kSemantic;
  }
}

void check(zxe_status s) {
  if (s != ZXE_OK) throw Failure{exit_for(s), std::string(zxe_status_name(s)) + ": " + zxe_last_error()};
}

struct Free {
  void operator()(zxe_diagram* d) const { zxe_diagram_free(d); }
  void operator()(zxe_sum* s) const { zxe_sum_free(s); }
  void operator()(zxe_matrix* m) const { zxe_matrix_free(m); }
  void operator()(char* s) const { zxe_string_free(s); }
};
using DiagramPtr = std::unique_ptr<zxe_diagram, Free>;
using SumPtr = std::unique_ptr<zxe_sum, Free>;
using MatrixPtr = std::unique_ptr<zxe_matrix, Free>;
using StringPtr = std::unique_ptr<char, Free>;

template <class T, class F>
std::unique_ptr<T, Free> make(F&& f) {
  T* raw = nullptr;
  check(f(&raw));
  return std::unique_ptr<T, Free>(raw);
}

std::string take(char* s) { return std::string(StringPtr(s).get()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParseError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kSemantic, "cannot write " + path};
}

struct Settings {
  int precision = 0;  // 0: 6 digits for matrices, round-trip for CSV
  double tol = 1e-9;
  std::string policy;  // empty: the command's default
  std::string check_soundness = "on";
  std::string format = "text";

  int text_digits() const { return precision ? precision : 6; }
  int csv_digits() const { return precision; }

  zxe_policy policy_value(zxe_policy fallback = ZXE_POLICY_UP_TO_SCALAR) const {
    if (policy.empty()) return fallback;
    return policy == "exact" ? ZXE_POLICY_EXACT : ZXE_POLICY_UP_TO_SCALAR;
  }
  zxe_rewrite_options rewrite_options(zxe_policy fallback) const {
    return {check_soundness == "on" ? 1 : 0, policy_value(fallback), tol};
  }
};

// precision 0: shortest representation that reads back exactly.
std::string format_number(double v, int precision) {
  char buf[64];
  if (precision == 0)
    *std::to_chars(buf, buf + sizeof buf - 1, v).ptr = '\0';
  else
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

// Contraction round-off below 1e-12 prints as zero.
std::string format_complex(double re, double im, int precision) {
  if (std::abs(re) < 1e-12) re = 0.0;
  if (std::abs(im) < 1e-12) im = 0.0;
  std::string r = format_number(re, precision), i = format_number(im, precision);
  if (i == "0") return r;
  if (r == "0") return i + "i";
  return r + (i[0] == '-' ? "" : "+") + i + "i";
}

std::string format_matrix(const zxe_matrix* m, const Settings& s) {
  if (s.format == "json") {
    char* out = nullptr;
    check(zxe_matrix_to_json(m, &out));
    return take(out);
  }
  std::string out;
  for (size_t r = 0; r < zxe_matrix_rows(m); ++r) {
    for (size_t c = 0; c < zxe_matrix_cols(m); ++c) {
      double re = 0, im = 0;
      check(zxe_matrix_get(m, r, c, &re, &im));
      if (c) out += ' ';
      out += format_complex(re, im, s.text_digits());
    }
    out += '\n';
  }
  return out;
}

enum class Kind { kDiagram, kSum, kMatrix };

struct Loaded {
  Kind kind;
  DiagramPtr diagram;
  SumPtr sum;
  MatrixPtr matrix;
};

Loaded load(const std::string& path, bool allow_matrix = false) {
  std::string text = read_file(path);
  int is_sum = 0;
  check(zxe_json_is_sum(text.c_str(), &is_sum));
  if (is_sum) return {Kind::kSum, nullptr, make<zxe_sum>([&](zxe_sum** o) { return zxe_sum_from_json(text.c_str(), o); }), nullptr};
  if (allow_matrix && text.find("\"entries\"") != std::string::npos)
    return {Kind::kMatrix, nullptr, nullptr,
            make<zxe_matrix>([&](zxe_matrix** o) { return zxe_matrix_from_json(text.c_str(), o); })};
  return {Kind::kDiagram, make<zxe_diagram>([&](zxe_diagram** o) { return zxe_diagram_from_json(text.c_str(), o); }),
          nullptr, nullptr};
}

bool has_discard(const zxe_diagram* d) {
  int r = 0;
  check(zxe_diagram_has_discard(d, &r));
  return r != 0;
}

// Standard interpretation when available, CP map otherwise.
MatrixPtr evaluate(const Loaded& x, bool force_cpm, bool* is_cpm) {
  if (x.kind == Kind::kSum) {
    int so = 0;
    MatrixPtr m = make<zxe_matrix>([&](zxe_matrix** o) { return zxe_sum_evaluate(x.sum.get(), o, &so); });
    *is_cpm = so != 0;
    if (force_cpm && !so) throw Failure{kSemantic, "multiset sums evaluate to a matrix, not a CP map"};
    return m;
  }
  *is_cpm = force_cpm || has_discard(x.diagram.get());
  return make<zxe_matrix>([&](zxe_matrix** o) {
    return *is_cpm ? zxe_interpret_cpm(x.diagram.get(), o) : zxe_interpret(x.diagram.get(), o);
  });
}

int cmd_eval(const std::string& file, bool cpm, const Settings& s) {
  Loaded x = load(file);
  bool is_cpm = false;
  MatrixPtr m = evaluate(x, cpm, &is_cpm);
  std::cout << format_matrix(m.get(), s);
  return kOk;
}

int cmd_equal(const std::string& a_file, const std::string& b_file, const Settings& s) {
  Loaded a = load(a_file, true), b = load(b_file, true);
  auto needs_cpm = [](const Loaded& x) {
    if (x.kind == Kind::kDiagram) return has_discard(x.diagram.get());
    if (x.kind == Kind::kSum) {
      char* json = nullptr;
      check(zxe_sum_to_json(x.sum.get(), &json));
      return take(json).find("\"distribution\"") != std::string::npos;
    }
    return false;
  };
  bool cpm = needs_cpm(a) || needs_cpm(b);
  if (cpm && (a.kind == Kind::kMatrix || b.kind == Kind::kMatrix))
    throw Failure{kSemantic, "a matrix file can only be compared with a discard-free diagram or a multiset sum"};
  bool unused = false;
  MatrixPtr ma = a.kind == Kind::kMatrix ? std::move(a.matrix) : evaluate(a, cpm, &unused);
  MatrixPtr mb = b.kind == Kind::kMatrix ? std::move(b.matrix) : evaluate(b, cpm, &unused);
  if (zxe_matrix_rows(ma.get()) != zxe_matrix_rows(mb.get()) || zxe_matrix_cols(ma.get()) != zxe_matrix_cols(mb.get()))
    throw Failure{kShape, "shape mismatch: " + std::to_string(zxe_matrix_rows(ma.get())) + "x" +
                              std::to_string(zxe_matrix_cols(ma.get())) + " vs " +
                              std::to_string(zxe_matrix_rows(mb.get())) + "x" +
                              std::to_string(zxe_matrix_cols(mb.get()))};
  int equal = 0;
  double lre = 1, lim = 0, residual = 0;
  check(zxe_matrix_scalar_equal(ma.get(), mb.get(), s.policy_value(), s.tol, &equal, &lre, &lim, &residual));
  std::cout << (equal ? "equal" : "not-equal");
  if (s.policy_value() == ZXE_POLICY_UP_TO_SCALAR) std::cout << " lambda=" << format_complex(lre, lim, s.text_digits());
  std::cout << " residual=" << format_number(residual, s.text_digits()) << '\n';
  return equal ? kOk : kNotEqual;
}

std::vector<size_t> parse_indices(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad branch index '" + item + "'"};
    }
  }
  return out;
}

struct RewriteArgs {
  std::string file;
  std::string rule;
  size_t match = 0;
  bool backward = false;
  bool list = false;
  std::string branches;
  std::string with;
  std::string trace;
};

int cmd_rewrite(const RewriteArgs& r, const Settings& s) {
  // Sum rules are checked under the exact policy unless --policy is given.
  std::string result, trace;
  bool sum_rule = !r.rule.empty() && std::toupper(static_cast<unsigned char>(r.rule[0])) == 'E';
  if (sum_rule) {
    zxe_rewrite_options opts = s.rewrite_options(ZXE_POLICY_EXACT);
    std::string upper = r.rule;
    for (auto& c : upper) c = char(std::toupper(static_cast<unsigned char>(c)));
    char* tr = nullptr;
    if (upper == "ES" || upper == "EP") {
      if (r.with.empty()) throw Failure{kUsage, "ES/EP need --with FILE for the right-hand factor"};
      Loaded a = load(r.file), b = load(r.with);
      if (a.kind != Kind::kSum || b.kind != Kind::kSum) throw Failure{kSemantic, "ES/EP operate on two sums"};
      SumPtr out = make<zxe_sum>(
          [&](zxe_sum** o) { return zxe_rewrite_distribute(a.sum.get(), b.sum.get(), upper == "EP", &opts, o, &tr); });
      trace = take(tr);
      char* json = nullptr;
      check(zxe_sum_to_json(out.get(), &json));
      result = take(json);
    } else {
      std::string text = read_file(r.file);
      std::vector<size_t> idx = parse_indices(r.branches);
      char* json = nullptr;
      check(zxe_rewrite_sum(text.c_str(), r.rule.c_str(), r.backward, idx.data(), idx.size(), &opts, &json, &tr));
      result = take(json);
      trace = take(tr);
    }
  } else {
    Loaded x = load(r.file);
    if (x.kind != Kind::kDiagram) throw Failure{kSemantic, "rule " + r.rule + " rewrites diagrams"};
    if (r.list) {
      char* json = nullptr;
      check(zxe_find_matches(x.diagram.get(), r.rule.c_str(), r.backward, &json));
      std::cout << take(json);
      return kOk;
    }
    zxe_rewrite_options opts = s.rewrite_options(ZXE_POLICY_UP_TO_SCALAR);
    char* tr = nullptr;
    DiagramPtr out = make<zxe_diagram>([&](zxe_diagram** o) {
      return zxe_rewrite(x.diagram.get(), r.rule.c_str(), r.backward, r.match, &opts, o, &tr);
    });
    trace = take(tr);
    char* json = nullptr;
    check(zxe_diagram_to_json(out.get(), &json));
    result = take(json);
  }
  if (!r.trace.empty()) write_file(r.trace, trace);
  std::cout << result;
  return kOk;
}

int cmd_simplify(const std::string& file, const std::string& strategy, size_t max_steps, const std::string& trace_file,
                 const Settings& s) {
  Loaded x = load(file);
  if (x.kind != Kind::kDiagram) throw Failure{kSemantic, "simplify rewrites diagrams"};
  zxe_rewrite_options opts = s.rewrite_options(ZXE_POLICY_UP_TO_SCALAR);
  zxe_diagram* raw = nullptr;
  char* tr = nullptr;
  zxe_status st = zxe_simplify(x.diagram.get(), strategy == "fusion", max_steps, &opts, &raw, &tr);
  DiagramPtr out(raw);
  std::string trace = tr ? take(tr) : "";
  if (!trace_file.empty()) write_file(trace_file, trace);
  if (st != ZXE_OK && st != ZXE_ERR_STEP_BUDGET_EXCEEDED) check(st);
  std::string message = st == ZXE_OK ? "" : zxe_last_error();
  char* json = nullptr;
  check(zxe_diagram_to_json(out.get(), &json));
  std::cout << take(json);
  if (!message.empty()) throw Failure{kSemantic, std::string("step budget exceeded: ") + message};
  return kOk;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  auto number = [&](const std::string& t) {
    try {
      size_t used = 0;
      double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad number '" + t + "' in --p-grid"};
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw Failure{kUsage, "--p-grid range must be start:stop:step"};
    double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || b < a) throw Failure{kUsage, "--p-grid needs step > 0 and stop >= start"};
    long n = std::lround(std::floor((b - a) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) {
      // Snap to the decimal grid so 0:0.9:0.1 prints 0.3 rather than 0.30000000000000004.
      double v = a + double(i) * step;
      grid.push_back(std::round(v * 1e12) / 1e12);
    }
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) grid.push_back(number(item));
  }
  if (grid.empty()) throw Failure{kUsage, "--p-grid is empty"};
  return grid;
}

int cmd_noise_sv(const std::string& grid_spec, const std::string& symmetry, const std::string& out_file,
                 const std::string& branch_file, const Settings& s) {
  std::vector<double> grid = parse_grid(grid_spec);
  std::vector<double> numeric(grid.size()), closed(grid.size()), err(grid.size());
  check(zxe_sv_sweep(grid.data(), grid.size(), symmetry.c_str(), numeric.data(), closed.data(), err.data()));
  std::string csv = "p,acceptance_numeric,acceptance_closed_form,abs_error\n";
  bool ok = true;
  for (size_t i = 0; i < grid.size(); ++i) {
    csv += format_number(grid[i], s.csv_digits()) + "," + format_number(numeric[i], s.csv_digits()) + "," +
           format_number(closed[i], s.csv_digits()) + "," + format_number(err[i], s.csv_digits()) + "\n";
    ok = ok && err[i] <= s.tol;
  }
  if (out_file.empty())
    std::cout << csv;
  else
    write_file(out_file, csv);
  if (!branch_file.empty()) {
    std::string report;
    for (size_t i = 0; i < grid.size(); ++i) {
      char* part = nullptr;
      check(zxe_sv_branch_report(grid[i], symmetry.c_str(), &part));
      std::string body = take(part);
      size_t nl = body.find('\n');
      if (i == 0) report += "p," + body.substr(0, nl + 1);
      std::stringstream ss(body.substr(nl + 1));
      std::string line;
      while (std::getline(ss, line)) report += format_number(grid[i], s.csv_digits()) + "," + line + "\n";
    }
    write_file(branch_file, report);
  }
  if (!ok) {
    std::cerr << "zxe: acceptance differs from 1 - 2p/3 by more than " << s.tol << '\n';
    return kTolerance;
  }
  return kOk;
}

int cmd_validate(const std::string& file) {
  std::string text = read_file(file);
  int is_sum = 0;
  check(zxe_json_is_sum(text.c_str(), &is_sum));
  char* json = nullptr;
  if (is_sum) {
    SumPtr sum = make<zxe_sum>([&](zxe_sum** o) { return zxe_sum_from_json(text.c_str(), o); });
    check(zxe_sum_to_json(sum.get(), &json));
  } else {
    DiagramPtr d = make<zxe_diagram>([&](zxe_diagram** o) { return zxe_diagram_from_json(text.c_str(), o); });
    check(zxe_diagram_validate(d.get()));
    check(zxe_diagram_to_json(d.get(), &json));
  }
  bool canonical = take(json) == text;
  std::cout << "valid " << (is_sum ? "sum" : "diagram") << (canonical ? " canonical" : " non-canonical") << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zxe: enriched ZX-calculus toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  Settings s;
  if (const char* env = std::getenv("ZX_TOL")) {
    try {
      s.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "zxe: ignoring malformed ZX_TOL='" << env << "'\n";
    }
  }
  app.add_option("--precision", s.precision, "Significant digits in printed numbers")->check(CLI::Range(1, 17));
  app.add_option("--tol", s.tol, "Numeric tolerance (default 1e-9, or $ZX_TOL)")->check(CLI::PositiveNumber);
  app.add_option("--policy", s.policy, "Scalar policy: exact | up_to_scalar")
      ->check(CLI::IsMember({"exact", "up_to_scalar"}));
  app.add_option("--check-soundness", s.check_soundness, "Verify each rewrite numerically: on | off")
      ->check(CLI::IsMember({"on", "off"}));

  std::string file, file_b;

  auto* eval = app.add_subcommand("eval", "Print the interpretation of a diagram or the evaluation of a sum");
  eval->add_option("file", file, "Diagram or sum JSON")->required();
  eval->add_option("--format", s.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* cpm = app.add_subcommand("cpm", "Print the CP-map (superoperator) of a diagram or distribution sum");
  cpm->add_option("file", file, "Diagram or sum JSON")->required();
  cpm->add_option("--format", s.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  RewriteArgs rw;
  auto* rewrite = app.add_subcommand("rewrite", "Apply one rule at one site");
  rewrite->add_option("file", rw.file, "Diagram or sum JSON")->required();
  rewrite->add_option("--rule", rw.rule, "F I1 I2 H Pi C B | ES EP EC EDelta EPlus EZero")->required();
  rewrite->add_option("--match", rw.match, "Index into the rule's match list (default 0)");
  rewrite->add_flag("--backward", rw.backward, "Use the rule right to left");
  rewrite->add_flag("--list", rw.list, "Print the matches instead of rewriting");
  rewrite->add_option("--branches", rw.branches, "Comma-separated branch indices for sum rules");
  rewrite->add_option("--with", rw.with, "Right-hand sum for ES/EP");
  rewrite->add_option("--trace", rw.trace, "Write the JSON-lines trace here");

  std::string strategy = "exhaustive", trace_file;
  size_t max_steps = 1000;
  auto* simplify = app.add_subcommand("simplify", "Rewrite a diagram until no rule applies");
  simplify->add_option("file", file, "Diagram JSON")->required();
  simplify->add_option("--strategy", strategy, "exhaustive | fusion")->check(CLI::IsMember({"exhaustive", "fusion"}));
  simplify->add_option("--max-steps", max_steps, "Step budget");
  simplify->add_option("--trace", trace_file, "Write the JSON-lines trace here");

  auto* equal = app.add_subcommand("equal", "Compare two interpretations");
  equal->add_option("a", file, "Diagram, sum or matrix JSON")->required();
  equal->add_option("b", file_b, "Diagram, sum or matrix JSON")->required();

  std::string grid = "0:0.9:0.1", symmetry = "X", out_file, branch_file;
  auto* sv = app.add_subcommand("noise-sv", "Symmetry-verification acceptance under depolarizing noise (CSV)");
  sv->add_option("--p-grid", grid, "start:stop:step or comma-separated list");
  sv->add_option("--symmetry", symmetry, "X | Y | Z");
  sv->add_option("--out", out_file, "Write the CSV here instead of stdout");
  sv->add_option("--branch-report", branch_file, "Also write per-branch contributions (CSV)");

  auto* validate = app.add_subcommand("validate", "Check a diagram or sum file");
  validate->add_option("file", file, "Diagram or sum JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(file, false, s);
    if (*cpm) return cmd_eval(file, true, s);
    if (*rewrite) return cmd_rewrite(rw, s);
    if (*simplify) return cmd_simplify(file, strategy, max_steps, trace_file, s);
    if (*equal) return cmd_equal(file, file_b, s);
    if (*sv) return cmd_noise_sv(grid, symmetry, out_file, branch_file, s);
    if (*validate) return cmd_validate(file);
  } catch (const Failure& f) {
    std::cerr << "zxe: " << f.message << '\n';
    return f.code;
  }
  return kUsage;
}
