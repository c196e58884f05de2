// Runs the eight acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include "properties.hpp"

#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/calculus.hpp"
#include "surreal/errors.hpp"
#include "surreal/golden.hpp"
#include "surreal/io.hpp"
#include "surreal/numerosity.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace surreal;

namespace {

// Pinned limits, seconds.
constexpr double kAppendixBudget = 1.0;
constexpr double kPropertyBudget = 30.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double budget;  // 0 = untimed
  std::function<Verdict()> check;
};

Verdict golden_appendix(int appendix, std::size_t expected_items) {
  std::size_t items = 0, passed = 0, instances = 0;
  std::string first_failure;
  for (const auto& item : builtin_corpus()) {
    if (item.appendix() != appendix) continue;
    ++items;
    GoldenOutcome o = run_golden(item);
    instances += o.envelopes.size();
    if (o.pass) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = item.id + (o.notes.empty() ? "" : ": " + o.notes.back());
    }
  }
  Verdict v;
  v.pass = items == expected_items && passed == items;
  v.detail = std::to_string(passed) + "/" + std::to_string(items) + " identities (" + std::to_string(instances) +
             " instances)";
  if (!first_failure.empty()) v.detail += "; " + first_failure;
  return v;
}

Expr full_of(const std::string& body) { return full_numerosity(detect_sequence(parse(body))).full; }

Verdict worked_example_roundtrip() {
  SequenceTerm s = sequence_from_numerosity(ln(omega()));
  Expr back = full_numerosity(s).full;
  bool ok = s.body == parse("exp(k+1) - exp(k)") && back == ln(omega());
  return {ok, "sequence " + print(s.body) + ", numerosity " + print(back)};
}

Verdict finite_part_constants() {
  Expr fin = split(asymptotic_expansion(full_of("k+1"), 2)).finite;
  Expr odd_even = full_of("2*k+1") - full_of("2*k+2");
  Expr integers = integers_numerosity();
  bool ok = fin == parse("-1/2") && odd_even == parse("1/2") && integers == parse("2*w");
  return {ok, "fin N(k+1) = " + print(fin) + ", N(odd) - N(even) = " + print(odd_even) + ", N(Z) = " + print(integers)};
}

Verdict linearity_violation() {
  const Expr x = var("x");
  Expr inside = integrate_surreal_function(omega(), x, integer(0), integer(0));
  Expr outside = omega() * integrate_surreal_function(integer(1), x, integer(0), integer(0));
  Expr via_set = integrate_constant_over_set(omega(), integer(1));
  bool ok = inside == pi() && via_set == pi() && outside.is_zero();
  return {ok, "int w*u = " + print(inside) + ", w * int u = " + print(outside)};
}

Verdict delta_coherence() {
  std::vector<Expr> corpus{integer(1), omega1(), parse("w - 1/2"), integers_numerosity()};
  for (const auto& item : builtin_corpus())
    if (item.verb == "numerosity") corpus.push_back(full_of(item.input));
  for (const char* iv : {"[0,1)", "[0,1]", "(0,1)", "[0,inf)", "{2,5}", "[3,3]"})
    corpus.push_back(interval_numerosity(parse_interval(iv)));
  std::size_t identical = 0;
  std::string bad;
  for (const auto& n : corpus) {
    if (numerosity_via_delta(n) == n)
      ++identical;
    else if (bad.empty())
      bad = print(n);
  }
  Expr unit = omega1_from_unit_interval(), log_form = omega1_from_log_integral();
  bool ok = identical == corpus.size() && unit == log_form && unit == omega1();
  std::string detail = std::to_string(identical) + "/" + std::to_string(corpus.size()) +
                       " numerosities fixed; W forms: " + print(unit) + " and " + print(log_form);
  if (!bad.empty()) detail += "; moved: " + bad;
  return {ok, detail};
}

Verdict property_suites(std::vector<std::string>& lines) {
  struct Suite {
    const char* name;
    std::function<properties::Report()> run;
  };
  std::vector<Suite> suites{{"a oracle-germ agreement", [] { return properties::oracle_germ_agreement(); }},
                            {"b residue-class additivity", [] { return properties::residue_class_additivity(); }},
                            {"c derivation Leibniz/additivity", [] { return properties::derivation_rules(); }},
                            {"d inversion residual", [] { return properties::inversion_residual(); }},
                            {"e partial sums vs direct summation", [] { return properties::partial_sums(); }}};
  bool all = true;
  for (const auto& s : suites) {
    auto start = std::chrono::steady_clock::now();
    properties::Report r;
    std::string error;
    try {
      r = s.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && r.ok() && secs < kPropertyBudget;
    all = all && ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2fs)", secs);
    lines.push_back(std::string("    8") + s.name + ": " + (ok ? "ok" : "FAIL") + ", " +
                    (error.empty() ? r.summary() : "error: " + error) + buf);
  }
  return {all, "5 suites"};
}

}  // namespace

int main() {
  std::vector<std::string> suite_lines;
  std::vector<Criterion> criteria{
      {1, "appendix 1 numerosities", kAppendixBudget, [] { return golden_appendix(1, 9); }},
      {2, "appendix 2 surreal integrals", kAppendixBudget, [] { return golden_appendix(2, 10); }},
      {3, "appendix 3 divergent series", kAppendixBudget, [] { return golden_appendix(3, 5); }},
      {4, "ln(w) sequence roundtrip", 0, worked_example_roundtrip},
      {5, "finite-part constants", 0, finite_part_constants},
      {6, "linearity violation", 0, linearity_violation},
      {7, "delta and W coherence", 0, delta_coherence},
      {8, "property suites", kPropertyBudget * 5, [&] { return property_suites(suite_lines); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && secs >= c.budget) {
      v.pass = false;
      v.detail += "; over time budget";
    }
    if (!v.pass) ++failed;
    std::printf("criterion %d %-30s %s  %s (%.3fs)\n", c.number, c.title.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    if (c.number == 8)
      for (const auto& line : suite_lines) std::printf("%s\n", line.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
