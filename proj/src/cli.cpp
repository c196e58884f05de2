#include "surreal/cli.hpp"

#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/calculus.hpp"
#include "surreal/envelope.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/golden.hpp"
#include "surreal/io.hpp"
#include "surreal/numerosity.hpp"
#include "surreal/series.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>

namespace surreal {

namespace {

struct Flags {
  std::size_t order = 2;
  bool json = false;
  bool verbose = false;
  int precision = 0;
};

int exit_code_for(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::Parse:
    case ErrorClass::Domain:
      return kExitUsage;
    case ErrorClass::Unsupported:
      return kExitUnsupported;
    case ErrorClass::Divergence:
      return kExitDivergence;
    default:
      return kExitFailure;
  }
}

/// "1000", "10^6", "1e6", "2.5e3" or any rational expression.
Rational parse_number(const std::string& text) {
  static const std::regex scientific(R"(([+-]?[0-9]+(\.[0-9]+)?)[eE]([+-]?[0-9]+))");
  std::smatch m;
  if (std::regex_match(text, m, scientific)) {
    Rational mantissa = parse_rational(m[1].str());
    return mantissa * pow_int(Rational(10), std::stol(m[3].str()));
  }
  Expr e = parse(text);
  if (!e.is_rational()) throw ParseError(0, {"rational"}, "'" + text + "' is not a rational number");
  return e.value();
}

Expr apply_settings(Expr e, const std::vector<std::string>& settings) {
  for (const auto& s : settings) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(0, {"name=value"}, "--set expects name=value, got '" + s + "'");
    e = substitute(e, var(s.substr(0, eq)), rational(parse_number(s.substr(eq + 1))));
  }
  return e;
}

std::string format_real(const Real& v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

void emit(const Envelope& env, const Flags& flags, const std::string& plain, std::ostream& out) {
  if (flags.json) {
    out << to_json(env, flags.order).dump(2) << '\n';
  } else if (flags.verbose) {
    out << to_text(env, flags.order);
  } else {
    out << plain << '\n';
  }
}

void emit(const Envelope& env, const Flags& flags, std::ostream& out) { emit(env, flags, print(env.result), out); }

int cmd_numerosity(const std::string& input, const std::string& index, const Flags& flags, std::ostream& out) {
  NumerosityResult r = full_numerosity(detect_sequence(parse(input), var(index)), flags.order);
  Envelope env{input, r.full, r.exact, {}, {}};
  env.extra["refined"] = print(r.refined.to_expr());
  if (!r.exact) env.diagnostics.push_back("no exact inverse; full numerosity is an asymptotic expansion");
  emit(env, flags, "full: " + print(r.full) + " | refined: " + print(r.refined.to_expr()), out);
  return kExitOk;
}

int cmd_sequence(const std::string& input, const std::string& index, const Flags& flags, std::ostream& out) {
  SequenceTerm s = sequence_from_numerosity(parse(input), var(index));
  Envelope env{input, s.body, true, {}, {}};
  env.extra["valid_from"] = s.valid_from;
  env.diagnostics.push_back("terms are valid for " + index + " >= " + std::to_string(s.valid_from));
  std::string plain = print(s.body);
  if (s.valid_from > 0) plain += "  (" + index + " >= " + std::to_string(s.valid_from) + ")";
  emit(env, flags, plain, out);
  return kExitOk;
}

int cmd_oracle(const std::string& input, const std::vector<std::string>& cutoffs,
               const std::vector<std::string>& settings, const Flags& flags, std::ostream& out) {
  if (cutoffs.empty()) throw ParseError(0, {"--cutoffs"}, "oracle-check needs at least one cutoff");
  SequenceTerm s = detect_sequence(apply_settings(parse(input), settings));
  if (s.cls == SequenceClass::Unsupported) throw UnsupportedSequenceClass("unsupported sequence class: " + print(s.body));
  Expr full = full_numerosity(s, flags.order).full;
  const int digits = flags.precision > 0 ? flags.precision : default_precision();
  nlohmann::json rows = nlohmann::json::array();
  bool all_pass = true;
  std::vector<std::array<std::string, 5>> table;
  for (const auto& text : cutoffs) {
    Rational x = parse_number(text);
    Integer count = count_oracle(s, x);
    Real germ = eval_numeric(full, {{"w", to_real(x)}}, digits);
    PrecisionGuard guard(digits + 12);
    Real diff = boost::multiprecision::abs(Real(count) - germ);
    bool pass = diff <= 1;
    all_pass = all_pass && pass;
    rows.push_back({{"cutoff", to_string(x)},
                    {"count", count.str()},
                    {"germ_eval", format_real(germ, digits)},
                    {"diff", format_real(diff, digits)},
                    {"pass", pass}});
    table.push_back({to_string(x), count.str(), format_real(germ, 15), format_real(diff, 6), pass ? "ok" : "FAIL"});
  }
  if (flags.json) {
    out << nlohmann::json{{"input_echo", input}, {"full", print(full)}, {"rows", rows}, {"pass", all_pass}}.dump(2) << '\n';
  } else {
    std::array<std::string, 5> header{"cutoff", "count", "germ-eval", "|diff|", ""};
    std::array<std::size_t, 5> width{};
    for (std::size_t c = 0; c < 5; ++c) {
      width[c] = header[c].size();
      for (const auto& r : table) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::array<std::string, 5>& r) {
      std::string s;
      for (std::size_t c = 0; c < 5; ++c) s += r[c] + (c + 1 < 5 ? std::string(width[c] + 2 - r[c].size(), ' ') : "");
      while (!s.empty() && s.back() == ' ') s.pop_back();
      out << s << '\n';
    };
    out << "full: " << print(full) << '\n';
    line(header);
    for (const auto& r : table) line(r);
    out << (all_pass ? "pass" : "fail") << '\n';
  }
  return all_pass ? kExitOk : kExitFailure;
}

int cmd_golden(std::optional<int> appendix, const std::string& corpus, const Flags& flags, std::ostream& out) {
  std::vector<GoldenItem> items = corpus.empty() ? builtin_corpus() : load_corpus(corpus);
  if (appendix) std::erase_if(items, [&](const GoldenItem& i) { return i.appendix() != *appendix; });
  if (items.empty()) throw ParseError(0, {"--appendix 1|2|3|7"}, "no golden items match the filter");
  nlohmann::json report_items = nlohmann::json::array();
  int passed = 0, constants = 0, constants_passed = 0, total = 0;
  for (const auto& item : items) {
    GoldenOutcome o = run_golden(item, flags.order);
    bool is_constant = item.appendix() == 7;
    (is_constant ? constants : total) += 1;
    if (o.pass) (is_constant ? constants_passed : passed) += 1;
    if (flags.json) {
      nlohmann::json entry{{"id", o.id}, {"pass", o.pass}, {"notes", o.notes}};
      if (!o.envelopes.empty()) entry["envelope"] = to_json(o.envelopes.front(), flags.order);
      if (o.envelopes.size() > 1) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto& env : o.envelopes) all.push_back(to_json(env, flags.order));
        entry["instances"] = all;
      }
      report_items.push_back(entry);
    } else {
      out << (o.pass ? "PASS  " : "FAIL  ") << o.id;
      if (!o.envelopes.empty()) out << "  " << print(o.envelopes.front().result);
      out << '\n';
      if (flags.verbose || !o.pass)
        for (const auto& n : o.notes) out << "      " << n << '\n';
    }
  }
  bool ok = passed == total && constants_passed == constants;
  if (flags.json) {
    out << nlohmann::json{{"items", report_items},
                          {"passed", passed + constants_passed},
                          {"total", total + constants}}
               .dump(2)
        << '\n';
  } else {
    out << passed << "/" << total << " pass";
    if (constants > 0) out << " + " << constants_passed << "/" << constants << " constants";
    out << '\n';
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surreal numerosities, divergent integrals and divergent series", "surreal_calc"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--order", flags.order, "Infinitesimal terms kept in expansions")->capture_default_str();
  app.add_flag("--json", flags.json, "Print the result envelope as JSON");
  app.add_flag("--verbose", flags.verbose, "Print the aligned result envelope");
  app.add_option("--precision", flags.precision, "Significant digits for numeric output")->check(CLI::Range(5, 100000));

  std::string input, index = "k", variable = "x", lo, hi, corpus;
  std::optional<long> from;
  std::optional<std::string> power;
  std::optional<int> appendix;
  std::vector<std::string> cutoffs, settings;

  auto* numerosity = app.add_subcommand("numerosity", "Full and refined numerosity of a sequence a_k");
  numerosity->add_option("sequence", input, "Sequence term in k")->required();
  numerosity->add_option("--var", index, "Index variable")->capture_default_str();

  auto* sequence = app.add_subcommand("sequence", "Sequence with a given numerosity (expression in w)");
  sequence->add_option("numerosity", input, "Numerosity in w")->required();
  sequence->add_option("--var", index, "Index variable")->capture_default_str();

  auto* interval = app.add_subcommand("interval", "Numerosity of an interval, e.g. \"[0,1)\" or \"{0,inf)\"");
  interval->add_option("interval", input, "Interval; {} marks half-included ends")->required();

  auto* integrate = app.add_subcommand("integrate", "Integral of a surreal-valued function over [a, b]");
  integrate->add_option("function", input, "Integrand")->required();
  integrate->add_option("a", lo, "Lower bound")->required();
  integrate->add_option("b", hi, "Upper bound")->required();
  integrate->add_option("--var", variable, "Integration variable")->capture_default_str();

  auto* series = app.add_subcommand("series", "Surreal value of a divergent series sum a_k");
  series->add_option("term", input, "Series term in k")->required();
  series->add_option("--from", from, "First index (default 0, or 1 for ln k, 1/k, psi(k))");

  auto* delta_cmd = app.add_subcommand("delta", "Surreal delta function value");
  delta_cmd->add_option("x", input, "Point")->required();
  delta_cmd->add_option("--power", power, "Raise delta(0) to this positive power");

  auto* derive_cmd = app.add_subcommand("derive", "Surreal derivation of an expression");
  derive_cmd->add_option("expr", input, "Expression")->required();

  auto* simplify = app.add_subcommand("simplify", "Canonical form and expansion parts");
  simplify->add_option("expr", input, "Expression")->required();
  bool multiply_out = false;
  simplify->add_flag("--expand", multiply_out, "Multiply out integer powers and products of sums");

  auto* oracle = app.add_subcommand("oracle-check", "Compare element counts with the numerosity germ");
  oracle->add_option("sequence", input, "Sequence term in k")->required();
  oracle->add_option("--cutoffs", cutoffs, "Comma-separated cutoffs")->delimiter(',')->required();
  oracle->add_option("--set", settings, "Parameter value, name=value (repeatable)");

  auto* golden = app.add_subcommand("golden", "Run the golden identity corpus");
  golden->add_option("--appendix", appendix, "Only items of this group (1, 2, 3 or 7)");
  golden->add_option("--corpus", corpus, "Corpus file instead of the built-in copy");

  std::vector<const char*> argv{"surreal_calc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*numerosity) return cmd_numerosity(input, index, flags, out);
    if (*sequence) return cmd_sequence(input, index, flags, out);
    if (*interval) {
      emit(Envelope{input, interval_numerosity(parse_interval(input)), true, {}, {}}, flags, out);
      return kExitOk;
    }
    if (*integrate) {
      Expr r = integrate_surreal_function(parse(input), var(variable), parse(lo), parse(hi));
      emit(Envelope{input, r, true, {}, {}}, flags, out);
      return kExitOk;
    }
    if (*series) {
      SeriesTerm s = detect_series(parse(input), from);
      Envelope env{input, series_value(s), true, {}, {}};
      env.extra["partial_sum"] = print(partial_sum_closed_form(s).sum);
      env.extra["from"] = s.start;
      emit(env, flags, out);
      return kExitOk;
    }
    if (*delta_cmd) {
      Rational x = parse_number(input);
      Expr r = power ? (x == 0 ? delta_power(parse_number(*power)) : integer(0)) : delta(x);
      emit(Envelope{input, r, true, {}, {}}, flags, out);
      return kExitOk;
    }
    if (*derive_cmd) {
      emit(Envelope{input, derive(parse(input)), true, {}, {}}, flags, out);
      return kExitOk;
    }
    if (*simplify) {
      Expr e = parse(input);
      emit(Envelope{input, multiply_out ? expand(e) : e, true, {}, {}}, flags, out);
      return kExitOk;
    }
    if (*oracle) return cmd_oracle(input, cutoffs, settings, flags, out);
    if (*golden) return cmd_golden(appendix, corpus, flags, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (!input.empty() && e.offset() <= input.size()) err << "  " << input << "\n  " << std::string(e.offset(), ' ') << "^\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace surreal
