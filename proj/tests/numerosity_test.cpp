#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/io.hpp"
#include "surreal/numerosity.hpp"

#include "properties.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace surreal;

namespace {

Expr full_of(const std::string& body, std::size_t order = 2) {
  return full_numerosity(detect_sequence(parse(body)), order).full;
}

Expr refined_of(const std::string& body) {
  return full_numerosity(detect_sequence(parse(body))).refined.to_expr();
}

/// Independent enumeration for an eventually increasing sequence given in closed form.
long enumerate(const std::function<long double(long)>& a, long double cutoff, long from = 0) {
  long n = 0;
  for (long k = from; k < 100'000'000; ++k) {
    if (a(k) > cutoff) break;
    ++n;
  }
  return n;
}

struct OracleCase {
  std::string body;
  std::map<std::string, Expr> params;
  std::function<long double(long)> direct;
};

std::vector<OracleCase> appendix_sequences() {
  return {
      {"k+1", {}, [](long k) { return k + 1.0L; }},
      {"k", {}, [](long k) { return static_cast<long double>(k); }},
      {"2*k", {}, [](long k) { return 2.0L * k; }},
      {"2*k+1", {}, [](long k) { return 2.0L * k + 1; }},
      {"a*k+b", {{"a", integer(3)}, {"b", integer(7)}}, [](long k) { return 3.0L * k + 7; }},
      {"a*k+b", {{"a", rational(Rational(5, 2))}, {"b", rational(Rational(1, 3))}}, [](long k) { return 2.5L * k + 1.0L / 3; }},
      {"k^2", {}, [](long k) { return static_cast<long double>(k) * k; }},
      {"1/3 + k + k^2", {}, [](long k) { return 1.0L / 3 + k + static_cast<long double>(k) * k; }},
      {"k^4", {}, [](long k) { long double x = k; return x * x * x * x; }},
      {"a^k", {{"a", integer(2)}}, [](long k) { return std::pow(2.0L, static_cast<long double>(k)); }},
      {"a^k", {{"a", integer(3)}}, [](long k) { return std::pow(3.0L, static_cast<long double>(k)); }},
      {"a^k", {{"a", e_const()}}, [](long k) { return std::exp(static_cast<long double>(k)); }},
  };
}

Expr bind(const OracleCase& c) {
  Expr e = parse(c.body);
  for (const auto& [name, v] : c.params) e = substitute(e, var(name), v);
  return e;
}

}  // namespace

TEST(Detect, Classes) {
  EXPECT_EQ(detect_sequence(parse("k^2")).cls, SequenceClass::Polynomial);
  EXPECT_EQ(detect_sequence(parse("a*k+b")).cls, SequenceClass::Polynomial);
  EXPECT_EQ(detect_sequence(parse("a^k")).cls, SequenceClass::Geometric);
  EXPECT_EQ(detect_sequence(parse("exp(k+1) - exp(k)")).cls, SequenceClass::Geometric);
  EXPECT_EQ(detect_sequence(parse("sin(k)")).cls, SequenceClass::Unsupported);
  EXPECT_THROW(antidifference(detect_sequence(parse("sin(k)"))), UnsupportedSequenceClass);
}

TEST(Antidifference, Examples) {
  const Expr k = var("k");
  Expr f = antidifference(detect_sequence(parse("k^2")));
  EXPECT_EQ(f, parse("k^3/3 - k^2/2 + k/6"));
  EXPECT_TRUE(equivalent(substitute(f, k, k + integer(1)) - f, parse("k^2")));
  for (long j = 0; j <= 100; ++j) {
    Expr at = substitute(f, k, integer(j + 1)) - substitute(f, k, integer(j));
    EXPECT_EQ(at, integer(j * j));
  }
  EXPECT_EQ(antidifference(detect_sequence(integer(1))), k);
  Expr g = antidifference(detect_sequence(parse("(e-1)*exp(k)")));
  EXPECT_EQ(g, parse("exp(k) - 1"));
  EXPECT_EQ(substitute(g, k, integer(0)), integer(0));
}

TEST(FullNumerosity, AppendixOne) {
  EXPECT_EQ(full_of("k+1"), parse("w - 1/2"));
  EXPECT_EQ(full_of("2*k"), parse("w/2 + 1/2"));
  EXPECT_EQ(full_of("2*k+1"), parse("w/2"));
  EXPECT_EQ(full_of("a*k+b"), parse("w/a + 1/2 - b/a"));
  EXPECT_EQ(full_of("k^2"), parse("sqrt(36*w+3)/6 + 1/2"));
  EXPECT_EQ(refined_of("k^2"), parse("sqrt(w) + 1/2"));
  EXPECT_EQ(full_of("1/3 + k + k^2"), parse("sqrt(w)"));
  EXPECT_EQ(full_of("k^4"), parse("sqrt(30*sqrt(900*w+30) + 225)/30 + 1/2"));
  EXPECT_EQ(refined_of("k^4"), parse("w^(1/4) + 1/2"));
  EXPECT_EQ(full_of("a^k"), parse("ln((a-1)*w/ln(a))/ln(a)"));
  EXPECT_EQ(integers_numerosity(), parse("2*w"));
}

TEST(FullNumerosity, RefinedMatchesExpansionOfFull) {
  for (const char* body : {"k+1", "k^2", "k^3", "k^4", "1/3 + k + k^2", "2*k+1"}) {
    NumerosityResult r = full_numerosity(detect_sequence(parse(body)));
    ASSERT_TRUE(r.exact) << body;
    EXPECT_EQ(refine(asymptotic_expansion(r.full, 2)).to_expr(), r.refined.to_expr()) << body;
  }
}

TEST(FullNumerosity, HighDegreeFallsBackToAsymptotics) {
  NumerosityResult r = full_numerosity(detect_sequence(parse("k^5")));
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(split(r.refined).finite, parse("1/2"));
}

TEST(SequenceFromNumerosity, Examples) {
  SequenceTerm s = sequence_from_numerosity(ln(omega()));
  EXPECT_EQ(s.body, parse("exp(k+1) - exp(k)"));
  EXPECT_EQ(sequence_from_numerosity(omega()).body, parse("k + 1/2"));
  EXPECT_EQ(sequence_from_numerosity(parse("sqrt(w)")).body, parse("1/3 + k + k^2"));
  EXPECT_THROW(sequence_from_numerosity(parse("sin(w)")), Error);
}

TEST(Property, NumerosityRoundtrip) {
  for (const char* text : {"w", "sqrt(w)", "ln(w)", "w/a + 1/2 - b/a"}) {
    Expr target = parse(text);
    SequenceTerm s = sequence_from_numerosity(target);
    EXPECT_EQ(full_numerosity(s).full, target) << text << " via " << print(s.body);
  }
}

TEST(Property, ResidueClassAdditivity) {
  EXPECT_EQ(full_of("k"), parse("w + 1/2"));
  EXPECT_EQ(full_of("2*k") + full_of("2*k+1"), parse("w + 1/2"));
  auto report = properties::residue_class_additivity();
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(Constants, FinitePartsAndIntegers) {
  EXPECT_EQ(split(asymptotic_expansion(full_of("k+1"), 2)).finite, parse("-1/2"));
  EXPECT_EQ(full_of("2*k+1") - full_of("2*k+2"), parse("1/2"));
  EXPECT_EQ(integers_numerosity(), parse("2*w"));
}

TEST(Interval, Examples) {
  EXPECT_EQ(interval_numerosity(parse_interval("[0,1)")), omega1());
  EXPECT_EQ(interval_numerosity(parse_interval("[0,inf)")), omega() * omega1());
  EXPECT_EQ(interval_numerosity(parse_interval("[0,w)")), omega() * omega1());
  EXPECT_EQ(interval_numerosity(parse_interval("[2,2]")), integer(1));
  EXPECT_EQ(interval_numerosity(parse_interval("[0,1]")), omega1() + integer(1));
  EXPECT_EQ(interval_numerosity(parse_interval("(0,1)")), omega1() - integer(1));
  EXPECT_EQ(interval_numerosity(parse_interval("{0,1}")), omega1());
  EXPECT_EQ(interval_numerosity(parse_interval("(-inf,inf)")), integer(2) * omega() * omega1() - integer(1));
  EXPECT_THROW(interval_numerosity(parse_interval("[3,1]")), InvalidInterval);
  EXPECT_THROW(parse_interval("[0,1"), ParseError);
}

TEST(CountOracle, Examples) {
  EXPECT_EQ(count_oracle(detect_sequence(parse("k^2")), 100), 11);
  EXPECT_EQ(count_oracle(detect_sequence(parse("k+1")), 0), 0);
  EXPECT_EQ(count_oracle(detect_sequence(parse("2^k")), 1024), 11);
}

TEST(CountOracle, MatchesDirectEnumeration) {
  for (const auto& c : appendix_sequences()) {
    SequenceTerm s = detect_sequence(bind(c));
    for (long x : {0L, 1L, 7L, 100L, 1000L, 12345L}) {
      EXPECT_EQ(count_oracle(s, x), enumerate(c.direct, x, s.valid_from)) << c.body << " at " << x;
    }
  }
}

TEST(Property, OracleGermAgreement) {
  auto report = properties::oracle_germ_agreement();
  EXPECT_TRUE(report.ok()) << report.summary();
}
