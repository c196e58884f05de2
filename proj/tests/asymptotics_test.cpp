#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/io.hpp"
#include "properties.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace surreal;
using surreal::testing::eval_at;

namespace {

const std::vector<std::string>& expandable() {
  static const std::vector<std::string> items{
      "sqrt(36*w+3)/6 + 1/2", "sqrt(30*sqrt(900*w+30) + 225)/30 + 1/2", "w/2 + 1/2", "ln(w) + gamma",
      "lnGamma(w+1)", "lnGamma(w)", "psi(w)", "psi(w+1)", "1/(w^2+1)", "(w+1)^(1/3)", "ln(w+1)",
      "exp(1/w)", "w*ln(1 + 1/w)", "2^w/ln(2) - 1", "ln((w+2)/ln(3))", "sqrt(w^2 + w + 1)"};
  return items;
}

Expr nth_dropped_bound(const NormalForm& nf) {
  // Magnitude proxy for the first dropped term: the last retained one.
  return nf.terms.empty() ? integer(1) : nf.terms.back().monomial();
}

}  // namespace

TEST(Expansion, SqrtNumerosity) {
  NormalForm nf = asymptotic_expansion(parse("sqrt(36*w+3)/6 + 1/2"), 1);
  EXPECT_EQ(nf.to_expr(), parse("sqrt(w) + 1/2 + 1/(24*sqrt(w))"));
  EXPECT_TRUE(nf.truncated);
  SurrealParts parts = split(nf);
  EXPECT_EQ(parts.infinite.to_expr(), parse("sqrt(w)"));
  EXPECT_EQ(parts.finite, parse("1/2"));
  EXPECT_EQ(parts.infinitesimal.to_expr(), parse("1/(24*sqrt(w))"));
  EXPECT_EQ(refine(nf).to_expr(), parse("sqrt(w) + 1/2"));
}

TEST(Expansion, StirlingSeries) {
  NormalForm nf = asymptotic_expansion(parse("lnGamma(w+1)"), 2);
  EXPECT_EQ(split(nf).infinite.to_expr(), parse("w*ln(w) - w + ln(w)/2"));
  EXPECT_EQ(split(nf).finite, half_ln_2pi());
  EXPECT_EQ(split(nf).infinitesimal.to_expr(), parse("1/(12*w) - 1/(360*w^3)"));
}

TEST(Expansion, UnsupportedShapes) {
  EXPECT_THROW(asymptotic_expansion(parse("exp(w^2)")), UnsupportedExpansion);
  EXPECT_THROW(asymptotic_expansion(parse("exp(exp(w))")), UnsupportedExpansion);
  EXPECT_THROW(asymptotic_expansion(parse("zeta(w)")), Error);
}

TEST(Expansion, MixedOmega1GrowthIsIncomparable) {
  Transmonomial t;
  t.w1exp = 1;
  t.wexp = -1;
  EXPECT_THROW(classify(t), IncomparableMonomials);
  Transmonomial finite;
  EXPECT_EQ(classify(finite), TermClass::Finite);
}

TEST(Property, TruncationCoherence) {
  for (const auto& text : expandable()) {
    Expr e = parse(text);
    NormalForm big = asymptotic_expansion(e, 5);
    for (std::size_t m = 0; m < 5; ++m) {
      NormalForm small = asymptotic_expansion(e, m);
      SurrealParts pb = split(big), ps = split(small);
      ASSERT_EQ(pb.infinite.to_expr(), ps.infinite.to_expr()) << text;
      ASSERT_EQ(pb.finite, ps.finite) << text;
      std::size_t keep = std::min(m, pb.infinitesimal.terms.size());
      ASSERT_EQ(ps.infinitesimal.terms.size(), keep) << text << " m=" << m;
      for (std::size_t i = 0; i < keep; ++i)
        EXPECT_EQ(ps.infinitesimal.terms[i].to_expr(), pb.infinitesimal.terms[i].to_expr()) << text << " m=" << m;
    }
  }
}

TEST(Property, SplitRecombine) {
  for (const auto& text : expandable()) {
    NormalForm nf = asymptotic_expansion(parse(text), 3);
    SurrealParts p = split(nf);
    std::vector<Transmonomial> joined = p.infinite.terms;
    if (!p.finite.is_zero()) {
      Transmonomial f;
      f.coeff = p.finite;
      joined.push_back(f);
    }
    joined.insert(joined.end(), p.infinitesimal.terms.begin(), p.infinitesimal.terms.end());
    ASSERT_EQ(joined.size(), nf.terms.size()) << text;
    for (std::size_t i = 0; i < joined.size(); ++i) EXPECT_EQ(joined[i].to_expr(), nf.terms[i].to_expr()) << text;
  }
}

TEST(Property, ExpansionIsIdempotent) {
  for (const auto& text : expandable()) {
    NormalForm nf = asymptotic_expansion(parse(text), 3);
    if (!nf.truncated) continue;
    Expr once = nf.to_expr();
    EXPECT_EQ(asymptotic_expansion(once, 3).to_expr(), once) << text;
  }
}

TEST(Property, NumericConsistencyAtHundredMillion) {
  PrecisionGuard g(60);
  const Real w("1e8");
  for (const auto& text : expandable()) {
    Expr e = parse(text);
    NormalForm nf = asymptotic_expansion(e, 3);
    Real src = eval_at(e, w, 50), approx = eval_at(nf.to_expr(), w, 50);
    Real bound = nf.truncated ? 10 * boost::multiprecision::abs(eval_at(nth_dropped_bound(nf), w, 50)) : Real("1e-40");
    EXPECT_LE(boost::multiprecision::abs(src - approx), bound) << text;
  }
}

TEST(Inverse, Examples) {
  const Expr k = var("k");
  EXPECT_EQ(asymptotic_inverse(parse("k^2 - k + 1/6"), k, 1), parse("sqrt(w) + 1/2 + 1/(24*sqrt(w))"));
  EXPECT_EQ(asymptotic_inverse(k, k, 0), omega());
  EXPECT_EQ(asymptotic_inverse(parse("exp(k)"), k, 0), ln(omega()));
  EXPECT_THROW(asymptotic_inverse(parse("-k"), k, 1), NotInvertible);
  EXPECT_THROW(asymptotic_inverse(parse("k*ln(k)"), k, 1), OrderUnreachable);
}

TEST(Inverse, ResidualIsSymbolicallySmall) {
  const Expr k = var("k");
  Expr inv = asymptotic_inverse(parse("k^2 - k + 1/6"), k, 1);
  NormalForm residual = asymptotic_expansion(substitute(parse("k^2 - k + 1/6"), k, inv) - omega(), 2);
  for (const auto& t : residual.terms) EXPECT_LT(t.growth(), (Growth{0, Rational(-1, 2), 0})) << print(t.to_expr());
}

TEST(Property, InversionResidual) {
  auto report = properties::inversion_residual();
  EXPECT_TRUE(report.ok()) << report.summary();
}
