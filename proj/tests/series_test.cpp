#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/io.hpp"
#include "surreal/series.hpp"

#include "properties.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>


using namespace surreal;

namespace {

Expr value_of(const std::string& body, std::optional<long> from = std::nullopt) {
  return series_value(detect_series(parse(body), from));
}

Expr finite_part(const Expr& e) { return split(asymptotic_expansion(e, 2)).finite; }

}  // namespace

TEST(Detect, Families) {
  EXPECT_EQ(detect_series(parse("k^2")).family, SeriesFamily::Power);
  EXPECT_EQ(detect_series(parse("2^k")).family, SeriesFamily::Geometric);
  EXPECT_EQ(detect_series(parse("ln(k)")).family, SeriesFamily::LogK);
  EXPECT_EQ(detect_series(parse("1/k")).family, SeriesFamily::ReciprocalK);
  EXPECT_EQ(detect_series(parse("psi(k)")).family, SeriesFamily::DigammaK);
  EXPECT_EQ(detect_series(parse("sin(k)")).family, SeriesFamily::Unsupported);
  EXPECT_EQ(detect_series(parse("ln(k)")).start, 1);
  EXPECT_THROW(detect_series(parse("1/k"), 0), UnsupportedSeries);
  EXPECT_THROW(series_value(detect_series(parse("sin(k)"))), UnsupportedSeries);
  EXPECT_THROW(detect_series(parse("k*w")), UnsupportedSeries);
}

TEST(PartialSum, ClosedForms) {
  EXPECT_EQ(partial_sum_closed_form(detect_series(parse("ln(k)"), 1)).sum, parse("lnGamma(t)"));
  EXPECT_EQ(partial_sum_closed_form(detect_series(parse("1/k"), 1)).sum, parse("psi(t) + gamma"));
  EXPECT_EQ(partial_sum_closed_form(detect_series(parse("psi(k)"), 1)).sum, parse("(t-1)*psi(t) - (t-1)"));
}

TEST(SeriesValue, AppendixThree) {
  EXPECT_EQ(value_of("k^0", 0), parse("w + 1/2"));
  EXPECT_EQ(value_of("k", 0), parse("w^2/2 - 1/12"));
  EXPECT_EQ(value_of("k^2", 0), parse("w^3/3"));
  EXPECT_EQ(value_of("k^3", 0), parse("w^4/4 + 1/120"));
  EXPECT_EQ(value_of("2^k", 0), parse("2^w/ln(2) - 1"));
  EXPECT_EQ(value_of("3^k", 0), parse("3^w/ln(3) - 1/2"));
  EXPECT_EQ(value_of("(1/2)^k", 0), parse("(1/2)^w/ln(1/2) + 2"));
  EXPECT_EQ(value_of("ln(k)", 1), parse("w*ln(w) - w + ln(2*pi)/2"));
  EXPECT_EQ(value_of("1/k", 1), parse("ln(w) + gamma"));
  EXPECT_EQ(value_of("psi(k)", 1), parse("lnGamma(w) + 1/2 - ln(2*pi)/2"));
}

TEST(Property, RegularizedFinitePart) {
  for (int p = 0; p <= 6; ++p) {
    Expr expected = zeta_at(-p) + (p == 0 ? integer(1) : integer(0));
    EXPECT_EQ(finite_part(value_of("k^" + std::to_string(p), 0)), expected) << "p=" << p;
  }
  for (const Rational& r : {Rational(2), Rational(3), Rational(1, 2), Rational(1, 3), Rational(5, 4)}) {
    Expr body = pow(rational(r), var("k"));
    EXPECT_EQ(finite_part(series_value(detect_series(body, 0))), rational(1 / (1 - r))) << to_string(r);
  }
  EXPECT_EQ(finite_part(value_of("(1/2)^k", 0)), integer(2));
  EXPECT_EQ(finite_part(value_of("psi(k)", 1)), parse("1/2"));
}

TEST(Property, AdditivityWithinFamily) {
  EXPECT_EQ(value_of("k^2 + k", 0), value_of("k^2", 0) + value_of("k", 0));
  EXPECT_EQ(value_of("3*k^3 - 2*k + 5", 0), integer(3) * value_of("k^3", 0) - integer(2) * value_of("k", 0) + integer(5) * value_of("1", 0));
  EXPECT_EQ(value_of("4*ln(k)", 1), integer(4) * value_of("ln(k)", 1));
}

TEST(Property, PartialSumsMatchDirectSummation) {
  auto report = properties::partial_sums();
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(SeriesValue, ProductOfFamiliesIsRejected) {
  EXPECT_THROW(value_of("k*psi(k)", 1), Error);
}
