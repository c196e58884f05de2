#include "surreal/algebra.hpp"
#include "surreal/calculus.hpp"
#include "surreal/errors.hpp"
#include "surreal/io.hpp"
#include "surreal/numerosity.hpp"
#include "properties.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace surreal;

namespace {

const Expr x = var("x");

Expr integrate(const std::string& f, const std::string& lo = "0", const std::string& hi = "alpha") {
  return integrate_surreal_function(parse(f), x, parse(lo), parse(hi));
}

bool same(const Expr& a, const Expr& b) { return a == b || equivalent(a, b); }

}  // namespace

TEST(Derive, Examples) {
  EXPECT_EQ(derive(parse("w^c")), parse("c*w^(c-1)"));
  EXPECT_EQ(derive(integer(7)), integer(0));
  EXPECT_EQ(derive(parse("w^W")), parse("w^(W-1)*(w*dW*ln(w) + W)"));
  EXPECT_EQ(derive(omega1()), d_omega1(1));
  EXPECT_EQ(derive(d_omega1(2)), d_omega1(3));
  EXPECT_EQ(derive(ln(omega())), parse("1/w"));
  EXPECT_EQ(derive(exp(omega())), exp(omega()));
}

TEST(Delta, PointValues) {
  EXPECT_EQ(delta(0), omega() / pi());
  EXPECT_EQ(delta(5), integer(0));
  EXPECT_EQ(delta(Rational(-3, 2)), integer(0));
  for (int a : {-3, 2, 7})
    for (const Rational& v : {Rational(0), Rational(1), Rational(-5, 2)}) EXPECT_EQ(delta(v * a), delta(v));
}

TEST(Delta, Powers) {
  EXPECT_EQ(delta_power(1), delta(0));
  EXPECT_EQ(delta_power(2), parse("w^2/pi^2"));
  EXPECT_EQ(delta_power(Rational(1, 2)), pow(omega() / pi(), rational(Rational(1, 2))));
  EXPECT_THROW(delta_power(0), InvalidPower);
  EXPECT_THROW(delta_power(-1), InvalidPower);
}

TEST(ConstantOverSet, Examples) {
  EXPECT_EQ(integrate_constant_over_set(omega(), interval_numerosity(parse_interval("[0,1)"))), pi() * omega1());
  EXPECT_EQ(integrate_constant_over_set(ln(omega()), interval_numerosity(parse_interval("[0,w)"))), pi() * omega1());
  EXPECT_EQ(integrate_constant_over_set(omega(), integer(1)), pi());
  EXPECT_THROW(integrate_constant_over_set(parse("w + 1"), integer(1)), NotPurelyInfinite);
}

TEST(ConstantOverSet, UnitMass) {
  EXPECT_EQ(pi() * integer(1) * derive(omega() / pi()), integer(1));
}

TEST(ConstantOverSet, LinearityViolation) {
  Expr scaled_inside = integrate_surreal_function(omega(), x, integer(0), integer(0));
  Expr scaled_outside = omega() * integrate_surreal_function(integer(1), x, integer(0), integer(0));
  EXPECT_EQ(scaled_inside, pi());
  EXPECT_EQ(scaled_outside, integer(0));
  EXPECT_NE(scaled_inside, scaled_outside);
}

TEST(NumerosityViaDelta, IdentityOnCorpus) {
  for (const char* n : {"W", "1", "w - 1/2", "2*w", "w*W", "sqrt(36*w+3)/6 + 1/2", "ln((a-1)*w/ln(a))/ln(a)"})
    EXPECT_EQ(numerosity_via_delta(parse(n)), parse(n)) << n;
  EXPECT_EQ(omega1_from_unit_interval(), omega1());
  EXPECT_EQ(omega1_from_log_integral(), omega1());
  EXPECT_EQ(omega1_from_unit_interval(), omega1_from_log_integral());
}

TEST(Integrate, AppendixTwo) {
  EXPECT_EQ(integrate("w^c"), parse("pi*alpha*c*W*w^(c-1)"));
  EXPECT_EQ(integrate("w^x"), parse("pi*((alpha*ln(w) - 1)*w^alpha + 1)*W/(w*ln(w)^2)"));
  EXPECT_TRUE(same(integrate("x^w"), parse("pi*alpha^(w+1)*((w+1)*ln(alpha) - 1)*W/(w+1)^2")));
  EXPECT_EQ(integrate("exp(w)"), parse("exp(w)*pi*alpha*W"));
  EXPECT_EQ(integrate("c^w"), parse("c^w*pi*alpha*W*ln(c)"));
  EXPECT_EQ(integrate("exp(c*x*w)"), parse("pi*(exp(c*alpha*w)*(c*alpha*w - 1) + 1)*W/(c*w^2)"));
  EXPECT_EQ(integrate("ln(w)"), parse("pi*alpha*W/w"));
  EXPECT_EQ(integrate("w^w"), parse("alpha*w^w*W*pi*(ln(w) + 1)"));
  EXPECT_EQ(integrate("w^W"), parse("alpha*pi*W*w^(W-1)*(w*dW*ln(w) + W)"));
  EXPECT_EQ(integrate("W^w"), parse("alpha*pi*W^w*(w*dW + W*ln(W))"));
  EXPECT_EQ(integrate("5", "0", "1"), integer(5));
}

TEST(Integrate, FinitePartUsesNewtonLeibniz) {
  EXPECT_EQ(integrate("w + x", "0", "2"), parse("2*pi*W + 2"));
  EXPECT_EQ(integrate("x^2 + 1/w", "0", "3"), parse("9 - 3*pi*W/w^2"));
}

TEST(Property, DerivationLeibnizAndAdditivity) {
  auto report = properties::derivation_rules();
  EXPECT_TRUE(report.ok()) << report.summary();
}
