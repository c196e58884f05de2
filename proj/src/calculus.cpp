#include "surreal/calculus.hpp"

#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/errors.hpp"
#include "surreal/io.hpp"
#include "surreal/numerosity.hpp"

namespace surreal {

Expr derive(const Expr& e) { return differentiate(e, omega(), true); }

Expr delta(const Rational& x) { return x == 0 ? omega() / pi() : integer(0); }

Expr delta_power(const Rational& p) {
  if (p <= 0) throw InvalidPower("delta power must be positive, got " + to_string(p));
  const Expr x = var("x");
  Expr divergent = improper_integral_to_surreal(pow(x, rational(p - 1)), x, 0);
  return rational(p) * pow(pi(), rational(-p)) * divergent;
}

Expr integrate_constant_over_set(const Expr& value, const Expr& numerosity) {
  SurrealParts parts = split(asymptotic_expansion(value, 0));
  if (!parts.finite.is_zero() || !parts.infinitesimal.empty())
    throw NotPurelyInfinite(print(value) + " is not purely infinite");
  return pi() * numerosity * derive(value);
}

Expr numerosity_via_delta(const Expr& numerosity) {
  return integrate_constant_over_set(omega(), numerosity) / pi();
}

Expr omega1_from_unit_interval() {
  IntervalSpec unit{integer(0), integer(1), Inclusion::Included, Inclusion::Excluded};
  return integrate_constant_over_set(omega(), interval_numerosity(unit)) / pi();
}

Expr omega1_from_log_integral() {
  IntervalSpec half_line{integer(0), omega(), Inclusion::Included, Inclusion::Excluded};
  return integrate_constant_over_set(ln(omega()), interval_numerosity(half_line)) / pi();
}

Expr integrate_surreal_function(const Expr& f, const Expr& x, const Expr& a, const Expr& b) {
  if (a == b) return pi() * derive(substitute(f, x, a));
  Expr formal = definite_integral(derive(f), x, a, b);
  Expr finite = split(asymptotic_expansion(f, 0)).finite;
  return pi() * omega1() * formal + definite_integral(finite, x, a, b);
}

}  // namespace surreal
