#pragma once

#include "surreal/expr.hpp"

namespace surreal {

/// Surreal derivation: d/dw with dW(n) -> dW(n+1) and W -> dW.
Expr derive(const Expr& e);

/// w/pi at 0, 0 elsewhere.
Expr delta(const Rational& x);

/// (w/pi)^p through the divergent integral (p/pi^p) * int_0^inf x^(p-1) dx.
/// Throws InvalidPower for p <= 0.
Expr delta_power(const Rational& p);

/// pi * N(S) * derive(value) for a purely infinite constant `value`.
/// Throws NotPurelyInfinite when value has a finite or infinitesimal part.
Expr integrate_constant_over_set(const Expr& value, const Expr& numerosity);

/// (1/pi) * integral of w over a set of the given numerosity.
Expr numerosity_via_delta(const Expr& numerosity);

/// W as (1/pi) * integral of w over [0,1).
Expr omega1_from_unit_interval();
/// W as (1/pi) * integral of ln(w) over [0,w).
Expr omega1_from_log_integral();

/// Integral of a surreal-valued function of x over [a, b]:
///   pi*W * int_a^b derive(F) dx + int_a^b fin(F) dx,
/// or pi * derive(F(a)) when a == b. The infinitesimal part of F is dropped.
Expr integrate_surreal_function(const Expr& f, const Expr& x, const Expr& a, const Expr& b);

}  // namespace surreal
