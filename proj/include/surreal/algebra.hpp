#pragma once

#include "surreal/expr.hpp"

#include <optional>
#include <vector>

namespace surreal {

/// Exact zero test of a - b: both sides are brought over a common denominator
/// (negative powers of sums) and the expanded numerator must vanish.
bool equivalent(const Expr& a, const Expr& b);

/// Numerator of e after clearing negative powers of sums.
Expr clear_denominators(const Expr& e);

/// d/dx of e. With `derivation` set and x == w, the surreal derivation rules apply:
/// W maps to dW and dW(n) to dW(n+1).
Expr differentiate(const Expr& e, const Expr& x, bool derivation = false);

/// True when e depends on x (or on W/dW when `derivation` is set).
bool depends_on(const Expr& e, const Expr& x, bool derivation = false);

/// Antiderivative in x over terms c * x^n * (ln x)^m * exp(A x + B) (products of
/// b^(linear) factors included). Everything free of x is a constant. Throws
/// NoAntiderivative outside that class.
Expr antiderivative(const Expr& e, const Expr& x);

/// e with x replaced by `point`. At point 0 terms carrying x^p with p not a negative
/// rational (including symbolic exponents) vanish.
Expr evaluate_at(const Expr& e, const Expr& x, const Expr& point);

/// G(b) - G(a) with G the antiderivative of e in x.
Expr definite_integral(const Expr& e, const Expr& x, const Expr& a, const Expr& b);

/// Bernoulli polynomial B_n(t) (B_1(0) = -1/2).
Expr bernoulli_polynomial(int n, const Expr& t);

/// Coefficients c_0..c_d of e as a polynomial in x, each free of x; nullopt when e
/// is not a polynomial in x.
std::optional<std::vector<Expr>> polynomial_coefficients(const Expr& e, const Expr& x);

Expr polynomial_from_coefficients(const std::vector<Expr>& coeffs, const Expr& x);

}  // namespace surreal
