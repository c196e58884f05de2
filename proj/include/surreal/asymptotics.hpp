#pragma once

#include "surreal/expr.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace surreal {

/// coeff * e^(eexp*w) * w^wexp * ln(w)^lexp * W^w1exp * prod dW(n)^dw[n] * atom.
///
/// `atom` collects factors outside the basis that are still handled exactly:
/// exponentials such as w^w, 2^w, w^W, W^w, exp(c*x*w) and logarithms ln(W).
/// The growth key is (eexp, wexp, lexp); W and dW factors ride along.
struct Transmonomial {
  Expr coeff = integer(1);
  Rational eexp = 0;
  Rational wexp = 0;
  Rational lexp = 0;
  Rational w1exp = 0;
  std::map<int, Rational> dw;
  Expr atom = integer(1);

  Growth growth() const { return {eexp, wexp, lexp}; }
  bool same_monomial(const Transmonomial& o) const;
  /// The monomial without its coefficient.
  Expr monomial() const;
  Expr to_expr() const;
};

enum class TermClass { Infinite, Finite, Infinitesimal };

/// Throws IncomparableMonomials when a term mixes W with w-growth of the opposite sign.
TermClass classify(const Transmonomial& t);

/// Descending sum of transmonomials. `truncated` is set when terms were dropped
/// (more infinitesimal terms exist than `truncation_order` or the tail is unknown).
struct NormalForm {
  std::vector<Transmonomial> terms;
  std::size_t truncation_order = 0;
  bool truncated = false;

  Expr to_expr() const;
  bool empty() const { return terms.empty(); }
};

struct SurrealParts {
  NormalForm infinite;
  Expr finite = integer(0);
  NormalForm infinitesimal;
};

/// Expansion at w -> infinity keeping all non-infinitesimal terms and the first
/// `order` infinitesimal ones. Throws UnsupportedExpansion when e leaves the basis.
NormalForm asymptotic_expansion(const Expr& e, std::size_t order = 2);

SurrealParts split(const NormalForm& nf);
/// Infinite and finite parts only.
NormalForm refine(const NormalForm& nf);

/// G(w) - G(lower) for the antiderivative G of the integrand in t.
Expr improper_integral_to_surreal(const Expr& integrand, const Expr& t, const Rational& lower);

/// k(w) with g(k(w)) = w through the first order+1 expansion terms. g must be
/// eventually increasing with positive dominant term c*w^a or c*b^w.
/// Throws NotInvertible or OrderUnreachable.
Expr asymptotic_inverse(const Expr& g, const Expr& k, std::size_t order);

}  // namespace surreal
