#pragma once

#include "surreal/asymptotics.hpp"
#include "surreal/expr.hpp"

#include <string_view>
#include <vector>

namespace surreal {

enum class SequenceClass { Polynomial, Geometric, Unsupported };

/// A sequence a_k, k = valid_from, valid_from + 1, ...
///
/// Polynomial: body = sum coeffs[i] * k^i. Geometric: body = scale * base^k + offset,
/// with log_base = ln(base) kept separately so that base = e stays exact.
struct SequenceTerm {
  Expr body;
  Expr index = var("k");
  SequenceClass cls = SequenceClass::Unsupported;
  std::vector<Expr> coeffs;
  Expr scale, base, log_base, offset;
  long valid_from = 0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

SequenceTerm detect_sequence(const Expr& body, const Expr& index = var("k"));

/// F with F(k+1) - F(k) = a_k and F(0) = 0. Throws UnsupportedSequenceClass.
Expr antidifference(const SequenceTerm& s);

struct NumerosityResult {
  Expr full;
  NormalForm refined;
  bool exact = true;
};

NumerosityResult full_numerosity(const SequenceTerm& s, std::size_t order = 2);

/// Sequence whose numerosity is S (an expression in w): solve S = k for w, integrate
/// in k with zero constant and take the forward difference. Throws NotSolvable.
SequenceTerm sequence_from_numerosity(const Expr& numerosity, const Expr& index = var("k"));

enum class Inclusion { Included, Excluded, Half };

/// Endpoints are real expressions or +-w (an unbounded end).
struct IntervalSpec {
  Expr lo, hi;
  Inclusion lo_inclusion = Inclusion::Included;
  Inclusion hi_inclusion = Inclusion::Included;
};

/// "[0,1)", "(0,w]", "{0,1}" (braces: half-included), "[0,inf)". Throws ParseError.
IntervalSpec parse_interval(std::string_view text);

/// (hi - lo) * W + Euler characteristic. Throws InvalidInterval when lo > hi.
Expr interval_numerosity(const IntervalSpec& iv);

/// Numerosity of the integers, two mirrored copies of {k}.
Expr integers_numerosity();

/// Number of k >= valid_from with a_k <= cutoff. Free parameters must be
/// substituted beforehand.
Integer count_oracle(const SequenceTerm& s, const Rational& cutoff);

}  // namespace surreal
