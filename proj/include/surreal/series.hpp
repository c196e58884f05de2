#pragma once

#include "surreal/expr.hpp"

#include <optional>
#include <vector>

namespace surreal {

enum class SeriesFamily { Power, Geometric, LogK, ReciprocalK, DigammaK, Unsupported };

/// a_k = scale * f(k) for k >= start. Power holds a rational-coefficient polynomial
/// in `coeffs`; Geometric holds scale * ratio^k.
struct SeriesTerm {
  Expr body;
  Expr index = var("k");
  SeriesFamily family = SeriesFamily::Unsupported;
  std::vector<Rational> coeffs;
  Expr ratio;
  Expr scale = integer(1);
  long start = 0;
};

/// Pattern-matches the family. `start` defaults to 0 (1 for ln k, 1/k, psi(k)).
/// Throws UnsupportedSeries when start lies below the family's first valid index.
SeriesTerm detect_series(const Expr& body, std::optional<long> start = std::nullopt,
                         const Expr& index = var("k"));

/// S(t) = sum_{k=start}^{t-1} a_k in closed form (unique by Carlson's theorem
/// within exponential type < pi; not certified here).
struct PartialSumForm {
  Expr sum;
  Expr variable = var("t");
};

PartialSumForm partial_sum_closed_form(const SeriesTerm& s);

/// Integral of S(t) over [w, w+1]. Throws UnsupportedSeries or GermNotInJPlusR.
Expr series_value(const SeriesTerm& s);

}  // namespace surreal
