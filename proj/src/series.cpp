#include "surreal/series.hpp"

#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/errors.hpp"
#include "surreal/io.hpp"

namespace surreal {

namespace {

long first_index(SeriesFamily f) {
  switch (f) {
    case SeriesFamily::LogK:
    case SeriesFamily::ReciprocalK:
    case SeriesFamily::DigammaK:
      return 1;
    default:
      return 0;
  }
}

Rational harmonic(long n) {
  Rational h = 0;
  for (long j = 1; j <= n; ++j) h += Rational(1, j);
  return h;
}

std::optional<Expr> geometric_ratio(const Expr& f, const Expr& k) {
  if (f.is(Kind::Power) && f.exponent() == k && !depends_on(f.base(), k)) return f.base();
  if (f.is(Kind::Exp)) {
    Expr rate = f.arg() / k;
    if (!depends_on(rate, k)) return exp(rate);
  }
  return std::nullopt;
}

/// Integral over [w, w+1] of one term of a partial sum.
Expr unit_integral(const Expr& term, const Expr& t) {
  const Expr w = omega();
  std::vector<Expr> constant;
  std::vector<Expr> dependent;
  for (const auto& f : factors_of(term)) (depends_on(f, t) ? dependent : constant).push_back(f);
  constant.push_back(rational(split_coefficient(term).first));
  Expr c = mul(constant);
  auto is_fn = [&](const Expr& f, FunctionId id) { return f.is(Kind::Function) && f.function() == id && f.arg() == t; };
  if (dependent.size() == 1 && is_fn(dependent[0], FunctionId::LnGamma))
    return c * (w * ln(w) - w + half_ln_2pi());  // Raabe
  if (dependent.size() == 1 && is_fn(dependent[0], FunctionId::Psi)) return c * ln(w);
  if (dependent.size() == 2 && dependent[0] == t && is_fn(dependent[1], FunctionId::Psi))
    return c * (apply(FunctionId::LnGamma, w) + ln(w) + w - half_ln_2pi());  // by parts, then Raabe
  Expr g = antiderivative(term, t);
  return expand(substitute(g, t, w + integer(1)) - substitute(g, t, w));
}

}  // namespace

SeriesTerm detect_series(const Expr& body, std::optional<long> start, const Expr& index) {
  SeriesTerm s;
  s.body = body;
  s.index = index;
  const Expr& k = index;
  if (!free_of_surreal(body)) throw UnsupportedSeries("series terms may not contain w, W or dW");
  if (auto cs = polynomial_coefficients(body, k)) {
    bool rational_coeffs = true;
    for (const auto& c : *cs) rational_coeffs = rational_coeffs && c.is_rational();
    if (rational_coeffs) {
      s.family = SeriesFamily::Power;
      for (const auto& c : *cs) s.coeffs.push_back(c.value());
    }
  } else if (terms_of(body).size() == 1) {
    std::vector<Expr> scale{rational(split_coefficient(body).first)};
    std::vector<Expr> dependent;
    for (const auto& f : factors_of(body)) (depends_on(f, k) ? dependent : scale).push_back(f);
    if (dependent.size() == 1) {
      const Expr& f = dependent[0];
      s.scale = mul(scale);
      if (f.is(Kind::Ln) && f.arg() == k) {
        s.family = SeriesFamily::LogK;
      } else if (f == pow(k, integer(-1))) {
        s.family = SeriesFamily::ReciprocalK;
      } else if (f.is(Kind::Function) && f.function() == FunctionId::Psi && f.arg() == k) {
        s.family = SeriesFamily::DigammaK;
      } else if (auto r = geometric_ratio(f, k); r && !r->is_one()) {
        s.family = SeriesFamily::Geometric;
        s.ratio = *r;
      }
    }
  }
  s.start = start.value_or(first_index(s.family));
  if (s.family != SeriesFamily::Unsupported && s.start < first_index(s.family))
    throw UnsupportedSeries("series " + print(body) + " must start at k >= " + std::to_string(first_index(s.family)));
  return s;
}

PartialSumForm partial_sum_closed_form(const SeriesTerm& s) {
  PartialSumForm out;
  const Expr& t = out.variable;
  const Expr n0 = integer(s.start);
  switch (s.family) {
    case SeriesFamily::Power: {
      std::vector<Expr> terms;
      for (std::size_t p = 0; p < s.coeffs.size(); ++p) {
        int q = static_cast<int>(p) + 1;
        Expr f = bernoulli_polynomial(q, t) - bernoulli_polynomial(q, n0);
        terms.push_back(rational(s.coeffs[p] / q) * f);
      }
      out.sum = add(terms);
      break;
    }
    case SeriesFamily::Geometric:
      out.sum = s.scale * (pow(s.ratio, t) - pow(s.ratio, n0)) / (s.ratio - integer(1));
      break;
    case SeriesFamily::LogK: {
      Integer fact = 1;
      for (long j = 2; j < s.start; ++j) fact *= j;
      out.sum = s.scale * (apply(FunctionId::LnGamma, t) - ln(rational(Rational(fact))));
      break;
    }
    case SeriesFamily::ReciprocalK:
      out.sum = s.scale * (apply(FunctionId::Psi, t) + euler_gamma() - rational(harmonic(s.start - 1)));
      break;
    case SeriesFamily::DigammaK: {
      // sum_{k=1}^{m} psi(k) = m psi(m+1) - m, minus the part below start.
      Rational below_h = 0;
      for (long j = 1; j < s.start; ++j) below_h += harmonic(j - 1);
      Expr below = rational(below_h) - integer(s.start - 1) * euler_gamma();
      Expr m = t - integer(1);
      out.sum = s.scale * (m * apply(FunctionId::Psi, t) - m - below);
      break;
    }
    default:
      throw UnsupportedSeries("unsupported series family: " + print(s.body));
  }
  return out;
}

Expr series_value(const SeriesTerm& s) {
  PartialSumForm ps = partial_sum_closed_form(s);
  std::vector<Expr> pieces;
  try {
    for (const auto& term : terms_of(expand(ps.sum))) pieces.push_back(unit_integral(term, ps.variable));
  } catch (const NoAntiderivative& e) {
    throw UnsupportedSeries(std::string("series partial sum has no integral over [w, w+1]: ") + e.what());
  }
  Expr value = expand(add(pieces));
  try {
    (void)asymptotic_expansion(value, 0);
  } catch (const Error& e) {
    throw GermNotInJPlusR("value " + print(value) + " is not a purely infinite plus real germ: " + e.what());
  }
  return value;
}

}  // namespace surreal
