#include "surreal/algebra.hpp"

#include "surreal/errors.hpp"

#include <map>

namespace surreal {

namespace {

bool is_surreal_symbol(const Expr& e) {
  return e.is_symbol(SymbolId::Omega1) || e.is_symbol(SymbolId::DOmega1);
}

void collect_negative_sum_powers(const Expr& e, std::map<Expr, Rational, ExprLess>& worst) {
  for (const auto& t : terms_of(e)) {
    for (const auto& f : factors_of(t)) {
      if (!f.is(Kind::Power) || !f.base().is(Kind::Sum) || !f.exponent().is_rational()) continue;
      const Rational& p = f.exponent().value();
      if (p >= 0) continue;
      Rational& w = worst[f.base()];
      if (-p > w) w = -p;
    }
  }
}

bool is_nonnegative_integer(const Expr& e) {
  return e.is_rational() && is_integer(e.value()) && e.value() >= 0;
}

Expr factorial_ratio(long n, long j) {
  // n! / (n-j)!
  Integer r = 1;
  for (long i = n - j + 1; i <= n; ++i) r *= i;
  return rational(Rational(r));
}

/// Splits arg = A*x + B with A, B free of x.
std::pair<Expr, Expr> linear_split(const Expr& arg, const Expr& x) {
  std::vector<Expr> a, b;
  for (const auto& t : terms_of(arg)) {
    if (!depends_on(t, x)) {
      b.push_back(t);
      continue;
    }
    Expr q = t / x;
    if (depends_on(q, x)) throw NoAntiderivative("exponent is not affine in " + x.name());
    a.push_back(q);
  }
  return {add(a), add(b)};
}

Expr integrate_power_log(const Expr& n, long m, const Expr& x) {
  if (m == 0) {
    if (n == integer(-1)) return ln(x);
    Expr n1 = n + integer(1);
    return pow(x, n1) / n1;
  }
  Expr lnx = ln(x);
  if (n == integer(-1)) return pow(lnx, integer(m + 1)) / integer(m + 1);
  Expr n1 = n + integer(1);
  return pow(x, n1) * pow(lnx, integer(m)) / n1 - integer(m) / n1 * integrate_power_log(n, m - 1, x);
}

Expr antiderivative_term(const Expr& term, const Expr& x) {
  auto [c, m] = split_coefficient(term);
  std::vector<Expr> constant{rational(c)};
  std::vector<Expr> xpow;
  long lnpow = 0;
  std::vector<Expr> rate;
  std::vector<Expr> exp_factors;
  for (const auto& f : factors_of(m)) {
    if (!depends_on(f, x)) {
      constant.push_back(f);
    } else if (f == x) {
      xpow.push_back(integer(1));
    } else if (f.is(Kind::Power) && f.base() == x && !depends_on(f.exponent(), x)) {
      xpow.push_back(f.exponent());
    } else if (f.is(Kind::Ln) && f.arg() == x) {
      ++lnpow;
    } else if (f.is(Kind::Power) && f.base().is(Kind::Ln) && f.base().arg() == x &&
               is_nonnegative_integer(f.exponent())) {
      lnpow += f.exponent().value().convert_to<long>();
    } else if (f.is(Kind::Exp)) {
      rate.push_back(linear_split(f.arg(), x).first);
      exp_factors.push_back(f);
    } else if (f.is(Kind::Power) && !depends_on(f.base(), x)) {
      rate.push_back(linear_split(f.exponent(), x).first * ln(f.base()));
      exp_factors.push_back(f);
    } else {
      throw NoAntiderivative("no antiderivative in " + x.name() + " for factor of this shape");
    }
  }
  Expr k = mul(constant);
  Expr n = add(xpow);
  Expr r = add(rate);
  Expr p = mul(exp_factors);
  if (r.is_zero()) return k * p * integrate_power_log(n, lnpow, x);
  if (lnpow != 0) throw NoAntiderivative("no antiderivative for a logarithm times an exponential");
  if (!is_nonnegative_integer(n)) throw NoAntiderivative("no antiderivative for x^n times an exponential unless n is a natural number");
  long nn = n.value().convert_to<long>();
  std::vector<Expr> parts;
  for (long j = 0; j <= nn; ++j) {
    Expr sign = integer(j % 2 == 0 ? 1 : -1);
    parts.push_back(sign * factorial_ratio(nn, j) * pow(x, integer(nn - j)) * pow(r, integer(-(j + 1))));
  }
  return k * p * add(parts);
}

}  // namespace

Expr clear_denominators(const Expr& e) {
  Expr cur = expand(e);
  for (int round = 0; round < 8; ++round) {
    std::map<Expr, Rational, ExprLess> worst;
    collect_negative_sum_powers(cur, worst);
    if (worst.empty()) return cur;
    std::vector<Expr> factors{cur};
    for (auto& [b, p] : worst) factors.push_back(pow(b, rational(p)));
    cur = expand(mul(factors));
  }
  return cur;
}

bool equivalent(const Expr& a, const Expr& b) {
  if (a == b) return true;
  return clear_denominators(a - b).is_zero();
}

bool depends_on(const Expr& e, const Expr& x, bool derivation) {
  return any_node(e, [&](const Expr& n) { return n == x || (derivation && is_surreal_symbol(n)); });
}

Expr differentiate(const Expr& e, const Expr& x, bool derivation) {
  if (!depends_on(e, x, derivation)) return integer(0);
  switch (e.kind()) {
    case Kind::Symbol:
      if (e == x) return integer(1);
      if (e.is_symbol(SymbolId::Omega1)) return d_omega1(1);
      return d_omega1(e.order() + 1);
    case Kind::Sum: {
      std::vector<Expr> out;
      for (const auto& t : e.args()) out.push_back(differentiate(t, x, derivation));
      return add(out);
    }
    case Kind::Product: {
      std::vector<Expr> out;
      const auto& fs = e.args();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr d = differentiate(fs[i], x, derivation);
        if (d.is_zero()) continue;
        std::vector<Expr> prod;
        for (std::size_t j = 0; j < fs.size(); ++j) prod.push_back(i == j ? d : fs[j]);
        out.push_back(mul(prod));
      }
      return add(out);
    }
    case Kind::Power: {
      const Expr& b = e.base();
      const Expr& p = e.exponent();
      Expr db = differentiate(b, x, derivation);
      Expr dp = differentiate(p, x, derivation);
      if (dp.is_zero()) return p * pow(b, p - integer(1)) * db;
      return e * (dp * ln(b) + p * db / b);
    }
    case Kind::Exp:
      return e * differentiate(e.arg(), x, derivation);
    case Kind::Ln:
      return differentiate(e.arg(), x, derivation) / e.arg();
    case Kind::Function: {
      Expr da = differentiate(e.arg(), x, derivation);
      switch (e.function()) {
        case FunctionId::Gamma:
          return e * apply(FunctionId::Psi, e.arg()) * da;
        case FunctionId::LnGamma:
          return apply(FunctionId::Psi, e.arg()) * da;
        case FunctionId::Psi:
          return apply_opaque("psi1", e.arg()) * da;
        default:
          throw UnsupportedExpansion("cannot differentiate " + e.name() + "()");
      }
    }
    default:
      return integer(0);
  }
}

Expr antiderivative(const Expr& e, const Expr& x) {
  std::vector<Expr> out;
  for (const auto& t : terms_of(expand(e))) out.push_back(antiderivative_term(t, x));
  return add(out);
}

Expr evaluate_at(const Expr& e, const Expr& x, const Expr& point) {
  if (!point.is_zero()) return substitute(e, x, point);
  std::vector<Expr> out;
  for (const auto& t : terms_of(e)) {
    bool vanishes = false;
    for (const auto& f : factors_of(t)) {
      if (f == x) vanishes = true;
      if (f.is(Kind::Power) && f.base() == x && !(f.exponent().is_rational() && f.exponent().value() < 0))
        vanishes = true;
    }
    if (!vanishes) out.push_back(substitute(t, x, point));
  }
  return add(out);
}

Expr definite_integral(const Expr& e, const Expr& x, const Expr& a, const Expr& b) {
  Expr g = antiderivative(e, x);
  return evaluate_at(g, x, b) - evaluate_at(g, x, a);
}

Expr bernoulli_polynomial(int n, const Expr& t) {
  auto b = bernoulli_numbers(n);
  std::vector<Expr> terms;
  for (int j = 0; j <= n; ++j)
    terms.push_back(rational(Rational(binomial(n, j)) * b[static_cast<std::size_t>(j)]) * pow(t, integer(n - j)));
  return add(terms);
}

std::optional<std::vector<Expr>> polynomial_coefficients(const Expr& e, const Expr& x) {
  std::map<long, std::vector<Expr>> by_degree;
  long degree = 0;
  for (const auto& t : terms_of(expand(e))) {
    auto [c, m] = split_coefficient(t);
    long d = 0;
    std::vector<Expr> rest{rational(c)};
    for (const auto& f : factors_of(m)) {
      if (f == x) {
        d += 1;
      } else if (f.is(Kind::Power) && f.base() == x && is_nonnegative_integer(f.exponent())) {
        d += f.exponent().value().convert_to<long>();
      } else if (depends_on(f, x)) {
        return std::nullopt;
      } else {
        rest.push_back(f);
      }
    }
    by_degree[d].push_back(mul(rest));
    degree = std::max(degree, d);
  }
  std::vector<Expr> out(static_cast<std::size_t>(degree) + 1, integer(0));
  for (auto& [d, cs] : by_degree) out[static_cast<std::size_t>(d)] = add(cs);
  return out;
}

Expr polynomial_from_coefficients(const std::vector<Expr>& coeffs, const Expr& x) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) terms.push_back(coeffs[i] * pow(x, integer(static_cast<long>(i))));
  return add(terms);
}

}  // namespace surreal
