#include "surreal/asymptotics.hpp"

#include "surreal/algebra.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/io.hpp"

#include <algorithm>
#include <map>

namespace surreal {

namespace {

// ---------------------------------------------------------------------------
// Atom comparison. Atoms are compared through the sign of ln(a/b) evaluated at a
// large sample point; parameters without bindings fall back to a per-factor rule
// (every factor with an unknown parameter is assumed to grow).

int sign_of(const Real& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

Bindings sample_point() {
  PrecisionGuard g(40);
  Bindings b;
  b["w"] = Real(1000000);
  b["W"] = Real(1000000000);
  b["dW"] = Real(1);
  for (int n = 2; n <= 8; ++n) b["dW(" + std::to_string(n) + ")"] = Real(1);
  return b;
}

Expr log_value(const Expr& factor) {
  if (factor.is(Kind::Exp)) return factor.arg();
  if (factor.is(Kind::Power)) return factor.exponent() * ln(factor.base());
  return ln(factor);
}

std::optional<int> numeric_sign(const Expr& e) {
  static const Bindings point = sample_point();
  try {
    Real v = eval_numeric(e, point, 30);
    PrecisionGuard g(40);
    if (abs(v) < Real("1e-25")) return 0;
    return sign_of(v);
  } catch (const Error&) {
    return std::nullopt;
  }
}

int atom_class_uncached(const Expr& ratio) {
  if (ratio.is_one()) return 0;
  std::vector<Expr> logs;
  for (const auto& f : factors_of(ratio)) logs.push_back(log_value(f));
  if (auto s = numeric_sign(add(logs))) return *s;
  int agreed = 0;
  for (const auto& l : logs) {
    int s = numeric_sign(l).value_or(1);
    if (s == 0) continue;
    if (agreed != 0 && s != agreed)
      throw IncomparableMonomials("cannot order " + print(ratio) + " against 1");
    agreed = s;
  }
  return agreed;
}

int atom_class(const Expr& ratio) {
  thread_local std::map<Expr, int, ExprLess> cache;
  if (ratio.is_one()) return 0;
  auto it = cache.find(ratio);
  if (it != cache.end()) return it->second;
  int c = atom_class_uncached(ratio);
  cache.emplace(ratio, c);
  return c;
}

int cmp_rational(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

int cmp_growth(const Growth& a, const Growth& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

/// +1 when atomA*w^gA dominates atomB*w^gB, -1 when dominated, 0 on equal growth.
int dominance(const Expr& atom_a, const Growth& ga, const Expr& atom_b, const Growth& gb) {
  if (atom_a != atom_b) {
    int s = atom_class(atom_a * pow(atom_b, integer(-1)));
    if (s != 0) return s;
  }
  return cmp_growth(ga, gb);
}

const Growth kUnitGrowth{0, 0, 0};

Growth scale(const Growth& g, const Rational& r) { return {g.e * r, g.w * r, g.l * r}; }
Growth plus(const Growth& a, const Growth& b) { return {a.e + b.e, a.w + b.w, a.l + b.l}; }

/// O(atom * monomial of growth g).
struct Bound {
  Growth g;
  Expr atom = integer(1);
};

int dominance(const Bound& a, const Bound& b) { return dominance(a.atom, a.g, b.atom, b.g); }
int dominance(const Transmonomial& t, const Bound& b) { return dominance(t.atom, t.growth(), b.atom, b.g); }
int dominance(const Transmonomial& a, const Transmonomial& b) {
  return dominance(a.atom, a.growth(), b.atom, b.growth());
}

Bound bound_of(const Transmonomial& t) { return {t.growth(), t.atom}; }
Bound times(const Bound& a, const Bound& b) { return {plus(a.g, b.g), a.atom * b.atom}; }
Bound power(const Bound& a, const Rational& r) { return {scale(a.g, r), pow(a.atom, rational(r))}; }

std::optional<Bound> larger(const std::optional<Bound>& a, const std::optional<Bound>& b) {
  if (!a) return b;
  if (!b) return a;
  return dominance(*a, *b) >= 0 ? a : b;
}

bool has_w1(const Transmonomial& t) { return t.w1exp != 0 || !t.dw.empty(); }

int cmp_dw(const std::map<int, Rational>& a, const std::map<int, Rational>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? 1 : -1;
    if (int c = cmp_rational(ia->second, ib->second)) return c;
  }
  if (ia != a.end()) return ia->second > 0 ? 1 : -1;
  if (ib != b.end()) return ib->second > 0 ? -1 : 1;
  return 0;
}

/// Descending order: dominance, then W exponent, then dW exponents, then structure.
bool before(const Transmonomial& a, const Transmonomial& b) {
  if (int d = dominance(a, b)) return d > 0;
  if (int c = cmp_rational(a.w1exp, b.w1exp)) return c > 0;
  if (int c = cmp_dw(a.dw, b.dw)) return c > 0;
  return compare(a.atom, b.atom) > 0;
}

// ---------------------------------------------------------------------------
// Truncated transmonomial series.

struct Series {
  std::vector<Transmonomial> terms;
  std::optional<Bound> error;
};

Transmonomial tm_mul(const Transmonomial& a, const Transmonomial& b) {
  Transmonomial r;
  r.coeff = a.coeff * b.coeff;
  r.eexp = a.eexp + b.eexp;
  r.wexp = a.wexp + b.wexp;
  r.lexp = a.lexp + b.lexp;
  r.w1exp = a.w1exp + b.w1exp;
  r.dw = a.dw;
  for (const auto& [n, k] : b.dw) {
    Rational& slot = r.dw[n];
    slot += k;
    if (slot == 0) r.dw.erase(n);
  }
  r.atom = a.atom * b.atom;
  return r;
}

Transmonomial tm_pow(const Transmonomial& t, const Rational& p) {
  if (t.coeff.is_rational() && t.coeff.value() < 0 && !is_integer(p))
    throw DomainError("fractional power of a negative leading coefficient");
  Transmonomial r;
  r.coeff = pow(t.coeff, rational(p));
  r.eexp = t.eexp * p;
  r.wexp = t.wexp * p;
  r.lexp = t.lexp * p;
  r.w1exp = t.w1exp * p;
  for (const auto& [n, k] : t.dw) r.dw[n] = k * p;
  r.atom = pow(t.atom, rational(p));
  return r;
}

void normalize(Series& s) {
  auto& ts = s.terms;
  std::erase_if(ts, [](const Transmonomial& t) { return t.coeff.is_zero(); });
  if (s.error)
    std::erase_if(ts, [&](const Transmonomial& t) { return dominance(t, *s.error) <= 0; });
  std::sort(ts.begin(), ts.end(), before);
  std::vector<Transmonomial> merged;
  for (auto& t : ts) {
    if (!merged.empty() && merged.back().same_monomial(t)) {
      merged.back().coeff = merged.back().coeff + t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Transmonomial& t) { return t.coeff.is_zero(); });
  ts = std::move(merged);
}

Series exact(std::vector<Transmonomial> ts) {
  Series s{std::move(ts), std::nullopt};
  normalize(s);
  return s;
}

Series constant(const Expr& c) {
  if (c.is_zero()) return {};
  Transmonomial t;
  t.coeff = c;
  return exact({t});
}

Series single(const Transmonomial& t) { return exact({t}); }

Series add(const Series& a, const Series& b) {
  Series r;
  r.terms = a.terms;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  r.error = larger(a.error, b.error);
  normalize(r);
  return r;
}

Series scaled(const Series& a, const Expr& c) {
  if (c.is_zero()) return {};
  Series r = a;
  for (auto& t : r.terms) t.coeff = t.coeff * c;
  return r;
}

Series negated(const Series& a) { return scaled(a, integer(-1)); }

Series mul(const Series& a, const Series& b) {
  std::optional<Bound> err;
  if (a.error) {
    if (!b.terms.empty()) err = larger(err, times(*a.error, bound_of(b.terms.front())));
    if (b.error) err = larger(err, times(*a.error, *b.error));
  }
  if (b.error && !a.terms.empty()) err = larger(err, times(*b.error, bound_of(a.terms.front())));
  Series r;
  r.error = err;
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      Transmonomial p = tm_mul(x, y);
      if (err && dominance(p, *err) <= 0) continue;
      r.terms.push_back(std::move(p));
    }
  }
  normalize(r);
  return r;
}

Series one() { return constant(integer(1)); }

/// S = L * (1 + eps) with eps strictly infinitesimal.
struct Factored {
  Transmonomial lead;
  Series eps;
};

Factored factor_lead(const Series& s) {
  if (s.terms.empty()) throw UnsupportedExpansion("leading term of the expansion is unknown");
  Factored f;
  f.lead = s.terms.front();
  Series rest;
  rest.terms.assign(s.terms.begin() + 1, s.terms.end());
  rest.error = s.error;
  f.eps = mul(rest, single(tm_pow(f.lead, -1)));
  Bound unit{kUnitGrowth, integer(1)};
  for (const auto& t : f.eps.terms) {
    if (dominance(t, unit) >= 0)
      throw IncomparableMonomials("no single dominant term to factor out of " + print(f.lead.to_expr()) + " + ...");
  }
  return f;
}

/// Sum over j = 0..n of coeffs[j] * eps^j, with the O(lead(eps)^(n+1)) remainder.
Series power_sum(const Series& eps, const std::vector<Expr>& coeffs) {
  if (eps.terms.empty() && !eps.error) return constant(coeffs.front());
  std::optional<Bound> err = eps.error;
  if (!eps.terms.empty())
    err = larger(err, power(bound_of(eps.terms.front()), Rational(static_cast<long>(coeffs.size()))));
  Series eps_exact{eps.terms, std::nullopt};
  Series result = constant(coeffs.front());
  result.error = err;
  Series p = one();
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    p = mul(p, eps_exact);
    p.error = err;
    normalize(p);
    p.error.reset();
    if (p.terms.empty()) break;
    result = add(result, scaled(p, coeffs[j]));
  }
  return result;
}

struct Context {
  int n = 8;
};

Series pow_series(const Series& s, const Rational& r, const Context& ctx) {
  if (r == 0) return one();
  if (s.terms.empty()) {
    if (s.error) throw UnsupportedExpansion("power of an expansion with unknown leading term");
    if (r < 0) throw PowError("division by zero in an expansion");
    return {};
  }
  if (is_integer(r) && r > 0 && r <= 32) {
    long n = r.convert_to<long>();
    Series result = one();
    Series base = s;
    while (n > 0) {
      if (n & 1) result = mul(result, base);
      n >>= 1;
      if (n > 0) base = mul(base, base);
    }
    return result;
  }
  Factored f = factor_lead(s);
  std::vector<Expr> coeffs;
  for (int j = 0; j <= ctx.n; ++j) coeffs.push_back(rational(binomial(r, j)));
  return mul(single(tm_pow(f.lead, r)), power_sum(f.eps, coeffs));
}

Series expand_rec(const Expr& e, const Context& ctx);

Series ln_series(const Series& s, const Context& ctx) {
  if (s.terms.empty() && !s.error) throw DomainError("ln(0)");
  Factored f = factor_lead(s);
  const Transmonomial& L = f.lead;
  if (L.lexp != 0) throw UnsupportedExpansion("ln(ln(w)) is outside the expansion basis");
  if (L.coeff.is_rational() && L.coeff.value() < 0) throw DomainError("ln of a negative expansion");
  std::vector<Transmonomial> parts;
  auto push = [&](const Expr& coeff, auto&& fill) {
    Transmonomial t;
    t.coeff = coeff;
    fill(t);
    parts.push_back(std::move(t));
  };
  push(ln(L.coeff), [](Transmonomial&) {});
  if (L.eexp != 0) push(rational(L.eexp), [](Transmonomial& t) { t.wexp = 1; });
  if (L.wexp != 0) push(rational(L.wexp), [](Transmonomial& t) { t.lexp = 1; });
  if (L.w1exp != 0) push(rational(L.w1exp), [](Transmonomial& t) { t.atom = ln(omega1()); });
  for (const auto& [n, k] : L.dw) push(rational(k), [n = n](Transmonomial& t) { t.atom = ln(d_omega1(n)); });
  Series result = exact(parts);
  for (const auto& factor : factors_of(L.atom)) {
    if (factor.is(Kind::Ln)) throw UnsupportedExpansion("ln of a logarithmic factor is outside the expansion basis");
    result = add(result, expand_rec(log_value(factor), ctx));
  }
  std::vector<Expr> coeffs{integer(0)};
  for (int j = 1; j <= ctx.n; ++j) coeffs.push_back(rational(Rational(j % 2 == 1 ? 1 : -1, j)));
  return add(result, power_sum(f.eps, coeffs));
}

bool contains_exponential(const Expr& e) {
  return any_node(e, [](const Expr& n) {
    return n.is(Kind::Exp) || (n.is(Kind::Power) && !n.exponent().is_rational());
  });
}

Series exp_series(const Series& s, const Context& ctx) {
  Bound unit{kUnitGrowth, integer(1)};
  if (s.error && dominance(*s.error, unit) >= 0)
    throw UnsupportedExpansion("exponent is known only up to a non-infinitesimal error");
  Transmonomial pre;
  std::vector<Expr> finite;
  std::vector<Expr> atoms;
  Series eps;
  eps.error = s.error;
  const Growth ln_w{0, 0, 1};
  const Growth w{0, 1, 0};
  const Growth limit{0, 1, 1};
  for (const auto& t : s.terms) {
    int d = dominance(t, unit);
    if (d < 0) {
      eps.terms.push_back(t);
      continue;
    }
    if (d == 0 && !has_w1(t)) {
      finite.push_back(t.coeff);
      continue;
    }
    Growth g = t.growth();
    if (contains_exponential(t.atom)) throw UnsupportedExpansion("nested exponentials are outside the expansion basis");
    if (g.e != 0 || g > limit) throw UnsupportedExpansion("exp of a term growing faster than w*ln(w): " + print(t.to_expr()));
    if (t.atom.is_one() && !has_w1(t) && (g == ln_w || g == w)) {
      Rational r = 0;
      std::vector<Expr> rest;
      for (const auto& c : terms_of(t.coeff)) {
        if (c.is_rational())
          r += c.value();
        else
          rest.push_back(c);
      }
      (g == w ? pre.eexp : pre.wexp) += r;
      if (!rest.empty()) atoms.push_back(exp(add(rest) * t.monomial()));
      continue;
    }
    atoms.push_back(exp(t.to_expr()));
  }
  pre.coeff = exp(add(finite));
  pre.atom = mul(atoms);
  normalize(eps);
  std::vector<Expr> coeffs;
  Integer fact = 1;
  for (int j = 0; j <= ctx.n; ++j) {
    if (j > 0) fact *= j;
    coeffs.push_back(rational(Rational(Integer(1), fact)));
  }
  return mul(single(pre), power_sum(eps, coeffs));
}

Series require_infinite(const Expr& arg, const Context& ctx, const char* fn) {
  Series z = expand_rec(arg, ctx);
  Bound unit{kUnitGrowth, integer(1)};
  if (z.terms.empty() || dominance(z.terms.front(), unit) <= 0 ||
      (z.terms.front().coeff.is_rational() && z.terms.front().coeff.value() < 0))
    throw UnsupportedExpansion(std::string(fn) + " is expanded only at positive infinite arguments");
  return z;
}

/// Stirling series for lnGamma(z) or the matching series for psi(z).
Series stirling(const Series& z, bool digamma, const Context& ctx) {
  Series zinv = pow_series(z, -1, ctx);
  Series zinv2 = mul(zinv, zinv);
  auto b = bernoulli_numbers(2 * ctx.n);
  Bound lead_inv = bound_of(zinv.terms.front());
  Bound err = power(lead_inv, Rational(digamma ? 2 * ctx.n + 2 : 2 * ctx.n + 1));
  Series result = ln_series(z, ctx);
  Series p;
  if (digamma) {
    result = add(result, scaled(zinv, rational(Rational(-1, 2))));
    p = one();
  } else {
    result = add(mul(add(z, constant(rational(Rational(-1, 2)))), result), negated(z));
    result = add(result, constant(half_ln_2pi()));
    p = zinv;
  }
  result.error = larger(result.error, err);
  normalize(result);
  for (int j = 1; j <= ctx.n; ++j) {
    if (digamma) {
      p = mul(p, zinv2);
    } else if (j > 1) {
      p = mul(p, zinv2);
    }
    p.error = err;
    normalize(p);
    p.error.reset();
    if (p.terms.empty()) break;
    const Rational& bj = b[static_cast<std::size_t>(2 * j)];
    Rational c = digamma ? Rational(-bj / (2 * j)) : Rational(bj / (2 * j * (2 * j - 1)));
    result = add(result, scaled(p, rational(c)));
  }
  return result;
}

Series expand_rec(const Expr& e, const Context& ctx) {
  if (free_of_surreal(e)) return constant(e);
  switch (e.kind()) {
    case Kind::Symbol: {
      Transmonomial t;
      if (e.is_symbol(SymbolId::Omega))
        t.wexp = 1;
      else if (e.is_symbol(SymbolId::Omega1))
        t.w1exp = 1;
      else
        t.dw[e.order()] = 1;
      return single(t);
    }
    case Kind::Sum: {
      Series r;
      for (const auto& t : e.args()) r = add(r, expand_rec(t, ctx));
      return r;
    }
    case Kind::Product: {
      Series r = one();
      for (const auto& f : e.args()) r = mul(r, expand_rec(f, ctx));
      return r;
    }
    case Kind::Power: {
      const Expr& p = e.exponent();
      if (p.is_rational()) {
        const Expr& b = e.base();
        // W and dW powers are carried verbatim.
        if (b.is_symbol(SymbolId::Omega1) || b.is_symbol(SymbolId::DOmega1)) {
          Transmonomial t;
          if (b.is_symbol(SymbolId::Omega1))
            t.w1exp = p.value();
          else
            t.dw[b.order()] = p.value();
          return single(t);
        }
        return pow_series(expand_rec(b, ctx), p.value(), ctx);
      }
      return exp_series(mul(expand_rec(p, ctx), ln_series(expand_rec(e.base(), ctx), ctx)), ctx);
    }
    case Kind::Exp:
      return exp_series(expand_rec(e.arg(), ctx), ctx);
    case Kind::Ln:
      return ln_series(expand_rec(e.arg(), ctx), ctx);
    case Kind::Function:
      switch (e.function()) {
        case FunctionId::LnGamma:
          return stirling(require_infinite(e.arg(), ctx, "lnGamma"), false, ctx);
        case FunctionId::Psi:
          return stirling(require_infinite(e.arg(), ctx, "psi"), true, ctx);
        case FunctionId::Gamma:
          return exp_series(stirling(require_infinite(e.arg(), ctx, "Gamma"), false, ctx), ctx);
        default:
          throw UnsupportedExpansion(e.name() + "() of an infinite argument is outside the expansion basis");
      }
    default:
      throw InternalError("unexpected node in expansion");
  }
}

NormalForm to_normal_form(const Series& s, std::size_t order, bool& complete) {
  NormalForm nf;
  nf.truncation_order = order;
  std::size_t small = 0;
  for (const auto& t : s.terms) {
    if (classify(t) == TermClass::Infinitesimal) {
      if (small == order) {
        nf.truncated = true;
        break;
      }
      ++small;
    }
    nf.terms.push_back(t);
  }
  Bound unit{kUnitGrowth, integer(1)};
  complete = true;
  if (s.error) {
    nf.truncated = true;
    if (dominance(*s.error, unit) >= 0 || small < order) complete = false;
  }
  return nf;
}

Series expand_with_retry(const Expr& e, std::size_t order, NormalForm* out) {
  const int start = static_cast<int>(order) + 4;
  const int sizes[] = {start, 2 * start, 4 * start};
  Series s;
  for (int n : sizes) {
    s = expand_rec(e, Context{n});
    bool complete = false;
    NormalForm nf = to_normal_form(s, order, complete);
    if (complete || n == sizes[2]) {
      Bound unit{kUnitGrowth, integer(1)};
      if (s.error && dominance(*s.error, unit) >= 0)
        throw UnsupportedExpansion("expansion of " + print(e) + " does not reach its finite part");
      if (out) *out = std::move(nf);
      return s;
    }
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

bool Transmonomial::same_monomial(const Transmonomial& o) const {
  return eexp == o.eexp && wexp == o.wexp && lexp == o.lexp && w1exp == o.w1exp && dw == o.dw && atom == o.atom;
}

Expr Transmonomial::monomial() const {
  std::vector<Expr> fs;
  if (eexp != 0) fs.push_back(exp(rational(eexp) * omega()));
  if (wexp != 0) fs.push_back(pow(omega(), rational(wexp)));
  if (lexp != 0) fs.push_back(pow(ln(omega()), rational(lexp)));
  if (w1exp != 0) fs.push_back(pow(omega1(), rational(w1exp)));
  for (const auto& [n, k] : dw) fs.push_back(pow(d_omega1(n), rational(k)));
  fs.push_back(atom);
  return mul(fs);
}

Expr Transmonomial::to_expr() const { return coeff * monomial(); }

TermClass classify(const Transmonomial& t) {
  if (int a = atom_class(t.atom)) return a > 0 ? TermClass::Infinite : TermClass::Infinitesimal;
  int g = cmp_growth(t.growth(), kUnitGrowth);
  int s = cmp_rational(t.w1exp, 0);
  if (s == 0) {
    for (const auto& [n, k] : t.dw) s = s == 0 ? cmp_rational(k, 0) : s;
  }
  if (g != 0 && s != 0 && g != s)
    throw IncomparableMonomials("cannot order " + print(t.to_expr()) + " against 1");
  int c = g != 0 ? g : s;
  if (c > 0) return TermClass::Infinite;
  if (c < 0) return TermClass::Infinitesimal;
  return TermClass::Finite;
}

Expr NormalForm::to_expr() const {
  std::vector<Expr> ts;
  for (const auto& t : terms) ts.push_back(t.to_expr());
  return add(ts);
}

NormalForm asymptotic_expansion(const Expr& e, std::size_t order) {
  NormalForm nf;
  expand_with_retry(e, order, &nf);
  return nf;
}

SurrealParts split(const NormalForm& nf) {
  SurrealParts parts;
  parts.infinite.truncation_order = nf.truncation_order;
  parts.infinitesimal.truncation_order = nf.truncation_order;
  parts.infinitesimal.truncated = nf.truncated;
  std::vector<Expr> finite;
  for (const auto& t : nf.terms) {
    switch (classify(t)) {
      case TermClass::Infinite:
        parts.infinite.terms.push_back(t);
        break;
      case TermClass::Finite:
        finite.push_back(t.coeff);
        break;
      case TermClass::Infinitesimal:
        parts.infinitesimal.terms.push_back(t);
        break;
    }
  }
  parts.finite = add(finite);
  return parts;
}

NormalForm refine(const NormalForm& nf) {
  NormalForm out;
  out.truncation_order = 0;
  for (const auto& t : nf.terms)
    if (classify(t) != TermClass::Infinitesimal) out.terms.push_back(t);
  return out;
}

Expr improper_integral_to_surreal(const Expr& integrand, const Expr& t, const Rational& lower) {
  Expr g = antiderivative(integrand, t);
  return evaluate_at(g, t, omega()) - evaluate_at(g, t, rational(lower));
}

namespace {

Expr leading_inverse(const Expr& g_of_w, const Context& ctx) {
  Series s = expand_rec(g_of_w, ctx);
  Bound unit{kUnitGrowth, integer(1)};
  if (s.terms.empty() || dominance(s.terms.front(), unit) <= 0)
    throw NotInvertible(print(g_of_w) + " has no positive dominant growth");
  const Transmonomial& t = s.terms.front();
  if (has_w1(t)) throw NotInvertible("dominant term of " + print(g_of_w) + " involves W");
  if (t.coeff.is_rational() && t.coeff.value() < 0)
    throw NotInvertible("dominant term of " + print(g_of_w) + " is negative");
  if (t.atom.is_one() && t.eexp == 0 && t.lexp == 0 && t.wexp > 0)
    return pow(omega() / t.coeff, rational(1 / t.wexp));
  if (t.atom.is_one() && t.eexp == 0 && t.wexp > 0)
    throw OrderUnreachable("inverse of a power times logarithms needs iterated logarithms");
  Series logs = ln_series(single(t), ctx);
  Expr rate = integer(0);
  Expr shift = integer(0);
  for (const auto& term : logs.terms) {
    if (term.atom.is_one() && term.growth() == Growth{0, 1, 0} && !has_w1(term)) {
      rate = rate + term.coeff;
    } else if (classify(term) == TermClass::Finite) {
      shift = shift + term.coeff;
    } else {
      throw OrderUnreachable("inverse of " + print(t.to_expr()) + " needs terms outside the basis");
    }
  }
  if (rate.is_zero()) throw NotInvertible(print(g_of_w) + " has no positive dominant growth");
  return (ln(omega()) - shift) / rate;
}

NormalForm truncate_to(const Series& s, std::size_t order) {
  bool complete = false;
  return to_normal_form(s, order, complete);
}

struct NotStable {};

Expr inverse_at_depth(const Expr& g, const Expr& k, std::size_t order, const Context& ctx) {
  Expr k_expr = leading_inverse(substitute(g, k, omega()), ctx);
  Expr dg = differentiate(g, k);
  const std::size_t depth = order + 2;
  NormalForm current = truncate_to(expand_rec(k_expr, ctx), depth);
  auto finish = [&](std::vector<Transmonomial> terms, const std::optional<Bound>& error) {
    Bound unit{kUnitGrowth, integer(1)};
    if (error && dominance(*error, unit) >= 0)
      throw OrderUnreachable("inverse of " + print(g) + " is not determined to its finite part");
    NormalForm nf;
    std::size_t small = 0;
    for (auto& t : terms) {
      if (classify(t) == TermClass::Infinitesimal && ++small > order) break;
      nf.terms.push_back(std::move(t));
    }
    return nf.to_expr();
  };
  std::size_t checked_prefix = 0;
  for (int iter = 0; iter < 12; ++iter) {
    Expr kk = current.to_expr();
    Series residual = expand_rec(substitute(g, k, kk) - omega(), ctx);
    if (residual.terms.empty() && !residual.error) return finish(current.terms, std::nullopt);
    Series slope = expand_rec(substitute(dg, k, kk), ctx);
    Series correction = mul(residual, pow_series(slope, -1, ctx));
    Series next = add(expand_rec(kk, ctx), negated(correction));
    NormalForm nf = truncate_to(next, depth);
    // Newton fixes a growing prefix; the tail keeps changing until it falls below
    // the retained order, so successive iterates are compared term by term.
    std::vector<Transmonomial> agreed;
    std::size_t small = 0;
    for (std::size_t i = 0; i < std::min(nf.terms.size(), current.terms.size()); ++i) {
      if (nf.terms[i].to_expr() != current.terms[i].to_expr()) break;
      agreed.push_back(nf.terms[i]);
      if (classify(nf.terms[i]) == TermClass::Infinitesimal) ++small;
    }
    bool identical = agreed.size() == nf.terms.size() && agreed.size() == current.terms.size();
    if (small > order || identical) return finish(std::move(agreed), next.error);
    if (agreed.size() > checked_prefix) {
      // A finite exact inverse shows up as an agreed prefix with zero residual.
      checked_prefix = agreed.size();
      NormalForm prefix;
      prefix.terms = agreed;
      Series rest = expand_rec(substitute(g, k, prefix.to_expr()) - omega(), ctx);
      if (rest.terms.empty() && !rest.error) return finish(std::move(agreed), std::nullopt);
    }
    current = std::move(nf);
  }
  throw NotStable{};
}

}  // namespace

Expr asymptotic_inverse(const Expr& g, const Expr& k, std::size_t order) {
  // Shallow series are much cheaper when logarithms mix into the coefficients;
  // the deeper pass only runs when the shallow one cannot settle.
  for (int depth : {static_cast<int>(order) + 2, static_cast<int>(order) + 6}) {
    try {
      return inverse_at_depth(g, k, order, Context{depth});
    } catch (const NotStable&) {
    }
  }
  throw OrderUnreachable("inverse of " + print(g) + " did not stabilize at order " + std::to_string(order));
}

}  // namespace surreal
