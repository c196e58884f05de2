#include "surreal/numerosity.hpp"

#include "surreal/algebra.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/io.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace surreal {

namespace {

bool all_rational(const std::vector<Expr>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Expr& c) { return c.is_rational(); });
}

/// Splits x = A*k + B with A, B free of k; nullopt when x is not affine in k.
std::optional<std::pair<Expr, Expr>> affine_in(const Expr& x, const Expr& k) {
  auto cs = polynomial_coefficients(x, k);
  if (!cs || cs->size() > 2) return std::nullopt;
  if (cs->size() == 1) return std::make_pair(integer(0), (*cs)[0]);
  return std::make_pair((*cs)[1], (*cs)[0]);
}

bool known_nonpositive(const Expr& c) {
  if (!is_constant(c)) return false;
  try {
    return eval_numeric(c, {}, 20) <= 0;
  } catch (const Error&) {
    return false;
  }
}

/// Decreasing or bounded sequences have no numerosity germ to invert.
void require_increasing(const SequenceTerm& s) {
  bool bad = false;
  if (s.cls == SequenceClass::Polynomial) bad = s.degree() < 1 || known_nonpositive(s.coeffs.back());
  if (s.cls == SequenceClass::Geometric) bad = known_nonpositive(s.scale) || known_nonpositive(s.log_base);
  if (bad) throw NotInvertible("sequence " + print(s.body) + " is not eventually increasing without bound");
}

/// Recognizes c * b^k + d; each k-dependent term must carry the same growth rate.
bool detect_geometric(SequenceTerm& s) {
  const Expr& k = s.index;
  std::vector<Expr> offset;
  std::vector<Expr> scales;
  std::optional<Expr> rate;
  Expr base;
  for (const auto& term : terms_of(expand(s.body))) {
    if (!depends_on(term, k)) {
      offset.push_back(term);
      continue;
    }
    auto [c, m] = split_coefficient(term);
    std::vector<Expr> scale{rational(c)};
    std::optional<Expr> term_rate;
    Expr term_base;
    for (const auto& f : factors_of(m)) {
      if (!depends_on(f, k)) {
        scale.push_back(f);
        continue;
      }
      if (term_rate) return false;
      if (f.is(Kind::Exp)) {
        auto ab = affine_in(f.arg(), k);
        if (!ab || ab->first.is_zero()) return false;
        term_rate = ab->first;
        term_base = exp(ab->first);
        scale.push_back(exp(ab->second));
      } else if (f.is(Kind::Power) && !depends_on(f.base(), k)) {
        auto ab = affine_in(f.exponent(), k);
        if (!ab || ab->first.is_zero()) return false;
        term_rate = ab->first * ln(f.base());
        term_base = pow(f.base(), ab->first);
        scale.push_back(pow(f.base(), ab->second));
      } else {
        return false;
      }
    }
    if (rate && *rate != *term_rate) return false;
    rate = term_rate;
    base = term_base;
    scales.push_back(mul(scale));
  }
  if (!rate) return false;
  s.cls = SequenceClass::Geometric;
  s.scale = add(scales);
  s.base = base;
  s.log_base = *rate;
  s.offset = add(offset);
  return true;
}

/// Solves poly(k) = w for k when the degree permits a radical solution.
std::optional<Expr> solve_exact(const std::vector<Expr>& g, const Expr& k) {
  const Expr w = omega();
  const std::size_t n = g.size() - 1;
  if (n == 1) return (w - g[0]) / g[1];
  if (n == 2) {
    const Expr &a = g[2], &b = g[1], &c = g[0];
    Expr disc = expand(b * b - integer(4) * a * (c - w));
    return (sqrt(disc) - b) / (integer(2) * a);
  }
  if (!all_rational(g)) return std::nullopt;
  if (n == 3 || n == 4) {
    // Shift k = y + s to remove the y^(n-1) term.
    Expr shift = -g[n - 1] / (integer(static_cast<long>(n)) * g[n]);
    auto h = polynomial_coefficients(expand(substitute(polynomial_from_coefficients(g, k), k, k + shift)), k);
    std::vector<Expr> y = *h;
    y.resize(n + 1, integer(0));
    if (n == 3) {
      // y^3 + p y + q = w  ->  Cardano, real branch.
      Expr p = y[1] / y[3];
      Expr q = (y[0] - w) / y[3];
      Expr u = pow(expand(-q / integer(2) + sqrt(expand(q * q / integer(4) + p * p * p / integer(27)))),
                   rational(Rational(1, 3)));
      return u - p / (integer(3) * u) + shift;
    }
    if (!y[1].is_zero()) return std::nullopt;
    // Biquadratic in y: A z^2 + B z + C = w with z = y^2, larger root.
    const Expr &a = y[4], &b = y[2], &c = y[0];
    Expr z = (sqrt(expand(b * b - integer(4) * a * (c - w))) - b) / (integer(2) * a);
    return sqrt(expand(z)) + shift;
  }
  return std::nullopt;
}

/// Inverts target = e(w) for w by peeling one w-dependent layer at a time.
Expr peel_invert(const Expr& e, const Expr& target) {
  if (e.is_symbol(SymbolId::Omega)) return target;
  if (!contains_omega(e)) throw NotSolvable("numerosity does not depend on w");
  auto only_dependent = [&](const std::vector<Expr>& parts, const char* what) {
    std::vector<Expr> rest;
    std::optional<Expr> dep;
    for (const auto& p : parts) {
      if (!contains_omega(p)) {
        rest.push_back(p);
      } else if (dep) {
        throw NotSolvable(std::string("w occurs in more than one ") + what + " of " + print(e));
      } else {
        dep = p;
      }
    }
    return std::make_pair(*dep, rest);
  };
  switch (e.kind()) {
    case Kind::Sum: {
      auto [dep, rest] = only_dependent(e.args(), "term");
      return peel_invert(dep, target - add(rest));
    }
    case Kind::Product: {
      auto [dep, rest] = only_dependent(e.args(), "factor");
      return peel_invert(dep, target / mul(rest));
    }
    case Kind::Power:
      if (!contains_omega(e.exponent())) return peel_invert(e.base(), pow(target, integer(1) / e.exponent()));
      if (!contains_omega(e.base())) return peel_invert(e.exponent(), ln(target) / ln(e.base()));
      break;
    case Kind::Ln:
      return peel_invert(e.arg(), exp(target));
    case Kind::Exp:
      return peel_invert(e.arg(), ln(target));
    default:
      break;
  }
  throw NotSolvable("cannot solve " + print(e) + " = k for w");
}

std::optional<Real> numeric_term(const Expr& body, const Expr& k, long at) {
  try {
    PrecisionGuard g(60);
    Real v = eval_numeric(substitute(body, k, integer(at)), {}, 40);
    return v;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Rational poly_at(const std::vector<Expr>& cs, const Integer& k) {
  Rational acc = 0;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * Rational(k) + it->value();
  return acc;
}

Integer count_polynomial(const SequenceTerm& s, const Rational& cutoff) {
  if (!all_rational(s.coeffs)) throw DomainError("count_oracle needs numeric coefficients");
  const auto& cs = s.coeffs;
  const int d = s.degree();
  // Past the Cauchy root bound of the derivative the sequence is increasing.
  Rational lead = cs.back().value() * d;
  Rational bound = 1;
  for (int i = 1; i < d; ++i) {
    Rational r = abs(cs[static_cast<std::size_t>(i)].value() * i / lead);
    bound = std::max(bound, Rational(1 + r));
  }
  Integer monotone_from = std::max<Integer>(Integer(s.valid_from), num(floor(bound)) + 1);
  if (monotone_from - s.valid_from > 10'000'000) throw DomainError("count_oracle: monotone range too far out");
  Integer count = 0;
  for (Integer k = s.valid_from; k < monotone_from; ++k)
    if (poly_at(cs, k) <= cutoff) ++count;
  if (poly_at(cs, monotone_from) > cutoff) return count;
  Integer lo = monotone_from;  // p(lo) <= cutoff
  Integer step = 1;
  while (poly_at(cs, lo + step) <= cutoff) {
    lo += step;
    step *= 2;
  }
  Integer hi = lo + step;  // p(hi) > cutoff
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    (poly_at(cs, mid) <= cutoff ? lo : hi) = mid;
  }
  return count + (lo - monotone_from + 1);
}

Integer count_geometric(const SequenceTerm& s, const Rational& cutoff) {
  PrecisionGuard g(60);
  Real x = to_real(cutoff);
  auto at = [&](long k) {
    auto v = numeric_term(s.body, s.index, k);
    if (!v) throw DomainError("count_oracle: sequence term is not numeric at k = " + std::to_string(k));
    return *v;
  };
  long k0 = s.valid_from;
  if (at(k0) > x) return 0;
  long lo = k0;
  long step = 1;
  while (at(lo + step) <= x) {
    lo += step;
    step *= 2;
    if (step > (1L << 40)) throw DomainError("count_oracle: sequence does not grow");
  }
  long hi = lo + step;
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (at(mid) <= x ? lo : hi) = mid;
  }
  return Integer(lo - k0 + 1);
}

long first_valid_index(const Expr& body, const Expr& k) {
  std::vector<std::string> names;
  bool has_parameters = any_node(body, [&](const Expr& n) { return n.is(Kind::Symbol) && n != k; });
  if (has_parameters) return 0;
  for (long i = 0; i <= 1000; ++i) {
    auto v = numeric_term(body, k, i);
    if (v && *v >= 0) return i;
  }
  return 0;
}

}  // namespace

SequenceTerm detect_sequence(const Expr& body, const Expr& index) {
  SequenceTerm s;
  s.body = body;
  s.index = index;
  if (any_node(body, [](const Expr& n) { return n.is(Kind::Symbol) && n.symbol() != SymbolId::Var; })) return s;
  if (auto cs = polynomial_coefficients(body, index)) {
    if (!cs->empty() && (all_rational(*cs) || cs->size() <= 3)) {
      s.cls = SequenceClass::Polynomial;
      s.coeffs = std::move(*cs);
    }
    return s;
  }
  detect_geometric(s);
  return s;
}

Expr antidifference(const SequenceTerm& s) {
  const Expr& k = s.index;
  switch (s.cls) {
    case SequenceClass::Polynomial: {
      std::vector<Expr> terms;
      for (std::size_t p = 0; p < s.coeffs.size(); ++p) {
        int q = static_cast<int>(p) + 1;
        Expr bp = bernoulli_polynomial(q, k) - bernoulli_polynomial(q, integer(0));
        terms.push_back(s.coeffs[p] * bp / integer(q));
      }
      return add(terms);
    }
    case SequenceClass::Geometric:
    {
      Expr factor = s.scale * pow(s.base - integer(1), integer(-1));
      return factor * (pow(s.base, k) - integer(1)) + s.offset * k;
    }
    default:
      throw UnsupportedSequenceClass("unsupported sequence class: " + print(s.body));
  }
}

NumerosityResult full_numerosity(const SequenceTerm& s, std::size_t order) {
  NumerosityResult r;
  const Expr& k = s.index;
  require_increasing(s);
  switch (s.cls) {
    case SequenceClass::Polynomial: {
      // g = d/dk of the antidifference = sum c_p B_p(k).
      std::vector<Expr> g_terms;
      for (std::size_t p = 0; p < s.coeffs.size(); ++p)
        g_terms.push_back(s.coeffs[p] * bernoulli_polynomial(static_cast<int>(p), k));
      Expr g = add(g_terms);
      auto gc = polynomial_coefficients(g, k);
      if (auto sol = solve_exact(*gc, k)) {
        r.full = *sol;
      } else {
        r.full = asymptotic_inverse(g, k, order);
        r.exact = false;
      }
      break;
    }
    case SequenceClass::Geometric: {
      const Expr& a = s.base;
      // Constant factor first so that a scale of (a - 1) cancels before distribution.
      Expr factor = (a - integer(1)) * pow(s.scale * s.log_base, integer(-1));
      Expr arg = factor * (omega() - s.offset);
      r.full = ln(arg) / s.log_base;
      break;
    }
    default:
      throw UnsupportedSequenceClass("unsupported sequence class: " + print(s.body));
  }
  r.refined = refine(asymptotic_expansion(r.full, order));
  return r;
}

SequenceTerm sequence_from_numerosity(const Expr& numerosity, const Expr& index) {
  NormalForm lead;
  try {
    lead = asymptotic_expansion(numerosity, 0);
  } catch (const Error& e) {
    throw NotSolvable("numerosity " + print(numerosity) + " has no expansion: " + e.what());
  }
  if (lead.empty() || classify(lead.terms.front()) != TermClass::Infinite || known_nonpositive(lead.terms.front().coeff))
    throw NotSolvable("numerosity " + print(numerosity) + " must be positive infinite");
  Expr h = peel_invert(numerosity, index);
  Expr big_h = antiderivative(h, index);
  Expr a = expand(substitute(big_h, index, index + integer(1)) - big_h);
  SequenceTerm s = detect_sequence(a, index);
  s.valid_from = first_valid_index(a, index);
  return s;
}

IntervalSpec parse_interval(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  auto fail = [&](std::size_t at, const std::string& msg) -> ParseError {
    return ParseError(at, {"[", "(", "{", "]", ")", "}", ","}, msg);
  };
  if (t.size() < 5) throw fail(0, "interval must look like [lo,hi)");
  auto inclusion = [&](char c, std::size_t at) {
    switch (c) {
      case '[':
      case ']':
        return Inclusion::Included;
      case '(':
      case ')':
        return Inclusion::Excluded;
      case '{':
      case '}':
        return Inclusion::Half;
      default:
        throw fail(at, std::string("unexpected '") + c + "' in interval");
    }
  };
  IntervalSpec iv;
  if (std::string("[({").find(t.front()) == std::string::npos) throw fail(0, "interval must open with [, ( or {");
  if (std::string("])}").find(t.back()) == std::string::npos)
    throw fail(t.size() - 1, "interval must close with ], ) or }");
  iv.lo_inclusion = inclusion(t.front(), 0);
  iv.hi_inclusion = inclusion(t.back(), t.size() - 1);
  std::string body = t.substr(1, t.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string::npos) throw fail(1, "interval needs two endpoints separated by ','");
  auto endpoint = [&](const std::string& s, std::size_t at) {
    if (s == "inf" || s == "+inf" || s == "w") return omega();
    if (s == "-inf" || s == "-w") return -omega();
    Expr e = parse(s);
    if (!free_of_surreal(e)) throw ParseError(at, {"real", "inf", "-inf"}, "interval endpoint must be real or +-inf");
    return e;
  };
  iv.lo = endpoint(body.substr(0, comma), 1);
  iv.hi = endpoint(body.substr(comma + 1), comma + 2);
  return iv;
}

Expr interval_numerosity(const IntervalSpec& iv) {
  auto rank = [](const Expr& e) { return e == omega() ? 1 : (e == -omega() ? -1 : 0); };
  int rl = rank(iv.lo), rh = rank(iv.hi);
  bool reversed = rl > rh || (iv.lo.is_rational() && iv.hi.is_rational() && iv.lo.value() > iv.hi.value());
  if (reversed) throw InvalidInterval("interval lower end exceeds upper end");
  auto chi = [](Inclusion i) {
    switch (i) {
      case Inclusion::Included:
        return Rational(1, 2);
      case Inclusion::Excluded:
        return Rational(-1, 2);
      default:
        return Rational(0);
    }
  };
  if (iv.lo == iv.hi) {
    if (rl != 0) throw InvalidInterval("interval has no finite extent");
    if (iv.lo_inclusion == Inclusion::Excluded || iv.hi_inclusion == Inclusion::Excluded) return integer(0);
    if (iv.lo_inclusion == Inclusion::Included && iv.hi_inclusion == Inclusion::Included) return integer(1);
    return rational(Rational(1, 2));
  }
  return (iv.hi - iv.lo) * omega1() + rational(chi(iv.lo_inclusion) + chi(iv.hi_inclusion));
}

Expr integers_numerosity() {
  // {k} has numerosity w + 1/2; the negative copy {-k-1} mirrors it and the two
  // finite parts cancel under sign invariance.
  SequenceTerm naturals = detect_sequence(var("k"));
  SurrealParts parts = split(asymptotic_expansion(full_numerosity(naturals).full, 0));
  return integer(2) * parts.infinite.to_expr();
}

Integer count_oracle(const SequenceTerm& s, const Rational& cutoff) {
  require_increasing(s);
  switch (s.cls) {
    case SequenceClass::Polynomial:
      return count_polynomial(s, cutoff);
    case SequenceClass::Geometric:
      return count_geometric(s, cutoff);
    default:
      throw UnsupportedSequenceClass("unsupported sequence class: " + print(s.body));
  }
}

}  // namespace surreal
