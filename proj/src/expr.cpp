#include "surreal/expr.hpp"

#include "surreal/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace surreal {

namespace {

constexpr long kMaxExpandPower = 64;

struct Props {
  Growth growth;
  bool has_omega = false;
  bool has_surreal = false;
};

// Cached per node; kept outside Node so the public struct stays plain data.
struct CachedNode : Node {
  Props props;
};

const Props& props(const Expr& e) { return static_cast<const CachedNode*>(e.node())->props; }

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

Growth scale(const Growth& g, const Rational& r) { return {g.e * r, g.w * r, g.l * r}; }

Props compute_props(const Node& n) {
  Props p;
  for (const auto& a : n.args) {
    p.has_omega = p.has_omega || props(a).has_omega;
    p.has_surreal = p.has_surreal || props(a).has_surreal;
  }
  switch (n.kind) {
    case Kind::Symbol:
      if (n.symbol == SymbolId::Omega) {
        p.has_omega = true;
        p.growth.w = 1;
      }
      p.has_surreal = n.symbol != SymbolId::Var;
      break;
    case Kind::Sum: {
      p.growth = props(n.args[0]).growth;
      for (const auto& a : n.args) p.growth = std::max(p.growth, props(a).growth);
      break;
    }
    case Kind::Product:
      for (const auto& a : n.args) {
        const Growth& g = props(a).growth;
        p.growth = {p.growth.e + g.e, p.growth.w + g.w, p.growth.l + g.l};
      }
      break;
    case Kind::Power: {
      const Expr& b = n.args[0];
      const Expr& x = n.args[1];
      if (x.is_rational())
        p.growth = scale(props(b).growth, x.value());
      else if (props(x).has_omega)
        p.growth = {1, 0, 0};
      else
        p.growth = props(b).growth;
      break;
    }
    case Kind::Exp:
      if (p.has_omega) p.growth = {1, 0, 0};
      break;
    case Kind::Ln:
      if (p.has_omega) p.growth = {0, 0, 1};
      break;
    case Kind::Function:
      if (p.has_omega) {
        if (n.function == FunctionId::LnGamma) p.growth = {0, 1, 1};
        if (n.function == FunctionId::Gamma) p.growth = {1, 0, 0};
        if (n.function == FunctionId::Psi) p.growth = {0, 0, 1};
      }
      break;
    default:
      break;
  }
  return p;
}

std::size_t hash_integer(const Integer& v) {
  const auto* z = v.backend().data();
  std::size_t h = static_cast<std::size_t>(z->_mp_size);
  std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs && i < 4; ++i) h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
  return h;
}

std::size_t hash_rational(const Rational& r) { return mix(hash_integer(num(r)), hash_integer(den(r))); }

std::size_t compute_hash(const Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case Kind::Rational:
      h = mix(h, hash_rational(n.value));
      break;
    case Kind::Constant:
      h = mix(h, static_cast<std::size_t>(n.constant));
      if (n.constant == ConstantId::Zeta) h = mix(h, hash_rational(n.value));
      break;
    case Kind::Symbol:
      h = mix(h, static_cast<std::size_t>(n.symbol));
      h = mix(h, static_cast<std::size_t>(n.order));
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case Kind::Function:
      h = mix(h, static_cast<std::size_t>(n.function));
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    default:
      break;
  }
  for (const auto& a : n.args) h = mix(h, a.hash());
  return h;
}

}  // namespace

Expr make_node(Node&& n) {
  auto c = std::make_shared<CachedNode>();
  static_cast<Node&>(*c) = std::move(n);
  c->hash = compute_hash(*c);
  c->props = compute_props(*c);
  return Expr(std::shared_ptr<const Node>(std::move(c)));
}

namespace {

Expr raw_rational(const Rational& r) {
  Node n;
  n.kind = Kind::Rational;
  n.value = r;
  return make_node(std::move(n));
}

const Expr& zero_expr() {
  static const Expr z = raw_rational(0);
  return z;
}

Expr raw_constant(ConstantId id, const Rational& v = 0) {
  Node n;
  n.kind = Kind::Constant;
  n.constant = id;
  n.value = v;
  return make_node(std::move(n));
}

Expr raw_symbol(SymbolId s, int order = 0, std::string name = {}) {
  Node n;
  n.kind = Kind::Symbol;
  n.symbol = s;
  n.order = order;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Expr raw_compound(Kind k, std::vector<Expr> args) {
  Node n;
  n.kind = k;
  n.args = std::move(args);
  return make_node(std::move(n));
}

Expr raw_power(const Expr& b, const Expr& e) { return raw_compound(Kind::Power, {b, e}); }

Expr raw_function(FunctionId f, const std::string& name, const Expr& arg) {
  Node n;
  n.kind = Kind::Function;
  n.function = f;
  n.name = name;
  n.args = {arg};
  return make_node(std::move(n));
}

int cmp_rational(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

int compare_args(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a[i], b[i]); c != 0) return c;
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

bool factor_less(const Expr& a, const Expr& b) {
  auto [ba, ea] = as_power(a);
  auto [bb, eb] = as_power(b);
  if (int c = compare(ba, bb); c != 0) return c < 0;
  return compare(ea, eb) < 0;
}

/// Total rational degree of a monomial in free variables.
Rational var_degree(const Expr& m) {
  Rational d = 0;
  for (const auto& f : factors_of(m)) {
    auto [b, x] = as_power(f);
    if (b.is_symbol(SymbolId::Var) && x.is_rational()) d += x.value();
  }
  return d;
}

bool term_less(const Expr& a, const Expr& b) {
  auto [ca, ma] = split_coefficient(a);
  auto [cb, mb] = split_coefficient(b);
  const Growth& ga = props(ma).growth;
  const Growth& gb = props(mb).growth;
  if (ga != gb) return ga > gb;
  bool ra = ma.is_rational(), rb = mb.is_rational();
  if (ra != rb) return rb;
  Rational da = var_degree(ma), db = var_degree(mb);
  if (da != db) return da > db;
  if (int c = compare(ma, mb); c != 0) return c < 0;
  return ca < cb;
}

Expr raw_sum(std::vector<Expr> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  return raw_compound(Kind::Sum, std::move(terms));
}

/// Builds a product node from a coefficient and already-merged factors.
Expr raw_product(const Rational& coeff, std::vector<Expr> factors) {
  if (coeff == 0) return zero_expr();
  if (factors.empty()) return raw_rational(coeff);
  std::sort(factors.begin(), factors.end(), factor_less);
  if (coeff == 1 && factors.size() == 1) return factors[0];
  std::vector<Expr> args;
  args.reserve(factors.size() + 1);
  if (coeff != 1) args.push_back(raw_rational(coeff));
  for (auto& f : factors) args.push_back(std::move(f));
  return raw_compound(Kind::Product, std::move(args));
}

Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

/// Rational content (gcd of numerators / lcm of denominators) of a sum's terms.
Rational content(const Expr& sum) {
  Integer g = 0, l = 1;
  for (const auto& t : sum.args()) {
    Rational c = split_coefficient(t).first;
    g = gcd(g, abs_int(num(c)));
    l = lcm(l, den(c));
  }
  return Rational(g, l);
}

Expr scale_sum(const Expr& sum, const Rational& s) {
  std::vector<Expr> out;
  out.reserve(sum.args().size());
  for (const auto& t : sum.args()) {
    auto [c, m] = split_coefficient(t);
    out.push_back(make_term(c * s, m));
  }
  // Rescaling by a positive factor keeps the order; a negative one may only swap
  // coefficient ties, which cannot occur between distinct monomials.
  return raw_compound(Kind::Sum, std::move(out));
}

/// c^r for rational c > 0 and non-integer r, as coefficient times prime powers.
Expr rational_power(const Rational& c, const Rational& r) {
  if (c < 0) throw DomainError("fractional power of a negative rational");
  Rational coeff = 1;
  std::vector<Expr> factors;
  auto handle = [&](const Integer& n, long sign) {
    for (auto& [p, a] : factorize(n)) {
      Rational total = r * Rational(a * sign);
      Rational whole = floor(total);
      Rational frac = total - whole;
      coeff *= pow_int(Rational(p), static_cast<long>(num(whole).convert_to<long>()));
      if (frac != 0) factors.push_back(raw_power(raw_rational(Rational(p)), raw_rational(frac)));
    }
  };
  handle(num(c), 1);
  handle(den(c), -1);
  return raw_product(coeff, std::move(factors));
}

/// Power of a sum to a rational exponent other than a positive integer.
Expr sum_rational_power(const Expr& sum, const Rational& r) {
  Rational c = content(sum);
  if (is_integer(r)) {
    if (split_coefficient(sum.args()[0]).first < 0) c = -c;
    Expr base = scale_sum(sum, Rational(1) / c);
    return raw_product(pow_int(c, num(r).convert_to<long>()), {raw_power(base, raw_rational(r))});
  }
  long p = num(r).convert_to<long>();
  long n = den(r).convert_to<long>();
  Integer u = num(c), v = den(c);
  Integer k = u * boost::multiprecision::pow(v, static_cast<unsigned>(n - 1));
  auto [t, rest] = extract_nth_power(k, n);
  Expr radicand = scale_sum(sum, Rational(rest) / c);
  return raw_product(pow_int(Rational(t, v), p), {raw_power(radicand, raw_rational(r))});
}

/// Splits the argument of exp into factors pulled out of c*ln(x) terms and the residual.
std::pair<std::vector<Expr>, Expr> split_exp_arg(const Expr& arg) {
  std::vector<Expr> pulled;
  std::vector<Expr> residual;
  for (const auto& t : terms_of(arg)) {
    auto [c, m] = split_coefficient(t);
    std::vector<Expr> fs = factors_of(m);
    int ln_index = -1, ln_count = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (fs[i].is(Kind::Ln)) {
        ln_index = static_cast<int>(i);
        ++ln_count;
      }
    }
    if (ln_count != 1) {
      residual.push_back(t);
      continue;
    }
    std::vector<Expr> rest{rational(c)};
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (static_cast<int>(i) != ln_index) rest.push_back(fs[i]);
    pulled.push_back(pow(fs[static_cast<std::size_t>(ln_index)].arg(), mul(rest)));
  }
  return {pulled, add(residual)};
}

Expr mul_impl(const std::vector<Expr>& inputs, std::vector<Expr> exp_args) {
  Rational coeff = 1;
  std::vector<std::pair<Expr, Expr>> bases;
  std::vector<Expr> pending(inputs.begin(), inputs.end());

  auto push = [&](auto&& self, const Expr& f) -> void {
    switch (f.kind()) {
      case Kind::Rational:
        coeff *= f.value();
        break;
      case Kind::Product:
        for (const auto& c : f.args()) self(self, c);
        break;
      case Kind::Power:
        bases.emplace_back(f.base(), f.exponent());
        break;
      case Kind::Exp:
        exp_args.push_back(f.arg());
        break;
      case Kind::Constant:
        if (f.constant() == ConstantId::E)
          exp_args.push_back(integer(1));
        else
          bases.emplace_back(f, integer(1));
        break;
      case Kind::Sum: {
        Rational c = content(f);
        if (split_coefficient(f.args()[0]).first < 0) c = -c;
        coeff *= c;
        bases.emplace_back(c == 1 ? f : scale_sum(f, Rational(1) / c), integer(1));
        break;
      }
      default:
        bases.emplace_back(f, integer(1));
    }
  };
  for (const auto& f : pending) push(push, f);
  if (coeff == 0) return zero_expr();

  Expr exp_factor = integer(1);
  if (!exp_args.empty()) {
    auto [pulled, residual] = split_exp_arg(add(exp_args));
    for (const auto& f : pulled) push(push, f);
    if (residual.is_one())
      exp_factor = raw_constant(ConstantId::E);
    else if (!residual.is_zero())
      exp_factor = raw_compound(Kind::Exp, {residual});
  }
  if (coeff == 0) return zero_expr();

  std::map<Expr, std::vector<Expr>, ExprLess> groups;
  for (auto& [b, e] : bases) groups[b].push_back(e);

  std::vector<Expr> atoms;
  std::vector<Expr> sums;
  auto absorb = [&](const Expr& p) {
    if (p.is_rational()) {
      coeff *= p.value();
    } else if (p.is(Kind::Product)) {
      for (const auto& c : p.args()) {
        if (c.is_rational())
          coeff *= c.value();
        else
          atoms.push_back(c);
      }
    } else if (p.is(Kind::Sum)) {
      sums.push_back(p);
    } else if (!p.is_one()) {
      atoms.push_back(p);
    }
  };
  for (auto& [b, es] : groups) {
    Expr total = add(es);
    if (b.is(Kind::Sum) && total.is_one()) {
      sums.push_back(b);
      continue;
    }
    absorb(pow(b, total));
  }
  if (!exp_factor.is_one()) atoms.push_back(exp_factor);
  if (coeff == 0) return zero_expr();

  Expr head = raw_product(coeff, atoms);
  if (sums.empty()) return head;
  std::vector<Expr> acc{head};
  for (const auto& s : sums) {
    std::vector<Expr> next;
    next.reserve(acc.size() * s.args().size());
    for (const auto& a : acc)
      for (const auto& t : s.args()) next.push_back(mul({a, t}));
    acc = terms_of(add(next));
    if (acc.empty()) return zero_expr();
  }
  return add(acc);
}

Expr ln_integer(const Integer& n) {
  if (n == 1) return zero_expr();
  auto fs = factorize(n);
  long g = 0;
  for (auto& [p, a] : fs) g = std::gcd(g, a);
  Integer t = 1;
  for (auto& [p, a] : fs) t *= boost::multiprecision::pow(p, static_cast<unsigned>(a / g));
  return mul({integer(g), raw_compound(Kind::Ln, {raw_rational(Rational(t))})});
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr accessors

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(int v) : Expr(raw_rational(Rational(v))) {}
Expr::Expr(long v) : Expr(raw_rational(Rational(v))) {}
Expr::Expr(const Rational& v) : Expr(raw_rational(v)) {}

Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
ConstantId Expr::constant() const { return node_->constant; }
SymbolId Expr::symbol() const { return node_->symbol; }
int Expr::order() const { return node_->order; }
const std::string& Expr::name() const { return node_->name; }
FunctionId Expr::function() const { return node_->function; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
bool Expr::is_zero() const { return is_rational() && value() == 0; }
bool Expr::is_one() const { return is_rational() && value() == 1; }
bool Expr::is_var(const std::string& n) const { return is_symbol(SymbolId::Var) && name() == n; }

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Kind::Rational:
      return cmp_rational(a.value(), b.value());
    case Kind::Constant:
      if (a.constant() != b.constant()) return a.constant() < b.constant() ? -1 : 1;
      return cmp_rational(a.value(), b.value());
    case Kind::Symbol:
      if (a.symbol() != b.symbol()) return a.symbol() < b.symbol() ? -1 : 1;
      if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Function:
      if (a.function() != b.function()) return a.function() < b.function() ? -1 : 1;
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      return compare_args(a.args(), b.args());
    default:
      return compare_args(a.args(), b.args());
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  return a.hash() == b.hash() && compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Leaves

Expr rational(const Rational& r) { return raw_rational(r); }
Expr integer(long v) { return raw_rational(Rational(v)); }
Expr omega() {
  static const Expr w = raw_symbol(SymbolId::Omega);
  return w;
}
Expr omega1() {
  static const Expr w1 = raw_symbol(SymbolId::Omega1);
  return w1;
}
Expr d_omega1(int n) {
  if (n < 1) throw DomainError("dW order must be positive");
  return raw_symbol(SymbolId::DOmega1, n);
}
Expr var(const std::string& name) { return raw_symbol(SymbolId::Var, 0, name); }
Expr pi() { return raw_constant(ConstantId::Pi); }
Expr euler_gamma() { return raw_constant(ConstantId::EulerGamma); }
Expr e_const() { return raw_constant(ConstantId::E); }
Expr half_ln_2pi() { return raw_constant(ConstantId::HalfLn2Pi); }

Expr zeta_at(const Rational& q) {
  if (q == 1) throw DomainError("zeta has a pole at 1");
  if (is_integer(q) && q <= 0) {
    long n = -num(q).convert_to<long>();
    Rational b = bernoulli_number(static_cast<int>(n + 1)) / Rational(n + 1);
    return raw_rational(n % 2 == 0 ? b : Rational(-b));
  }
  return raw_constant(ConstantId::Zeta, q);
}

// ---------------------------------------------------------------------------
// Canonical constructors

Expr add(const std::vector<Expr>& inputs) {
  std::map<Expr, Rational, ExprLess> acc;
  auto take = [&](const Expr& t) {
    auto [c, m] = split_coefficient(t);
    acc[m] += c;
  };
  for (const auto& x : inputs) {
    if (x.is(Kind::Sum))
      for (const auto& t : x.args()) take(t);
    else
      take(x);
  }
  std::vector<Expr> out;
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back(make_term(c, m));
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out[0];
  return raw_sum(std::move(out));
}

Expr mul(const std::vector<Expr>& factors) { return mul_impl(factors, {}); }

Expr pow(const Expr& b, const Expr& e) {
  if (e.is_zero()) return integer(1);
  if (e.is_one()) return b;
  switch (b.kind()) {
    case Kind::Rational: {
      const Rational& c = b.value();
      if (c == 0) {
        if (e.is_rational()) {
          if (e.value() < 0) throw PowError("0 raised to a negative power");
          return zero_expr();
        }
        return raw_power(b, e);
      }
      if (c == 1) return b;
      if (e.is_rational()) {
        if (is_integer(e.value())) return raw_rational(pow_int(c, num(e.value()).convert_to<long>()));
        return rational_power(c, e.value());
      }
      if (c < 0) return raw_power(b, e);
      // Pull the integer part of the exponent's rational term into the coefficient.
      Rational r = 0;
      for (const auto& t : terms_of(e))
        if (t.is_rational()) r = t.value();
      Rational whole = floor(r);
      if (whole == 0) return raw_power(b, e);
      Expr rest = add({e, rational(-whole)});
      return raw_product(pow_int(c, num(whole).convert_to<long>()), {raw_power(b, rest)});
    }
    case Kind::Constant:
      if (b.constant() == ConstantId::E) return exp(e);
      return raw_power(b, e);
    case Kind::Exp:
      return exp(mul({b.arg(), e}));
    case Kind::Power:
      return pow(b.base(), mul({b.exponent(), e}));
    case Kind::Product: {
      auto [c, m] = split_coefficient(b);
      bool integral = e.is_rational() && is_integer(e.value());
      if (c < 0 && !integral) {
        if (e.is_rational()) throw DomainError("fractional power of a negative quantity");
        return raw_power(b, e);
      }
      std::vector<Expr> parts{pow(rational(c), e)};
      for (const auto& f : factors_of(m)) parts.push_back(pow(f, e));
      return mul(parts);
    }
    case Kind::Sum: {
      if (!e.is_rational()) return raw_power(b, e);
      const Rational& r = e.value();
      return sum_rational_power(b, r);
    }
    default:
      return raw_power(b, e);
  }
}

Expr neg(const Expr& e) { return mul({integer(-1), e}); }

Expr exp(const Expr& e) { return mul_impl({}, {e}); }

Expr ln(const Expr& x) {
  switch (x.kind()) {
    case Kind::Rational: {
      const Rational& r = x.value();
      if (r <= 0) throw DomainError("ln of a non-positive number");
      return add({ln_integer(num(r)), neg(ln_integer(den(r)))});
    }
    case Kind::Constant:
      if (x.constant() == ConstantId::E) return integer(1);
      break;
    case Kind::Exp:
      return x.arg();
    case Kind::Power:
      return mul({x.exponent(), ln(x.base())});
    case Kind::Product:
      if (x.args().size() == 2 && x.args()[0].is_rational() && x.args()[0].value() == 2 &&
          x.args()[1].is(Kind::Constant) && x.args()[1].constant() == ConstantId::Pi)
        return mul({integer(2), half_ln_2pi()});
      break;
    default:
      break;
  }
  return raw_compound(Kind::Ln, {x});
}

Expr sqrt(const Expr& e) { return pow(e, rational(Rational(1, 2))); }

Expr apply(FunctionId f, const Expr& x) {
  if (x.is_rational()) {
    const Rational& q = x.value();
    bool pos_int = is_integer(q) && q > 0;
    switch (f) {
      case FunctionId::Gamma:
        if (is_integer(q) && q <= 0) throw DomainError("Gamma has a pole at non-positive integers");
        if (pos_int && q <= 1000) {
          Integer fact = 1;
          for (long i = 2; i < q.convert_to<long>(); ++i) fact *= i;
          return raw_rational(Rational(fact));
        }
        break;
      case FunctionId::LnGamma:
        if (is_integer(q) && q <= 0) throw DomainError("lnGamma has a pole at non-positive integers");
        if (pos_int && q <= 1000) {
          Integer fact = 1;
          for (long i = 2; i < q.convert_to<long>(); ++i) fact *= i;
          return ln(raw_rational(Rational(fact)));
        }
        break;
      case FunctionId::Psi:
        if (is_integer(q) && q <= 0) throw DomainError("psi has a pole at non-positive integers");
        if (pos_int && q <= 1000) {
          Rational h = 0;
          for (long i = 1; i < q.convert_to<long>(); ++i) h += Rational(1, i);
          return add({raw_rational(h), neg(euler_gamma())});
        }
        break;
      case FunctionId::Zeta:
        return zeta_at(q);
      case FunctionId::Opaque:
        break;
    }
  }
  static const char* names[] = {"Gamma", "lnGamma", "psi", "zeta", ""};
  return raw_function(f, names[static_cast<int>(f)], x);
}

Expr apply_opaque(const std::string& name, const Expr& arg) { return raw_function(FunctionId::Opaque, name, arg); }

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, integer(-1))}); }
Expr operator-(const Expr& a) { return neg(a); }

// ---------------------------------------------------------------------------
// Structure helpers

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is(Kind::Sum)) return e.args();
  if (e.is_zero()) return {};
  return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.is(Kind::Product)) {
    std::vector<Expr> out;
    for (const auto& f : e.args())
      if (!f.is_rational()) out.push_back(f);
    return out;
  }
  if (e.is_rational()) return {};
  return {e};
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_rational()) return {term.value(), integer(1)};
  if (term.is(Kind::Product) && term.args()[0].is_rational()) {
    const auto& a = term.args();
    if (a.size() == 2) return {a[0].value(), a[1]};
    return {a[0].value(), raw_compound(Kind::Product, std::vector<Expr>(a.begin() + 1, a.end()))};
  }
  return {1, term};
}

Expr make_term(const Rational& coeff, const Expr& monomial) {
  if (coeff == 0) return zero_expr();
  if (monomial.is_rational()) return raw_rational(coeff * monomial.value());
  if (coeff == 1) return monomial;
  std::vector<Expr> args{raw_rational(coeff)};
  if (monomial.is(Kind::Product))
    args.insert(args.end(), monomial.args().begin(), monomial.args().end());
  else
    args.push_back(monomial);
  return raw_compound(Kind::Product, std::move(args));
}

std::pair<Expr, Expr> as_power(const Expr& f) {
  if (f.is(Kind::Power)) return {f.base(), f.exponent()};
  return {f, integer(1)};
}

bool any_node(const Expr& e, const std::function<bool(const Expr&)>& pred) {
  if (pred(e)) return true;
  for (const auto& a : e.args())
    if (any_node(a, pred)) return true;
  return false;
}

bool contains_var(const Expr& e, const std::string& name) {
  return any_node(e, [&](const Expr& x) { return x.is_var(name); });
}

bool free_of_surreal(const Expr& e) { return !props(e).has_surreal; }
bool contains_omega(const Expr& e) { return props(e).has_omega; }

bool is_constant(const Expr& e) {
  return !any_node(e, [](const Expr& x) { return x.is(Kind::Symbol); });
}

Growth growth(const Expr& e) { return props(e).growth; }

namespace {

Expr multiply_out(const Expr& a, const Expr& b) {
  std::vector<Expr> out;
  for (const auto& x : terms_of(a))
    for (const auto& y : terms_of(b)) out.push_back(mul({x, y}));
  return add(out);
}

}  // namespace

Expr expand(const Expr& e) {
  if (e.args().empty()) return e;
  switch (e.kind()) {
    case Kind::Sum: {
      std::vector<Expr> out;
      for (const auto& t : e.args()) out.push_back(expand(t));
      return add(out);
    }
    case Kind::Product: {
      Expr acc = integer(1);
      for (const auto& f : e.args()) acc = multiply_out(acc, expand(f));
      return acc;
    }
    case Kind::Power: {
      Expr b = expand(e.base());
      Expr x = expand(e.exponent());
      if (b.is(Kind::Sum) && x.is_rational() && is_integer(x.value()) && x.value() > 1 &&
          x.value() <= kMaxExpandPower) {
        long n = x.value().convert_to<long>();
        Expr acc = integer(1);
        for (long i = 0; i < n; ++i) acc = multiply_out(acc, b);
        return acc;
      }
      return pow(b, x);
    }
    case Kind::Exp:
      return exp(expand(e.arg()));
    case Kind::Ln:
      return ln(expand(e.arg()));
    case Kind::Function:
      if (e.function() == FunctionId::Opaque) return apply_opaque(e.name(), expand(e.arg()));
      return apply(e.function(), expand(e.arg()));
    default:
      return e;
  }
}

Expr substitute(const Expr& e, const Expr& target, const Expr& value) {
  if (e == target) return value;
  if (e.args().empty()) return e;
  std::vector<Expr> a;
  a.reserve(e.args().size());
  bool changed = false;
  for (const auto& c : e.args()) {
    a.push_back(substitute(c, target, value));
    changed = changed || a.back().node() != c.node();
  }
  if (!changed) return e;
  switch (e.kind()) {
    case Kind::Sum:
      return add(a);
    case Kind::Product:
      return mul(a);
    case Kind::Power:
      return pow(a[0], a[1]);
    case Kind::Exp:
      return exp(a[0]);
    case Kind::Ln:
      return ln(a[0]);
    case Kind::Function:
      if (e.function() == FunctionId::Opaque) return apply_opaque(e.name(), a[0]);
      return apply(e.function(), a[0]);
    default:
      return e;
  }
}

}  // namespace surreal
