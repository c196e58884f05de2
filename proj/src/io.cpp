#include "surreal/io.hpp"

#include "surreal/errors.hpp"

#include <cctype>
#include <map>

namespace surreal {

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "parse error at offset " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
    if (pos_ < text_.size())
      msg += " but found '" + std::string(1, text_[pos_]) + "'";
    else
      msg += " but reached end of input";
    throw ParseError(pos_, std::move(expected), msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(neg(term()));
      else
        break;
    }
    return add(terms);
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*'))
        acc = acc * unary();
      else if (accept('/'))
        acc = acc / unary();
      else
        break;
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = atom();
    if (accept('^')) return pow(b, unary());
    return b;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr call_argument() {
    expect('(');
    Expr a = expr();
    expect(')');
    return a;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail({"number", "identifier", "'('", "'-'"});
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      std::string lit(text_.substr(start, pos_ - start));
      if (lit == ".") {
        pos_ = start;
        fail({"number"});
      }
      return rational(parse_rational(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string id = identifier();
      if (id == "pi") return pi();
      if (id == "gamma") return euler_gamma();
      if (id == "e") return e_const();
      if (id == "w") return omega();
      if (id == "W") return omega1();
      if (id == "dW") {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
          ++pos_;
          skip_ws();
          std::size_t s = pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
          if (s == pos_) fail({"integer"});
          int n = std::stoi(std::string(text_.substr(s, pos_ - s)));
          if (n < 1) {
            pos_ = s;
            fail({"positive integer"});
          }
          expect(')');
          return d_omega1(n);
        }
        return d_omega1(1);
      }
      static const std::map<std::string, int> functions{{"exp", 0},   {"ln", 1},  {"sqrt", 2}, {"Gamma", 3},
                                                        {"lnGamma", 4}, {"psi", 5}, {"zeta", 6}};
      skip_ws();
      bool call = pos_ < text_.size() && text_[pos_] == '(';
      auto it = functions.find(id);
      if (it != functions.end()) {
        if (!call) fail({"'('"});
        Expr a = call_argument();
        switch (it->second) {
          case 0:
            return exp(a);
          case 1:
            return ln(a);
          case 2:
            return sqrt(a);
          case 3:
            return apply(FunctionId::Gamma, a);
          case 4:
            return apply(FunctionId::LnGamma, a);
          case 5:
            return apply(FunctionId::Psi, a);
          default:
            return apply(FunctionId::Zeta, a);
        }
      }
      if (call) return apply_opaque(id, call_argument());
      (void)start;
      return var(id);
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    fail({"number", "identifier", "'('", "'-'"});
  }
};

std::string print_expr(const Expr& e, bool top);

bool is_half_ln_2pi(const Expr& e) { return e.is(Kind::Constant) && e.constant() == ConstantId::HalfLn2Pi; }

bool needs_parens_as_base(const Expr& b) {
  switch (b.kind()) {
    case Kind::Sum:
    case Kind::Product:
    case Kind::Power:
      return true;
    case Kind::Rational:
      return b.value() < 0 || !is_integer(b.value());
    case Kind::Constant:
      return is_half_ln_2pi(b);
    default:
      return false;
  }
}

bool simple_exponent(const Expr& e) {
  if (e.is_rational()) return e.value() >= 0 && is_integer(e.value());
  if (e.is(Kind::Symbol)) return true;
  return e.is(Kind::Constant) && !is_half_ln_2pi(e) && e.constant() != ConstantId::Zeta;
}

std::string print_power(const Expr& b, const Expr& x) {
  if (x.is_one()) return print_expr(b, false);
  if (b.is(Kind::Sum) && x.is_rational() && x.value() == Rational(1, 2)) return "sqrt(" + print_expr(b, false) + ")";
  std::string bs = needs_parens_as_base(b) ? "(" + print_expr(b, false) + ")" : print_expr(b, false);
  std::string xs = simple_exponent(x) ? print_expr(x, false) : "(" + print_expr(x, false) + ")";
  return bs + "^" + xs;
}

std::string print_factor(const Expr& f) {
  if (f.is(Kind::Power)) return print_power(f.base(), f.exponent());
  return print_expr(f, false);
}

std::string rational_factor(const Rational& r) {
  return den(r) == 1 ? num(r).str() : "(" + to_string(r) + ")";
}

/// Prints |t| for a single term. A (1/2)ln(2pi) factor is shown as ln(2*pi) with the
/// half folded into the coefficient.
std::string print_term_abs(const Expr& t) {
  auto [c, m] = split_coefficient(t);
  if (c < 0) c = -c;
  if (m.is_rational()) return to_string(c);
  std::vector<std::string> numer, denom;
  bool half_in_numerator = false;
  for (const auto& f : factors_of(m)) {
    auto [b, x] = as_power(f);
    if (is_half_ln_2pi(b) && x.is_rational() && is_integer(x.value())) {
      long k = num(x.value()).convert_to<long>();
      c *= pow_int(Rational(1, 2), k);
      long a = k < 0 ? -k : k;
      std::string s = a == 1 ? "ln(2*pi)" : "ln(2*pi)^" + std::to_string(a);
      if (k > 0) {
        numer.push_back(s);
        half_in_numerator = true;
      } else {
        denom.push_back(s);
      }
      continue;
    }
    if (x.is_rational() && x.value() < 0) {
      Expr flipped_exp = rational(-x.value());
      std::string s = print_power(b, flipped_exp);
      if (flipped_exp.is_one() && b.is(Kind::Sum)) s = "(" + s + ")";
      denom.push_back(s);
    } else {
      numer.push_back(print_factor(f));
    }
  }
  std::string out;
  for (std::size_t i = 0; i < numer.size(); ++i) out += (i ? "*" : "") + numer[i];
  if (half_in_numerator && den(c) != 1) {
    out = rational_factor(c) + "*" + out;
  } else {
    Integer p = num(c), q = den(c);
    if (p != 1) out = numer.empty() ? p.str() : p.str() + "*" + out;
    if (q != 1) denom.insert(denom.begin(), q.str());
  }
  if (out.empty()) out = "1";
  if (denom.empty()) return out;
  if (denom.size() == 1) return out + "/" + denom[0];
  std::string d;
  for (std::size_t i = 0; i < denom.size(); ++i) d += (i ? "*" : "") + denom[i];
  return out + "/(" + d + ")";
}

std::string print_expr(const Expr& e, bool top) {
  switch (e.kind()) {
    case Kind::Rational:
      return to_string(e.value());
    case Kind::Constant:
      switch (e.constant()) {
        case ConstantId::Pi:
          return "pi";
        case ConstantId::EulerGamma:
          return "gamma";
        case ConstantId::E:
          return "e";
        case ConstantId::HalfLn2Pi:
          return print_term_abs(e);
        case ConstantId::Zeta:
          return "zeta(" + to_string(e.value()) + ")";
      }
      break;
    case Kind::Symbol:
      switch (e.symbol()) {
        case SymbolId::Omega:
          return "w";
        case SymbolId::Omega1:
          return "W";
        case SymbolId::DOmega1:
          return e.order() == 1 ? "dW" : "dW(" + std::to_string(e.order()) + ")";
        case SymbolId::Var:
          return e.name();
      }
      break;
    case Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.args()) {
        bool negative = split_coefficient(t).first < 0;
        std::string s = print_term_abs(t);
        if (first)
          out = (negative ? "-" : "") + s;
        else if (top)
          out += (negative ? " - " : " + ") + s;
        else
          out += (negative ? "-" : "+") + s;
        first = false;
      }
      return out;
    }
    case Kind::Product:
      return (split_coefficient(e).first < 0 ? "-" : "") + print_term_abs(e);
    case Kind::Power:
      if (e.exponent().is_rational() && e.exponent().value() < 0) return print_term_abs(e);
      return print_factor(e);
    case Kind::Exp:
      return "exp(" + print_expr(e.arg(), false) + ")";
    case Kind::Ln:
      return "ln(" + print_expr(e.arg(), false) + ")";
    case Kind::Function:
      return e.name() + "(" + print_expr(e.arg(), false) + ")";
  }
  return {};
}

const char* constant_name(ConstantId c) {
  switch (c) {
    case ConstantId::Pi:
      return "pi";
    case ConstantId::EulerGamma:
      return "gamma";
    case ConstantId::E:
      return "e";
    case ConstantId::HalfLn2Pi:
      return "half_ln_2pi";
    case ConstantId::Zeta:
      return "zeta";
  }
  return "";
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) { return print_expr(e, true); }

nlohmann::json to_json(const Expr& e) {
  using nlohmann::json;
  auto list = [](const std::vector<Expr>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_json(x));
    return a;
  };
  switch (e.kind()) {
    case Kind::Rational:
      return {{"kind", "rational"}, {"value", to_string(e.value())}};
    case Kind::Constant: {
      json j{{"kind", "constant"}, {"name", constant_name(e.constant())}};
      if (e.constant() == ConstantId::Zeta) j["arg"] = to_string(e.value());
      return j;
    }
    case Kind::Symbol:
      switch (e.symbol()) {
        case SymbolId::Omega:
          return {{"kind", "symbol"}, {"symbol", "omega"}};
        case SymbolId::Omega1:
          return {{"kind", "symbol"}, {"symbol", "omega1"}};
        case SymbolId::DOmega1:
          return {{"kind", "symbol"}, {"symbol", "d_omega1"}, {"order", e.order()}};
        case SymbolId::Var:
          return {{"kind", "symbol"}, {"symbol", "var"}, {"name", e.name()}};
      }
      break;
    case Kind::Sum:
      return {{"kind", "sum"}, {"terms", list(e.args())}};
    case Kind::Product:
      return {{"kind", "product"}, {"factors", list(e.args())}};
    case Kind::Power:
      return {{"kind", "power"}, {"base", to_json(e.base())}, {"exponent", to_json(e.exponent())}};
    case Kind::Exp:
      return {{"kind", "exp"}, {"arg", to_json(e.arg())}};
    case Kind::Ln:
      return {{"kind", "ln"}, {"arg", to_json(e.arg())}};
    case Kind::Function:
      return {{"kind", "function"},
              {"name", e.name()},
              {"opaque", e.function() == FunctionId::Opaque},
              {"arg", to_json(e.arg())}};
  }
  return {};
}

Expr from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto list = [](const nlohmann::json& a) {
    std::vector<Expr> out;
    for (const auto& x : a) out.push_back(from_json(x));
    return out;
  };
  if (kind == "rational") return rational(parse_rational(j.at("value").get<std::string>()));
  if (kind == "constant") {
    const std::string n = j.at("name").get<std::string>();
    if (n == "pi") return pi();
    if (n == "gamma") return euler_gamma();
    if (n == "e") return e_const();
    if (n == "half_ln_2pi") return half_ln_2pi();
    if (n == "zeta") return zeta_at(parse_rational(j.at("arg").get<std::string>()));
    throw ParseError(0, {"constant name"}, "unknown constant '" + n + "'");
  }
  if (kind == "symbol") {
    const std::string s = j.at("symbol").get<std::string>();
    if (s == "omega") return omega();
    if (s == "omega1") return omega1();
    if (s == "d_omega1") return d_omega1(j.at("order").get<int>());
    return var(j.at("name").get<std::string>());
  }
  if (kind == "sum") return add(list(j.at("terms")));
  if (kind == "product") return mul(list(j.at("factors")));
  if (kind == "power") return pow(from_json(j.at("base")), from_json(j.at("exponent")));
  if (kind == "exp") return exp(from_json(j.at("arg")));
  if (kind == "ln") return ln(from_json(j.at("arg")));
  if (kind == "function") {
    const std::string n = j.at("name").get<std::string>();
    Expr a = from_json(j.at("arg"));
    if (j.value("opaque", false)) return apply_opaque(n, a);
    if (n == "Gamma") return apply(FunctionId::Gamma, a);
    if (n == "lnGamma") return apply(FunctionId::LnGamma, a);
    if (n == "psi") return apply(FunctionId::Psi, a);
    if (n == "zeta") return apply(FunctionId::Zeta, a);
    return apply_opaque(n, a);
  }
  throw ParseError(0, {"kind"}, "unknown AST kind '" + kind + "'");
}

}  // namespace surreal
