#pragma once

#include "surreal/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace surreal {

enum class Kind : std::uint8_t { Rational, Constant, Symbol, Ln, Function, Exp, Power, Product, Sum };

enum class ConstantId : std::uint8_t { Pi, EulerGamma, E, HalfLn2Pi, Zeta };

/// `Var` is any free identifier (k, t, x, a, alpha, ...). The three others are the
/// surreal symbols: w (omega), W (omega_1) and dW(n), the n-th derivation of omega_1.
enum class SymbolId : std::uint8_t { Var, Omega1, DOmega1, Omega };

/// `Opaque` is an uninterpreted function application (no simplification rules).
enum class FunctionId : std::uint8_t { Gamma, LnGamma, Psi, Zeta, Opaque };

struct Node;

/// Immutable, canonicalized expression tree with shared structure.
///
/// Every Expr obtained from the public constructors below is canonical:
///  - Sum: >= 2 terms, flattened, like monomials combined, sorted by decreasing
///    growth in w;
///  - Product: optional leading rational coefficient (never 1), then >= 1 factors
///    sorted by base, no nested products, sums distributed;
///  - Power: base is never a Product, Power, Exp or the constant e; rational
///    bases are primes with exponents in (0, 1) or carry a symbolic exponent;
///    Sum bases raised to a rational exponent have primitive integer coefficients;
///    positive integer powers of sums stay unexpanded (see expand());
///  - 0^0 = 1.
class Expr {
public:
  Expr();  // 0
  Expr(int v);  // NOLINT(google-explicit-constructor)
  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& v);  // NOLINT(google-explicit-constructor)

  Kind kind() const;
  /// Rational literal value, or the argument of a zeta constant.
  const Rational& value() const;
  ConstantId constant() const;
  SymbolId symbol() const;
  /// Derivation order n of dW(n).
  int order() const;
  /// Var name or opaque function name.
  const std::string& name() const;
  FunctionId function() const;
  const std::vector<Expr>& args() const;
  std::size_t hash() const;

  bool is(Kind k) const { return kind() == k; }
  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_zero() const;
  bool is_one() const;
  bool is_symbol(SymbolId s) const { return kind() == Kind::Symbol && symbol() == s; }
  bool is_var(const std::string& n) const;

  // Power accessors.
  const Expr& base() const { return args()[0]; }
  const Expr& exponent() const { return args()[1]; }
  // Exp / Ln / Function accessor.
  const Expr& arg() const { return args()[0]; }

  const Node* node() const { return node_.get(); }

private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend Expr make_node(Node&& n);
};

struct Node {
  Kind kind = Kind::Rational;
  Rational value;
  ConstantId constant = ConstantId::Pi;
  SymbolId symbol = SymbolId::Var;
  int order = 0;
  FunctionId function = FunctionId::Opaque;
  std::string name;
  std::vector<Expr> args;
  std::size_t hash = 0;
};

/// Structural total order (the canonical storage order of product factors).
int compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Leaves

Expr rational(const Rational& r);
Expr integer(long v);
Expr omega();
Expr omega1();
Expr d_omega1(int n = 1);
Expr var(const std::string& name);
Expr pi();
Expr euler_gamma();
Expr e_const();
/// (1/2) ln(2 pi)
Expr half_ln_2pi();
/// zeta(q); non-positive integers reduce to rationals, zeta(1) throws DomainError.
Expr zeta_at(const Rational& q);

// ---------------------------------------------------------------------------
// Canonical constructors

Expr add(const std::vector<Expr>& terms);
Expr mul(const std::vector<Expr>& factors);
/// Throws PowError for 0 raised to a negative rational.
Expr pow(const Expr& base, const Expr& exponent);
Expr neg(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr sqrt(const Expr& e);
Expr apply(FunctionId f, const Expr& arg);
Expr apply_opaque(const std::string& name, const Expr& arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// ---------------------------------------------------------------------------
// Structure helpers

/// Terms of a sum (a single-element list for non-sums, empty for 0).
std::vector<Expr> terms_of(const Expr& e);
/// Non-rational factors of a term (coefficient excluded).
std::vector<Expr> factors_of(const Expr& e);
/// (rational coefficient, monomial) with monomial == 1 for rationals.
std::pair<Rational, Expr> split_coefficient(const Expr& term);
/// Inverse of split_coefficient.
Expr make_term(const Rational& coeff, const Expr& monomial);
/// (base, exponent) view of a factor; non-powers have exponent 1.
std::pair<Expr, Expr> as_power(const Expr& factor);

bool any_node(const Expr& e, const std::function<bool(const Expr&)>& pred);
bool contains_var(const Expr& e, const std::string& name);
/// True when e contains none of w, W, dW(n).
bool free_of_surreal(const Expr& e);
bool contains_omega(const Expr& e);
/// True for expressions built only from rationals and named constants.
bool is_constant(const Expr& e);

/// Crude growth key (e-exponent, w-exponent, ln-exponent) in w, used for term order.
struct Growth {
  Rational e, w, l;
  std::strong_ordering operator<=>(const Growth& o) const {
    auto cmp = [](const Rational& a, const Rational& b) {
      return a < b ? std::strong_ordering::less : (b < a ? std::strong_ordering::greater : std::strong_ordering::equal);
    };
    if (auto c = cmp(e, o.e); c != 0) return c;
    if (auto c = cmp(w, o.w); c != 0) return c;
    return cmp(l, o.l);
  }
  bool operator==(const Growth& o) const = default;
};
Growth growth(const Expr& e);

/// Multiplies out positive integer powers of sums (up to 64) and products of sums.
Expr expand(const Expr& e);

/// Replaces every occurrence of symbol `target` (a Symbol Expr) with `value`,
/// re-canonicalizing on the way up.
Expr substitute(const Expr& e, const Expr& target, const Expr& value);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

}  // namespace surreal
