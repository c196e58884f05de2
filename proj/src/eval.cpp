#include "surreal/eval.hpp"

#include "surreal/errors.hpp"
#include "surreal/io.hpp"

#include <cstdlib>

namespace surreal {

namespace {

constexpr int kGuardDigits = 12;

using boost::multiprecision::mpfr_float;

Real mpfr_unary(const Real& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  Real out;
  fn(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

bool is_nonpositive_integer(const Real& x) { return x <= 0 && boost::multiprecision::floor(x) == x; }

class Evaluator {
public:
  explicit Evaluator(const Bindings& b) : bindings_(b) {}

  Real operator()(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Rational:
        return to_real(e.value());
      case Kind::Constant:
        return constant(e);
      case Kind::Symbol: {
        std::string name = print(e);
        auto it = bindings_.find(name);
        if (it == bindings_.end()) throw UnboundSymbol("no value bound for symbol '" + name + "'");
        return it->second;
      }
      case Kind::Sum: {
        Real acc = 0;
        for (const auto& t : e.args()) acc += (*this)(t);
        return acc;
      }
      case Kind::Product: {
        Real acc = 1;
        for (const auto& f : e.args()) acc *= (*this)(f);
        return acc;
      }
      case Kind::Power:
        return power(e);
      case Kind::Exp:
        return boost::multiprecision::exp((*this)(e.arg()));
      case Kind::Ln: {
        Real x = (*this)(e.arg());
        if (x <= 0) throw DomainError("ln of a non-positive value");
        return boost::multiprecision::log(x);
      }
      case Kind::Function:
        return function(e);
    }
    throw InternalError("unknown expression kind");
  }

private:
  const Bindings& bindings_;

  Real constant(const Expr& e) const {
    Real out;
    switch (e.constant()) {
      case ConstantId::Pi:
        mpfr_const_pi(out.backend().data(), MPFR_RNDN);
        return out;
      case ConstantId::EulerGamma:
        mpfr_const_euler(out.backend().data(), MPFR_RNDN);
        return out;
      case ConstantId::E:
        return boost::multiprecision::exp(Real(1));
      case ConstantId::HalfLn2Pi: {
        mpfr_const_pi(out.backend().data(), MPFR_RNDN);
        return boost::multiprecision::log(2 * out) / 2;
      }
      case ConstantId::Zeta:
        return mpfr_unary(to_real(e.value()), mpfr_zeta);
    }
    throw InternalError("unknown constant");
  }

  Real power(const Expr& e) const {
    Real b = (*this)(e.base());
    const Expr& p = e.exponent();
    if (p.is_rational() && is_integer(p.value())) {
      if (b == 0 && p.value() < 0) throw DomainError("0 raised to a negative power");
      return boost::multiprecision::pow(b, to_real(p.value()));
    }
    Real x = (*this)(p);
    if (b < 0) throw DomainError("non-integer power of a negative value");
    if (b == 0) {
      if (x > 0) return 0;
      if (x == 0) return 1;
      throw DomainError("0 raised to a negative power");
    }
    return boost::multiprecision::pow(b, x);
  }

  Real function(const Expr& e) const {
    Real x = (*this)(e.arg());
    switch (e.function()) {
      case FunctionId::Gamma:
        if (is_nonpositive_integer(x)) throw DomainError("Gamma pole");
        return mpfr_unary(x, mpfr_gamma);
      case FunctionId::LnGamma:
        if (x <= 0) throw DomainError("lnGamma of a non-positive value");
        return mpfr_unary(x, mpfr_lngamma);
      case FunctionId::Psi:
        if (is_nonpositive_integer(x)) throw DomainError("psi pole");
        return mpfr_unary(x, mpfr_digamma);
      case FunctionId::Zeta:
        if (x == 1) throw DomainError("zeta pole");
        return mpfr_unary(x, mpfr_zeta);
      case FunctionId::Opaque:
        break;
    }
    throw DomainError("cannot evaluate unknown function " + e.name() + "()");
  }
};

}  // namespace

int default_precision() {
  if (const char* env = std::getenv("SURREAL_CALC_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 5 && v <= 100000) return static_cast<int>(v);
  }
  return 30;
}

PrecisionGuard::PrecisionGuard(int digits) : saved_(mpfr_float::default_precision()) {
  mpfr_float::default_precision(static_cast<unsigned>(digits));
}

PrecisionGuard::~PrecisionGuard() { mpfr_float::default_precision(saved_); }

Real to_real(const Rational& r) {
  Real n(num(r).str());
  Real d(den(r).str());
  return n / d;
}

Real eval_numeric(const Expr& e, const Bindings& bindings, int digits) {
  if (digits <= 0) digits = default_precision();
  PrecisionGuard guard(digits + kGuardDigits);
  Bindings rebound;
  for (const auto& [k, v] : bindings) rebound.emplace(k, Real(v));
  Real out = Evaluator(rebound)(e);
  return out;
}

}  // namespace surreal
