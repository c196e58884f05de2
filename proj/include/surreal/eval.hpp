#pragma once

#include "surreal/expr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <string>

namespace surreal {

using Real = boost::multiprecision::mpfr_float;

/// Significant digits used when no explicit precision is given: 30, or the value of
/// SURREAL_CALC_PRECISION when set.
int default_precision();

/// Symbol bindings keyed by printed name ("w", "W", "dW", "dW(2)", "k", ...).
using Bindings = std::map<std::string, Real>;

/// Evaluates e to `digits` significant digits (plus guard digits).
/// Throws UnboundSymbol for a free symbol without binding and DomainError outside
/// function domains.
Real eval_numeric(const Expr& e, const Bindings& bindings = {}, int digits = 0);

/// Scoped working precision for Real arithmetic in the current thread.
class PrecisionGuard {
public:
  explicit PrecisionGuard(int digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
  unsigned saved_;
};

Real to_real(const Rational& r);

}  // namespace surreal
