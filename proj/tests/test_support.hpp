#pragma once

#include "surreal/eval.hpp"
#include "surreal/expr.hpp"
#include "surreal/io.hpp"

#include <random>
#include <string>
#include <vector>

#include <ostream>

namespace surreal {

/// Readable gtest failure messages.
inline void PrintTo(const Expr& e, std::ostream* os) { *os << print(e); }

}  // namespace surreal

namespace surreal::testing {

/// Expressions exercised by the round-trip and canonical-equality properties.
inline const std::vector<std::string>& expression_corpus() {
  static const std::vector<std::string> corpus{
      "0", "1/3", "-7/12", "w - 1/2", "2*w", "w/2 + 1/2", "w/a + 1/2 - b/a",
      "sqrt(36*w+3)/6 + 1/2", "sqrt(w) + 1/2", "sqrt(30*sqrt(900*w+30) + 225)/30 + 1/2",
      "ln((a-1)*w/ln(a))/ln(a)", "pi*alpha*c*W*w^(c-1)", "pi*((alpha*ln(w) - 1)*w^alpha + 1)*W/(w*ln(w)^2)",
      "exp(w)*pi*alpha*W", "alpha*pi*W^w*(w*dW + W*ln(W))", "alpha*pi*W*w^(W-1)*(w*dW*ln(w) + W)",
      "w*ln(w) - w + ln(2*pi)/2", "ln(w) + gamma", "lnGamma(w) + 1/2 - ln(2*pi)/2", "psi(w+1)",
      "2^w/ln(2) - 1", "zeta(3)", "zeta(-3)", "e^(2*w)", "exp(k+1) - exp(k)", "w^(1/3)*ln(w)^2",
      "(w+1)^3", "1/(w^2+1)", "Gamma(w)", "dW(3)*W^2", "x^w", "0.125*w", "-(k+1)^2",
  };
  return corpus;
}

/// Fixed-seed generator of expressions in the transmonomial basis.
class BasisGenerator {
public:
  explicit BasisGenerator(unsigned seed) : rng_(seed) {}

  Rational small_rational(int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> n(lo, hi), d(1, 4);
    return Rational(n(rng_), d(rng_));
  }

  Expr atom() {
    std::uniform_int_distribution<int> pick(0, 9);
    switch (pick(rng_)) {
      case 0: return omega();
      case 1: return omega1();
      case 2: return d_omega1(1 + static_cast<int>(rng_() % 2));
      case 3: return ln(omega());
      case 4: return exp(rational(nonzero()) * omega());
      case 5: return pow(omega(), rational(nonzero()));
      case 6: return pow(omega1(), rational(nonzero()));
      case 7: return ln(omega1());
      case 8: return pow(omega(), omega1());
      default: return rational(small_rational());
    }
  }

  Expr term() {
    std::uniform_int_distribution<int> nf(1, 3);
    std::vector<Expr> fs{rational(nonzero())};
    for (int i = nf(rng_); i > 0; --i) fs.push_back(atom());
    return mul(fs);
  }

  Expr expression() {
    std::uniform_int_distribution<int> nt(1, 3);
    std::vector<Expr> ts;
    for (int i = nt(rng_); i > 0; --i) ts.push_back(term());
    return add(ts);
  }

  std::mt19937& engine() { return rng_; }

private:
  Rational nonzero() {
    Rational r = small_rational();
    return r == 0 ? Rational(1) : r;
  }
  std::mt19937 rng_;
};

inline Real eval_at(const Expr& e, const Real& w, int digits = 40) {
  Bindings b;
  b["w"] = w;
  return eval_numeric(e, b, digits);
}

}  // namespace surreal::testing
