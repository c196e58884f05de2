#include "properties.hpp"

#include "surreal/algebra.hpp"
#include "surreal/asymptotics.hpp"
#include "surreal/calculus.hpp"
#include "surreal/errors.hpp"
#include "surreal/eval.hpp"
#include "surreal/io.hpp"
#include "surreal/numerosity.hpp"
#include "surreal/series.hpp"
#include "test_support.hpp"

#include <functional>
#include <map>

namespace surreal::properties {

namespace {

// Pinned tolerances.
constexpr int kGermTolerance = 1;
const char* const kPartialSumTolerance = "1e-25";
constexpr int kPartialSumPoints = 50;

struct SequenceCase {
  std::string body;
  std::map<std::string, Expr> params;
};

std::vector<SequenceCase> appendix_one_sequences() {
  return {{"k+1", {}},
          {"2*k", {}},
          {"2*k+1", {}},
          {"a*k+b", {{"a", integer(3)}, {"b", integer(7)}}},
          {"a*k+b", {{"a", rational(Rational(5, 2))}, {"b", rational(Rational(1, 3))}}},
          {"k^2", {}},
          {"1/3 + k + k^2", {}},
          {"k^4", {}},
          {"a^k", {{"a", integer(2)}}},
          {"a^k", {{"a", integer(3)}}},
          {"a^k", {{"a", e_const()}}}};
}

Expr bind(const SequenceCase& c) {
  Expr e = parse(c.body);
  for (const auto& [name, v] : c.params) e = substitute(e, var(name), v);
  return e;
}

std::string describe(const SequenceCase& c) {
  std::string s = c.body;
  for (const auto& [name, v] : c.params) s += " " + name + "=" + print(v);
  return s;
}

bool same(const Expr& a, const Expr& b) { return a == b || equivalent(a, b); }

Real euler_gamma_real() { return eval_numeric(euler_gamma(), {}, 60); }

Real harmonic_minus_gamma(long k) {
  Real h = 0;
  for (long j = 1; j < k; ++j) h += Real(1) / j;
  return h - euler_gamma_real();
}

struct DirectCase {
  std::string body;
  long start;
  std::function<Real(long)> term;
};

std::vector<DirectCase> direct_cases() {
  namespace mp = boost::multiprecision;
  return {
      {"1", 0, [](long) { return Real(1); }},
      {"k", 0, [](long k) { return Real(k); }},
      {"k^2", 0, [](long k) { return Real(k) * k; }},
      {"k^3", 0, [](long k) { return Real(k) * k * k; }},
      {"k^2 + k", 0, [](long k) { return Real(k) * k + k; }},
      {"3*k^2 - k/2 + 7", 2, [](long k) { return 3 * Real(k) * k - Real(k) / 2 + 7; }},
      {"2^k", 0, [](long k) { return mp::pow(Real(2), k); }},
      {"3^k", 0, [](long k) { return mp::pow(Real(3), k); }},
      {"(1/2)^k", 0, [](long k) { return mp::pow(Real(1) / 2, k); }},
      {"5*exp(k)", 1, [](long k) { return 5 * mp::exp(Real(k)); }},
      {"ln(k)", 1, [](long k) { return mp::log(Real(k)); }},
      {"ln(k)", 4, [](long k) { return mp::log(Real(k)); }},
      {"1/k", 1, [](long k) { return Real(1) / k; }},
      {"1/k", 3, [](long k) { return Real(1) / k; }},
      {"psi(k)", 1, harmonic_minus_gamma},
      {"psi(k)", 3, harmonic_minus_gamma},
  };
}

}  // namespace

std::string Report::summary() const {
  std::string s = std::to_string(checked) + " checks, " + std::to_string(failures.size()) + " failures";
  if (!failures.empty()) s += "; first: " + failures.front();
  return s;
}

Report oracle_germ_agreement() {
  Report r;
  for (const auto& c : appendix_one_sequences()) {
    SequenceTerm s = detect_sequence(bind(c));
    Expr full = full_numerosity(s).full;
    for (long x : {1000L, 10000L, 100000L, 1000000L}) {
      ++r.checked;
      Integer count = count_oracle(s, x);
      Real germ = eval_numeric(full, {{"w", Real(x)}}, 30);
      PrecisionGuard g(40);
      Real diff = boost::multiprecision::abs(Real(count) - germ);
      if (diff > kGermTolerance)
        r.failures.push_back(describe(c) + " at " + std::to_string(x) + ": count " + count.str() + ", germ " + germ.str(20));
    }
  }
  return r;
}

Report residue_class_additivity() {
  Report r;
  auto full = [](const std::string& body) { return full_numerosity(detect_sequence(parse(body))).full; };
  const Expr whole = full("k");
  for (int a = 2; a <= 5; ++a) {
    ++r.checked;
    std::vector<Expr> parts;
    for (int rem = 0; rem < a; ++rem) parts.push_back(full(std::to_string(a) + "*k + " + std::to_string(rem)));
    Expr total = add(parts);
    if (total != whole) r.failures.push_back("mod " + std::to_string(a) + ": " + print(total) + " != " + print(whole));
  }
  return r;
}

Report derivation_rules(unsigned seed, int count) {
  Report r;
  testing::BasisGenerator gen(seed);
  for (int i = 0; i < count; ++i) {
    Expr a = gen.expression(), b = gen.expression();
    ++r.checked;
    if (!same(derive(a * b), derive(a) * b + a * derive(b)))
      r.failures.push_back("Leibniz: " + print(a) + " , " + print(b));
    if (!same(derive(a + b), derive(a) + derive(b))) r.failures.push_back("additivity: " + print(a) + " , " + print(b));
  }
  return r;
}

// Supported g: positive-leading polynomials in k, optionally plus c*ln(k). With
// k = k* + err and |err| below the last retained term T of the inverse, the
// residual g(k) - w ~ g'(k*) err has growth below growth(T) + (1 - 1/d).
Report inversion_residual(unsigned seed, int count) {
  Report r;
  const Expr k = var("k");
  const std::size_t order = 2;
  testing::BasisGenerator gen(seed);
  std::uniform_int_distribution<int> deg(1, 3), coin(0, 1);
  for (int trial = 0; trial < count; ++trial) {
    int d = deg(gen.engine());
    std::vector<Expr> terms{rational(gen.small_rational(1, 6)) * pow(k, integer(d))};
    for (int j = 0; j < d; ++j) terms.push_back(rational(gen.small_rational()) * pow(k, integer(j)));
    if (d > 1 && coin(gen.engine())) terms.push_back(rational(gen.small_rational()) * ln(k));
    Expr g = add(terms);
    ++r.checked;
    try {
      Expr inv = asymptotic_inverse(g, k, order);
      NormalForm invnf = asymptotic_expansion(inv, order);
      Growth last = invnf.terms.back().growth();
      Growth limit{last.e, last.w + 1 - Rational(1, d), last.l};
      NormalForm residual = asymptotic_expansion(substitute(g, k, inv) - omega(), order);
      for (const auto& t : residual.terms) {
        if (!(t.growth() < limit)) {
          r.failures.push_back("g=" + print(g) + ": residual term " + print(t.to_expr()));
          break;
        }
      }
    } catch (const Error& e) {
      r.failures.push_back("g=" + print(g) + ": " + e.what());
    }
  }
  return r;
}

Report partial_sums() {
  Report r;
  PrecisionGuard g(60);
  const Real tol(kPartialSumTolerance);
  for (const auto& c : direct_cases()) {
    PartialSumForm ps = partial_sum_closed_form(detect_series(parse(c.body), c.start));
    Real running = 0;
    long t = c.start;
    for (int point = 0; point < kPartialSumPoints; ++point) {
      running += c.term(t);
      ++t;  // the closed form at t sums k = start .. t-1
      ++r.checked;
      Real closed = eval_numeric(ps.sum, {{"t", Real(t)}}, 40);
      Real scale = boost::multiprecision::max(Real(1), boost::multiprecision::abs(running));
      if (boost::multiprecision::abs(closed - running) > tol * scale) {
        r.failures.push_back(c.body + " from " + std::to_string(c.start) + " at t=" + std::to_string(t));
        break;
      }
    }
  }
  return r;
}

}  // namespace surreal::properties
