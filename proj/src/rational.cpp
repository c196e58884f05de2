#include "surreal/rational.hpp"

#include "surreal/errors.hpp"

#include <algorithm>
#include <cctype>

namespace surreal {

namespace {

// mpz's string constructor treats a leading 0 as an octal prefix.
Integer parse_decimal(std::string s) {
  bool negative = !s.empty() && s[0] == '-';
  if (negative || (!s.empty() && s[0] == '+')) s.erase(0, 1);
  auto first = s.find_first_not_of('0');
  s = first == std::string::npos ? "0" : s.substr(first);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw DomainError("malformed integer literal '" + s + "'");
  Integer v(s);
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer n = parse_decimal(text.substr(0, slash));
    Integer d = parse_decimal(text.substr(slash + 1));
    if (d == 0) throw DomainError("zero denominator in rational literal '" + text + "'");
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_decimal(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty() || digits == "-") digits += "0";
  Integer scale = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
  return Rational(parse_decimal(digits), scale);
}

std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Rational floor(const Rational& r) {
  Integer n = num(r), d = den(r);
  Integer q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

Rational pow_int(const Rational& r, long n) {
  if (n == 0) return 1;
  if (r == 0) {
    if (n < 0) throw PowError("0 raised to a negative power");
    return 0;
  }
  Rational base = n < 0 ? Rational(1) / r : r;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  Integer nn = boost::multiprecision::pow(num(base), static_cast<unsigned>(e));
  Integer dd = boost::multiprecision::pow(den(base), static_cast<unsigned>(e));
  return Rational(nn, dd);
}

std::vector<std::pair<Integer, long>> factorize(Integer n) {
  std::vector<std::pair<Integer, long>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  auto take = [&](const Integer& p) {
    long count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    if (count > 0) out.emplace_back(p, count);
  };
  take(2);
  take(3);
  for (Integer p = 5; p * p <= n && p < 2000000; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::pair<Integer, Integer> extract_nth_power(const Integer& v, long n) {
  Integer t = 1, rest = 1;
  for (auto& [p, a] : factorize(v)) {
    long q = a / n, r = a % n;
    t *= boost::multiprecision::pow(p, static_cast<unsigned>(q));
    rest *= boost::multiprecision::pow(p, static_cast<unsigned>(r));
  }
  return {t, rest};
}

std::optional<Integer> exact_root(const Integer& v, long n) {
  if (v < 0) return std::nullopt;
  auto [t, rest] = extract_nth_power(v, n);
  if (rest != 1) return std::nullopt;
  return t;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = gcd(a, b);
  Integer r = a / g * b;
  return r < 0 ? Integer(-r) : r;
}

std::vector<Rational> bernoulli_numbers(int n) {
  // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(m)] = -s / Rational(m + 1);
  }
  return b;
}

Rational bernoulli_number(int n) { return bernoulli_numbers(n).back(); }

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational binomial(const Rational& r, int j) {
  Rational out = 1;
  for (int i = 0; i < j; ++i) out = out * (r - i) / (i + 1);
  return out;
}

}  // namespace surreal
