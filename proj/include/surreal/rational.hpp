#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace surreal {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

/// Rational from a decimal or fraction literal ("3", "-7/12", "0.125").
Rational parse_rational(const std::string& text);

/// "p" or "p/q", sign on the numerator.
std::string to_string(const Rational& r);

Rational floor(const Rational& r);

/// Exact r^n for integer n; throws PowError on 0^negative.
Rational pow_int(const Rational& r, long n);

/// Prime factorization of |n| by trial division. A cofactor that is too large
/// to finish is returned as a single (possibly composite) factor.
std::vector<std::pair<Integer, long>> factorize(Integer n);

/// Splits v = t^n * rest with rest free of nontrivial n-th power divisors.
std::pair<Integer, Integer> extract_nth_power(const Integer& v, long n);

/// Exact n-th root if v is a perfect n-th power.
std::optional<Integer> exact_root(const Integer& v, long n);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);
Rational bernoulli_number(int n);

/// Binomial coefficient C(n, k) for integer n >= k >= 0.
Integer binomial(int n, int k);

/// Generalised binomial coefficient C(r, j) for rational r.
Rational binomial(const Rational& r, int j);

}  // namespace surreal
