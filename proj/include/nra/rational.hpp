#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>

namespace nra {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Number of decimal digits of |z|; zero has one digit.
inline std::size_t digits(const Integer& z) {
  if (z == 0) return 1;
  Integer a = abs(z);
  std::size_t d = mpz_sizeinbase(a.get_mpz_t(), 10);
  // mpz_sizeinbase may overshoot by one for base 10.
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
  if (a < p) --d;
  return d;
}

/// Digit cost used to rank candidate values: digits of numerator plus
/// digits of denominator.
inline std::size_t digit_cost(const Rational& q) {
  return digits(q.get_num()) + digits(q.get_den());
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  return r;  // already canonical
}

/// Digit-length bound on a fraction N/D of positive coprime integers: when
/// either side has more than `len1` digits, the rightmost
/// min(dig(N), dig(D)) - 2 digits are dropped from both. The result is not
/// reduced.
inline std::pair<Integer, Integer> truncate_fraction(const Integer& num, const Integer& den, std::size_t len1) {
  std::size_t dn = digits(num);
  std::size_t dd = digits(den);
  if (std::max(dn, dd) <= len1) return {num, den};
  std::size_t m = std::min(dn, dd);
  if (m <= 2) return {num, den};
  Integer scale = pow(Integer(10), m - 2);
  Integer n2, d2;
  mpz_tdiv_q(n2.get_mpz_t(), num.get_mpz_t(), scale.get_mpz_t());
  mpz_tdiv_q(d2.get_mpz_t(), den.get_mpz_t(), scale.get_mpz_t());
  return {n2, d2};
}

/// truncate_fraction applied to |q|, sign kept, result reduced.
inline Rational truncate_rational(const Rational& q, std::size_t len1) {
  auto [n2, d2] = truncate_fraction(abs(q.get_num()), q.get_den(), len1);
  if (d2 == 0) return q;
  Rational r(n2, d2);
  r.canonicalize();
  if (q < 0) r = -r;
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "12", "-3/4" or a decimal literal such as "0.125" exactly.
inline Rational parse_rational(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational q(text, 10);
    q.canonicalize();
    return q;
  }
  std::string digits_only = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac = text.size() - dot - 1;
  Integer num(digits_only.empty() ? std::string("0") : digits_only, 10);
  Rational q(num, pow(Integer(10), frac));
  q.canonicalize();
  return q;
}

}  // namespace nra
