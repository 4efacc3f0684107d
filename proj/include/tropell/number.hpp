#pragma once

// Exact integers and rationals used throughout tropell, plus the extended
// valuation type Z ∪ {+inf} (or Q ∪ {+inf} after base extension).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "tropell/errors.hpp"

namespace tropell {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Largest element of (1/n)Z that is <= q.
inline Rational floor_to_lattice(const Rational& q, long n) {
  Rational scaled = q * n;
  Rational out(floor_of(scaled), Integer(n));
  out.canonicalize();
  return out;
}

inline Integer abs_of(const Integer& z) { return z < 0 ? Integer(-z) : z; }
inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Canonical "p/q" (or "p" when q = 1).
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n')) --e;
  return std::string(s.substr(b, e - b));
}

/// Parses "p", "-p", "p/q". Throws ParseError on anything else.
inline Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw DomainError(ErrorCode::ParseError, "empty rational literal");
  auto valid_int = [](std::string_view d, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < d.size() && (d[i] == '-' || d[i] == '+')) ++i;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  num = trim(num);
  den = trim(den);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw DomainError(ErrorCode::ParseError, "bad rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw DomainError(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// A valuation value: an exact rational or the +inf sentinel of the zero element.
class Valuation {
 public:
  Valuation() = default;  // +inf
  Valuation(const Rational& v) : value_(v) {}  // NOLINT(implicit)
  Valuation(long v) : value_(Rational(v)) {}   // NOLINT(implicit)

  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  const Rational& value() const {
    if (!value_) throw DomainError(ErrorCode::InfiniteValuation, "valuation is +inf");
    return *value_;
  }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return {};
    return Valuation(Rational(*a.value_ + *b.value_));
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.value_ == *b.value_;
  }

  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    if (a.is_infinite()) return std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    int c = cmp(*a.value_, *b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return is_infinite() ? std::string("inf") : to_string(*value_); }

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

 private:
  std::optional<Rational> value_;
};

inline Valuation min_of(const Valuation& a, const Valuation& b) { return a <= b ? a : b; }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace tropell
