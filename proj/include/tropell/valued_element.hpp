#pragma once

// The discretely valued base field K.
//
// K is modelled as Q(pi) with the pi-adic valuation v(pi) = 1. An element is
// stored as  N / D  where N is a Laurent polynomial in pi and D is a
// polynomial in pi with constant term 1 (so v(D) = 0 and v(N / D) is the
// smallest exponent of N). Nearly every element met in practice has D = 1.
// Exponents are rationals so that the base extensions K(pi^(1/n)) share the
// same type; all exponents of one element lie in some lattice (1/d)Z.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tropell/number.hpp"
#include "tropell/qpoly.hpp"

namespace tropell {

class ValuedElement {
 public:
  using Terms = std::map<Rational, Rational>;  // exponent of pi -> coefficient

  ValuedElement() = default;
  ValuedElement(long c) { set_constant(Rational(c)); }              // NOLINT(implicit)
  ValuedElement(const Rational& c) { set_constant(c); }             // NOLINT(implicit)

  static ValuedElement zero() { return {}; }
  static ValuedElement one() { return ValuedElement(1); }

  /// c * pi^k
  static ValuedElement monomial(const Rational& coeff, const Rational& exponent) {
    ValuedElement x;
    if (coeff != 0) x.num_[exponent] = coeff;
    return x;
  }
  static ValuedElement pi_power(const Rational& exponent) { return monomial(Rational(1), exponent); }
  static ValuedElement pi() { return pi_power(Rational(1)); }

  /// Builds N / D from Laurent term maps; D must be nonzero.
  static ValuedElement from_fraction(Terms num, Terms den) {
    ValuedElement x;
    x.num_ = std::move(num);
    x.den_ = std::move(den);
    strip(x.num_);
    strip(x.den_);
    if (x.den_.empty()) throw DomainError(ErrorCode::DivisionByZero, "zero denominator");
    x.normalize();
    return x;
  }

  bool is_zero() const { return num_.empty(); }
  bool is_laurent() const { return den_.empty(); }
  bool is_constant() const {
    return den_.empty() && (num_.empty() || (num_.size() == 1 && num_.begin()->first == 0));
  }
  bool is_monomial() const { return den_.empty() && num_.size() == 1; }

  const Terms& numerator_terms() const { return num_; }
  /// Denominator terms; empty means 1.
  const Terms& denominator_terms() const { return den_; }

  Valuation valuation() const {
    if (num_.empty()) return Valuation::infinity();
    return Valuation(num_.begin()->first);
  }

  /// Coefficient of the lowest-order term: the "angular component" of x.
  Rational leading_coefficient() const {
    if (num_.empty()) return Rational(0);
    return num_.begin()->second;
  }

  /// The rational constant this element equals; throws if it is not one.
  Rational as_rational() const {
    if (!is_constant()) throw DomainError(ErrorCode::InvalidArgument, "element is not a rational constant: " + str());
    return num_.empty() ? Rational(0) : num_.begin()->second;
  }

  /// Image under pi^(1/d) -> q, or nullopt if some exponent leaves (1/d)Z or
  /// the denominator vanishes there.
  std::optional<Rational> specialize(const Integer& q, const Integer& d) const {
    auto eval = [&](const Terms& t, Rational& out) {
      out = 0;
      for (const auto& [k, c] : t) {
        Rational e = k * Rational(d);
        if (!is_integral(e)) return false;
        long n = e.get_num().get_si();
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
        out += n < 0 ? Rational(c / p) : Rational(c * p);
      }
      return true;
    };
    Rational n, m(1);
    if (!eval(num_, n)) return std::nullopt;
    if (!den_.empty() && (!eval(den_, m) || m == 0)) return std::nullopt;
    return n / m;
  }

  ValuedElement operator-() const {
    ValuedElement x = *this;
    for (auto& [k, c] : x.num_) c = -c;
    return x;
  }

  friend ValuedElement operator+(const ValuedElement& a, const ValuedElement& b) {
    if (a.den_.empty() && b.den_.empty()) {
      ValuedElement x = a;
      for (const auto& [k, c] : b.num_) {
        auto [it, inserted] = x.num_.try_emplace(k, c);
        if (!inserted) {
          it->second += c;
          if (it->second == 0) x.num_.erase(it);
        }
      }
      return x;
    }
    // N1/D1 + N2/D2 = (N1 D2 + N2 D1) / (D1 D2)
    Terms n = add_terms(mul_terms(a.num_, b.den_or_one()), mul_terms(b.num_, a.den_or_one()));
    Terms d = mul_terms(a.den_or_one(), b.den_or_one());
    return from_fraction(std::move(n), std::move(d));
  }

  friend ValuedElement operator-(const ValuedElement& a, const ValuedElement& b) { return a + (-b); }

  friend ValuedElement operator*(const ValuedElement& a, const ValuedElement& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.empty() && b.den_.empty()) {
      ValuedElement x;
      x.num_ = mul_terms(a.num_, b.num_);
      return x;
    }
    return from_fraction(mul_terms(a.num_, b.num_), mul_terms(a.den_or_one(), b.den_or_one()));
  }

  ValuedElement inverse() const {
    if (is_zero()) throw DomainError(ErrorCode::DivisionByZero, "inverse of zero in K");
    if (is_monomial()) {
      const auto& [k, c] = *num_.begin();
      return monomial(Rational(1) / c, Rational(-k));
    }
    return from_fraction(den_or_one(), num_);
  }

  friend ValuedElement operator/(const ValuedElement& a, const ValuedElement& b) { return a * b.inverse(); }

  ValuedElement& operator+=(const ValuedElement& o) { return *this = *this + o; }
  ValuedElement& operator-=(const ValuedElement& o) { return *this = *this - o; }
  ValuedElement& operator*=(const ValuedElement& o) { return *this = *this * o; }
  ValuedElement& operator/=(const ValuedElement& o) { return *this = *this / o; }

  ValuedElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    ValuedElement result = one();
    ValuedElement base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const ValuedElement& a, const ValuedElement& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Canonical text form, e.g. "-1 - 1/2*pi" or "(1)/(1 + pi)".
  std::string str() const {
    if (den_.empty()) return terms_str(num_);
    return "(" + terms_str(num_) + ")/(" + terms_str(den_) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const ValuedElement& x) { return os << x.str(); }

  static std::string terms_str(const Terms& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms) {
      if (first) {
        out += term_str(c, k);
        first = false;
      } else if (c < 0) {
        out += " - " + term_str(Rational(-c), k);
      } else {
        out += " + " + term_str(c, k);
      }
    }
    return out;
  }

 private:
  Terms num_;
  Terms den_;  // empty == 1

  void set_constant(const Rational& c) {
    num_.clear();
    den_.clear();
    if (c != 0) num_[Rational(0)] = c;
  }

  Terms den_or_one() const {
    if (!den_.empty()) return den_;
    return Terms{{Rational(0), Rational(1)}};
  }

  static void strip(Terms& t) {
    for (auto it = t.begin(); it != t.end();) {
      if (it->second == 0)
        it = t.erase(it);
      else
        ++it;
    }
  }

  static Terms add_terms(Terms a, const Terms& b) {
    for (const auto& [k, c] : b) a[k] += c;
    strip(a);
    return a;
  }

  static Terms mul_terms(const Terms& a, const Terms& b) {
    Terms r;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) r[Rational(ka + kb)] += ca * cb;
    strip(r);
    return r;
  }

  static std::string term_str(const Rational& c, const Rational& k) {
    if (k == 0) return to_string(c);
    std::string mono = "pi";
    if (k != 1) mono += is_integral(k) ? "^" + to_string(k) : "^(" + to_string(k) + ")";
    if (c == 1) return mono;
    if (c == -1) return "-" + mono;
    return to_string(c) + "*" + mono;
  }

  // Brings N/D to lowest terms with D(0) = 1, D = 1 when possible.
  void normalize() {
    if (num_.empty()) {
      den_.clear();
      return;
    }
    // Common exponent lattice (1/d)Z.
    Integer d = 1;
    for (const auto& [k, c] : num_) d = lcm_of(d, Integer(k.get_den()));
    for (const auto& [k, c] : den_) d = lcm_of(d, Integer(k.get_den()));
    const Rational step(1, d);
    auto to_poly = [&](const Terms& t, Rational& shift) {
      shift = t.begin()->first;
      Rational top = t.rbegin()->first;
      long size = Rational((top - shift) * d).get_num().get_si() + 1;
      detail::QPoly p(static_cast<std::size_t>(size), Rational(0));
      for (const auto& [k, c] : t) p[Rational((k - shift) * d).get_num().get_ui()] = c;
      return p;
    };
    Rational shift_n, shift_d;
    detail::QPoly a = to_poly(num_, shift_n);
    detail::QPoly b = to_poly(den_, shift_d);
    detail::QPoly g = detail::qpoly_monic_gcd(a, b);
    if (g.size() > 1) {
      a = detail::qpoly_divmod(a, g).first;
      b = detail::qpoly_divmod(b, g).first;
    }
    // Make b(0) = 1 and fold the leftover pi-shift into the numerator.
    Rational b0 = b.front();
    Rational shift = shift_n - shift_d;
    num_.clear();
    den_.clear();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) num_[Rational(shift + step * Rational(static_cast<long>(i)))] = a[i] / b0;
    if (b.size() > 1) {
      for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] != 0) den_[Rational(step * Rational(static_cast<long>(i)))] = b[i] / b0;
    }
  }
};

inline Valuation valuation(const ValuedElement& x) { return x.valuation(); }

/// Residue characteristic bookkeeping. Only p = 0 or p >= 5 is accepted by the
/// minimal-model code; p in {2, 3} would require Tate's algorithm.
struct ResidueConfig {
  long residue_char = 0;

  bool is_valid() const { return residue_char == 0 || is_prime(residue_char); }
  bool is_tame_for_weierstrass() const { return residue_char == 0 || residue_char >= 5; }
  /// True when p divides n (never for p = 0).
  bool divides(long n) const { return residue_char != 0 && n % residue_char == 0; }

  void require_supported() const {
    if (!is_valid())
      throw DomainError(ErrorCode::InvalidArgument,
                        "residue characteristic must be 0 or prime, got " + std::to_string(residue_char));
    if (!is_tame_for_weierstrass())
      throw DomainError(ErrorCode::ResidueCharUnsupported,
                        "residue characteristic " + std::to_string(residue_char) + " needs Tate's algorithm");
  }
};

}  // namespace tropell
