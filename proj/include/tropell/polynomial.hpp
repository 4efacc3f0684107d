#pragma once

// Polynomials and rational functions in t over K: the function field K(C)
// of C = P^1. Newton polygons at a disk centre give both the Gauss valuation
// of a disk and the multiset of distances v(a - c) to the roots a, without
// ever factoring.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropell/valued_element.hpp"

namespace tropell {

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const ValuedElement& c) {  // NOLINT(implicit)
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  Polynomial(long c) : Polynomial(ValuedElement(c)) {}  // NOLINT(implicit)
  explicit Polynomial(std::vector<ValuedElement> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial t() { return Polynomial({ValuedElement(0), ValuedElement(1)}); }
  /// t - a
  static Polynomial linear(const ValuedElement& a) { return Polynomial({-a, ValuedElement(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<ValuedElement>& coefficients() const { return coeffs_; }
  ValuedElement coefficient(long k) const {
    if (k < 0 || k > degree()) return ValuedElement();
    return coeffs_[static_cast<std::size_t>(k)];
  }
  ValuedElement leading() const { return is_zero() ? ValuedElement() : coeffs_.back(); }
  ValuedElement constant_term() const { return coefficient(0); }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<ValuedElement> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ValuedElement> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(r));
  }

  Polynomial scaled(const ValuedElement& c) const {
    if (c.is_zero()) return {};
    Polynomial p = *this;
    for (auto& x : p.coeffs_) x *= c;
    return p;
  }

  Polynomial pow(long e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// Euclidean division over the field K.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& b) const {
    if (b.is_zero()) throw DomainError(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<ValuedElement> a = coeffs_;
    if (a.size() < b.coeffs_.size()) return {Polynomial(), *this};
    std::vector<ValuedElement> q(a.size() - b.coeffs_.size() + 1);
    const ValuedElement inv_lead = b.leading().inverse();
    const long bs = static_cast<long>(b.coeffs_.size());
    for (long k = static_cast<long>(a.size()) - 1; k >= bs - 1; --k) {
      if (a[k].is_zero()) continue;
      ValuedElement c = a[k] * inv_lead;
      q[k - (bs - 1)] = c;
      for (long j = 0; j < bs; ++j) a[k - (bs - 1) + j] -= c * b.coeffs_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(a))};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
  }

  /// Sufficient test for gcd(a, b) = 1: a specialization pi -> q that keeps
  /// both degrees and is coprime over Q.
  static bool certainly_coprime(const Polynomial& a, const Polynomial& b) {
    if (a.degree() <= 0 || b.degree() <= 0) return true;
    Integer d = 1;
    for (const auto* p : {&a, &b})
      for (const auto& c : p->coeffs_) {
        for (const auto& [k, x] : c.numerator_terms()) d = lcm_of(d, Integer(k.get_den()));
        for (const auto& [k, x] : c.denominator_terms()) d = lcm_of(d, Integer(k.get_den()));
      }
    for (long q : {2L, 3L, 5L}) {
      std::vector<detail::QPoly> images;
      for (const auto* p : {&a, &b}) {
        detail::QPoly img;
        for (const auto& c : p->coeffs_) {
          auto x = c.specialize(Integer(q), d);
          if (!x) break;
          img.push_back(*x);
        }
        if (img.size() != p->coeffs_.size() || img.back() == 0) break;
        images.push_back(std::move(img));
      }
      if (images.size() == 2) return detail::qpoly_monic_gcd(images[0], images[1]).size() == 1;
    }
    return false;
  }

  static Polynomial monic_gcd(Polynomial a, Polynomial b) {
    if (certainly_coprime(a, b)) return Polynomial(1);
    // Division by a polynomial with monomial leading coefficient keeps Laurent
    // coefficients Laurent; switch to subresultants when that fails.
    for (;;) {
      if (a.degree() < b.degree()) std::swap(a, b);
      if (b.is_zero()) return a.monic();
      if (b.degree() == 0) return Polynomial(1);
      if (!b.leading().is_monomial()) break;
      Polynomial r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_laurent() && b.is_laurent()) {
      if (auto g = interpolated_gcd(a, b)) {
        Polynomial m = g->monic();
        if (m.degree() == 0 || (a.divmod(m).second.is_zero() && b.divmod(m).second.is_zero())) return m;
      }
      return primitive_gcd(a, b).monic();
    }
    while (!b.is_zero()) {
      Polynomial r = a.divmod(b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  bool is_laurent() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ValuedElement& c) { return c.is_laurent(); });
  }

  ValuedElement evaluate(const ValuedElement& x) const {
    ValuedElement acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// P(t + c): coefficients of the Taylor expansion of P around c.
  Polynomial taylor_shift(const ValuedElement& c) const {
    if (c.is_zero()) return *this;
    std::vector<ValuedElement> a = coeffs_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t k = n - 1; k > i; --k) a[k - 1] += c * a[k];
    return Polynomial(std::move(a));
  }

  /// Gauss valuation on the disk {v(t - c) >= r}: min_k v(a_k) + k r over the
  /// Taylor coefficients a_k at c.
  Valuation gauss_valuation(const ValuedElement& center, const Rational& radius) const {
    Polynomial shifted = taylor_shift(center);
    Valuation best = Valuation::infinity();
    for (std::size_t k = 0; k < shifted.coeffs_.size(); ++k) {
      Valuation vk = shifted.coeffs_[k].valuation();
      if (vk.is_infinite()) continue;
      best = min_of(best, Valuation(Rational(vk.value() + radius * static_cast<long>(k))));
    }
    return best;
  }

  /// Multiset {v(a - c)} over the roots a of P in an algebraic closure, read
  /// off the Newton polygon of P(t + c). Roots equal to c get +inf.
  std::vector<std::pair<Valuation, long>> root_distances(const ValuedElement& center) const {
    std::vector<std::pair<Valuation, long>> out;
    if (degree() <= 0) return out;
    Polynomial shifted = taylor_shift(center);
    const auto& a = shifted.coeffs_;
    std::size_t first = 0;
    while (a[first].is_zero()) ++first;
    if (first > 0) out.emplace_back(Valuation::infinity(), static_cast<long>(first));
    struct Pt {
      long x;
      Rational y;
    };
    std::vector<Pt> hull;
    for (std::size_t k = first; k < a.size(); ++k) {
      if (a[k].is_zero()) continue;
      Pt p{static_cast<long>(k), a[k].valuation().value()};
      while (hull.size() >= 2) {
        const Pt& o = hull[hull.size() - 2];
        const Pt& q = hull.back();
        Rational cross = Rational(q.x - o.x) * (p.y - o.y) - (q.y - o.y) * Rational(p.x - o.x);
        if (cross <= 0)
          hull.pop_back();
        else
          break;
      }
      hull.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      long width = hull[i + 1].x - hull[i].x;
      Rational slope_val = (hull[i].y - hull[i + 1].y) / Rational(width);
      out.emplace_back(Valuation(slope_val), width);
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Text form accepted back by the expression parser, e.g. "-64*t - 432*t^2".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const ValuedElement& c = coeffs_[k];
      if (c.is_zero()) continue;
      std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
      bool simple = c.is_laurent() && c.numerator_terms().size() == 1;
      bool negative = simple && c.leading_coefficient() < 0;
      ValuedElement shown = negative && !first ? -c : c;
      std::string cs = shown.str();
      std::string term;
      if (mono.empty())
        term = simple ? cs : "(" + cs + ")";
      else if (simple && cs == "1")
        term = mono;
      else if (simple && cs == "-1")
        term = "-" + mono;
      else
        term = (simple ? cs : "(" + cs + ")") + "*" + mono;
      if (first)
        out += term;
      else
        out += (negative ? " - " : " + ") + term;
      first = false;
    }
    return out;
  }

 private:
  std::vector<ValuedElement> coeffs_;

  using SPoly = std::vector<detail::QPoly>;  // t-coefficients in Q[s], s = pi^(1/d)

  static Integer exponent_lattice(const Polynomial& a, const Polynomial& b) {
    Integer d = 1;
    for (const auto* p : {&a, &b})
      for (const auto& c : p->coeffs_)
        for (const auto& [k, x] : c.numerator_terms()) d = lcm_of(d, Integer(k.get_den()));
    return d;
  }

  // p times the unit pi^(-lowest exponent), as a polynomial in t over Q[s].
  static SPoly to_s(const Polynomial& p, const Integer& d) {
    Rational low;
    bool first = true;
    for (const auto& c : p.coeffs_)
      if (!c.is_zero() && (first || c.numerator_terms().begin()->first < low)) {
        low = c.numerator_terms().begin()->first;
        first = false;
      }
    SPoly out;
    for (const auto& c : p.coeffs_) {
      detail::QPoly q;
      for (const auto& [k, x] : c.numerator_terms()) {
        std::size_t i = Rational((k - low) * Rational(d)).get_num().get_ui();
        if (q.size() <= i) q.resize(i + 1, Rational(0));
        q[i] = x;
      }
      out.push_back(std::move(q));
    }
    return out;
  }

  static Polynomial from_s(const SPoly& p, const Integer& d) {
    std::vector<ValuedElement> out;
    for (const auto& c : p) {
      ValuedElement::Terms terms;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) {
          Rational e(Integer(static_cast<long>(i)), d);
          e.canonicalize();
          terms[e] = c[i];
        }
      out.push_back(ValuedElement::from_fraction(std::move(terms), {{Rational(0), Rational(1)}}));
    }
    return Polynomial(std::move(out));
  }

  static Rational qpoly_eval(const detail::QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Newton interpolation through (xs[i], ys[i]), returned in the monomial basis.
  static detail::QPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
    detail::QPoly out{ys[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
      detail::QPoly next(out.size() + 1, Rational(0));
      for (std::size_t k = 0; k < out.size(); ++k) {
        next[k + 1] += out[k];
        next[k] -= out[k] * xs[i];
      }
      next[0] += ys[i];
      out = std::move(next);
    }
    detail::qpoly_trim(out);
    return out;
  }

  // Candidate gcd by specialising s at integer points, taking gcds over Q and
  // interpolating gamma * gcd, gamma = gcd of the leading coefficients. The
  // caller verifies the candidate by exact division.
  static std::optional<Polynomial> interpolated_gcd(const Polynomial& a, const Polynomial& b) {
    const Integer d = exponent_lattice(a, b);
    SPoly x = to_s(a, d), y = to_s(b, d);
    std::size_t sdeg = 0;
    for (const auto* p : {&x, &y}) {
      std::size_t m = 0;
      for (const auto& c : *p) m = std::max(m, c.size());
      sdeg = p == &x ? m : std::min(sdeg, m);
    }
    const detail::QPoly gamma = detail::qpoly_monic_gcd(x.back(), y.back());
    const std::size_t needed = gamma.size() + sdeg;
    std::vector<Rational> xs;
    std::vector<detail::QPoly> images;
    std::size_t best = static_cast<std::size_t>(-1);
    for (long point = 1; xs.size() < needed; ++point) {
      if (point > static_cast<long>(4 * needed + 64)) return std::nullopt;
      const Rational s0(point);
      if (qpoly_eval(x.back(), s0) == 0 || qpoly_eval(y.back(), s0) == 0) continue;
      auto image = [&](const SPoly& p) {
        detail::QPoly q;
        for (const auto& c : p) q.push_back(qpoly_eval(c, s0));
        return q;
      };
      detail::QPoly g = detail::qpoly_monic_gcd(image(x), image(y));
      if (g.size() == 1) return Polynomial(1);
      if (g.size() > best) continue;
      if (g.size() < best) {
        best = g.size();
        xs.clear();
        images.clear();
      }
      const Rational scale = qpoly_eval(gamma, s0);
      for (auto& c : g) c *= scale;
      xs.push_back(s0);
      images.push_back(std::move(g));
    }
    SPoly out(best);
    for (std::size_t k = 0; k < best; ++k) {
      std::vector<Rational> ys;
      for (const auto& img : images) ys.push_back(img[k]);
      out[k] = interpolate(xs, ys);
    }
    return from_s(out, d);
  }

  // gcd up to a unit of K by the subresultant pseudo-remainder sequence over
  // Q[s], s = pi^(1/d); every division in it is exact, which keeps
  // coefficient growth polynomial. Both inputs Laurent and nonzero.
  static Polynomial primitive_gcd(const Polynomial& a, const Polynomial& b) {
    using detail::QPoly;
    const Integer d = exponent_lattice(a, b);
    auto trim_s = [](SPoly& p) {
      while (!p.empty() && p.back().empty()) p.pop_back();
    };
    auto qpow = [](const QPoly& x, long e) {
      QPoly r{Rational(1)};
      for (long i = 0; i < e; ++i) r = detail::qpoly_mul(r, x);
      return r;
    };
    auto exact_div = [](const QPoly& x, const QPoly& y) {
      auto [q, r] = detail::qpoly_divmod(x, y);
      ensure(r.empty(), "inexact division in subresultant sequence");
      return q;
    };
    SPoly x = to_s(a, d), y = to_s(b, d);
    trim_s(x);
    trim_s(y);
    if (x.size() < y.size()) std::swap(x, y);
    QPoly g{Rational(1)}, h{Rational(1)};
    while (!y.empty()) {
      const long delta = static_cast<long>(x.size() - y.size());
      SPoly r = x;
      const QPoly ly = y.back();
      long steps = 0;
      while (r.size() >= y.size()) {
        ++steps;
        const QPoly lr = r.back();
        const std::size_t shift = r.size() - y.size();
        for (auto& c : r) c = detail::qpoly_mul(c, ly);
        for (std::size_t j = 0; j < y.size(); ++j) {
          QPoly sub = detail::qpoly_mul(lr, y[j]);
          auto& c = r[shift + j];
          if (c.size() < sub.size()) c.resize(sub.size(), Rational(0));
          for (std::size_t i = 0; i < sub.size(); ++i) c[i] -= sub[i];
          detail::qpoly_trim(c);
        }
        trim_s(r);
      }
      if (r.empty()) break;
      // Pseudo-remainder proper: the total multiplier is ly^(delta + 1).
      if (steps < delta + 1) {
        const QPoly pad = qpow(ly, delta + 1 - steps);
        for (auto& c : r) c = detail::qpoly_mul(c, pad);
      }
      x = std::move(y);
      const QPoly divisor = detail::qpoly_mul(g, qpow(h, delta));
      for (auto& c : r)
        if (!c.empty()) c = exact_div(c, divisor);
      y = std::move(r);
      g = x.back();
      if (delta == 1)
        h = g;
      else if (delta > 1)
        h = exact_div(qpow(g, delta), qpow(h, delta - 1));
    }
    return from_s(y.empty() ? x : y, d);
  }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
};

/// An element of K(t), kept as num/den in lowest terms with a monic
/// denominator (denominator 1 for polynomials).
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}          // NOLINT(implicit)
  RationalFunction(const ValuedElement& c) : num_(c), den_(1) {}       // NOLINT(implicit)
  RationalFunction(long c) : num_(c), den_(1) {}                        // NOLINT(implicit)
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction t() { return RationalFunction(Polynomial::t()); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    // Denominators are monic, so exact division stays Laurent.
    if (a.den_.degree() <= b.den_.degree()) {
      auto [q, r] = b.den_.divmod(a.den_);
      if (r.is_zero()) return RationalFunction(a.num_ * q + b.num_, b.den_);
    } else {
      auto [q, r] = a.den_.divmod(b.den_);
      if (r.is_zero()) return RationalFunction(a.num_ + b.num_ * q, a.den_);
    }
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) {
      RationalFunction r;
      r.num_ = a.num_ * b.num_;
      r.den_ = Polynomial(1);
      return r;
    }
    // Cancel across before multiplying: (n1 / g1)(n2 / g2) / ((d1 / g2)(d2 / g1)).
    Polynomial g1 = Polynomial::monic_gcd(a.num_, b.den_), g2 = Polynomial::monic_gcd(b.num_, a.den_);
    Polynomial n1 = a.num_, d2 = b.den_, n2 = b.num_, d1 = a.den_;
    if (g1.degree() > 0) {
      n1 = n1.divmod(g1).first;
      d2 = d2.divmod(g1).first;
    }
    if (g2.degree() > 0) {
      n2 = n2.divmod(g2).first;
      d1 = d1.divmod(g2).first;
    }
    RationalFunction r;
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    r.make_denominator_monic();
    return r;
  }
  RationalFunction inverse() const {
    if (is_zero()) throw DomainError(ErrorCode::DivisionByZero, "inverse of zero in K(t)");
    return RationalFunction(den_, num_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  RationalFunction pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction r;
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    return r;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Valuation gauss_valuation(const ValuedElement& center, const Rational& radius) const {
    Valuation vn = num_.gauss_valuation(center, radius);
    if (vn.is_infinite()) return vn;
    return Valuation(Rational(vn.value() - den_.gauss_valuation(center, radius).value()));
  }

  ValuedElement evaluate(const ValuedElement& x) const {
    ValuedElement d = den_.evaluate(x);
    if (d.is_zero()) throw DomainError(ErrorCode::DivisionByZero, "pole at evaluation point");
    return num_.evaluate(x) / d;
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

 private:
  Polynomial num_;
  Polynomial den_{1};

  void normalize() {
    if (den_.is_zero()) throw DomainError(ErrorCode::DivisionByZero, "zero denominator in K(t)");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (den_.degree() > 0) {
      Polynomial g = Polynomial::monic_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
      }
    }
    make_denominator_monic();
  }

  void make_denominator_monic() {
    ValuedElement lead = den_.leading();
    if (!(lead == ValuedElement(1))) {
      ValuedElement inv = lead.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }
};

}  // namespace tropell
