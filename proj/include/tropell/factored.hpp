#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropell/polynomial.hpp"

namespace tropell {

/// f = content * prod (t - root)^multiplicity with K-rational roots.
class FactoredFunction {
 public:
  struct Factor {
    ValuedElement root;
    long multiplicity = 0;
  };

  FactoredFunction() : content_(1) {}
  explicit FactoredFunction(ValuedElement content) : content_(std::move(content)) {
    if (content_.is_zero()) throw DomainError(ErrorCode::InvalidArgument, "factored function must be nonzero");
  }
  FactoredFunction(ValuedElement content, const std::vector<Factor>& factors) : FactoredFunction(std::move(content)) {
    for (const auto& f : factors) multiply_linear(f.root, f.multiplicity);
  }

  const ValuedElement& content() const { return content_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Total multiplicity sum m_i; the order of the pole at infinity.
  long degree() const {
    long d = 0;
    for (const auto& f : factors_) d += f.multiplicity;
    return d;
  }

  void multiply_content(const ValuedElement& c) {
    if (c.is_zero()) throw DomainError(ErrorCode::InvalidArgument, "factored function must be nonzero");
    content_ *= c;
  }

  /// Multiplies by (t - root)^m, merging with an existing equal root.
  void multiply_linear(const ValuedElement& root, long m) {
    if (m == 0) return;
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
      if (it->root == root) {
        it->multiplicity += m;
        if (it->multiplicity == 0) factors_.erase(it);
        return;
      }
    }
    factors_.push_back({root, m});
  }

  FactoredFunction operator*(const FactoredFunction& o) const {
    FactoredFunction r = *this;
    r.content_ *= o.content_;
    for (const auto& f : o.factors_) r.multiply_linear(f.root, f.multiplicity);
    return r;
  }

  FactoredFunction inverse() const {
    FactoredFunction r(content_.inverse());
    for (const auto& f : factors_) r.factors_.push_back({f.root, -f.multiplicity});
    return r;
  }

  FactoredFunction pow(long e) const {
    if (e == 0) return FactoredFunction();
    FactoredFunction r(content_.pow(e));
    for (const auto& f : factors_) r.factors_.push_back({f.root, f.multiplicity * e});
    return r;
  }

  /// v(content) + sum m_i * min(v(root_i - c), r): the Gauss valuation of the
  /// disk {v(t - c) >= r}.
  Rational gauss_valuation(const ValuedElement& center, const Rational& radius) const {
    Rational total = content_.valuation().value();
    for (const auto& f : factors_) {
      Valuation d = (f.root - center).valuation();
      const Rational& term = d.is_infinite() || d.value() > radius ? radius : d.value();
      total += term * f.multiplicity;
    }
    return total;
  }

  RationalFunction to_rational_function() const {
    Polynomial num(content_), den(1);
    for (const auto& f : factors_) {
      Polynomial lin = Polynomial::linear(f.root);
      if (f.multiplicity > 0)
        num = num * lin.pow(f.multiplicity);
      else
        den = den * lin.pow(-f.multiplicity);
    }
    return RationalFunction(num, den);
  }

  /// "c * (t - r1)^m1 * ..." with t for a root at 0.
  std::string str() const {
    std::string out = content_.is_laurent() && content_.numerator_terms().size() <= 1 ? content_.str()
                                                                                       : "(" + content_.str() + ")";
    for (const auto& f : factors_) {
      std::string base;
      if (f.root.is_zero()) {
        base = "t";
      } else if (f.root.is_laurent() && f.root.numerator_terms().size() == 1 && f.root.leading_coefficient() < 0) {
        base = "(t + " + (-f.root).str() + ")";
      } else if (f.root.is_laurent() && f.root.numerator_terms().size() == 1) {
        base = "(t - " + f.root.str() + ")";
      } else {
        base = "(t - (" + f.root.str() + "))";
      }
      out += " * " + base;
      if (f.multiplicity != 1) out += "^" + std::to_string(f.multiplicity);
    }
    return out;
  }

 private:
  ValuedElement content_;
  std::vector<Factor> factors_;
};

}  // namespace tropell
