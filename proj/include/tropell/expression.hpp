#pragma once

// Text forms of K- and K(t)-elements.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   primary := integer | 'pi' | 't' | '(' expr ')'
//   exponent:= ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//
// Rational literals such as "3/2" parse as a quotient. Only pi may carry a
// fractional exponent.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tropell/factored.hpp"

namespace tropell {

namespace detail {

struct ExprNode {
  enum class Kind { Number, Pi, T, Add, Sub, Mul, Div, Neg, Pow } kind;
  Integer number;
  Rational exponent;
  std::unique_ptr<ExprNode> lhs, rhs;
};

using ExprPtr = std::unique_ptr<ExprNode>;

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError(ErrorCode::ParseError,
                      what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr node(ExprNode::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = node(ExprNode::Kind::Add, std::move(lhs), term());
      else if (accept('-'))
        lhs = node(ExprNode::Kind::Sub, std::move(lhs), term());
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = node(ExprNode::Kind::Mul, std::move(lhs), unary());
      else if (accept('/'))
        lhs = node(ExprNode::Kind::Div, std::move(lhs), unary());
      else
        return lhs;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return node(ExprNode::Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Rational exponent() {
    if (accept('(')) {
      bool neg = accept('-');
      Integer n = integer();
      Integer d = 1;
      if (accept('/')) d = integer();
      if (!accept(')')) fail("expected ')'");
      if (d == 0) fail("zero exponent denominator");
      Rational q(neg ? Integer(-n) : n, d);
      q.canonicalize();
      return q;
    }
    bool neg = accept('-');
    Integer n = integer();
    return Rational(neg ? Integer(-n) : n);
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) {
      ExprPtr p = node(ExprNode::Kind::Pow, std::move(base));
      p->exponent = exponent();
      return p;
    }
    return base;
  }

  ExprPtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return node(ExprNode::Kind::Pi);
    }
    if (s_[pos_] == 't') {
      ++pos_;
      return node(ExprNode::Kind::T);
    }
    ExprPtr n = node(ExprNode::Kind::Number);
    n->number = integer();
    return n;
  }
};

inline bool mentions_t(const ExprNode& n) {
  if (n.kind == ExprNode::Kind::T) return true;
  return (n.lhs && mentions_t(*n.lhs)) || (n.rhs && mentions_t(*n.rhs));
}

inline long integral_exponent(const ExprNode& n) {
  if (!is_integral(n.exponent))
    throw DomainError(ErrorCode::ParseError, "fractional exponent allowed only on pi, got " + to_string(n.exponent));
  return n.exponent.get_num().get_si();
}

inline ValuedElement eval_valued(const ExprNode& n) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return ValuedElement(Rational(n.number));
    case K::Pi: return ValuedElement::pi();
    case K::T: throw DomainError(ErrorCode::ParseError, "variable t not allowed in a K-element");
    case K::Add: return eval_valued(*n.lhs) + eval_valued(*n.rhs);
    case K::Sub: return eval_valued(*n.lhs) - eval_valued(*n.rhs);
    case K::Mul: return eval_valued(*n.lhs) * eval_valued(*n.rhs);
    case K::Div: return eval_valued(*n.lhs) / eval_valued(*n.rhs);
    case K::Neg: return -eval_valued(*n.lhs);
    case K::Pow:
      if (n.lhs->kind == K::Pi) return ValuedElement::pi_power(n.exponent);
      return eval_valued(*n.lhs).pow(integral_exponent(n));
  }
  return {};
}

inline RationalFunction eval_function(const ExprNode& n) {
  using K = ExprNode::Kind;
  if (!mentions_t(n)) return RationalFunction(eval_valued(n));
  switch (n.kind) {
    case K::T: return RationalFunction::t();
    case K::Add: return eval_function(*n.lhs) + eval_function(*n.rhs);
    case K::Sub: return eval_function(*n.lhs) - eval_function(*n.rhs);
    case K::Mul: return eval_function(*n.lhs) * eval_function(*n.rhs);
    case K::Div: return eval_function(*n.lhs) / eval_function(*n.rhs);
    case K::Neg: return -eval_function(*n.lhs);
    case K::Pow: return eval_function(*n.lhs).pow(integral_exponent(n));
    default: break;
  }
  return {};
}

inline void collect_factors(const ExprNode& n, long sign, FactoredFunction& out) {
  using K = ExprNode::Kind;
  if (!mentions_t(n)) {
    ValuedElement c = eval_valued(n);
    if (c.is_zero()) throw DomainError(ErrorCode::InvalidArgument, "factored function must be nonzero");
    out.multiply_content(sign > 0 ? c : c.inverse());
    return;
  }
  switch (n.kind) {
    case K::Mul:
      collect_factors(*n.lhs, sign, out);
      collect_factors(*n.rhs, sign, out);
      return;
    case K::Div:
      collect_factors(*n.lhs, sign, out);
      collect_factors(*n.rhs, -sign, out);
      return;
    case K::Neg:
      out.multiply_content(ValuedElement(-1));
      collect_factors(*n.lhs, sign, out);
      return;
    case K::Pow: {
      FactoredFunction inner;
      collect_factors(*n.lhs, 1, inner);
      FactoredFunction p = inner.pow(integral_exponent(n) * sign);
      out = out * p;
      return;
    }
    default: break;
  }
  // A linear factor a*t + b.
  RationalFunction f = eval_function(n);
  if (!f.is_polynomial() || f.numerator().degree() != 1)
    throw DomainError(ErrorCode::ParseError, "factor is not linear in t: " + f.str());
  ValuedElement a = f.numerator().coefficient(1);
  ValuedElement b = f.numerator().coefficient(0);
  ValuedElement root = -(b / a);
  if (sign > 0) {
    out.multiply_content(a);
    out.multiply_linear(root, 1);
  } else {
    out.multiply_content(a.inverse());
    out.multiply_linear(root, -1);
  }
}

}  // namespace detail

inline ValuedElement parse_valued(std::string_view text) {
  return detail::eval_valued(*detail::ExprParser(text).parse());
}

inline RationalFunction parse_function(std::string_view text) {
  return detail::eval_function(*detail::ExprParser(text).parse());
}

/// Parses a product of constants and linear factors, e.g.
/// "-432 * t * (t + 4/27)" or "-36 * (t - 1728)^-1".
inline FactoredFunction parse_factored(std::string_view text) {
  FactoredFunction out;
  detail::collect_factors(*detail::ExprParser(text).parse(), 1, out);
  return out;
}

}  // namespace tropell
