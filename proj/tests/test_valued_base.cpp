#include <gtest/gtest.h>

#include <random>

#include "tropell/tropell.hpp"

using namespace tropell;

namespace {

ValuedElement pi_pow(long k) { return ValuedElement::pi_power(Rational(k)); }

// Bounded-support random Laurent polynomial: up to three terms, exponents in
// [-3, 3], small numerators and denominators.
ValuedElement random_element(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(0, 3), exp(-3, 3), num(-9, 9), den(1, 4);
  ValuedElement x;
  for (int i = count(rng); i > 0; --i) x = x + ValuedElement::monomial(make_rational(num(rng), den(rng)), Rational(exp(rng)));
  return x;
}

// Independent oracle: valuation of a Laurent polynomial is the smallest
// exponent carrying a nonzero coefficient in its term expansion.
Valuation min_exponent(const ValuedElement& x) {
  const auto& terms = x.numerator_terms();
  for (const auto& [k, c] : terms)
    if (c != 0) return Valuation(k);
  return Valuation::infinity();
}

}  // namespace

TEST(ValuedElement, PiTimesInverseIsOne) { EXPECT_EQ(ValuedElement::pi() * pi_pow(-1), ValuedElement::one()); }

TEST(ValuedElement, ValuationIsMinimalExponent) {
  EXPECT_EQ((pi_pow(3) + pi_pow(5)).valuation(), Valuation(3));
  EXPECT_EQ(ValuedElement::pi().valuation(), Valuation(1));
  EXPECT_EQ(ValuedElement(7).valuation(), Valuation(0));
  EXPECT_TRUE(ValuedElement::zero().valuation().is_infinite());
}

TEST(ValuedElement, HandMultiplication) {
  // (2 pi + pi^2)(-1/2 pi^-1) = -1 - 1/2 pi, expanded term by term.
  ValuedElement lhs = (ValuedElement(2) * ValuedElement::pi() + pi_pow(2)) *
                      ValuedElement::monomial(Rational(-1, 2), Rational(-1));
  ValuedElement rhs = ValuedElement(-1) + ValuedElement::monomial(Rational(-1, 2), Rational(1));
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs.str(), "-1 - 1/2*pi");
}

TEST(ValuedElement, DivisionByZeroThrows) {
  try {
    (void)ValuedElement::zero().inverse();
    FAIL() << "expected DivisionByZero";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(ValuedElement, FractionsReduceToLaurentWhenPossible) {
  ValuedElement a = pi_pow(2) - ValuedElement(1);
  ValuedElement b = ValuedElement::pi() - ValuedElement(1);
  EXPECT_EQ(a / b, ValuedElement::pi() + ValuedElement(1));
  // 1/(1 + pi) is a unit but not a Laurent polynomial.
  ValuedElement u = (ValuedElement(1) + ValuedElement::pi()).inverse();
  EXPECT_FALSE(u.is_laurent());
  EXPECT_EQ(u.valuation(), Valuation(0));
  EXPECT_EQ(u * (ValuedElement(1) + ValuedElement::pi()), ValuedElement::one());
}

TEST(ValuedElement, FractionalExponents) {
  ValuedElement r = ValuedElement::pi_power(Rational(1, 2));
  EXPECT_EQ(r * r, ValuedElement::pi());
  EXPECT_EQ(r.valuation(), Valuation(Rational(1, 2)));
  EXPECT_EQ(r.str(), "pi^(1/2)");
}

TEST(ValuedElement, ParseAndPrintRoundTrip) {
  for (const char* text : {"0", "1", "-1 - 1/2*pi", "3/2*pi^-1", "pi^(1/2)", "7 + pi^3"}) {
    ValuedElement x = parse_valued(text);
    EXPECT_EQ(parse_valued(x.str()), x) << text;
  }
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    ValuedElement x = random_element(rng);
    EXPECT_EQ(parse_valued(x.str()), x) << x.str();
  }
}

TEST(ValuedElement, ParseErrors) {
  for (const char* bad : {"", "pi +", "2 ** 3", "(1", "x"}) {
    try {
      (void)parse_valued(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const DomainError& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(ValuedElement, UltrametricProperty) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    ValuedElement x = random_element(rng), y = random_element(rng);
    Valuation vx = min_exponent(x), vy = min_exponent(y);
    ASSERT_EQ(x.valuation(), vx);
    Valuation vs = (x + y).valuation();
    ASSERT_GE(vs, min_of(vx, vy));
    if (vx != vy) {
      ASSERT_EQ(vs, min_of(vx, vy));
    }
    if (vx.is_finite() && vy.is_finite()) {
      ASSERT_EQ((x * y).valuation(), vx + vy);
    }
  }
}

TEST(ValuedElement, RingAxioms) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    ValuedElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a - a, ValuedElement::zero());
    if (!a.is_zero()) {
      ASSERT_EQ(a * a.inverse(), ValuedElement::one());
    }
  }
}

TEST(ResidueConfig, Validation) {
  EXPECT_NO_THROW(ResidueConfig{0}.require_supported());
  EXPECT_NO_THROW(ResidueConfig{5}.require_supported());
  for (long p : {2L, 3L}) {
    try {
      ResidueConfig{p}.require_supported();
      ADD_FAILURE();
    } catch (const DomainError& e) {
      EXPECT_EQ(e.code(), ErrorCode::ResidueCharUnsupported);
    }
  }
  try {
    ResidueConfig{4}.require_supported();
    ADD_FAILURE();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Rational, ParseAndFloor) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(floor_to_lattice(Rational(5, 6), 3), Rational(2, 3));
  EXPECT_EQ(floor_to_lattice(Rational(-1, 6), 1), Rational(-1));
}

TEST(Polynomial, GaussValuationMatchesNewtonRoute) {
  // f = pi (t - pi)(t - 1)^2: Gauss valuation at (0, r) is 1 + min(1, r) + 2 min(0, r).
  Polynomial f = Polynomial::linear(ValuedElement::pi()) * Polynomial::linear(ValuedElement(1)).pow(2);
  f = f.scaled(ValuedElement::pi());
  for (long r = 0; r <= 3; ++r) {
    Rational expect = 1 + std::min<Rational>(1, r) + 2 * std::min<Rational>(0, r);
    EXPECT_EQ(f.gauss_valuation(ValuedElement(0), Rational(r)), Valuation(expect)) << r;
  }
  auto d = f.root_distances(ValuedElement(0));
  long total = 0;
  for (const auto& [dist, mult] : d) total += mult;
  EXPECT_EQ(total, 3);
}

TEST(RationalFunction, ArithmeticAndNormalization) {
  RationalFunction t = RationalFunction::t();
  RationalFunction f = (t * t - RationalFunction(1)) / (t - RationalFunction(1));
  EXPECT_EQ(f, t + RationalFunction(1));
  EXPECT_TRUE(f.is_polynomial());
  RationalFunction g = RationalFunction(1) / t;
  EXPECT_EQ(g * t, RationalFunction(1));
  EXPECT_EQ(parse_function("(t^2 - 1)/(t - 1)"), t + RationalFunction(1));
}
