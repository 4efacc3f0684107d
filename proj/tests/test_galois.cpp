#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "tropell/tropell.hpp"

using namespace tropell;

namespace {

using RF = RationalFunction;

SkeletonTree example_tree() {
  return SkeletonTree({{ValuedElement(0), Rational(0)}, {ValuedElement(0), Rational(1)}}, {{0, 1, Rational(1)}});
}
WeierstrassEquation example_curve() { return {{RF(), RF(1), RF(), RF(), RF::t()}}; }

// Brute-force count of 2x2 matrices over Z/N with determinant 1.
long count_sl2(long n) {
  long c = 0;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long cc = 0; cc < n; ++cc)
        for (long d = 0; d < n; ++d)
          if (((a * d - b * cc) % n + n) % n == 1 % n) ++c;
  return c;
}

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << error_name(code);
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

Sl2Matrix random_sl2(std::mt19937& rng, long p) {
  std::uniform_int_distribution<long> d(0, p - 1);
  for (;;) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (((a * e - b * c) % p + p) % p == 1) return Sl2Matrix(a, b, c, e, p);
  }
}

}  // namespace

TEST(Sl2, Orders) {
  EXPECT_EQ(sl2_order(2), 6);
  EXPECT_EQ(sl2_order(3), 24);
  EXPECT_EQ(sl2_order(5), 120);
  EXPECT_EQ(psl2_order(5), 60);
  for (long n = 2; n <= 12; ++n) EXPECT_EQ(sl2_order(n), count_sl2(n)) << n;
}

TEST(Sl2, MatrixValidation) {
  expect_error(ErrorCode::InvalidArgument, [] { Sl2Matrix(1, 1, 1, 1, 5); });
  expect_error(ErrorCode::InvalidArgument, [] { Sl2Matrix(1, 0, 0, 1, 1); });
  Sl2Matrix m(6, -1, 1, 0, 5);
  EXPECT_EQ(m.a(), 1);
  EXPECT_EQ(m.b(), 4);
  EXPECT_EQ(m * m.inverse(), Sl2Matrix::identity(5));
}

TEST(Sl2, GenerateSubgroup) {
  EXPECT_EQ(generate_subgroup({Sl2Matrix::identity(5)}).size(), 1u);
  auto full = generate_subgroup({Sl2Matrix::upper_transvection(5), Sl2Matrix::lower_transvection(5)});
  EXPECT_EQ(full.size(), 120u);
  auto cyclic = generate_subgroup({Sl2Matrix::upper_transvection(3)});
  EXPECT_EQ(cyclic.size(), 3u);
  std::set<Sl2Matrix> powers;
  for (long k = 0; k < 3; ++k) powers.insert(Sl2Matrix::upper_transvection(3).pow(k));
  EXPECT_EQ(cyclic, powers);
  expect_error(ErrorCode::CapExceeded,
               [] { generate_subgroup({Sl2Matrix::upper_transvection(5), Sl2Matrix::lower_transvection(5)}, 50); });
}

TEST(Sl2, SubgroupClosureAndLagrange) {
  std::mt19937 rng(1);
  for (long p : {3L, 5L, 7L}) {
    for (int i = 0; i < 5; ++i) {
      auto group = generate_subgroup({random_sl2(rng, p)});
      for (const auto& x : group) {
        ASSERT_TRUE(group.count(x.inverse()));
        for (const auto& y : group) ASSERT_TRUE(group.count(x * y));
      }
      ASSERT_EQ(sl2_order(p) % static_cast<long>(group.size()), 0);
    }
  }
}

TEST(Sl2, Transvections) {
  EXPECT_TRUE(is_transvection(Sl2Matrix::upper_transvection(5)));
  EXPECT_EQ(fixed_line(Sl2Matrix::upper_transvection(5)), (ProjectivePoint{1, 0}));
  EXPECT_FALSE(is_transvection(Sl2Matrix::identity(5)));
  EXPECT_TRUE(is_transvection(Sl2Matrix::lower_transvection(5)));
  EXPECT_EQ(fixed_line(Sl2Matrix::lower_transvection(5)), (ProjectivePoint{0, 1}));
  expect_error(ErrorCode::NotTransvection, [] { fixed_line(Sl2Matrix::identity(5)); });
  expect_error(ErrorCode::NotTransvection, [] { fixed_line(Sl2Matrix(0, -1, 1, 0, 5)); });
  expect_error(ErrorCode::InvalidArgument, [] { is_transvection(Sl2Matrix::identity(6)); });
}

TEST(Sl2, TransvectionCountOracle) {
  // Transvections of SL_2(F_p) number p^2 - 1; count by brute force.
  for (long p : {3L, 5L, 7L}) {
    long count = 0;
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b)
        for (long c = 0; c < p; ++c)
          for (long d = 0; d < p; ++d)
            if (((a * d - b * c) % p + p) % p == 1 && is_transvection(Sl2Matrix(a, b, c, d, p))) ++count;
    EXPECT_EQ(count, p * p - 1) << p;
  }
}

TEST(Sl2, Surjectivity) {
  const Sl2Matrix tau = Sl2Matrix::upper_transvection(7);
  EXPECT_FALSE(check_surjectivity({tau, tau * tau}));
  EXPECT_FALSE(check_surjectivity({tau}));
  EXPECT_TRUE(check_surjectivity({tau, Sl2Matrix::lower_transvection(7)}));
  EXPECT_EQ(generate_subgroup({tau, Sl2Matrix::lower_transvection(7)}).size(), 336u);
}

TEST(Sl2, ConjugationCovariance) {
  std::mt19937 rng(42);
  for (long p : {3L, 5L, 7L}) {
    const Sl2Matrix tau = Sl2Matrix::upper_transvection(p);
    for (int i = 0; i < 50; ++i) {
      Sl2Matrix g = random_sl2(rng, p);
      Sl2Matrix m = g * tau * g.inverse();
      ASSERT_TRUE(is_transvection(m));
      ASSERT_EQ(fixed_line(m), act(g, fixed_line(tau)));
    }
  }
}

TEST(Sl2, H0H1) {
  EXPECT_EQ(subgroup_h0(5).size(), 20u);
  EXPECT_EQ(subgroup_h1(5).size(), 10u);
  auto h0 = subgroup_h0(7);
  std::set<Sl2Matrix> as_set(h0.begin(), h0.end());
  EXPECT_EQ(generate_subgroup(h0), as_set);
}

TEST(Inertia, Chains) {
  EXPECT_EQ(inertia_chain(4, 4).orders, (std::vector<long>{4, 2, 4}));
  EXPECT_EQ(inertia_chain(5, 1).orders, (std::vector<long>{1, 1, 1, 1}));
  EXPECT_EQ(inertia_chain(6, 4).orders, (std::vector<long>{4, 2, 4, 1, 4}));
  expect_error(ErrorCode::InvalidArgument, [] { inertia_chain(0, 3); });
  for (long m = 2; m <= 12; ++m) {
    auto c = inertia_chain(m, m);
    for (long i = 1; i < m; ++i) {
      if (std::gcd(i, m) == 1) {
        ASSERT_EQ(c.orders[i - 1], m);
      }
      ASSERT_EQ(c.orders[i - 1], c.orders[m - i - 1]);
    }
  }
}

TEST(Fiber, Predictions) {
  FiberQuery good;
  good.reduction = ReductionKind::Good;
  good.group_order = 24;
  EXPECT_EQ(predict_edge_fiber(good), (EdgeFiber{24, 1}));
  good.torsion_level = 10;
  good.residue = ResidueConfig{5};
  expect_error(ErrorCode::HypothesisViolated, [&] { predict_edge_fiber(good); });

  FiberQuery mult;
  mult.reduction = ReductionKind::Multiplicative;
  mult.group_order = 24;
  mult.ell = 3;
  mult.delta_j = 1;
  mult.length = 3;
  EXPECT_EQ(predict_edge_fiber(mult), (EdgeFiber{8, 1}));
  mult.delta_j = 3;
  expect_error(ErrorCode::HypothesisViolated, [&] { predict_edge_fiber(mult); });
  mult.delta_j = 1;
  mult.ell = 2;
  expect_error(ErrorCode::HypothesisViolated, [&] { predict_edge_fiber(mult); });
  mult.ell = 5;
  expect_error(ErrorCode::HypothesisViolated, [&] { predict_edge_fiber(mult); });
  mult.ell = 3;
  mult.residue = ResidueConfig{7};
  mult.group_order = 42;
  expect_error(ErrorCode::HypothesisViolated, [&] { predict_edge_fiber(mult); });
  mult.image_order = 6;
  EXPECT_EQ(predict_edge_fiber(mult), (EdgeFiber{14, 1}));

  FiberQuery additive;
  additive.reduction = ReductionKind::Additive;
  expect_error(ErrorCode::HypothesisViolated, [&] { predict_edge_fiber(additive); });
}

TEST(TransvectionCheck, WorkedExample) {
  TransvectionCertificate c = transvection_check(example_curve(), example_tree(), 0, 5, Integer(24), ResidueConfig{7});
  EXPECT_TRUE(c.verdict);
  EXPECT_EQ(c.delta, 1);
  EXPECT_EQ(c.reduction, ReductionKind::Multiplicative);
  ASSERT_TRUE(c.matrix);
  EXPECT_EQ(*c.matrix, Sl2Matrix::upper_transvection(5));
  EXPECT_FALSE(c.predicted_fiber);
  TransvectionCertificate with_fiber = transvection_check(example_curve(), example_tree(), 0, 5, Integer(120));
  ASSERT_TRUE(with_fiber.predicted_fiber);
  EXPECT_EQ(*with_fiber.predicted_fiber, (EdgeFiber{24, Rational(1, 5)}));
}

TEST(TransvectionCheck, EllDividesDelta) {
  // y^2 = x^3 + x^2 + t^5 has phi_j slope 5 on the edge.
  WeierstrassEquation w{{RF(), RF(1), RF(), RF(), RF::t().pow(5)}};
  TransvectionCertificate c = transvection_check(w, example_tree(), 0, 5, Integer(24));
  EXPECT_EQ(c.delta, 5);
  EXPECT_FALSE(c.verdict);
  EXPECT_FALSE(c.matrix);
}

TEST(TransvectionCheck, GoodEdge) {
  WeierstrassEquation w = WeierstrassEquation::short_form(RF(-1), RF(1));
  TransvectionCertificate c = transvection_check(w, example_tree(), 0, 5, Integer(24));
  EXPECT_EQ(c.reduction, ReductionKind::Good);
  EXPECT_FALSE(c.verdict);
}

TEST(TransvectionCheck, StableUnderRelabellingAndSubdivision) {
  SkeletonTree swapped({{ValuedElement(0), Rational(1)}, {ValuedElement(0), Rational(0)}}, {{1, 0, Rational(1)}});
  EXPECT_TRUE(transvection_check(example_curve(), swapped, 0, 5, Integer(24)).verdict);
  // Slopes survive subdivision.
  RegularizedTree reg = regularize(example_tree(), 2);
  for (std::size_t e : reg.chain_edges[0]) {
    TransvectionCertificate c = transvection_check(example_curve(), reg.tree, e, 5, Integer(24));
    EXPECT_EQ(c.delta, 1);
    EXPECT_TRUE(c.verdict);
  }
}

TEST(Tate, ParameterValuation) {
  LaplacianFunction phi{{Rational(-1), Rational(-12), Rational(0)}};
  EXPECT_EQ(tate_parameter_valuation(phi, 0), 1);
  EXPECT_EQ(tate_parameter_valuation(phi, 1), 12);
  expect_error(ErrorCode::NotNonIntegralJ, [&] { tate_parameter_valuation(phi, 2); });
}

TEST(Hasse, Invariant) {
  // y^2 = x^3 - 27 c4 x - 54 c6 has invariants 6^4 c4 and 6^6 c6.
  RF c4 = parse_function("t + 1"), c6 = parse_function("t - 2");
  WeierstrassEquation w = WeierstrassEquation::short_form(RF(-27) * c4, RF(-54) * c6);
  const Invariants inv = invariants(w);
  EXPECT_EQ(inv.c4, RF(1296) * c4);
  EXPECT_EQ(inv.c6, RF(46656) * c6);
  EXPECT_EQ(hasse_invariant(w), -(c4 / c6) / RF(36));
  expect_error(ErrorCode::UndefinedHasse, [] { hasse_invariant(WeierstrassEquation::short_form(RF(1), RF())); });
  expect_error(ErrorCode::UndefinedHasse, [] { hasse_invariant(WeierstrassEquation::short_form(RF(), RF(1))); });
}

TEST(Hasse, QuadraticTwistParity) {
  // Scaling by u multiplies gamma' by u^2, so valuation parity is preserved.
  const SkeletonTree tree = example_tree();
  RF c4 = parse_function("t + 1"), c6 = parse_function("t - 2");
  WeierstrassEquation w = WeierstrassEquation::short_form(RF(-27) * c4, RF(-54) * c6);
  WeierstrassEquation twisted = transform(w, WeierstrassTransform::scaling(parse_function("pi*t")));
  EXPECT_EQ(hasse_invariant(twisted), hasse_invariant(w) * parse_function("pi*t").pow(2));
  EXPECT_EQ(hasse_valuation_parity(w, tree), hasse_valuation_parity(twisted, tree));
}

TEST(DivisionPolynomial, SmallCases) {
  auto two = division_polynomial(WeierstrassEquation::short_form(RF(), RF(1)), 2);
  EXPECT_EQ(two, (std::vector<RF>{RF(1), RF(), RF(), RF(1)}));
  auto three = division_polynomial(WeierstrassEquation::short_form(RF(), RF(1)), 3);
  EXPECT_EQ(three, (std::vector<RF>{RF(), RF(12), RF(), RF(), RF(3)}));
  auto three_a = division_polynomial(WeierstrassEquation::short_form(RF(1), RF()), 3);
  EXPECT_EQ(three_a, (std::vector<RF>{RF(-1), RF(), RF(6), RF(), RF(3)}));
  expect_error(ErrorCode::ResidueCharUnsupported,
               [] { division_polynomial(WeierstrassEquation{{RF(1), RF(), RF(), RF(), RF(1)}}, 2, ResidueConfig{3}); });
  expect_error(ErrorCode::InvalidArgument, [] { division_polynomial(WeierstrassEquation::short_form(RF(1), RF(1)), 4); });
}

TEST(DivisionPolynomial, ThreeTorsionRoots) {
  // For y^2 = x^3 + 1, x = 0 and x^3 = -4 are the 3-torsion abscissae.
  auto psi = division_polynomial(WeierstrassEquation::short_form(RF(), RF(1)), 3);
  auto eval = [&](const Rational& x) {
    Rational s = 0, p = 1;
    for (const auto& c : psi) {
      s += c.evaluate(ValuedElement(0)).as_rational() * p;
      p *= x;
    }
    return s;
  };
  EXPECT_EQ(eval(0), 0);
  EXPECT_NE(eval(1), 0);
}
