#pragma once

// Weierstrass equations y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over
// K(t), their standard invariants, coordinate changes
//     x = u^2 x' + r,   y = u^3 y' + s u^2 x' + t,
// and minimality at the vertices of a skeleton.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropell/linalg.hpp"
#include "tropell/skeleton.hpp"

namespace tropell {

struct WeierstrassEquation {
  // a1, a2, a3, a4, a6
  std::array<RationalFunction, 5> a;

  const RationalFunction& a1() const { return a[0]; }
  const RationalFunction& a2() const { return a[1]; }
  const RationalFunction& a3() const { return a[2]; }
  const RationalFunction& a4() const { return a[3]; }
  const RationalFunction& a6() const { return a[4]; }

  static WeierstrassEquation short_form(const RationalFunction& A, const RationalFunction& B) {
    return {{RationalFunction(), RationalFunction(), RationalFunction(), A, B}};
  }

  bool is_short() const { return a1().is_zero() && a2().is_zero() && a3().is_zero(); }

  friend bool operator==(const WeierstrassEquation&, const WeierstrassEquation&) = default;
};

/// Weights of a1, a2, a3, a4, a6 under u-scaling.
inline constexpr std::array<long, 5> kCoefficientWeights{1, 2, 3, 4, 6};

struct Invariants {
  RationalFunction b2, b4, b6, b8, c4, c6, discriminant;

  /// j = c4^3 / Delta.
  RationalFunction j() const { return c4.pow(3) / discriminant; }
};

namespace detail {
// b2, b4, b6, b8, c4, c6, Delta from a1..a6 over any commutative ring.
template <class F>
std::array<F, 7> invariant_formulas(const F& a1, const F& a2, const F& a3, const F& a4, const F& a6) {
  const F b2 = a1 * a1 + F(4) * a2;
  const F b4 = F(2) * a4 + a1 * a3;
  const F b6 = a3 * a3 + F(4) * a6;
  const F b8 = a1 * a1 * a6 + F(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  const F c4 = b2 * b2 - F(24) * b4;
  const F c6 = -(b2 * b2 * b2) + F(36) * b2 * b4 - F(216) * b6;
  const F disc = -(b2 * b2 * b8) - F(8) * b4 * b4 * b4 - F(27) * b6 * b6 + F(9) * b2 * b4 * b6;
  return {b2, b4, b6, b8, c4, c6, disc};
}

// Images of rational functions under pi^(1/d) -> 2, t -> t0 for the first
// t0 in a fixed list where none of them has a pole; nullopt if none works.
inline std::optional<std::vector<Rational>> specialize_all(const std::vector<const RationalFunction*>& fs) {
  Integer d = 1;
  for (const auto* f : fs)
    for (const auto* p : {&f->numerator(), &f->denominator()})
      for (const auto& c : p->coefficients()) {
        for (const auto& [k, x] : c.numerator_terms()) d = lcm_of(d, Integer(k.get_den()));
        for (const auto& [k, x] : c.denominator_terms()) d = lcm_of(d, Integer(k.get_den()));
      }
  auto eval = [&](const Polynomial& p, const Rational& t0) -> std::optional<Rational> {
    Rational acc = 0;
    const auto& cs = p.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      auto c = it->specialize(Integer(2), d);
      if (!c) return std::nullopt;
      acc = acc * t0 + *c;
    }
    return acc;
  };
  for (long t0 : {3L, -5L, 7L, 11L, -13L}) {
    std::vector<Rational> out;
    for (const auto* f : fs) {
      auto n = eval(f->numerator(), Rational(t0));
      auto m = eval(f->denominator(), Rational(t0));
      if (!n || !m || *m == 0) break;
      out.push_back(*n / *m);
    }
    if (out.size() == fs.size()) return out;
  }
  return std::nullopt;
}
}  // namespace detail

inline Invariants invariants(const WeierstrassEquation& w) {
  const auto v = detail::invariant_formulas(w.a1(), w.a2(), w.a3(), w.a4(), w.a6());
  Invariants inv{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
  if (inv.discriminant.is_zero()) throw DomainError(ErrorCode::SingularCurve, "discriminant vanishes");
  // Cross-check the arithmetic in K(t) against the same formulas over Q at a
  // specialisation, including c4^3 - c6^2 = 1728 Delta.
  if (auto x = detail::specialize_all({&w.a[0], &w.a[1], &w.a[2], &w.a[3], &w.a[4], &inv.c4, &inv.c6,
                                       &inv.discriminant})) {
    const auto& q = *x;
    const auto e = detail::invariant_formulas(q[0], q[1], q[2], q[3], q[4]);
    ensure(e[4] == q[5] && e[5] == q[6] && e[6] == q[7], "invariants disagree with their specialisation");
    ensure(e[4] * e[4] * e[4] - e[5] * e[5] == 1728 * e[6], "c4^3 - c6^2 != 1728 Delta");
  }
  return inv;
}

struct WeierstrassTransform {
  RationalFunction u{1}, r, s, t;

  static WeierstrassTransform identity() { return {}; }
  static WeierstrassTransform scaling(const RationalFunction& u) { return {u, {}, {}, {}}; }

  WeierstrassTransform inverse() const {
    RationalFunction ui = u.inverse();
    return {ui, -(r * ui * ui), -(s * ui), (r * s - t) * ui.pow(3)};
  }

  /// First apply *this, then `next` (coordinates of *this's output).
  WeierstrassTransform then(const WeierstrassTransform& next) const {
    // x = u^2 (U^2 x'' + R) + r, y = u^3 (U^3 y'' + S U^2 x'' + T) + s u^2 (U^2 x'' + R) + t
    RationalFunction u2 = u * u;
    return {u * next.u, u2 * next.r + r, u * next.s + s, u2 * u * next.t + s * u2 * next.r + t};
  }
};

inline WeierstrassEquation transform(const WeierstrassEquation& w, const WeierstrassTransform& tr) {
  if (tr.u.is_zero()) throw DomainError(ErrorCode::InvalidArgument, "transform with u = 0");
  const auto &a1 = w.a1(), &a2 = w.a2(), &a3 = w.a3(), &a4 = w.a4(), &a6 = w.a6();
  const auto &r = tr.r, &s = tr.s, &t = tr.t;
  const RationalFunction ui = tr.u.inverse();
  const RationalFunction two(2), three(3);
  WeierstrassEquation out;
  out.a[0] = (a1 + two * s) * ui;
  out.a[1] = (a2 - s * a1 + three * r - s * s) * ui.pow(2);
  out.a[2] = (a3 + r * a1 + two * t) * ui.pow(3);
  out.a[3] = (a4 - s * a3 + two * r * a2 - (t + r * s) * a1 + three * r * r - two * s * t) * ui.pow(4);
  out.a[4] = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui.pow(6);
  // u^4 c4' = c4, u^6 c6' = c6, u^12 Delta' = Delta, checked at a specialisation.
  std::vector<const RationalFunction*> fs{&tr.u};
  for (const auto& a : w.a) fs.push_back(&a);
  for (const auto& a : out.a) fs.push_back(&a);
  if (auto x = detail::specialize_all(fs)) {
    const auto& q = *x;
    const auto before = detail::invariant_formulas(q[1], q[2], q[3], q[4], q[5]);
    const auto after = detail::invariant_formulas(q[6], q[7], q[8], q[9], q[10]);
    const Rational u2 = q[0] * q[0], u4 = u2 * u2, u6 = u4 * u2;
    ensure(u4 * after[4] == before[4], "u^4 c4' != c4");
    ensure(u6 * after[5] == before[5], "u^6 c6' != c6");
    ensure(u6 * u6 * after[6] == before[6], "u^12 Delta' != Delta");
  }
  return out;
}

/// Completing the square and the cube: y^2 = x^3 - (c4/48) x - c6/864.
/// Requires 6 to be invertible on the residue field.
inline WeierstrassTransform short_form_transform(const WeierstrassEquation& w, const ResidueConfig& residue) {
  residue.require_supported();
  const Invariants inv = invariants(w);
  WeierstrassTransform tr;
  tr.r = -(inv.b2 / RationalFunction(12));
  tr.s = -(w.a1() / RationalFunction(2));
  tr.t = -(w.a1() * tr.r / RationalFunction(2)) - w.a3() / RationalFunction(2);
  return tr;
}

// ---------------------------------------------------------------------------
// Vertical profiles

struct VerticalProfile {
  std::optional<LaplacianFunction> c4;  // nullopt when c4 = 0 (phi = +inf)
  std::optional<LaplacianFunction> c6;
  LaplacianFunction discriminant;
  std::optional<LaplacianFunction> j;  // nullopt when j = 0
};

namespace detail {
inline std::optional<LaplacianFunction> checked_profile(const SkeletonTree& tree, const MetricGraph& g,
                                                        const RationalFunction& f, const char* name) {
  auto phi = valuation_profile(tree, f);
  if (!phi) return phi;
  GraphDivisor rho = specialize_divisor(tree, f);
  ensure(laplacian_apply(g, *phi) == rho, std::string("Laplacian of phi_") + name + " differs from rho(div)");
  return phi;
}
}  // namespace detail

/// phi_f for c4, c6, Delta and j, each checked against Delta(phi_f) = rho(div f).
inline VerticalProfile vertical_profile(const WeierstrassEquation& w, const SkeletonTree& tree) {
  const Invariants inv = invariants(w);
  const MetricGraph g = tree.metric_graph();
  VerticalProfile p;
  p.c4 = detail::checked_profile(tree, g, inv.c4, "c4");
  p.c6 = detail::checked_profile(tree, g, inv.c6, "c6");
  p.discriminant = *detail::checked_profile(tree, g, inv.discriminant, "Delta");
  p.j = detail::checked_profile(tree, g, inv.j(), "j");
  return p;
}

// ---------------------------------------------------------------------------
// Minimality

struct VertexMinimality {
  std::size_t vertex = 0;
  Valuation v_c4, v_c6, v_discriminant;
  Rational kappa;                  // twist exponent
  Rational minimal_discriminant;   // d = v(Delta) - 12 kappa
  bool integral = false;           // v(a_i) >= 0 for all i
};

struct MinimalityReport {
  long lattice = 1;
  std::vector<VertexMinimality> vertices;

  const VertexMinimality& at(std::size_t v) const {
    for (const auto& m : vertices)
      if (m.vertex == v) return m;
    throw DomainError(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " not in report");
  }
};

namespace detail {
inline std::vector<std::size_t> resolve_support(const SkeletonTree& tree, const std::set<std::size_t>& support) {
  std::vector<std::size_t> out;
  if (support.empty()) {
    for (std::size_t v = 0; v < tree.vertex_count(); ++v) out.push_back(v);
    return out;
  }
  for (std::size_t v : support) {
    if (v >= tree.vertex_count()) throw DomainError(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
    out.push_back(v);
  }
  return out;
}

inline VertexMinimality vertex_minimality(const WeierstrassEquation& w, const Invariants& inv, const DiskVertex& d,
                                          std::size_t id, long lattice) {
  VertexMinimality m;
  m.vertex = id;
  m.v_c4 = gauss_valuation(d, inv.c4);
  m.v_c6 = gauss_valuation(d, inv.c6);
  m.v_discriminant = gauss_valuation(d, inv.discriminant);
  Rational bound = m.v_discriminant.value() / 12;
  if (m.v_c4.is_finite()) bound = std::min(bound, Rational(m.v_c4.value() / 4));
  if (m.v_c6.is_finite()) bound = std::min(bound, Rational(m.v_c6.value() / 6));
  m.kappa = floor_to_lattice(bound, lattice);
  m.minimal_discriminant = m.v_discriminant.value() - 12 * m.kappa;
  m.integral = true;
  for (const auto& ai : w.a)
    if (gauss_valuation(d, ai) < Valuation(0)) m.integral = false;
  return m;
}
}  // namespace detail

/// kappa_z = floor(min(v(c4)/4, v(c6)/6, v(Delta)/12)) on the value lattice
/// and d_z = v(Delta) - 12 kappa_z, per vertex of `support` (all if empty).
inline MinimalityReport minimality_report(const WeierstrassEquation& w, const SkeletonTree& tree,
                                          const ResidueConfig& residue = {},
                                          const std::set<std::size_t>& support = {}) {
  residue.require_supported();
  const Invariants inv = invariants(w);
  MinimalityReport rep;
  rep.lattice = tree.lattice();
  for (std::size_t v : detail::resolve_support(tree, support))
    rep.vertices.push_back(detail::vertex_minimality(w, inv, tree.vertex(v), v, tree.lattice()));
  for (const auto& m : rep.vertices) ensure(m.minimal_discriminant >= 0, "negative minimal discriminant");
  return rep;
}

/// Points of K whose linear factors (t - p) give enough freedom to prescribe
/// valuations at every vertex: the vertex centres, plus for each vertex a
/// point retracting exactly onto it.
inline std::vector<ValuedElement> twist_center_pool(const SkeletonTree& tree) {
  std::vector<ValuedElement> pool;
  auto add = [&](const ValuedElement& x) {
    for (const auto& p : pool)
      if (p == x) return;
    pool.push_back(x);
  };
  for (const auto& d : tree.vertices()) add(d.center);
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const DiskVertex& d = tree.vertex(v);
    for (long lambda = 1;; ++lambda) {
      ValuedElement x = d.center + ValuedElement::monomial(Rational(lambda), d.radius);
      TreePoint p = retract_point(tree, x);
      if (p.is_vertex() && p.vertex == v) {
        add(x);
        break;
      }
    }
  }
  return pool;
}

struct SMinimalTwist {
  WeierstrassTransform transform;   // apply to the input equation
  FactoredFunction scaling;         // the u of the scaling step
  bool short_form_first = false;    // whether (r, s, t) complete the square/cube first
  std::vector<std::size_t> support;
};

/// Finds u = pi^e0 * prod (t - p_i)^e_i with v_z(u) = kappa_z on the support
/// by an exact integer solve; TwistInfeasible when the pool cannot realise it.
inline FactoredFunction solve_twist_scaling(const SkeletonTree& tree, const std::vector<std::size_t>& support,
                                            const std::vector<Rational>& kappa) {
  const std::vector<ValuedElement> pool = twist_center_pool(tree);
  const long n = tree.lattice();
  // Row z: e0'/n + sum_i e_i * min(v(p_i - c_z), r_z) = kappa_z.
  linalg::Matrix<Rational> rows;
  for (std::size_t z : support) {
    const DiskVertex& d = tree.vertex(z);
    std::vector<Rational> row{Rational(1, n)};
    for (const auto& p : pool) {
      Valuation dist = (p - d.center).valuation();
      row.push_back(dist.is_infinite() || dist.value() > d.radius ? d.radius : dist.value());
    }
    rows.push_back(std::move(row));
  }
  Integer scale = 1;
  for (const auto& row : rows)
    for (const auto& x : row) scale = lcm_of(scale, Integer(x.get_den()));
  for (const auto& k : kappa) scale = lcm_of(scale, Integer(k.get_den()));
  linalg::Matrix<Integer> a;
  std::vector<Integer> b;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Integer> row;
    for (const auto& x : rows[i]) row.push_back(Rational(x * scale).get_num());
    a.push_back(std::move(row));
    b.push_back(Rational(kappa[i] * scale).get_num());
  }
  auto sol = linalg::solve_integer(a, b);
  if (!sol) throw DomainError(ErrorCode::TwistInfeasible, "no twist over the available centres realises kappa");
  FactoredFunction u(ValuedElement::pi_power(Rational((*sol)[0], Integer(n))));
  for (std::size_t i = 0; i < pool.size(); ++i) u.multiply_linear(pool[i], (*sol)[i + 1].get_si());
  return u;
}

/// A transform making W integral and minimal at every vertex of S (all
/// vertices when S is empty). Uses a pure scaling (u, 0, 0, 0) when that keeps
/// every a_i integral, and completes the square and cube first otherwise.
inline SMinimalTwist construct_s_minimal_twist(const WeierstrassEquation& w, const SkeletonTree& tree,
                                               const std::set<std::size_t>& s, const ResidueConfig& residue = {}) {
  residue.require_supported();
  SMinimalTwist out;
  out.support = detail::resolve_support(tree, s);
  const MinimalityReport rep = minimality_report(w, tree, residue, s);
  std::vector<Rational> kappa;
  for (const auto& m : rep.vertices) kappa.push_back(m.kappa);

  bool scaling_suffices = true;
  for (const auto& m : rep.vertices) {
    const DiskVertex& d = tree.vertex(m.vertex);
    for (std::size_t i = 0; i < 5; ++i)
      if (gauss_valuation(d, w.a[i]) < Valuation(Rational(m.kappa * kCoefficientWeights[i]))) scaling_suffices = false;
  }
  WeierstrassTransform pre;
  if (!scaling_suffices) {
    pre = short_form_transform(w, residue);
    out.short_form_first = true;
  }
  bool trivial = std::all_of(kappa.begin(), kappa.end(), [](const Rational& k) { return k == 0; });
  out.scaling = trivial ? FactoredFunction() : solve_twist_scaling(tree, out.support, kappa);
  out.transform = pre.then(WeierstrassTransform::scaling(out.scaling.to_rational_function()));

  // Post-check: integral and kappa' = 0 on S.
  const WeierstrassEquation twisted = transform(w, out.transform);
  const MinimalityReport after = minimality_report(twisted, tree, residue, s);
  for (std::size_t i = 0; i < after.vertices.size(); ++i) {
    ensure(after.vertices[i].kappa == 0, "twisted model still has nonzero kappa");
    ensure(after.vertices[i].integral, "twisted model is not integral");
    ensure(after.vertices[i].minimal_discriminant == rep.vertices[i].minimal_discriminant,
           "minimal discriminant changed under twist");
  }
  return out;
}

}  // namespace tropell
