#pragma once

// Consequences for Galois covers of the curve: inertia along subdivided
// edges, fibers above an edge, the transvection criterion, the Tate
// parameter, the Hasse invariant and small division polynomials.

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropell/reduction.hpp"
#include "tropell/sl2.hpp"

namespace tropell {

struct InertiaChain {
  long n = 1;
  long m = 1;
  std::vector<long> orders;  // orders[i - 1] = |I_{x_i}| for i = 1..n-1
};

/// Inertia orders of the points x_1..x_{n-1} cutting an edge of length n
/// whose endpoint has inertia group of order m.
inline InertiaChain inertia_chain(long n, long m) {
  if (n < 1 || m < 1) throw DomainError(ErrorCode::InvalidArgument, "inertia_chain needs n >= 1 and m >= 1");
  InertiaChain c{n, m, {}};
  for (long i = 1; i < n; ++i) c.orders.push_back(m / std::gcd(i, m));
  return c;
}

struct EdgeFiber {
  Integer count;
  Rational length;
  friend bool operator==(const EdgeFiber&, const EdgeFiber&) = default;
};

/// Inputs for predicting the edges above an edge e of the base graph.
struct FiberQuery {
  ReductionKind reduction = ReductionKind::Mixed;
  Integer group_order = 1;                // |G|
  std::optional<long> ell;                // torsion prime (multiplicative case)
  std::optional<Integer> delta_j;         // delta_e(phi_j)
  Rational length = 1;                    // l(e)
  std::optional<Integer> image_order;     // |rho_ell(G)|; defaults to |G| in the p-test
  std::optional<long> torsion_level;      // N for E[N] (good case)
  ResidueConfig residue;
};

inline EdgeFiber predict_edge_fiber(const FiberQuery& q) {
  auto violated = [](const std::string& m) { throw DomainError(ErrorCode::HypothesisViolated, m); };
  if (q.group_order < 1) throw DomainError(ErrorCode::InvalidArgument, "group order must be positive");
  if (q.length <= 0) throw DomainError(ErrorCode::InvalidArgument, "edge length must be positive");
  const long p = q.residue.residue_char;
  switch (q.reduction) {
    case ReductionKind::Good:
      if (q.torsion_level && p > 0 && *q.torsion_level % p == 0)
        violated("residue characteristic divides the torsion level");
      return {q.group_order, q.length};
    case ReductionKind::Multiplicative: {
      if (!q.ell) violated("multiplicative case needs the prime ell");
      const long l = *q.ell;
      if (!is_prime(l) || l < 3) violated("ell must be a prime >= 3");
      if (!q.delta_j) violated("multiplicative case needs delta_e(phi_j)");
      if (*q.delta_j % l == 0) violated("ell divides delta_e(phi_j)");
      const Integer& tested = q.image_order ? *q.image_order : q.group_order;
      if (p > 0 && tested % p == 0) violated("residue characteristic divides the image order");
      if (q.group_order % l != 0) violated("ell does not divide the group order");
      return {Integer(q.group_order / l), Rational(q.length / l)};
    }
    default:
      violated(std::string("no fiber prediction for ") + reduction_name(q.reduction) + " reduction");
  }
  return {};
}

struct TransvectionCertificate {
  std::size_t edge = 0;
  long ell = 0;
  Integer delta = 0;
  ReductionKind reduction = ReductionKind::Mixed;
  bool verdict = false;
  std::vector<std::string> failed;  // hypotheses that did not hold
  std::optional<Sl2Matrix> matrix;
  std::optional<EdgeFiber> predicted_fiber;
};

/// Evaluates the hypotheses of the transvection criterion on the open edge e.
/// The j-profile is read off the model minimal at both endpoints.
inline TransvectionCertificate transvection_check(const WeierstrassEquation& w, const SkeletonTree& tree,
                                                  std::size_t e, long ell, const Integer& group_order,
                                                  const ResidueConfig& residue = {},
                                                  std::optional<Integer> image_order = std::nullopt) {
  if (e >= tree.edge_count()) throw DomainError(ErrorCode::InvalidArgument, "edge out of range");
  SubgraphSelection open_edge;
  open_edge.edges.insert(e);
  TransvectionCertificate cert;
  cert.edge = e;
  cert.ell = ell;
  cert.reduction = classify(w, tree, open_edge, residue).kind;

  const MetricGraph g = tree.metric_graph();
  const auto phi_j = detail::checked_profile(tree, g, invariants(w).j(), "j");
  if (!phi_j) throw DomainError(ErrorCode::HypothesisViolated, "j vanishes identically");
  const Rational slope = edge_slope_abs(g, *phi_j, e);
  if (!is_integral(slope))
    throw DomainError(ErrorCode::HypothesisViolated, "delta_e(phi_j) = " + to_string(slope) + " is not integral");
  cert.delta = slope.get_num();

  const long p = residue.residue_char;
  const Integer& tested = image_order ? *image_order : group_order;
  if (cert.reduction != ReductionKind::Multiplicative) cert.failed.push_back("reduction on e is not multiplicative");
  if (ell < 3 || !is_prime(ell)) cert.failed.push_back("ell is not a prime >= 3");
  if (ell > 0 && cert.delta % ell == 0) cert.failed.push_back("ell divides delta_e(phi_j)");
  if (p > 0 && tested % p == 0) cert.failed.push_back("residue characteristic divides the image order");
  cert.verdict = cert.failed.empty();
  if (cert.verdict) {
    cert.matrix = Sl2Matrix::upper_transvection(ell);
    if (group_order % ell == 0) {
      FiberQuery q;
      q.reduction = ReductionKind::Multiplicative;
      q.group_order = group_order;
      q.ell = ell;
      q.delta_j = cert.delta;
      q.length = tree.edge(e).length;
      q.image_order = image_order;
      q.residue = residue;
      cert.predicted_fiber = predict_edge_fiber(q);
    }
  }
  return cert;
}

/// v(q) = -v(j) at a vertex where j is non-integral.
inline Rational tate_parameter_valuation(const LaplacianFunction& phi_j, std::size_t v) {
  if (v >= phi_j.values.size()) throw DomainError(ErrorCode::InvalidArgument, "vertex out of range");
  if (phi_j[v] >= 0)
    throw DomainError(ErrorCode::NotNonIntegralJ, "phi_j(" + std::to_string(v) + ") = " + to_string(phi_j[v]) + " >= 0");
  return -phi_j[v];
}

/// gamma' = -c4/c6.
inline RationalFunction hasse_invariant(const WeierstrassEquation& w) {
  const Invariants inv = invariants(w);
  if (inv.c6.is_zero()) throw DomainError(ErrorCode::UndefinedHasse, "c6 vanishes (j = 1728)");
  if (inv.c4.is_zero()) throw DomainError(ErrorCode::UndefinedHasse, "c4 vanishes (j = 0)");
  return -(inv.c4 / inv.c6);
}

/// Parity of v(gamma') at each vertex: a necessary condition for gamma' to
/// be a square there is that the value is even.
inline std::vector<bool> hasse_valuation_parity(const WeierstrassEquation& w, const SkeletonTree& tree) {
  const RationalFunction gamma = hasse_invariant(w);
  std::vector<bool> even;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    Rational val = gauss_valuation(tree.vertex(v), gamma).value();
    even.push_back(is_integral(val) && val.get_num() % 2 == 0);
  }
  return even;
}

/// Coefficients, constant term first, of the N-division polynomial of the
/// short form y^2 = x^3 + Ax + B (N = 2: the cubic itself).
inline std::vector<RationalFunction> division_polynomial(const WeierstrassEquation& w, long n,
                                                         const ResidueConfig& residue = {}) {
  if (n != 2 && n != 3) throw DomainError(ErrorCode::InvalidArgument, "division polynomial only for N = 2, 3");
  WeierstrassEquation s = w;
  if (!w.is_short()) s = transform(w, short_form_transform(w, residue));
  else residue.require_supported();
  const RationalFunction &A = s.a4(), &B = s.a6();
  if (n == 2) return {B, A, RationalFunction(), RationalFunction(1)};
  return {-(A * A), RationalFunction(12) * B, RationalFunction(6) * A, RationalFunction(), RationalFunction(3)};
}

}  // namespace tropell
