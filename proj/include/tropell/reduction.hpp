#pragma once

// Reduction type of E on a subgraph T of the intersection graph, computed on
// a model minimal at every vertex of T-bar:
//   Good            phi_Delta = 0 on T-bar
//   Multiplicative  phi_Delta > 0 and phi_c4 = 0 on T-bar
//   Additive        phi_Delta > 0 and phi_c4 > 0 on T-bar
//   Mixed           none of the above holds uniformly.

#include <set>
#include <string>
#include <vector>

#include "tropell/weierstrass.hpp"

namespace tropell {

enum class ReductionKind { Good, Multiplicative, Additive, Mixed };

inline const char* reduction_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "Good";
    case ReductionKind::Multiplicative: return "Multiplicative";
    case ReductionKind::Additive: return "Additive";
    case ReductionKind::Mixed: return "Mixed";
  }
  return "?";
}

struct ReductionEvidence {
  std::vector<std::size_t> support;           // vertices of T-bar's closure the model is minimal at
  std::vector<Rational> phi_discriminant;     // on the support, minimal model
  std::vector<Valuation> phi_c4;              // +inf when c4 = 0
  std::vector<Rational> kappa;                // twist exponents used
  bool c4_identically_zero = false;
  bool short_form_used = false;
  bool discriminant_zero = false;
  bool discriminant_positive = false;
  bool c4_zero = false;
  bool c4_positive = false;
};

struct ReductionType {
  ReductionKind kind = ReductionKind::Mixed;
  ReductionEvidence evidence;
};

namespace detail {
inline void check_selection(const SkeletonTree& tree, const SubgraphSelection& t) {
  for (std::size_t v : t.vertices)
    if (v >= tree.vertex_count()) throw DomainError(ErrorCode::InvalidArgument, "subgraph vertex out of range");
  for (std::size_t e : t.edges)
    if (e >= tree.edge_count()) throw DomainError(ErrorCode::InvalidArgument, "subgraph edge out of range");
  if (t.vertices.empty() && t.edges.empty()) throw DomainError(ErrorCode::InvalidArgument, "empty subgraph");
}
}  // namespace detail

/// T with the endpoints of its edges adjoined (the complete subgraph).
inline SubgraphSelection completion_closure(const SkeletonTree& tree, const SubgraphSelection& t) {
  detail::check_selection(tree, t);
  return complete_subgraph(tree.metric_graph(), t);
}

inline ReductionType classify(const WeierstrassEquation& w, const SkeletonTree& tree, const SubgraphSelection& t,
                              const ResidueConfig& residue = {}) {
  detail::check_selection(tree, t);
  const MetricGraph g = tree.metric_graph();
  const SubgraphSelection closed = complete_subgraph(g, t);
  const SMinimalTwist twist = construct_s_minimal_twist(w, tree, closed.vertices, residue);
  const WeierstrassEquation minimal = transform(w, twist.transform);
  const Invariants inv = invariants(minimal);

  auto phi_disc = *detail::checked_profile(tree, g, inv.discriminant, "Delta");
  auto phi_c4 = detail::checked_profile(tree, g, inv.c4, "c4");

  ReductionType out;
  auto& ev = out.evidence;
  ev.support = twist.support;
  ev.short_form_used = twist.short_form_first;
  ev.c4_identically_zero = !phi_c4.has_value();
  for (std::size_t v : ev.support) {
    ev.phi_discriminant.push_back(phi_disc[v]);
    ev.phi_c4.push_back(phi_c4 ? Valuation((*phi_c4)[v]) : Valuation::infinity());
    ev.kappa.push_back(twist.scaling.gauss_valuation(tree.vertex(v).center, tree.vertex(v).radius));
  }
  ev.discriminant_zero = compare_on_subgraph(g, phi_disc, t, Relation::Zero);
  ev.discriminant_positive = compare_on_subgraph(g, phi_disc, t, Relation::Positive);
  ev.c4_zero = phi_c4 && compare_on_subgraph(g, *phi_c4, t, Relation::Zero);
  ev.c4_positive = !phi_c4 || compare_on_subgraph(g, *phi_c4, t, Relation::Positive);

  if (ev.discriminant_zero)
    out.kind = ReductionKind::Good;
  else if (ev.discriminant_positive && ev.c4_zero)
    out.kind = ReductionKind::Multiplicative;
  else if (ev.discriminant_positive && ev.c4_positive)
    out.kind = ReductionKind::Additive;
  else
    out.kind = ReductionKind::Mixed;
  return out;
}

/// The subgraph T' of a subdivision induced by T: sub-edges and interior
/// vertices of every selected edge, plus the originally selected vertices.
inline SubgraphSelection induced_subgraph(const RegularizedTree& reg, const SubgraphSelection& t) {
  SubgraphSelection out;
  out.vertices = t.vertices;
  for (std::size_t e : t.edges) {
    const auto& chain = reg.chains.at(e);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) out.vertices.insert(chain[i]);
    for (std::size_t se : reg.chain_edges.at(e)) out.edges.insert(se);
  }
  return out;
}

struct VertexReduction {
  std::size_t vertex = 0;  // id in the subdivided tree
  ReductionKind kind = ReductionKind::Mixed;
};

/// Classical reduction type at every vertex of T' after cutting each edge into
/// 1/n pieces. When T is uniformly Good or Multiplicative, every vertex of T'
/// is checked to carry the same type.
inline std::vector<VertexReduction> classify_on_subdivision(const WeierstrassEquation& w, const SkeletonTree& tree,
                                                            const SubgraphSelection& t, long n,
                                                            const ResidueConfig& residue = {}) {
  detail::check_selection(tree, t);
  const RegularizedTree reg = regularize(tree, n);
  const SubgraphSelection sub = induced_subgraph(reg, t);
  std::vector<VertexReduction> out;
  for (std::size_t v : sub.vertices) {
    SubgraphSelection single;
    single.vertices.insert(v);
    out.push_back({v, classify(w, reg.tree, single, residue).kind});
  }
  const ReductionKind whole = classify(w, tree, t, residue).kind;
  if (whole == ReductionKind::Good || whole == ReductionKind::Multiplicative)
    for (const auto& vr : out)
      ensure(vr.kind == whole, std::string("subdivision vertex disagrees with ") + reduction_name(whole) + " verdict");
  return out;
}

/// Whether a Good or Multiplicative verdict on T survives the base change
/// K -> K(pi^(1/n)) with the model subdivided accordingly. Other verdicts are
/// not claimed stable, so the function returns true for them.
inline bool base_change_stability(const WeierstrassEquation& w, const SkeletonTree& tree, const SubgraphSelection& t,
                                  long n, const ResidueConfig& residue = {}) {
  const ReductionKind before = classify(w, tree, t, residue).kind;
  if (before != ReductionKind::Good && before != ReductionKind::Multiplicative) return true;
  const RegularizedTree reg = regularize(tree, n);
  const ReductionKind after = classify(w, reg.tree, induced_subgraph(reg, t), residue).kind;
  return after == before;
}

}  // namespace tropell
