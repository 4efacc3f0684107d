#pragma once

// Semistable models of P^1 as finite trees of disks.
//
// A vertex is the Gauss point of the closed disk {v(t - c) >= r}. An edge
// joins a disk to a strictly larger disk containing it; its length is the
// difference of radii. The unique vertex of smallest radius is the root: the
// point at infinity and everything outside its disk retract onto it.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tropell/factored.hpp"
#include "tropell/laplacian.hpp"

namespace tropell {

struct DiskVertex {
  ValuedElement center;
  Rational radius;

  /// {v(t - c) >= r} contains `other` as a set of Berkovich points.
  bool contains(const DiskVertex& other) const {
    return other.radius >= radius && (other.center - center).valuation() >= Valuation(radius);
  }

  friend bool operator==(const DiskVertex& a, const DiskVertex& b) {
    return a.radius == b.radius && (a.center - b.center).valuation() >= Valuation(a.radius);
  }
};

struct TreeEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational length{1};
};

/// A point of the metrized tree: a vertex, or an interior point of an edge
/// (the Gauss point of radius `radius` on the child's centre line).
struct TreePoint {
  enum class Kind { Vertex, EdgeInterior } kind = Kind::Vertex;
  std::size_t vertex = 0;  // for Kind::Vertex
  std::size_t edge = 0;    // for Kind::EdgeInterior
  Rational radius;
  Rational offset;  // distance from edge.from as a fraction of the edge length

  bool is_vertex() const { return kind == Kind::Vertex; }
  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    if (a.kind != b.kind) return false;
    if (a.is_vertex()) return a.vertex == b.vertex;
    return a.edge == b.edge && a.radius == b.radius;
  }
};

class SkeletonTree {
 public:
  SkeletonTree(std::vector<DiskVertex> vertices, std::vector<TreeEdge> edges, long lattice = 1,
               std::vector<long> weights = {})
      : vertices_(std::move(vertices)), edges_(std::move(edges)), lattice_(lattice), weights_(std::move(weights)) {
    if (weights_.empty()) weights_.assign(vertices_.size(), 0);
    validate();
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<DiskVertex>& vertices() const { return vertices_; }
  const DiskVertex& vertex(std::size_t v) const { return vertices_.at(v); }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const TreeEdge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<long>& weights() const { return weights_; }
  long lattice() const { return lattice_; }
  std::size_t root() const { return root_; }
  std::optional<std::size_t> parent(std::size_t v) const { return parent_.at(v); }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }
  /// The edge joining v to its parent.
  std::size_t parent_edge(std::size_t v) const { return parent_edge_.at(v); }

  /// Child endpoint of an edge (the smaller disk).
  std::size_t child_of_edge(std::size_t e) const {
    const auto& ed = edges_.at(e);
    return vertices_[ed.from].radius > vertices_[ed.to].radius ? ed.from : ed.to;
  }
  std::size_t parent_of_edge(std::size_t e) const {
    const auto& ed = edges_.at(e);
    return child_of_edge(e) == ed.from ? ed.to : ed.from;
  }

  bool is_regular() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const TreeEdge& e) { return e.length == 1; });
  }

  MetricGraph metric_graph() const {
    std::vector<GraphEdge> ge;
    ge.reserve(edges_.size());
    for (const auto& e : edges_) ge.push_back({e.from, e.to, e.length});
    return MetricGraph(vertices_.size(), std::move(ge), weights_);
  }

  /// Index of an equal disk, if the tree has one.
  std::optional<std::size_t> find_vertex(const DiskVertex& d) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == d) return i;
    return std::nullopt;
  }

 private:
  std::vector<DiskVertex> vertices_;
  std::vector<TreeEdge> edges_;
  long lattice_ = 1;
  std::vector<long> weights_;
  std::size_t root_ = 0;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::vector<std::size_t>> children_;

  void validate() {
    auto bad = [](const std::string& m) { throw DomainError(ErrorCode::InvalidModel, m); };
    const std::size_t n = vertices_.size();
    if (n == 0) bad("model has no vertices");
    if (lattice_ < 1) bad("lattice denominator must be positive");
    if (weights_.size() != n) bad("weight list does not match vertex count");
    if (edges_.size() + 1 != n) bad("a model of P^1 has |E| = |V| - 1");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = vertices_[i].radius;
      if (r < 0) bad("vertex " + std::to_string(i) + " has negative radius");
      if (!is_integral(Rational(r * lattice_)))
        bad("radius " + to_string(r) + " is outside the lattice (1/" + std::to_string(lattice_) + ")Z");
      for (std::size_t j = 0; j < i; ++j)
        if (vertices_[i] == vertices_[j]) bad("vertices " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    parent_.assign(n, std::nullopt);
    parent_edge_.assign(n, 0);
    children_.assign(n, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& ed = edges_[e];
      if (ed.from >= n || ed.to >= n) bad("edge endpoint out of range");
      if (ed.from == ed.to) bad("loop edge");
      std::size_t c = child_of_edge(e), p = parent_of_edge(e);
      const auto& dc = vertices_[c];
      const auto& dp = vertices_[p];
      if (dc.radius == dp.radius || !dp.contains(dc))
        bad("edge " + std::to_string(e) + " does not join a disk to a larger disk containing it");
      if (ed.length != dc.radius - dp.radius)
        bad("edge " + std::to_string(e) + " has length " + to_string(ed.length) + " but radii differ by " +
            to_string(Rational(dc.radius - dp.radius)));
      if (parent_[c]) bad("vertex " + std::to_string(c) + " has two parents");
      parent_[c] = p;
      parent_edge_[c] = e;
      children_[p].push_back(c);
    }
    std::size_t roots = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (!parent_[v]) {
        root_ = v;
        ++roots;
      }
    if (roots != 1) bad("model is not connected");
    for (std::size_t v = 0; v < n; ++v) {
      const auto& ch = children_[v];
      for (std::size_t i = 0; i < ch.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if ((vertices_[ch[i]].center - vertices_[ch[j]].center).valuation() > Valuation(vertices_[v].radius))
            bad("children " + std::to_string(ch[j]) + " and " + std::to_string(ch[i]) + " of vertex " +
                std::to_string(v) + " leave it in the same direction");
    }
  }
};

// ---------------------------------------------------------------------------
// Gauss valuations

inline Rational gauss_valuation(const DiskVertex& v, const FactoredFunction& f) {
  return f.gauss_valuation(v.center, v.radius);
}

inline Valuation gauss_valuation(const DiskVertex& v, const RationalFunction& f) {
  return f.gauss_valuation(v.center, v.radius);
}

/// phi_f: the Gauss valuation of f at every vertex.
inline LaplacianFunction valuation_profile(const SkeletonTree& tree, const FactoredFunction& f) {
  LaplacianFunction phi{{}, tree.lattice()};
  for (const auto& d : tree.vertices()) phi.values.push_back(gauss_valuation(d, f));
  return phi;
}

/// phi_f for a general element of K(t); nullopt for f = 0 (phi = +inf).
inline std::optional<LaplacianFunction> valuation_profile(const SkeletonTree& tree, const RationalFunction& f) {
  if (f.is_zero()) return std::nullopt;
  LaplacianFunction phi{{}, tree.lattice()};
  for (const auto& d : tree.vertices()) phi.values.push_back(gauss_valuation(d, f).value());
  return phi;
}

// ---------------------------------------------------------------------------
// Retraction onto the tree

/// Retraction of the Berkovich point zeta(center, radius) onto the tree;
/// radius = +inf gives the type-1 point t = center.
inline TreePoint retract(const SkeletonTree& tree, const ValuedElement& center, const Valuation& radius) {
  auto reach = [&](const DiskVertex& d) {
    // min(v(a - c), rho): how far down the line of d the point still lies in.
    return min_of((center - d.center).valuation(), radius);
  };
  const std::size_t root = tree.root();
  TreePoint best;
  best.kind = TreePoint::Kind::Vertex;
  best.vertex = root;
  Valuation root_reach = reach(tree.vertex(root));
  best.radius = root_reach < Valuation(tree.vertex(root).radius) ? root_reach.value() : tree.vertex(root).radius;
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    std::size_t c = tree.child_of_edge(e), p = tree.parent_of_edge(e);
    const auto& dc = tree.vertex(c);
    const auto& dp = tree.vertex(p);
    Valuation s = min_of(reach(dc), Valuation(dc.radius));
    if (s < Valuation(dp.radius) || s.value() <= best.radius) continue;
    const Rational& r = s.value();
    if (r == dc.radius) {
      best = TreePoint{TreePoint::Kind::Vertex, c, 0, r, Rational(0)};
    } else if (r == dp.radius) {
      best = TreePoint{TreePoint::Kind::Vertex, p, 0, r, Rational(0)};
    } else {
      const auto& ed = tree.edge(e);
      Rational from_r = tree.vertex(ed.from).radius;
      best = TreePoint{TreePoint::Kind::EdgeInterior, 0, e, r, Rational(abs_of(Rational(r - from_r)) / ed.length)};
    }
  }
  if (best.is_vertex()) best.radius = tree.vertex(best.vertex).radius;
  return best;
}

inline TreePoint retract_point(const SkeletonTree& tree, const ValuedElement& a) {
  return retract(tree, a, Valuation::infinity());
}

namespace detail {
[[noreturn]] inline void not_adapted(const std::string& what) { throw DomainError(ErrorCode::ModelNotAdapted, what); }
}  // namespace detail

/// rho(div f) via retraction of each root; the pole or zero at infinity
/// (order -deg f) lands on the root vertex.
inline GraphDivisor specialize_divisor(const SkeletonTree& tree, const FactoredFunction& f) {
  GraphDivisor d{std::vector<Rational>(tree.vertex_count(), Rational(0))};
  for (const auto& fac : f.factors()) {
    TreePoint p = retract_point(tree, fac.root);
    if (!p.is_vertex())
      detail::not_adapted("root " + fac.root.str() + " retracts to the interior of edge " + std::to_string(p.edge));
    d.coefficients[p.vertex] += fac.multiplicity;
  }
  d.coefficients[tree.root()] -= f.degree();
  return d;
}

/// rho(div f) for f in K(t) without factoring: root counts per disk come from
/// Newton polygons of the Taylor expansions at the vertex centres.
inline GraphDivisor specialize_divisor(const SkeletonTree& tree, const RationalFunction& f) {
  if (f.is_zero()) throw DomainError(ErrorCode::InvalidArgument, "divisor of the zero function");
  const std::size_t n = tree.vertex_count();
  // Net (zeros - poles) distance multiset at a centre.
  auto distances = [&](const ValuedElement& c) {
    std::map<Valuation, long> net;
    for (const auto& [v, m] : f.numerator().root_distances(c)) net[v] += m;
    for (const auto& [v, m] : f.denominator().root_distances(c)) net[v] -= m;
    return net;
  };
  auto count_where = [](const std::map<Valuation, long>& net, auto pred) {
    long total = 0;
    for (const auto& [v, m] : net)
      if (pred(v)) total += m;
    return total;
  };
  GraphDivisor d{std::vector<Rational>(n, Rational(0))};
  std::vector<std::map<Valuation, long>> at_center(n);
  for (std::size_t v = 0; v < n; ++v) at_center[v] = distances(tree.vertex(v).center);
  for (std::size_t v = 0; v < n; ++v) {
    const Valuation rv(tree.vertex(v).radius);
    long here = count_where(at_center[v], [&](const Valuation& x) { return x >= rv; });
    for (std::size_t w : tree.children(v)) {
      const Valuation rw(tree.vertex(w).radius);
      for (const auto& [x, m] : at_center[w])
        if (m != 0 && x > rv && x < rw)
          detail::not_adapted("zeros/poles of " + f.str() + " retract to the interior of edge " +
                              std::to_string(tree.parent_edge(w)));
      here -= count_where(at_center[w], [&](const Valuation& x) { return x > rv; });
    }
    d.coefficients[v] = here;
  }
  // Everything outside the root disk and the point at infinity sit on the root.
  const std::size_t root = tree.root();
  long total = f.numerator().degree() - f.denominator().degree();
  long inside_root = count_where(at_center[root], [&](const Valuation& x) { return x >= Valuation(tree.vertex(root).radius); });
  long outside = total - inside_root;
  d.coefficients[root] += outside - total;
  return d;
}

// ---------------------------------------------------------------------------
// Subdivision

/// Result of subdividing every edge into pieces of length 1/n.
struct RegularizedTree {
  SkeletonTree tree;
  /// For each original edge, the vertex ids along it from edge.from to edge.to.
  std::vector<std::vector<std::size_t>> chains;
  /// For each original edge, the ids of its sub-edges in chain order.
  std::vector<std::vector<std::size_t>> chain_edges;
};

/// Original vertices keep their ids; new vertices are appended.
inline RegularizedTree regularize(const SkeletonTree& tree, long n) {
  if (n < 1) throw DomainError(ErrorCode::InvalidArgument, "subdivision factor must be positive");
  std::vector<DiskVertex> verts = tree.vertices();
  std::vector<long> weights = tree.weights();
  std::vector<TreeEdge> edges;
  std::vector<std::vector<std::size_t>> chains, chain_edges;
  const Rational piece(1, n);
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const auto& ed = tree.edge(e);
    Rational count_q = ed.length * n;
    if (!is_integral(count_q))
      throw DomainError(ErrorCode::InvalidArgument,
                        "edge " + std::to_string(e) + " of length " + to_string(ed.length) + " cannot be cut into 1/" +
                            std::to_string(n) + " pieces");
    long count = count_q.get_num().get_si();
    const DiskVertex& from = tree.vertex(ed.from);
    const DiskVertex& to = tree.vertex(ed.to);
    const ValuedElement& line = tree.vertex(tree.child_of_edge(e)).center;
    const Rational step = to.radius > from.radius ? piece : Rational(-piece);
    std::vector<std::size_t> chain{ed.from};
    for (long i = 1; i < count; ++i) {
      verts.push_back({line, Rational(from.radius + step * i)});
      weights.push_back(0);
      chain.push_back(verts.size() - 1);
    }
    chain.push_back(ed.to);
    std::vector<std::size_t> ce;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      edges.push_back({chain[i], chain[i + 1], piece});
      ce.push_back(edges.size() - 1);
    }
    chains.push_back(std::move(chain));
    chain_edges.push_back(std::move(ce));
  }
  long lattice = lcm_of(Integer(tree.lattice()), Integer(n)).get_si();
  return RegularizedTree{SkeletonTree(std::move(verts), std::move(edges), lattice, std::move(weights)),
                         std::move(chains), std::move(chain_edges)};
}

/// Inserts a vertex at the retraction of `a` when that lies inside an edge.
/// Returns the new tree and the id of the vertex `a` now retracts to.
inline std::pair<SkeletonTree, std::size_t> with_retraction_vertex(const SkeletonTree& tree, const ValuedElement& a) {
  TreePoint p = retract_point(tree, a);
  if (p.is_vertex()) return {tree, p.vertex};
  std::vector<DiskVertex> verts = tree.vertices();
  std::vector<long> weights = tree.weights();
  std::vector<TreeEdge> edges = tree.edges();
  const auto& ed = tree.edge(p.edge);
  verts.push_back({tree.vertex(tree.child_of_edge(p.edge)).center, p.radius});
  weights.push_back(0);
  std::size_t mid = verts.size() - 1;
  auto len_to = [&](std::size_t v) { return abs_of(Rational(tree.vertex(v).radius - p.radius)); };
  edges[p.edge] = TreeEdge{ed.from, mid, len_to(ed.from)};
  edges.push_back(TreeEdge{mid, ed.to, len_to(ed.to)});
  Rational scaled = p.radius * tree.lattice();
  long lattice = is_integral(scaled) ? tree.lattice()
                                     : lcm_of(Integer(tree.lattice()), Integer(p.radius.get_den())).get_si();
  return {SkeletonTree(std::move(verts), std::move(edges), lattice, std::move(weights)), mid};
}

}  // namespace tropell
