#pragma once

// Divisor theory on finite metric graphs.
//
// The Laplacian of a vertex function phi is
//     (Delta phi)(v) = sum over edges e = vw of (phi(v) - phi(w)) / len(e),
// so on unit-length graphs it is the usual combinatorial Laplacian and a
// principal divisor is one of the form Delta(phi). Functions extend to the
// metrized graph by affine interpolation along each edge.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropell/linalg.hpp"
#include "tropell/number.hpp"

namespace tropell {

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational length{1};
};

class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::size_t vertex_count, std::vector<GraphEdge> edges, std::vector<long> weights = {})
      : vertex_count_(vertex_count), edges_(std::move(edges)), weights_(std::move(weights)) {
    if (weights_.empty()) weights_.assign(vertex_count_, 0);
    validate();
    incident_.assign(vertex_count_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[edges_[e].from].push_back(e);
      incident_[edges_[e].to].push_back(e);
    }
  }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const GraphEdge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<long>& weights() const { return weights_; }
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }

  std::size_t other_end(std::size_t e, std::size_t v) const {
    const auto& ed = edges_.at(e);
    return ed.from == v ? ed.to : ed.from;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<long> weights_;
  std::vector<std::vector<std::size_t>> incident_;

  void validate() const {
    auto bad = [](const std::string& m) { throw DomainError(ErrorCode::InvalidModel, m); };
    if (vertex_count_ == 0) bad("graph has no vertices");
    if (weights_.size() != vertex_count_) bad("weight list does not match vertex count");
    for (long w : weights_)
      if (w < 0) bad("negative vertex weight");
    std::vector<std::size_t> parent(vertex_count_);
    for (std::size_t i = 0; i < vertex_count_; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = vertex_count_;
    for (const auto& e : edges_) {
      if (e.from >= vertex_count_ || e.to >= vertex_count_) bad("edge endpoint out of range");
      if (e.from == e.to) bad("loop edges are not allowed");
      if (e.length <= 0) bad("edge length must be positive");
      std::size_t a = find(e.from), b = find(e.to);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components != 1) bad("graph is not connected");
  }
};

/// Integer (or (1/n)Z-valued) coefficients per vertex.
struct GraphDivisor {
  std::vector<Rational> coefficients;

  Rational degree() const {
    Rational d = 0;
    for (const auto& c : coefficients) d += c;
    return d;
  }
  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return c == 0; });
  }
  friend bool operator==(const GraphDivisor&, const GraphDivisor&) = default;
};

/// A vertex function; `lattice` is the denominator n of the value group (1/n)Z.
struct LaplacianFunction {
  std::vector<Rational> values;
  long lattice = 1;

  const Rational& operator[](std::size_t v) const { return values.at(v); }
  friend bool operator==(const LaplacianFunction& a, const LaplacianFunction& b) { return a.values == b.values; }
};

/// Vertices plus edges of a subgraph T. An edge whose endpoint is not itself
/// selected contributes only its open interior to the closed image T-bar.
struct SubgraphSelection {
  std::set<std::size_t> vertices;
  std::set<std::size_t> edges;
};

enum class Relation { Positive, Zero, NonNegative, Negative, NonPositive };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Positive: return ">0";
    case Relation::Zero: return "=0";
    case Relation::NonNegative: return ">=0";
    case Relation::Negative: return "<0";
    case Relation::NonPositive: return "<=0";
  }
  return "?";
}

namespace detail {
inline void check_function(const MetricGraph& g, const LaplacianFunction& phi) {
  if (phi.values.size() != g.vertex_count())
    throw DomainError(ErrorCode::InvalidArgument, "function size does not match vertex count");
  if (phi.lattice < 1) throw DomainError(ErrorCode::InvalidArgument, "lattice denominator must be positive");
}
inline bool in_lattice(const Rational& q, long n) { return is_integral(Rational(q * n)); }
}  // namespace detail

/// Signed slope along `e`, read from `from` to `to` when `forward`.
inline Rational edge_slope(const MetricGraph& g, const LaplacianFunction& phi, std::size_t e, bool forward = true) {
  detail::check_function(g, phi);
  const auto& ed = g.edge(e);
  Rational s = (phi[ed.to] - phi[ed.from]) / ed.length;
  return forward ? s : Rational(-s);
}

/// delta_e(phi) = |slope of phi along e|.
inline Rational edge_slope_abs(const MetricGraph& g, const LaplacianFunction& phi, std::size_t e) {
  return abs_of(edge_slope(g, phi, e));
}

inline GraphDivisor laplacian_apply(const MetricGraph& g, const LaplacianFunction& phi) {
  detail::check_function(g, phi);
  GraphDivisor d{std::vector<Rational>(g.vertex_count(), Rational(0))};
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    Rational slope = (phi[ed.from] - phi[ed.to]) / ed.length;
    if (!detail::in_lattice(slope, phi.lattice))
      throw DomainError(ErrorCode::NonIntegralSlope,
                        "slope " + to_string(slope) + " on edge " + std::to_string(e) + " is outside (1/" +
                            std::to_string(phi.lattice) + ")Z");
    d.coefficients[ed.from] += slope;
    d.coefficients[ed.to] -= slope;
  }
  ensure(d.degree() == 0, "Laplacian image has nonzero degree");
  return d;
}

namespace detail {
/// Unique phi with Delta(phi) = D over Q and phi(anchor) = value, if any.
inline std::optional<std::vector<Rational>> solve_laplacian_rational(const MetricGraph& g, const GraphDivisor& d,
                                                                     std::size_t anchor, const Rational& value) {
  const std::size_t n = g.vertex_count();
  if (d.coefficients.size() != n) throw DomainError(ErrorCode::InvalidArgument, "divisor size does not match graph");
  if (anchor >= n) throw DomainError(ErrorCode::InvalidArgument, "anchor vertex out of range");
  if (d.degree() != 0) return std::nullopt;
  // Unknowns: phi(v) for v != anchor.
  std::vector<std::size_t> index(n, n);
  std::size_t k = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (v != anchor) index[v] = k++;
  linalg::Matrix<Rational> a(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> b(k, Rational(0));
  for (std::size_t v = 0; v < n; ++v) {
    if (v == anchor) continue;
    std::size_t row = index[v];
    b[row] = d.coefficients[v];
    for (std::size_t e : g.incident(v)) {
      std::size_t w = g.other_end(e, v);
      Rational inv_len = Rational(1) / g.edge(e).length;
      a[row][row] += inv_len;
      if (w == anchor)
        b[row] += inv_len * value;
      else
        a[row][index[w]] -= inv_len;
    }
  }
  auto sol = linalg::solve_rational(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  std::vector<Rational> phi(n);
  for (std::size_t v = 0; v < n; ++v) phi[v] = v == anchor ? value : (*sol)[index[v]];
  return phi;
}

inline bool slopes_in_lattice(const MetricGraph& g, const std::vector<Rational>& phi, long lattice) {
  for (const auto& ed : g.edges())
    if (!in_lattice(Rational((phi[ed.to] - phi[ed.from]) / ed.length), lattice)) return false;
  return true;
}
}  // namespace detail

/// D is principal iff D = Delta(phi) for some phi whose slopes lie in (1/n)Z.
inline bool is_principal(const MetricGraph& g, const GraphDivisor& d, long lattice = 1) {
  auto phi = detail::solve_laplacian_rational(g, d, 0, Rational(0));
  return phi && detail::slopes_in_lattice(g, *phi, lattice);
}

/// The unique phi with Delta(phi) = D and phi(anchor) = anchor_value. With
/// anchor_value = 0 the values are the multiplicities of the vertical divisor.
inline LaplacianFunction solve_laplacian(const MetricGraph& g, const GraphDivisor& d, std::size_t anchor,
                                         const Rational& anchor_value, long lattice = 1) {
  auto phi = detail::solve_laplacian_rational(g, d, anchor, anchor_value);
  if (!phi || !detail::slopes_in_lattice(g, *phi, lattice))
    throw DomainError(ErrorCode::NotPrincipal, "divisor is not principal");
  return LaplacianFunction{std::move(*phi), lattice};
}

/// phi-bar on edge e at offset x in [0, 1] measured from e.from.
inline Rational extend_pl(const MetricGraph& g, const LaplacianFunction& phi, std::size_t e, const Rational& x) {
  detail::check_function(g, phi);
  if (x < 0 || x > 1) throw DomainError(ErrorCode::InvalidArgument, "edge offset must lie in [0, 1]");
  const auto& ed = g.edge(e);
  return (phi[ed.to] - phi[ed.from]) * x + phi[ed.from];
}

namespace detail {
inline bool holds(Relation r, const Rational& x) {
  switch (r) {
    case Relation::Positive: return x > 0;
    case Relation::Zero: return x == 0;
    case Relation::NonNegative: return x >= 0;
    case Relation::Negative: return x < 0;
    case Relation::NonPositive: return x <= 0;
  }
  return false;
}

/// The relation on the open segment between endpoint values a and b.
inline bool holds_on_open_segment(Relation r, const Rational& a, const Rational& b) {
  switch (r) {
    case Relation::Positive: return a >= 0 && b >= 0 && (a > 0 || b > 0);
    case Relation::Negative: return a <= 0 && b <= 0 && (a < 0 || b < 0);
    default: return holds(r, a) && holds(r, b);
  }
}
}  // namespace detail

/// Checks `phi-bar (relation) 0` at every point of T-bar. Affinity on each
/// edge reduces this to endpoint values; an edge with an unselected endpoint
/// is an open (or half-open) segment there.
inline bool compare_on_subgraph(const MetricGraph& g, const LaplacianFunction& phi, const SubgraphSelection& t,
                                Relation relation) {
  detail::check_function(g, phi);
  for (std::size_t v : t.vertices) {
    if (v >= g.vertex_count()) throw DomainError(ErrorCode::InvalidArgument, "selected vertex out of range");
    if (!detail::holds(relation, phi[v])) return false;
  }
  for (std::size_t e : t.edges) {
    if (e >= g.edge_count()) throw DomainError(ErrorCode::InvalidArgument, "selected edge out of range");
    const auto& ed = g.edge(e);
    if (!detail::holds_on_open_segment(relation, phi[ed.from], phi[ed.to])) return false;
  }
  return true;
}

/// T with the endpoints of every selected edge adjoined.
inline SubgraphSelection complete_subgraph(const MetricGraph& g, const SubgraphSelection& t) {
  SubgraphSelection out = t;
  for (std::size_t e : t.edges) {
    out.vertices.insert(g.edge(e).from);
    out.vertices.insert(g.edge(e).to);
  }
  return out;
}

}  // namespace tropell
