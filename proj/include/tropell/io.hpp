#pragma once

// JSON input and output. All quantities travel as exact strings.
//
// Model:    {"vertices": [{"center": "0", "r": "0"}, ...],
//            "edges": [[0, 1, "1"], ...], "n_lattice": 1, "weights": [0, 0]}
// Curve:    {"a": ["a1", "a2", "a3", "a4", "a6"]}  or  {"A": "...", "B": "..."}
// Subgraph: "vertices=0,1;edges=0-1"  (an edge is named by its endpoints or id)

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "tropell/expression.hpp"
#include "tropell/galois.hpp"

namespace tropell::io {

using Json = nlohmann::json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError(ErrorCode::ParseError, path + ": " + e.what());
  }
}

namespace detail {
inline std::string text_of(const Json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw DomainError(ErrorCode::ParseError, what + " must be a string or an integer");
}

inline std::size_t index_of(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw DomainError(ErrorCode::ParseError, what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

inline RationalFunction coefficient(const Json& j, const std::string& what) {
  return parse_function(text_of(j, what));
}
}  // namespace detail

inline SkeletonTree parse_model(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw DomainError(ErrorCode::ParseError, "model needs \"vertices\" and \"edges\"");
  long lattice = j.value("n_lattice", 1L);
  std::vector<DiskVertex> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.contains("center") || !v.contains("r"))
      throw DomainError(ErrorCode::ParseError, "vertex needs \"center\" and \"r\"");
    vertices.push_back({parse_valued(detail::text_of(v.at("center"), "center")),
                        parse_rational(detail::text_of(v.at("r"), "r"))});
  }
  std::vector<TreeEdge> edges;
  for (const auto& e : j.at("edges")) {
    if (e.is_array() && e.size() == 3)
      edges.push_back({detail::index_of(e[0], "edge endpoint"), detail::index_of(e[1], "edge endpoint"),
                       parse_rational(detail::text_of(e[2], "edge length"))});
    else if (e.is_object())
      edges.push_back({detail::index_of(e.at("from"), "from"), detail::index_of(e.at("to"), "to"),
                       parse_rational(detail::text_of(e.at("length"), "length"))});
    else
      throw DomainError(ErrorCode::ParseError, "edge must be [from, to, length]");
  }
  std::vector<long> weights;
  if (j.contains("weights"))
    for (const auto& w : j.at("weights")) weights.push_back(w.get<long>());
  return SkeletonTree(std::move(vertices), std::move(edges), lattice, std::move(weights));
}

inline WeierstrassEquation parse_curve(const Json& j) {
  if (j.contains("a")) {
    const auto& a = j.at("a");
    if (!a.is_array() || a.size() != 5)
      throw DomainError(ErrorCode::ParseError, "\"a\" must list a1, a2, a3, a4, a6");
    WeierstrassEquation w;
    for (std::size_t i = 0; i < 5; ++i) w.a[i] = detail::coefficient(a[i], "coefficient");
    return w;
  }
  if (j.contains("A") && j.contains("B"))
    return WeierstrassEquation::short_form(detail::coefficient(j.at("A"), "A"), detail::coefficient(j.at("B"), "B"));
  throw DomainError(ErrorCode::ParseError, "curve needs \"a\" or \"A\"/\"B\"");
}

inline SubgraphSelection parse_subgraph(const std::string& text, const SkeletonTree& tree) {
  SubgraphSelection sel;
  auto to_index = [](std::string s) {
    s = trim(s);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError(ErrorCode::ParseError, "bad index '" + s + "' in subgraph");
    return static_cast<std::size_t>(std::stoul(s));
  };
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw DomainError(ErrorCode::ParseError, "subgraph part '" + part + "' lacks '='");
    std::string key = trim(part.substr(0, eq));
    std::stringstream items(part.substr(eq + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      if (trim(item).empty()) continue;
      if (key == "vertices") {
        std::size_t v = to_index(item);
        if (v >= tree.vertex_count()) throw DomainError(ErrorCode::InvalidArgument, "subgraph vertex out of range");
        sel.vertices.insert(v);
      } else if (key == "edges") {
        auto dash = item.find('-');
        if (dash == std::string::npos) {
          std::size_t e = to_index(item);
          if (e >= tree.edge_count()) throw DomainError(ErrorCode::InvalidArgument, "subgraph edge out of range");
          sel.edges.insert(e);
          continue;
        }
        std::size_t a = to_index(item.substr(0, dash)), b = to_index(item.substr(dash + 1));
        bool found = false;
        for (std::size_t e = 0; e < tree.edge_count(); ++e) {
          const auto& ed = tree.edge(e);
          if ((ed.from == a && ed.to == b) || (ed.from == b && ed.to == a)) {
            sel.edges.insert(e);
            found = true;
          }
        }
        if (!found) throw DomainError(ErrorCode::InvalidArgument, "no edge joins " + std::to_string(a) + " and " + std::to_string(b));
      } else {
        throw DomainError(ErrorCode::ParseError, "unknown subgraph key '" + key + "'");
      }
    }
  }
  if (sel.vertices.empty() && sel.edges.empty()) throw DomainError(ErrorCode::InvalidArgument, "empty subgraph");
  return sel;
}

// ---------------------------------------------------------------------------
// Output

inline Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

inline Json to_json(const Valuation& v) { return v.str(); }

inline Json to_json(const LaplacianFunction& phi) { return rationals(phi.values); }

inline Json to_json(const GraphDivisor& d) { return rationals(d.coefficients); }

inline Json to_json(const SubgraphSelection& s) {
  return Json{{"vertices", Json(std::vector<std::size_t>(s.vertices.begin(), s.vertices.end()))},
              {"edges", Json(std::vector<std::size_t>(s.edges.begin(), s.edges.end()))}};
}

inline Json to_json(const SkeletonTree& tree) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : tree.vertices()) vs.push_back({{"center", v.center.str()}, {"r", to_string(v.radius)}});
  for (const auto& e : tree.edges()) es.push_back(Json::array({e.from, e.to, to_string(e.length)}));
  return Json{{"vertices", vs}, {"edges", es}, {"n_lattice", tree.lattice()}};
}

inline Json to_json(const WeierstrassEquation& w) {
  Json a = Json::array();
  for (const auto& c : w.a) a.push_back(c.str());
  return Json{{"a", a}};
}

inline Json to_json(const WeierstrassTransform& t) {
  return Json{{"u", t.u.str()}, {"r", t.r.str()}, {"s", t.s.str()}, {"t", t.t.str()}};
}

inline Json to_json(const ReductionType& r) {
  const auto& ev = r.evidence;
  Json phi_c4 = Json::array();
  for (const auto& v : ev.phi_c4) phi_c4.push_back(v.str());
  return Json{{"kind", reduction_name(r.kind)},
              {"evidence",
               {{"support", ev.support},
                {"phi_discriminant", rationals(ev.phi_discriminant)},
                {"phi_c4", phi_c4},
                {"kappa", rationals(ev.kappa)},
                {"c4_identically_zero", ev.c4_identically_zero},
                {"short_form_used", ev.short_form_used},
                {"discriminant_zero", ev.discriminant_zero},
                {"discriminant_positive", ev.discriminant_positive},
                {"c4_zero", ev.c4_zero},
                {"c4_positive", ev.c4_positive}}}};
}

inline Json to_json(const Sl2Matrix& m) {
  return Json{{"entries", Json::array({m.a(), m.b(), m.c(), m.d()})}, {"modulus", m.modulus()}};
}

inline Json to_json(const EdgeFiber& f) { return Json{{"count", f.count.get_str()}, {"length", to_string(f.length)}}; }

inline Json to_json(const TransvectionCertificate& c) {
  Json out{{"edge", c.edge},
           {"ell", c.ell},
           {"delta", c.delta.get_str()},
           {"reduction", reduction_name(c.reduction)},
           {"verdict", c.verdict},
           {"failed", c.failed}};
  out["matrix"] = c.matrix ? to_json(*c.matrix) : Json(nullptr);
  out["predicted_fiber"] = c.predicted_fiber ? to_json(*c.predicted_fiber) : Json(nullptr);
  return out;
}

inline Json to_json(const InertiaChain& c) { return Json{{"n", c.n}, {"m", c.m}, {"orders", c.orders}}; }

/// Deterministic text: nlohmann's default object type keeps keys sorted.
inline std::string dump(const Json& j, bool pretty = true) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace tropell::io
