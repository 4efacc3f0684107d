// tropell: command-line front end.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tropell/tropell.hpp"

namespace {

using tropell::io::Json;
using namespace tropell;

struct Options {
  std::string model, curve, subgraph, function, divisor, invariant = "discriminant", gens, reduction, length = "1";
  std::string group_order, image_order, delta;
  long ell = 0, lattice = 0, n = 0, m = 0, modulus = 0, residue_char = 0, torsion_level = 0;
  std::size_t edge = 0, vertex = 0, anchor = 0, cap = 1'000'000;
  bool json = false;
};

SkeletonTree load_model(const Options& o) {
  if (o.model.empty()) throw DomainError(ErrorCode::InvalidArgument, "--model is required");
  return io::parse_model(io::read_json_file(o.model));
}

WeierstrassEquation load_curve(const Options& o) {
  if (o.curve.empty()) throw DomainError(ErrorCode::InvalidArgument, "--curve is required");
  return io::parse_curve(io::read_json_file(o.curve));
}

ResidueConfig residue_of(const Options& o) { return ResidueConfig{o.residue_char}; }

Integer integer_of(const std::string& s, const char* flag) {
  Rational q = parse_rational(s);
  if (!is_integral(q)) throw DomainError(ErrorCode::InvalidArgument, std::string(flag) + " must be an integer");
  return q.get_num();
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  return out;
}

RationalFunction selected_invariant(const Invariants& inv, const std::string& name) {
  if (name == "discriminant" || name == "Delta") return inv.discriminant;
  if (name == "c4") return inv.c4;
  if (name == "c6") return inv.c6;
  if (name == "j") return inv.j();
  throw DomainError(ErrorCode::InvalidArgument, "unknown invariant '" + name + "'");
}

std::vector<Sl2Matrix> parse_gens(const std::string& s, long modulus) {
  std::vector<Sl2Matrix> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';')) {
    std::vector<long> e;
    std::stringstream parts(item);
    std::string x;
    while (std::getline(parts, x, ',')) e.push_back(std::stol(trim(x)));
    if (e.size() != 4) throw DomainError(ErrorCode::ParseError, "a generator needs four entries a,b,c,d");
    out.emplace_back(e[0], e[1], e[2], e[3], modulus);
  }
  if (out.empty()) throw DomainError(ErrorCode::InvalidArgument, "--gens is required");
  return out;
}

Json cmd_laplacian(const Options& o) {
  const SkeletonTree tree = load_model(o);
  const MetricGraph g = tree.metric_graph();
  RationalFunction f = !o.function.empty() ? parse_function(o.function)
                                           : selected_invariant(invariants(load_curve(o)), o.invariant);
  auto phi = valuation_profile(tree, f);
  if (!phi) throw DomainError(ErrorCode::InfiniteValuation, "the function is zero");
  GraphDivisor rho = specialize_divisor(tree, f);
  ensure(laplacian_apply(g, *phi) == rho, "Laplacian of the profile differs from the specialised divisor");
  std::vector<Rational> slopes;
  for (std::size_t e = 0; e < g.edge_count(); ++e) slopes.push_back(edge_slope(g, *phi, e));
  return Json{{"phi", io::to_json(*phi)}, {"divisor", io::to_json(rho)}, {"slopes", io::rationals(slopes)}};
}

Json cmd_divisor(const Options& o) {
  const SkeletonTree tree = load_model(o);
  const MetricGraph g = tree.metric_graph();
  GraphDivisor d{rational_list(o.divisor)};
  const long lattice = o.lattice > 0 ? o.lattice : tree.lattice();
  bool principal = is_principal(g, d, lattice);
  Json out{{"divisor", io::to_json(d)}, {"principal", principal}, {"lattice", lattice}};
  out["phi"] = principal ? io::to_json(solve_laplacian(g, d, o.anchor, Rational(0), lattice)) : Json(nullptr);
  return out;
}

Json cmd_reduction_type(const Options& o) {
  const SkeletonTree tree = load_model(o);
  const SubgraphSelection t = io::parse_subgraph(o.subgraph, tree);
  Json out = io::to_json(classify(load_curve(o), tree, t, residue_of(o)));
  out["subgraph"] = io::to_json(t);
  return out;
}

Json cmd_minimal_twist(const Options& o) {
  const SkeletonTree tree = load_model(o);
  const WeierstrassEquation w = load_curve(o);
  std::set<std::size_t> support;
  if (!o.subgraph.empty()) support = completion_closure(tree, io::parse_subgraph(o.subgraph, tree)).vertices;
  const SMinimalTwist twist = construct_s_minimal_twist(w, tree, support, residue_of(o));
  const WeierstrassEquation minimal = transform(w, twist.transform);
  Json report = Json::array();
  for (const auto& m : minimality_report(minimal, tree, residue_of(o), support).vertices)
    report.push_back({{"vertex", m.vertex},
                      {"v_discriminant", m.v_discriminant.str()},
                      {"v_c4", m.v_c4.str()},
                      {"kappa", to_string(m.kappa)},
                      {"minimal_discriminant", to_string(m.minimal_discriminant)}});
  return Json{{"transform", io::to_json(twist.transform)},
              {"scaling", twist.scaling.str()},
              {"short_form_first", twist.short_form_first},
              {"support", twist.support},
              {"equation", io::to_json(minimal)},
              {"report", report}};
}

Json cmd_subdivide(const Options& o) {
  const SkeletonTree tree = load_model(o);
  const RegularizedTree reg = regularize(tree, o.n > 0 ? o.n : 1);
  Json out{{"model", io::to_json(reg.tree)}, {"chains", reg.chains}, {"chain_edges", reg.chain_edges}};
  if (!o.curve.empty() && !o.subgraph.empty()) {
    Json verdicts = Json::array();
    for (const auto& vr : classify_on_subdivision(load_curve(o), tree, io::parse_subgraph(o.subgraph, tree), o.n,
                                                  residue_of(o)))
      verdicts.push_back({{"vertex", vr.vertex}, {"kind", reduction_name(vr.kind)}});
    out["vertex_reductions"] = verdicts;
  }
  return out;
}

Json cmd_transvection(const Options& o) {
  std::optional<Integer> image;
  if (!o.image_order.empty()) image = integer_of(o.image_order, "--image-order");
  return io::to_json(transvection_check(load_curve(o), load_model(o), o.edge, o.ell,
                                        integer_of(o.group_order, "--group-order"), residue_of(o), image));
}

ReductionKind reduction_of(const std::string& s) {
  for (auto k : {ReductionKind::Good, ReductionKind::Multiplicative, ReductionKind::Additive, ReductionKind::Mixed})
    if (s == reduction_name(k)) return k;
  throw DomainError(ErrorCode::InvalidArgument, "unknown reduction '" + s + "'");
}

Json cmd_fiber(const Options& o) {
  FiberQuery q;
  q.reduction = reduction_of(o.reduction);
  q.group_order = integer_of(o.group_order, "--group-order");
  if (o.ell > 0) q.ell = o.ell;
  if (!o.delta.empty()) q.delta_j = integer_of(o.delta, "--delta");
  q.length = parse_rational(o.length);
  if (!o.image_order.empty()) q.image_order = integer_of(o.image_order, "--image-order");
  if (o.torsion_level > 0) q.torsion_level = o.torsion_level;
  q.residue = residue_of(o);
  return io::to_json(predict_edge_fiber(q));
}

Json cmd_sl2(const std::string& sub, const Options& o) {
  if (sub == "order") {
    Json out{{"modulus", o.modulus}, {"order", sl2_order(o.modulus).get_str()}};
    if (is_prime(o.modulus)) out["psl2_order"] = psl2_order(o.modulus).get_str();
    return out;
  }
  const auto gens = parse_gens(o.gens, o.modulus);
  if (sub == "generate") {
    auto group = generate_subgroup(gens, o.cap);
    Json elements = Json::array();
    for (const auto& g : group) elements.push_back(Json::array({g.a(), g.b(), g.c(), g.d()}));
    return Json{{"modulus", o.modulus}, {"size", group.size()}, {"elements", elements}};
  }
  Json lines = Json::array();
  for (const auto& g : gens) lines.push_back(fixed_line(g).str());
  bool surjective = check_surjectivity(gens);
  return Json{{"modulus", o.modulus},
              {"fixed_lines", lines},
              {"surjective", surjective},
              {"closure_size", surjective ? Json(sl2_order(o.modulus).get_str()) : Json(nullptr)}};
}

Json cmd_tate_q(const Options& o) {
  const SkeletonTree tree = load_model(o);
  auto phi_j = valuation_profile(tree, invariants(load_curve(o)).j());
  if (!phi_j) throw DomainError(ErrorCode::NotNonIntegralJ, "j vanishes identically");
  return Json{{"vertex", o.vertex}, {"phi_j", io::to_json(*phi_j)},
              {"v_q", to_string(tate_parameter_valuation(*phi_j, o.vertex))}};
}

Json cmd_hasse(const Options& o) {
  const WeierstrassEquation w = load_curve(o);
  Json out{{"hasse", hasse_invariant(w).str()}};
  if (!o.model.empty()) {
    const SkeletonTree tree = load_model(o);
    Json parity = Json::array();
    for (bool even : hasse_valuation_parity(w, tree)) parity.push_back(even);
    out["valuation_even"] = parity;
  }
  return out;
}

Json cmd_division_poly(const Options& o) {
  const auto coeffs = division_polynomial(load_curve(o), o.n, residue_of(o));
  Json cs = Json::array();
  for (const auto& c : coeffs) cs.push_back(c.str());
  // Render as a polynomial in x, highest degree first.
  std::string text;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k].is_zero()) continue;
    std::string c = coeffs[k].str(), mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
    if (!coeffs[k].is_constant()) c = "(" + c + ")";
    std::string term = mono.empty() ? c : (c == "1" ? mono : (c == "-1" ? "-" + mono : c + "*" + mono));
    if (!text.empty()) text += " + ";
    text += term;
  }
  return Json{{"n", o.n}, {"coefficients", cs}, {"polynomial", text}};
}

void print_summary(const Json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      std::cout << indent << it.key() << ":\n";
      print_summary(*it, indent + "  ");
    } else {
      std::cout << indent << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction types of elliptic curves over function fields via skeleta"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Emit JSON");
  app.add_option("--residue-char", o.residue_char, "Residue characteristic p (0 for characteristic zero)");

  auto model = [&](CLI::App* c) { c->add_option("--model", o.model, "Model JSON file"); };
  auto curve = [&](CLI::App* c) { c->add_option("--curve", o.curve, "Curve JSON file"); };

  auto* lap = app.add_subcommand("laplacian", "Normalized Laplacian phi_f with its divisor and slopes");
  model(lap);
  curve(lap);
  lap->add_option("--function", o.function, "A function of t, e.g. \"t^2*(t - pi)\"");
  lap->add_option("--invariant", o.invariant, "discriminant, c4, c6 or j (with --curve)");

  auto* div = app.add_subcommand("divisor", "Principality of a graph divisor");
  model(div);
  div->add_option("--divisor", o.divisor, "Coefficients per vertex, comma separated")->required();
  div->add_option("--anchor", o.anchor, "Vertex where phi is 0");
  div->add_option("--lattice", o.lattice, "Slope lattice denominator n");

  auto* red = app.add_subcommand("reduction-type", "Reduction type on a subgraph");
  model(red);
  curve(red);
  red->add_option("--subgraph", o.subgraph, "e.g. \"vertices=1;edges=0-1\"")->required();

  auto* twist = app.add_subcommand("minimal-twist", "A model minimal on a set of vertices");
  model(twist);
  curve(twist);
  twist->add_option("--subgraph", o.subgraph, "Vertices of its closure form S (default: all)");

  auto* sub = app.add_subcommand("subdivide", "Cut every edge into pieces of length 1/n");
  model(sub);
  curve(sub);
  sub->add_option("--n", o.n, "Subdivision factor")->required();
  sub->add_option("--subgraph", o.subgraph, "Classify the induced subgraph vertex by vertex");

  auto* inertia = app.add_subcommand("inertia-chain", "Inertia orders along a subdivided edge");
  inertia->add_option("--n", o.n, "Edge length")->required();
  inertia->add_option("--m", o.m, "Inertia order at the endpoint")->required();

  auto* trans = app.add_subcommand("transvection", "Transvection criterion on an edge");
  model(trans);
  curve(trans);
  trans->add_option("--edge", o.edge, "Edge id")->required();
  trans->add_option("--ell", o.ell, "Torsion prime")->required();
  trans->add_option("--group-order", o.group_order, "|G|")->required();
  trans->add_option("--image-order", o.image_order, "|rho_ell(G)|");

  auto* fiber = app.add_subcommand("fiber", "Edges above an edge in a Galois cover");
  fiber->add_option("--reduction", o.reduction, "Good or Multiplicative")->required();
  fiber->add_option("--group-order", o.group_order, "|G|")->required();
  fiber->add_option("--ell", o.ell, "Torsion prime");
  fiber->add_option("--delta", o.delta, "delta_e(phi_j)");
  fiber->add_option("--length", o.length, "Edge length l(e)");
  fiber->add_option("--image-order", o.image_order, "|rho_ell(G)|");
  fiber->add_option("--torsion-level", o.torsion_level, "N for E[N] in the good case");

  auto* sl2 = app.add_subcommand("sl2", "SL_2(Z/N) utilities");
  sl2->require_subcommand(1);
  std::string sl2_sub;
  for (const char* name : {"order", "generate", "check"}) {
    auto* c = sl2->add_subcommand(name, std::string("sl2 ") + name);
    c->add_option("--modulus", o.modulus, "N")->required();
    if (std::string(name) != "order") c->add_option("--gens", o.gens, "Matrices \"a,b,c,d;a,b,c,d\"")->required();
    if (std::string(name) == "generate") c->add_option("--cap", o.cap, "Maximum closure size");
    c->callback([&sl2_sub, name] { sl2_sub = name; });
  }

  auto* tate = app.add_subcommand("tate-q", "Valuation of the Tate parameter at a vertex");
  model(tate);
  curve(tate);
  tate->add_option("--vertex", o.vertex, "Vertex id")->required();

  auto* hasse = app.add_subcommand("hasse", "Hasse invariant -c4/c6");
  curve(hasse);
  model(hasse);

  auto* dpoly = app.add_subcommand("division-poly", "Division polynomial for N = 2 or 3");
  curve(dpoly);
  dpoly->add_option("--n", o.n, "N")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Json out;
    if (lap->parsed()) out = cmd_laplacian(o);
    else if (div->parsed()) out = cmd_divisor(o);
    else if (red->parsed()) out = cmd_reduction_type(o);
    else if (twist->parsed()) out = cmd_minimal_twist(o);
    else if (sub->parsed()) out = cmd_subdivide(o);
    else if (inertia->parsed()) out = io::to_json(inertia_chain(o.n, o.m));
    else if (trans->parsed()) out = cmd_transvection(o);
    else if (fiber->parsed()) out = cmd_fiber(o);
    else if (sl2->parsed()) out = cmd_sl2(sl2_sub, o);
    else if (tate->parsed()) out = cmd_tate_q(o);
    else if (hasse->parsed()) out = cmd_hasse(o);
    else if (dpoly->parsed()) out = cmd_division_poly(o);
    if (o.json)
      std::cout << io::dump(out) << "\n";
    else
      print_summary(out);
    return 0;
  } catch (const DomainError& e) {
    std::cerr << Json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
