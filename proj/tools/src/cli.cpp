#include "holant/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "holant/acceptance.hpp"
#include "holant/classifier.hpp"
#include "holant/error.hpp"
#include "holant/fkt.hpp"
#include "holant/json_io.hpp"
#include "holant/p3em.hpp"
#include "holant/reductions.hpp"
#include "holant/signature.hpp"
#include "holant/solvers.hpp"

namespace holant::cli {

namespace {

const std::vector<std::string> kVerbs = {"graph", "p3em", "gadget", "classify", "eval",
                                         "solve", "pm",   "reduce", "acceptance"};

// Verb handlers fill `doc` and may pick a non-zero exit code.
struct Outcome {
  Json doc = Json::object();
  int code = kOk;
};

Json read_input(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return parse_json_text(text);
  }
  return load_json_file(path);
}

// Documents the CLI writes wrap their payload; inputs accept either form.
const Json& unwrap(const Json& j, const char* key) { return j.is_object() && j.contains(key) ? j.at(key) : j; }

PlaneGraph read_graph(const std::string& path) { return graph_from_json(unwrap(read_input(path), "graph")); }
SignatureGrid read_grid(const std::string& path) { return grid_from_json(unwrap(read_input(path), "grid")); }

Vec parse_sig_arg(const std::string& text, std::size_t arity_plus_one) {
  Vec f = parse_signature(text);
  require(f.size() == arity_plus_one, ErrorKind::MalformedInput,
          "expected " + std::to_string(arity_plus_one) + " signature entries, got " + std::to_string(f.size()));
  return f;
}

Scalar parse_scalar_arg(const std::string& text) {
  // A rational "p/q", or a quadratic element as JSON {"a":..,"b":..,"d":..}.
  if (text.rfind("{", 0) == 0) return scalar_from_json(parse_json_text(text));
  return Scalar(parse_rational(text));
}

Json works_to_json(const WorksReport& w) {
  return {{"works", w.works()},           {"nonsingular", w.nonsingular},   {"trace_zero", w.trace_zero},
          {"ratio_order3", w.ratio_order3}, {"ratio_order4", w.ratio_order4}, {"ratio_order6", w.ratio_order6},
          {"equal_eigen", w.equal_eigen}};
}

Json params_to_json(const CaseParams& p) {
  Json j{{"case", p.tractable_case}};
  switch (p.tractable_case) {
    case 1:
      j["scale"] = scalar_to_json(p.scale);
      j["u"] = vec_to_json(p.u);
      break;
    case 3:
      j["family"] = affine_family_name(p.family);
      j["a"] = scalar_to_json(p.a);
      break;
    case 4:
      j["sign"] = p.sign;
      [[fallthrough]];
    default:
      j["a"] = scalar_to_json(p.a);
      j["b"] = scalar_to_json(p.b);
  }
  return j;
}

Json triples_to_json(const std::vector<Triple>& ts) {
  Json out = Json::array();
  for (const Triple& t : ts) out.push_back({{"face", t.face}, {"edges", t.edges}, {"darts", t.darts}, {"start", t.start}});
  return out;
}

// ---------------------------------------------------------------------------
// graph

Outcome graph_validate(const std::string& path) {
  PlaneGraph g = read_graph(path);
  int loops = 0, bridges = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    loops += g.is_loop(e);
    bridges += g.is_bridge(e);
  }
  return {{{"valid", true},
           {"vertices", g.num_vertices()},
           {"edges", g.num_edges()},
           {"faces", g.num_faces()},
           {"components", g.num_components()},
           {"cubic", g.is_cubic()},
           {"loops", loops},
           {"bridges", bridges}}};
}

Outcome graph_faces(const std::string& path) {
  PlaneGraph g = read_graph(path);
  Json faces = Json::array();
  for (const Face& f : g.faces()) faces.push_back({{"id", f.id}, {"boundary", f.boundary}});
  return {{{"faces", faces}}};
}

Outcome graph_gen(int n, bool bipartite, std::uint64_t seed) {
  PlaneGraph g = bipartite ? generate_cubic_bipartite_plane(n, seed) : generate_cubic_plane(n, seed);
  return {{{"seed", seed}, {"bipartite", bipartite}, {"graph", graph_to_json(g)}}};
}

// ---------------------------------------------------------------------------
// p3em

Outcome p3em_find(const std::string& path) {
  PlaneGraph g = read_graph(path);
  P3emResult r = find_p3em(g);
  if (r.exception) return {{{"exception", r.exception->kind}, {"vertices", r.exception->vertices}}};
  return {{{"assignment", assignment_to_json(*r.assignment)}, {"triples", triples_to_json(triples(g, *r.assignment))}}};
}

Outcome p3em_verify(const std::string& graph_path, const std::string& assignment_path) {
  PlaneGraph g = read_graph(graph_path);
  VerifyReport r = verify(g, assignment_from_json(read_input(assignment_path)));
  Json doc{{"ok", r.ok}};
  if (!r.ok) {
    doc["violation"] = r.violation;
    doc["edge"] = r.edge;
    doc["face"] = r.face;
    doc["message"] = r.message;
  }
  return {doc, r.ok ? kOk : kInputError};
}

Outcome p3em_materialize(const std::string& graph_path, const std::string& assignment_path) {
  PlaneGraph g = read_graph(graph_path);
  FaceAssignment sigma;
  if (assignment_path.empty()) {
    P3emResult r = find_p3em(g);
    if (r.exception) fail(ErrorKind::ExceptionalGraph, "the graph has a " + r.exception->kind + " component");
    sigma = *r.assignment;
  } else {
    sigma = assignment_from_json(read_input(assignment_path));
  }
  return {{{"graph", graph_to_json(materialize(g, sigma))}}};
}

// ---------------------------------------------------------------------------
// gadget

Outcome gadget(const std::string& which, const std::string& sig, const std::string& x, const std::string& y) {
  Vec f = parse_sig_arg(sig, 4);
  Json doc{{"gadget", which}, {"signature", vec_to_json(f)}};
  if (which == "g1" || which == "g2") {
    Matrix m = which == "g1" ? gadget_G1(f) : gadget_G2(f);
    doc["matrix"] = matrix_to_json(m);
    doc["works"] = works_to_json(works_report(m));
  } else if (which == "g3") {
    doc["symmetric"] = vec_to_json(gadget_G3(f));
  } else if (which == "g4") {
    doc["matrix"] = matrix_to_json(gadget_G4(f));
    try {
      G4Normalized n = gadget_G4_normalized(f);
      doc["normalized"] = {{"scale", scalar_to_json(n.scale)}, {"z", scalar_to_json(n.z)}, {"matrix", matrix_to_json(n.matrix)}};
    } catch (const Error&) {
      // Only [1,a,1,a] with a outside {0,-1} normalizes.
    }
  } else {
    const Scalar sx = x.empty() ? Scalar(1) : parse_scalar_arg(x);
    require(!y.empty(), ErrorKind::MalformedInput, "nonlin needs --y");
    const Scalar sy = parse_scalar_arg(y);
    doc["unary"] = vec_to_json(nonlinearity_gadget(f, sy));
    doc["table"] = vec_to_json(eval_gadget(grid_nonlinearity(f, sx, sy)));
  }
  return {doc};
}

// ---------------------------------------------------------------------------
// classify, eval, solve, pm

Outcome classify_cmd(const std::string& sig) {
  Vec f = parse_signature(sig);
  if (f.size() == 3) {
    BinaryVerdict b = classify_binary(f);
    return {{{"signature", vec_to_json(f)}, {"planar", b.tractable ? "FP" : "#P-hard"}, {"reason", b.reason}},
            b.tractable ? kOk : kHard};
  }
  require(f.size() == 4, ErrorKind::MalformedInput, "classify takes a binary or ternary signature");
  Verdict v = classify(f);
  Json doc{{"signature", vec_to_json(f)},
           {"planar", v.planar_fp ? "FP" : "#P-hard"},
           {"general", v.general_fp ? "FP" : "#P-hard"},
           {"cases", v.cases}};
  if (v.params) {
    const Json primary = params_to_json(*v.params);
    for (const auto& [k, val] : primary.items()) doc[k] = val;
    Json all = Json::array();
    for (const CaseParams& p : v.all_params) all.push_back(params_to_json(p));
    doc["matches"] = all;
  }
  if (v.normalized)
    doc["normalized"] = {{"f", vec_to_json(v.normalized->f)},
                         {"scale", scalar_to_json(v.normalized->scale)},
                         {"flipped", v.normalized->flipped}};
  if (v.g1) doc["g1"] = works_to_json(*v.g1);
  if (v.g2) doc["g2"] = works_to_json(*v.g2);
  return {doc, v.planar_fp ? kOk : kHard};
}

Outcome eval_cmd(const std::string& path, bool collapsed, bool as_gadget, bool contract) {
  SignatureGrid g = read_grid(path);
  if (as_gadget) return {{{"signature", vec_to_json(eval_gadget(g))}}};
  const Scalar v = collapsed ? eval_collapsed(g) : contract ? eval_contract(g) : eval(g);
  return {{{"value", scalar_to_json(v)}}};
}

Outcome solve_cmd(const std::string& path, std::optional<int> force) {
  SolveResult r = solve(read_grid(path), force);
  Json doc{{"value", scalar_to_json(r.value)}, {"case", r.tractable_case}};
  if (r.tractable_case > 0) doc["params"] = params_to_json(r.params);
  return {doc};
}

Outcome pm_cmd(const std::string& path, const std::string& weights) {
  PlaneGraph g = read_graph(path);
  Vec w;
  if (!weights.empty()) w = vec_from_json(weights.front() == '[' ? parse_json_text(weights) : read_input(weights));
  return {{{"perfect_matchings", scalar_to_json(count_pm(g, w))}}};
}

// ---------------------------------------------------------------------------
// reduce

Vec common_left_signature(const SignatureGrid& g) {
  std::optional<Vec> f;
  for (const GridNode& n : g.nodes()) {
    if (n.kind != GridNode::Kind::Left) continue;
    require(!f || *f == n.symmetric, ErrorKind::WrongForm, "left nodes carry different signatures");
    f = n.symmetric;
  }
  require(f.has_value(), ErrorKind::WrongForm, "the grid has no left nodes");
  return *f;
}

SignatureGrid with_left(SignatureGrid g, const Vec& f) {
  for (GridNode& n : g.nodes())
    if (n.kind == GridNode::Kind::Left) n.symmetric = f;
  return g;
}

// A grid document either carries cross-over nodes already or lists crossings.
SignatureGrid planar_input(const Json& j) {
  SignatureGrid g = grid_from_json(unwrap(j, "grid"));
  if (j.is_object() && j.contains("crossings")) return planarize(g, crossings_from_json(j.at("crossings")));
  return g;
}

Outcome reduce_planarize(const std::string& path) {
  Json j = read_input(path);
  require(j.is_object() && j.contains("crossings"), ErrorKind::MalformedInput, "input needs a \"crossings\" list");
  SignatureGrid out = planar_input(j);
  grid_graph(out);
  return {{{"grid", grid_to_json(out)}, {"crossovers", j.at("crossings").size()}}};
}

Outcome reduce_interpolate(const std::string& path, const std::string& a, bool check) {
  Json j = read_input(path);
  SignatureGrid g = planar_input(j);
  Vec f = a.empty() ? common_left_signature(g) : Vec{1, parse_scalar_arg(a), 1, parse_scalar_arg(a)};
  g = with_left(g, f);
  InterpolationRun run = interpolate_recover(g, f);
  Json doc{{"signature", vec_to_json(f)},
           {"copies", run.copies},
           {"nodes", vec_to_json(run.nodes)},
           {"values", vec_to_json(run.values)},
           {"coefficients", vec_to_json(run.coefficients)},
           {"recovered", scalar_to_json(run.recovered)},
           {"node_bits", run.node_bits}};
  if (check) {
    const Scalar direct = eval(g);
    doc["direct"] = scalar_to_json(direct);
    doc["agrees"] = direct == run.recovered;
    if (direct != run.recovered) return {doc, kInternal};
  }
  return {doc};
}

Outcome reduce_lemma9(const std::string& path, const std::string& sig, const std::string& x, const std::string& y,
                      bool check) {
  Vec f = parse_sig_arg(sig, 4);
  const Scalar sx = parse_scalar_arg(x), sy = parse_scalar_arg(y);
  SignatureGrid in = incidence_grid(read_graph(path), flat_signature(f, sx), {1, 0, 0, 1});
  Lemma9Result r = lemma9_transform(in, f, sx, sy);
  Json doc{{"grid", grid_to_json(r.grid)},
           {"factor", scalar_to_json(r.factor)},
           {"g1_count", r.g1_count},
           {"g2_count", r.g2_count},
           {"assignment", assignment_to_json(r.sigma)}};
  if (check) {
    const Scalar before = eval_contract(in), after = eval_contract(r.grid);
    doc["value_in"] = scalar_to_json(before);
    doc["value_out"] = scalar_to_json(after);
    doc["agrees"] = after == r.factor * before;
    if (after != r.factor * before) return {doc, kInternal};
  }
  return {doc};
}

Outcome reduce_gadget_p() {
  PReport r = verify_P();
  Json supports = Json::array();
  for (const Integer& s : r.supports) supports.push_back(s.get_str());
  return {{{"ok", r.ok}, {"table", vec_to_json(r.table)}, {"supports", supports}, {"failures", r.failures},
           {"grid", grid_to_json(build_gadget_P())}},
          r.ok ? kOk : kInternal};
}

// ---------------------------------------------------------------------------
// acceptance

Outcome acceptance_cmd(const std::string& only, std::uint64_t seed, const std::string& data_dir, bool json,
                       std::ostream& lines) {
  acceptance::Options o;
  o.only = only;
  o.seed = seed;
  o.data_dir = data_dir;
  bool all = true;
  Json rows = Json::array();
  for (const acceptance::CriterionResult& r : acceptance::run(o, [&](const acceptance::CriterionResult& r) {
         if (!json) lines << acceptance::format_line(r) << std::endl;
       })) {
    all &= r.pass;
    rows.push_back({{"id", r.id}, {"group", r.group}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                    {"seconds", std::to_string(r.seconds)}});
  }
  return {{{"seed", seed}, {"only", only}, {"pass", all}, {"criteria", rows}}, all ? kOk : kInternal};
}

int exit_code_for(ErrorKind kind) {
  if (kind == ErrorKind::HardSignature) return kHard;
  return is_internal(kind) ? kInternal : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact planar Holant toolkit", "holant"};
  app.require_subcommand(1);
  bool pretty = false;
  std::string output;
  app.add_flag("--pretty", pretty, "Indent JSON output");
  app.add_option("-o,--output", output, "Write JSON to this file instead of stdout");

  std::string path, path2, sig, x, y, a, weights, only, which;
  std::uint64_t seed = 0;
  int n = 0;
  bool bipartite = false, collapsed = false, as_gadget = false, contract = false, check = false, json = false;
  std::optional<int> force;
  std::string data_dir = HOLANT_DEFAULT_DATA_DIR;

  auto* graph = app.add_subcommand("graph", "Plane graph utilities")->require_subcommand(1);
  auto* g_validate = graph->add_subcommand("validate", "Check a rotation system");
  g_validate->add_option("file", path, "Graph JSON")->required();
  auto* g_faces = graph->add_subcommand("faces", "List faces");
  g_faces->add_option("file", path, "Graph JSON")->required();
  auto* g_gen = graph->add_subcommand("gen", "Random connected cubic plane graph");
  g_gen->add_option("--n", n, "Vertex count (even)")->required();
  g_gen->add_flag("--bipartite", bipartite, "Generate a bipartite graph");
  g_gen->add_option("--seed", seed, "Random seed")->required();

  auto* p3em = app.add_subcommand("p3em", "Planar 3-way edge matchings")->require_subcommand(1);
  auto* p_find = p3em->add_subcommand("find", "Construct a matching");
  p_find->add_option("graph", path, "Graph JSON")->required();
  auto* p_verify = p3em->add_subcommand("verify", "Check a matching");
  p_verify->add_option("graph", path, "Graph JSON")->required();
  p_verify->add_option("assignment", path2, "Assignment JSON")->required();
  auto* p_mat = p3em->add_subcommand("materialize", "Draw the matching's triple vertices");
  p_mat->add_option("graph", path, "Graph JSON")->required();
  p_mat->add_option("assignment", path2, "Assignment JSON (found when omitted)");

  auto* gad = app.add_subcommand("gadget", "Gadget signatures by brute force");
  gad->add_option("which", which, "g1, g2, g3, g4 or nonlin")->required()->check(CLI::IsMember({"g1", "g2", "g3", "g4", "nonlin"}));
  gad->add_option("--sig", sig, "Ternary signature [f0,f1,f2,f3]")->required();
  gad->add_option("--x", x, "Unary parameter x (nonlin)");
  gad->add_option("--y", y, "Unary parameter y (nonlin)");

  auto* cls = app.add_subcommand("classify", "Dichotomy verdict");
  cls->add_option("--sig", sig, "Signature, ternary or binary")->required();

  auto* ev = app.add_subcommand("eval", "Brute-force Holant value");
  ev->add_option("grid", path, "Grid JSON")->required();
  ev->add_flag("--collapsed", collapsed, "Sum over right-node values");
  ev->add_flag("--gadget", as_gadget, "Signature over the dangling slots");
  ev->add_flag("--contract", contract, "Variable elimination instead of enumeration");

  auto* sv = app.add_subcommand("solve", "Polynomial-time solver chosen by the classifier");
  sv->add_option("grid", path, "Grid JSON")->required();
  sv->add_option("--force-case", force, "Run this case's solver")->check(CLI::Range(1, 5));

  auto* pm = app.add_subcommand("pm", "Perfect matchings by Pfaffian");
  pm->add_option("graph", path, "Graph JSON")->required();
  pm->add_option("--weights", weights, "Edge weights as a JSON array or file");

  auto* red = app.add_subcommand("reduce", "Reduction demonstrations")->require_subcommand(1);
  auto* r_plan = red->add_subcommand("planarize", "Replace crossings by cross-over nodes");
  r_plan->add_option("input", path, "{\"grid\":..., \"crossings\":[...]}")->required();
  auto* r_int = red->add_subcommand("interpolate", "Recover a cross-over grid's value by interpolation");
  r_int->add_option("input", path, "Grid with cross-over nodes, or grid plus crossings")->required();
  r_int->add_option("--a", a, "Use f = [1,a,1,a] on every left node");
  r_int->add_flag("--check", check, "Compare with the direct value");
  auto* r_l9 = red->add_subcommand("lemma9", "Absorb the [1,x] unaries of a cubic graph");
  r_l9->add_option("graph", path, "Cubic plane graph JSON")->required();
  r_l9->add_option("--sig", sig, "Ternary signature f")->required();
  r_l9->add_option("--x", x, "Unary [1,x] on every edge")->required();
  r_l9->add_option("--y", y, "Helper parameter y")->required();
  r_l9->add_flag("--check", check, "Compare both values by contraction");
  auto* r_p = red->add_subcommand("gadget-p", "Build and verify the cross-over pinned-0 gadget");

  auto* acc = app.add_subcommand("acceptance", "Run the acceptance criteria");
  acc->add_option("--only", only, "Group name or criterion number");
  acc->add_option("--seed", seed, "Random seed")->default_val(acceptance::Options{}.seed);
  acc->add_option("--data-dir", data_dir, "Directory with the shipped instances");
  acc->add_flag("--json", json, "Emit the report as JSON instead of text lines");

  Outcome result;
  try {
    if (!args.empty() && args.front().rfind("-", 0) != 0 &&
        std::find(kVerbs.begin(), kVerbs.end(), args.front()) == kVerbs.end())
      fail(ErrorKind::UnknownVerb, "unknown verb \"" + args.front() + "\"");
    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return kOk;
      }
      fail(ErrorKind::MalformedInput, e.what());
    }
    if (*g_validate) result = graph_validate(path);
    else if (*g_faces) result = graph_faces(path);
    else if (*g_gen) result = graph_gen(n, bipartite, seed);
    else if (*p_find) result = p3em_find(path);
    else if (*p_verify) result = p3em_verify(path, path2);
    else if (*p_mat) result = p3em_materialize(path, path2);
    else if (*gad) result = gadget(which, sig, x, y);
    else if (*cls) result = classify_cmd(sig);
    else if (*ev) result = eval_cmd(path, collapsed, as_gadget, contract);
    else if (*sv) result = solve_cmd(path, force);
    else if (*pm) result = pm_cmd(path, weights);
    else if (*r_plan) result = reduce_planarize(path);
    else if (*r_int) result = reduce_interpolate(path, a, check);
    else if (*r_l9) result = reduce_lemma9(path, sig, x, y, check);
    else if (*r_p) result = reduce_gadget_p();
    else if (*acc) result = acceptance_cmd(only, seed, data_dir, json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    result.doc = {{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}};
    result.code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    result.doc = {{"error", {{"kind", "InternalInvariant"}, {"message", e.what()}}}};
    result.code = kInternal;
  }
  if (*acc && !json && !result.doc.contains("error")) return result.code;
  result.doc["schema_version"] = kSchemaVersion;
  const std::string text = result.doc.dump(pretty ? 2 : -1) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output);
    if (!file) {
      err << "error: cannot write " << output << "\n";
      return kInputError;
    }
    file << text;
  }
  return result.code;
}

}  // namespace holant::cli
