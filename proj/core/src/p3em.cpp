#include "holant/p3em.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "holant/error.hpp"

namespace holant {

namespace {

// The dart at v that is neither a nor b.
int third_dart(const PlaneGraph& g, int v, int a, int b) {
  for (int d : g.rotation(v))
    if (d != a && d != b) return d;
  fail(ErrorKind::InternalInvariant, "vertex has no third dart");
}

int other_end(const PlaneGraph& g, int d) { return g.vertex(g.twin(d)); }

bool has_loop(const PlaneGraph& g) {
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.is_loop(e)) return true;
  return false;
}

bool has_parallel(const PlaneGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::set<int> seen;
    for (int d : g.rotation(v)) {
      int u = other_end(g, d);
      if (u == v) continue;
      if (!seen.insert(u).second) return true;
    }
  }
  return false;
}

// Kind of a connected cubic component that has no matching, or "".
std::string exceptional_kind(const PlaneGraph& g) {
  if (g.num_vertices() == 2 && !has_loop(g)) return "M23";
  if (g.num_vertices() == 4 && !has_loop(g) && !has_parallel(g)) return "K4";
  return "";
}

// Distinct vertices along a face boundary, or empty when a vertex repeats.
std::vector<int> simple_boundary_vertices(const PlaneGraph& g, const Face& f) {
  std::vector<int> vs;
  for (int d : f.boundary) vs.push_back(g.vertex(d));
  std::vector<int> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {};
  return vs;
}

// Spoke at each boundary vertex of a simple face: the dart leaving the face.
std::vector<int> spokes(const PlaneGraph& g, const Face& f) {
  const auto& b = f.boundary;
  const int k = static_cast<int>(b.size());
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = third_dart(g, g.vertex(b[i]), b[i], g.twin(b[(i + k - 1) % k]));
  return out;
}

Reduction make(std::string label, std::string variant, std::vector<DerivedGraph> children, std::vector<int> local) {
  Reduction r;
  r.label = std::move(label);
  r.variant = std::move(variant);
  r.children = std::move(children);
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  r.local = std::move(local);
  return r;
}

std::vector<int> edges_at(const PlaneGraph& g, std::initializer_list<int> vertices) {
  std::vector<int> out;
  for (int v : vertices)
    for (int d : g.rotation(v)) out.push_back(g.edge_of(d));
  return out;
}

// --- reduction cases -------------------------------------------------------

std::optional<Reduction> reduce_self_loop(const PlaneGraph& g) {
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!g.is_loop(e)) continue;
    auto [l1, l2] = g.edge_darts(e);
    int a = g.vertex(l1);
    int ab = third_dart(g, a, l1, l2);
    int b = other_end(g, ab);
    int ba = g.twin(ab);
    std::vector<int> rest;
    for (int d : g.rotation(b))
      if (d != ba) rest.push_back(d);
    if (g.is_loop(g.edge_of(rest[0]))) continue;  // the dumbbell
    GraphBuilder gb(g);
    int c1 = g.twin(rest[0]), c2 = g.twin(rest[1]);
    gb.delete_vertex(a);
    gb.delete_vertex(b);
    gb.set_twin(c1, c2);
    return make("self_loop", "", {gb.finish()}, edges_at(g, {a, b}));
  }
  return std::nullopt;
}

std::optional<Reduction> reduce_parallel(const PlaneGraph& g) {
  for (int b = 0; b < g.num_vertices(); ++b) {
    const auto& rot = g.rotation(b);
    for (int i = 0; i < 3; ++i) {
      int p = rot[i], q = rot[(i + 1) % 3], r = rot[(i + 2) % 3];
      int c = other_end(g, p);
      if (c == b || other_end(g, q) != c) continue;
      if (other_end(g, r) == c) continue;  // theta
      int ct = third_dart(g, c, g.twin(p), g.twin(q));
      GraphBuilder gb(g);
      int da = g.twin(r), dd = g.twin(ct);
      gb.delete_vertex(b);
      gb.delete_vertex(c);
      gb.set_twin(da, dd);
      return make("parallel_edges", other_end(g, r) == other_end(g, ct) ? "common_neighbour" : "distinct",
                  {gb.finish()}, edges_at(g, {b, c}));
    }
  }
  return std::nullopt;
}

std::optional<Reduction> reduce_triangle(const PlaneGraph& g) {
  for (const auto& f : g.faces()) {
    if (f.boundary.size() != 3) continue;
    auto t = simple_boundary_vertices(g, f);
    if (t.empty()) continue;
    auto s = spokes(g, f);
    std::array<int, 3> x{};
    for (int i = 0; i < 3; ++i) x[i] = other_end(g, s[i]);
    const auto& d = f.boundary;
    if (x[0] != x[1] && x[1] != x[2] && x[0] != x[2]) {
      GraphBuilder gb(g);
      gb.contract(d[0]);
      gb.contract(g.twin(d[2]));
      gb.delete_edge(d[1]);
      return make("triangle", "distinct_externals", {gb.finish()},
                  {g.edge_of(d[0]), g.edge_of(d[1]), g.edge_of(d[2])});
    }
    require(!(x[0] == x[1] && x[1] == x[2]), ErrorKind::InternalInvariant, "triangle case reached K4");
    int i = 0;
    while (x[i] != x[(i + 1) % 3]) ++i;
    int a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3], dv = x[i];
    int dd = third_dart(g, dv, g.twin(s[i]), g.twin(s[(i + 1) % 3]));
    GraphBuilder gb(g);
    int j1 = g.twin(s[(i + 2) % 3]), j2 = g.twin(dd);
    for (int v : {a, b, c, dv}) gb.delete_vertex(v);
    gb.set_twin(j1, j2);
    return make("triangle", "shared_external", {gb.finish()}, edges_at(g, {a, b, c, dv}));
  }
  return std::nullopt;
}

std::optional<Reduction> reduce_bridge(const PlaneGraph& g) {
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e) || !g.is_bridge(e)) continue;
    auto [d, t] = g.edge_darts(e);
    int b = g.vertex(d), ev = g.vertex(t);
    GraphBuilder gb(g);
    std::vector<int> joins;
    for (int v : {b, ev})
      for (int x : g.rotation(v))
        if (x != d && x != t) joins.push_back(g.twin(x));
    gb.delete_vertex(b);
    gb.delete_vertex(ev);
    gb.set_twin(joins[0], joins[1]);
    gb.set_twin(joins[2], joins[3]);
    return make("bridge", "", {gb.finish()}, edges_at(g, {b, ev}));
  }
  return std::nullopt;
}

std::optional<Reduction> reduce_square(const PlaneGraph& g) {
  for (const auto& f : g.faces()) {
    if (f.boundary.size() != 4 || simple_boundary_vertices(g, f).empty()) continue;
    const auto& d = f.boundary;  // A->B, B->C, C->D, D->A
    GraphBuilder gb(g);
    gb.contract(g.twin(d[3]));
    gb.contract(d[1]);
    gb.delete_edge(d[2]);
    return make("square", "", {gb.finish()}, {g.edge_of(d[1]), g.edge_of(d[2]), g.edge_of(d[3])});
  }
  return std::nullopt;
}

// Vertices reachable from start without entering any vertex of `blocked`.
std::vector<int> region(const PlaneGraph& g, int start, const std::vector<int>& blocked) {
  std::vector<char> seen(g.num_vertices(), 0);
  for (int v : blocked) seen[v] = 1;
  std::vector<int> out{start};
  seen[start] = 1;
  for (size_t i = 0; i < out.size(); ++i)
    for (int d : g.rotation(out[i])) {
      int u = other_end(g, d);
      if (!seen[u]) {
        seen[u] = 1;
        out.push_back(u);
      }
    }
  return out;
}

std::optional<Reduction> reduce_chord(const PlaneGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> on_face(n, -1);
  for (const auto& f : g.faces()) {
    if (simple_boundary_vertices(g, f).empty()) continue;
    for (int d : f.boundary) on_face[g.vertex(d)] = f.id;
    auto s = spokes(g, f);
    const int k = static_cast<int>(f.boundary.size());
    for (int i = 0; i < k; ++i) {
      int a = g.vertex(f.boundary[i]);
      int bv = other_end(g, s[i]);
      if (on_face[bv] != f.id) continue;
      // A = a with chord dart s[i]; C and E are its boundary neighbours.
      int dab = s[i], dba = g.twin(dab);
      int dac = f.boundary[i];
      int dae = g.twin(f.boundary[(i + k - 1) % k]);
      int c = other_end(g, dac), e = other_end(g, dae);
      auto r1 = region(g, c, {a, bv});
      std::vector<char> in1(n, 0);
      for (int v : r1) in1[v] = 1;
      if (in1[e]) continue;
      auto r2 = region(g, e, {a, bv});
      int dbd = -1, dbf = -1;
      for (int x : g.rotation(bv)) {
        if (x == dba) continue;
        (in1[other_end(g, x)] ? dbd : dbf) = x;
      }
      require(dbd != -1 && dbf != -1, ErrorKind::InternalInvariant, "chord endpoints straddle one region");

      // Region 1 side: the chord is subdivided by E' and capped by F'.
      std::optional<DerivedGraph> left;
      for (int variant = 0; variant < 4 && !left; ++variant) {
        GraphBuilder gb(g);
        for (int v : r2) gb.delete_vertex(v);
        int ep = gb.subdivide(dab);
        const auto& er = gb.rotation(ep);
        int anchor = er[variant & 1];
        int fp = gb.add_vertex();
        int f1 = gb.add_dart(fp), f2 = gb.add_dart(fp), f3 = gb.add_dart(fp);
        int r = gb.add_dart(ep, anchor);
        gb.set_twin(f1, dae);
        if (variant & 2) {
          gb.set_twin(f2, r);
          gb.set_twin(f3, dbf);
        } else {
          gb.set_twin(f2, dbf);
          gb.set_twin(f3, r);
        }
        try {
          left = gb.finish();
        } catch (const Error&) {
        }
      }
      require(left.has_value(), ErrorKind::InternalInvariant, "chord gadget has no planar orientation");

      GraphBuilder rb(g);
      for (int v : r1) rb.delete_vertex(v);
      rb.delete_vertex(a);
      rb.delete_vertex(bv);
      rb.set_twin(g.twin(dae), g.twin(dbf));
      return make("chord", "", {*left, rb.finish()}, {g.edge_of(dab), g.edge_of(dae), g.edge_of(dbf)});
    }
  }
  return std::nullopt;
}

std::optional<Reduction> reduce_pentagon(const PlaneGraph& g) {
  struct Pentagon {
    const Face* face;
    std::vector<int> a, s;
    std::array<int, 5> b;
  };
  std::vector<Pentagon> found;
  for (const auto& f : g.faces()) {
    if (f.boundary.size() != 5) continue;
    auto a = simple_boundary_vertices(g, f);
    if (a.empty()) continue;
    Pentagon p{&f, a, spokes(g, f), {}};
    for (int i = 0; i < 5; ++i) p.b[i] = other_end(g, p.s[i]);
    found.push_back(std::move(p));
  }
  // A pentagon whose externals b_i and b_{i+2} coincide splits the graph.
  for (const auto& p : found)
    for (int i = 0; i < 5; ++i) {
      if (p.b[i] != p.b[(i + 2) % 5]) continue;
      const auto& s = p.s;
      int s1 = s[(i + 1) % 5];
      int q = third_dart(g, p.b[i], g.twin(s[i]), g.twin(s[(i + 2) % 5]));
      int t1 = g.twin(s1), tq = g.twin(q);
      GraphBuilder gb(g);
      gb.detach(s1);
      gb.detach(q);
      gb.set_twin(s1, q);
      gb.set_twin(t1, tq);
      DerivedGraph split = gb.finish();
      require(split.graph.num_components() == 2, ErrorKind::InternalInvariant, "pentagon split did not separate");
      return make("pentagon", "coincident_externals", {std::move(split)}, {g.edge_of(s1), g.edge_of(q)});
    }
  if (found.empty()) return std::nullopt;
  const auto& p = found.front();
  const auto& d = p.face->boundary;
  const auto& s = p.s;
  std::vector<int> local;
  for (int i = 0; i < 5; ++i) {
    local.push_back(g.edge_of(d[i]));
    local.push_back(g.edge_of(s[i]));
  }
  GraphBuilder gb(g);
  int j1 = d[0], j2 = g.twin(s[1]), j3 = g.twin(d[2]), j4 = g.twin(s[2]);
  gb.delete_vertex(p.a[1]);
  gb.delete_vertex(p.a[2]);
  gb.set_twin(j1, j2);
  gb.set_twin(j3, j4);
  return make("pentagon", "distinct_externals", {gb.finish()}, local);
}

using Finder = std::optional<Reduction> (*)(const PlaneGraph&);
const std::vector<std::pair<std::string, Finder>>& finders() {
  static const std::vector<std::pair<std::string, Finder>> list = {
      {"self_loop", reduce_self_loop}, {"parallel_edges", reduce_parallel}, {"triangle", reduce_triangle},
      {"bridge", reduce_bridge},       {"square", reduce_square},           {"chord", reduce_chord},
      {"pentagon", reduce_pentagon},
  };
  return list;
}

// --- recursion -------------------------------------------------------------

FaceAssignment solve_graph(const PlaneGraph& g);

FaceAssignment solve_connected(const PlaneGraph& g) {
  std::string kind = exceptional_kind(g);
  require(kind.empty(), ErrorKind::InternalInvariant, "reduction produced an exceptional component " + kind);
  if (auto base = base_case(g)) return *base;
  Reduction r = step_reduce(g);
  std::vector<FaceAssignment> sub;
  for (const auto& c : r.children) sub.push_back(solve_graph(c.graph));
  return lift(g, r, sub);
}

FaceAssignment solve_graph(const PlaneGraph& g) {
  auto comps = connected_components(g);
  if (comps.size() <= 1) {
    if (g.num_vertices() == 0) return {};
    return solve_connected(g);
  }
  FaceAssignment out;
  out.face.assign(g.num_edges(), -1);
  for (const auto& comp : comps) {
    DerivedGraph sub = extract_vertices(g, comp);
    FaceAssignment s = solve_connected(sub.graph);
    for (int e = 0; e < sub.graph.num_edges(); ++e) {
      auto [d, t] = sub.graph.edge_darts(e);
      int pick = sub.graph.face_of(d) == s.face[e] ? d : t;
      int pd = sub.dart_origin[pick];
      out.face[g.edge_of(pd)] = g.face_of(pd);
    }
  }
  return out;
}

// Index of the base case g matches, or -1.
int match_base_case(const PlaneGraph& g, CanonicalForm* form) {
  if (g.num_vertices() > 8 || g.num_components() != 1) return -1;
  const auto& bases = base_case_graphs();
  static const std::vector<std::vector<int>> codes = [&] {
    std::vector<std::vector<int>> out;
    for (const auto& b : bases) out.push_back(canonical_code(b.graph));
    return out;
  }();
  CanonicalForm cf = canonical_form(g);
  for (size_t k = 0; k < bases.size(); ++k)
    if (codes[k] == cf.code) {
      if (form) *form = std::move(cf);
      return static_cast<int>(k);
    }
  return -1;
}

bool classes_cofacial(const PlaneGraph& g, const std::vector<int>& colour) {
  std::map<int, std::map<int, int>> hits;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [d, t] = g.edge_darts(e);
    ++hits[colour[e]][g.face_of(d)];
    if (g.face_of(t) != g.face_of(d)) ++hits[colour[e]][g.face_of(t)];
  }
  for (const auto& [c, faces] : hits)
    if (std::none_of(faces.begin(), faces.end(), [](const auto& p) { return p.second == 3; })) return false;
  return true;
}

BaseCaseGraph make_base(std::string name, int n, std::vector<std::pair<int, int>> edges, std::vector<int> colour) {
  // Edge k has darts 2k and 2k+1, so edge ids coincide with list order. The
  // drawn embedding is the one where every colour class shares a face.
  for (auto& g : all_embeddings_small(n, edges))
    if (g.num_components() == 1 && classes_cofacial(g, colour)) return BaseCaseGraph{std::move(name), g, colour};
  fail(ErrorKind::InternalInvariant, "base case " + name + " has no embedding matching its colouring");
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<BaseCaseGraph>& base_case_graphs() {
  static const std::vector<BaseCaseGraph> bases = {
      make_base("dumbbell", 2, {{0, 1}, {0, 0}, {1, 1}}, {0, 0, 0}),
      make_base("loop_on_diamond", 4, {{0, 1}, {0, 2}, {1, 2}, {0, 1}, {2, 3}, {3, 3}}, {0, 0, 0, 1, 1, 1}),
      make_base("loop_on_k4_split", 6,
                {{0, 3}, {3, 1}, {1, 5}, {2, 2}, {3, 2}, {1, 4}, {0, 4}, {4, 5}, {0, 5}},
                {0, 0, 0, 1, 1, 1, 2, 2, 2}),
      make_base("double_digon", 4, {{0, 1}, {1, 2}, {1, 2}, {2, 3}, {0, 3}, {0, 3}}, {0, 0, 1, 1, 0, 1}),
      make_base("digon_on_k4", 6,
                {{1, 5}, {5, 4}, {3, 4}, {3, 4}, {0, 3}, {5, 2}, {1, 2}, {1, 0}, {2, 0}},
                {0, 0, 0, 1, 1, 1, 2, 2, 2}),
      make_base("prism", 6, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 4}, {2, 5}, {4, 3}, {5, 3}, {4, 5}},
                {0, 2, 1, 0, 2, 1, 0, 1, 2}),
      make_base("diamond_digon", 6, {{0, 1}, {0, 2}, {2, 1}, {1, 3}, {3, 0}, {2, 4}, {3, 5}, {5, 4}, {5, 4}},
                {0, 1, 2, 0, 0, 1, 2, 1, 2}),
      make_base("diamond_k4_split", 8,
                {{0, 1}, {0, 2}, {2, 1}, {1, 3}, {3, 0}, {2, 4}, {3, 5}, {5, 6}, {4, 6}, {6, 7}, {5, 7}, {4, 7}},
                {0, 1, 2, 0, 0, 1, 2, 3, 1, 3, 3, 2}),
  };
  return bases;
}

std::optional<FaceAssignment> base_case(const PlaneGraph& g) {
  CanonicalForm cf;
  int k = match_base_case(g, &cf);
  if (k < 0) return std::nullopt;
  const auto& base = base_case_graphs()[k];
  CanonicalForm bf = canonical_form(base.graph);
  std::vector<int> by_label(g.num_darts());
  for (int d = 0; d < g.num_darts(); ++d) by_label[cf.dart_label[d]] = d;
  std::map<int, std::vector<int>> classes;
  for (int e = 0; e < base.graph.num_edges(); ++e) {
    int bd = base.graph.edge_darts(e).first;
    classes[base.colour[e]].push_back(g.edge_of(by_label[bf.dart_label[bd]]));
  }
  // Each colour class is co-facial; any common face takes all three.
  FaceAssignment out;
  out.face.assign(g.num_edges(), -1);
  for (const auto& [colour, edges] : classes) {
    std::map<int, int> hits;
    for (int e : edges) {
      auto [d, t] = g.edge_darts(e);
      ++hits[g.face_of(d)];
      if (g.face_of(t) != g.face_of(d)) ++hits[g.face_of(t)];
    }
    int host = -1;
    for (auto [f, c] : hits)
      if (c == 3) {
        host = f;
        break;
      }
    require(host != -1, ErrorKind::InternalInvariant, "base case colour class is not co-facial");
    for (int e : edges) out.face[e] = host;
  }
  return out;
}

Reduction step_reduce(const PlaneGraph& g) {
  require(g.is_cubic(), ErrorKind::NotCubic, "step_reduce needs a cubic graph");
  require(g.num_components() == 1, ErrorKind::PreconditionViolation, "step_reduce needs a connected graph");
  for (const auto& [label, f] : finders())
    if (auto r = f(g)) return std::move(*r);
  fail(ErrorKind::NoApplicableCase, "no reduction applies");
}

std::optional<Reduction> try_reduction(const PlaneGraph& g, const std::string& label) {
  require(g.is_cubic(), ErrorKind::NotCubic, "try_reduction needs a cubic graph");
  for (const auto& [name, f] : finders())
    if (name == label) return f(g);
  fail(ErrorKind::PreconditionViolation, "unknown reduction case " + label);
}

FaceAssignment lift(const PlaneGraph& parent, const Reduction& r, const std::vector<FaceAssignment>& child_sigmas) {
  require(child_sigmas.size() == r.children.size(), ErrorKind::PreconditionViolation, "one assignment per child");
  const int nd = parent.num_darts(), ne = parent.num_edges();
  std::vector<int> img_child(nd, -1), img_dart(nd, -1);
  for (size_t c = 0; c < r.children.size(); ++c) {
    const auto& origin = r.children[c].dart_origin;
    for (int cd = 0; cd < static_cast<int>(origin.size()); ++cd)
      if (origin[cd] >= 0) {
        img_child[origin[cd]] = static_cast<int>(c);
        img_dart[origin[cd]] = cd;
      }
  }
  std::vector<char> is_local(ne, 0);
  for (int e : r.local) is_local[e] = 1;

  FaceAssignment out;
  out.face.assign(ne, -1);
  std::vector<int> free_edges;
  for (int e = 0; e < ne; ++e) {
    auto [d, t] = parent.edge_darts(e);
    int c = img_child[d];
    bool inherit = !is_local[e] && c != -1 && img_child[t] == c;
    if (inherit) {
      const PlaneGraph& cg = r.children[c].graph;
      int cd = img_dart[d], ct = img_dart[t];
      inherit = cg.twin(cd) == ct;
      if (inherit) {
        int target = child_sigmas[c].face.at(cg.edge_of(cd));
        int fd = cg.face_of(cd), ft = cg.face_of(ct);
        if (fd != ft)
          out.face[e] = target == fd ? parent.face_of(d) : parent.face_of(t);
        else if (parent.face_of(d) == parent.face_of(t))
          out.face[e] = parent.face_of(d);
        else
          inherit = false;
      }
    }
    if (!inherit) free_edges.push_back(e);
  }

  // Complete the free edges by exhaustive search over their two sides.
  std::vector<int> count(parent.num_faces(), 0);
  for (int e = 0; e < ne; ++e)
    if (out.face[e] != -1) ++count[out.face[e]];
  std::vector<std::vector<int>> options;
  std::vector<char> touched(parent.num_faces(), 0);
  for (int e : free_edges) {
    auto [d, t] = parent.edge_darts(e);
    std::vector<int> o{parent.face_of(d)};
    if (parent.face_of(t) != o[0]) o.push_back(parent.face_of(t));
    for (int f : o) touched[f] = 1;
    options.push_back(std::move(o));
  }
  for (int f = 0; f < parent.num_faces(); ++f)
    require(touched[f] || count[f] % 3 == 0, ErrorKind::InternalInvariant,
            "lift of " + r.label + " leaves an untouched face unbalanced");
  std::vector<int> faces;
  for (int f = 0; f < parent.num_faces(); ++f)
    if (touched[f]) faces.push_back(f);
  const size_t k = free_edges.size();
  std::vector<size_t> choice(k, 0);
  for (size_t i = 0; i < k; ++i) ++count[options[i][0]];
  while (true) {
    bool ok = true;
    for (int f : faces)
      if (count[f] % 3 != 0) {
        ok = false;
        break;
      }
    if (ok) {
      for (size_t i = 0; i < k; ++i) out.face[free_edges[i]] = options[i][choice[i]];
      return out;
    }
    size_t i = 0;
    for (; i < k; ++i) {
      --count[options[i][choice[i]]];
      if (++choice[i] < options[i].size()) {
        ++count[options[i][choice[i]]];
        break;
      }
      choice[i] = 0;
      ++count[options[i][0]];
    }
    if (i == k) break;
  }
  fail(ErrorKind::InternalInvariant, "lift of " + r.label + " has no local completion");
}

P3emResult find_p3em(const PlaneGraph& g) {
  require(g.is_cubic(), ErrorKind::NotCubic, "find_p3em needs a cubic graph");
  P3emResult result;
  for (const auto& comp : connected_components(g)) {
    DerivedGraph sub = extract_vertices(g, comp);
    std::string kind = exceptional_kind(sub.graph);
    if (!kind.empty()) {
      result.exception = ExceptionalGraph{kind, comp};
      return result;
    }
  }
  result.assignment = solve_graph(g);
  return result;
}

VerifyReport verify(const PlaneGraph& g, const FaceAssignment& sigma) {
  VerifyReport rep;
  auto bad = [&](std::string kind, int e, int f, std::string msg) {
    rep.ok = false;
    rep.violation = std::move(kind);
    rep.edge = e;
    rep.face = f;
    rep.message = std::move(msg);
    return rep;
  };
  if (static_cast<int>(sigma.face.size()) != g.num_edges())
    return bad("DomainViolation", -1, -1,
               "assignment covers " + std::to_string(sigma.face.size()) + " edges, graph has " +
                   std::to_string(g.num_edges()));
  std::vector<int> count(g.num_faces(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    int f = sigma.face[e];
    auto [d, t] = g.edge_darts(e);
    if (f < 0 || f >= g.num_faces() || (g.face_of(d) != f && g.face_of(t) != f))
      return bad("IncidenceViolation", e, f,
                 "edge " + std::to_string(e) + " is not on face " + std::to_string(f));
    ++count[f];
  }
  for (int f = 0; f < g.num_faces(); ++f)
    if (count[f] % 3 != 0)
      return bad("Mod3Violation", -1, f,
                 "face " + std::to_string(f) + " receives " + std::to_string(count[f]) + " edges");
  return rep;
}

std::vector<Triple> triples(const PlaneGraph& g, const FaceAssignment& sigma) {
  VerifyReport rep = verify(g, sigma);
  require(rep.ok, ErrorKind::InvalidAssignment, rep.message);
  std::vector<Triple> out;
  std::vector<char> used(g.num_edges(), 0);
  for (const auto& f : g.faces()) {
    std::vector<int> occ;
    for (int d : f.boundary) {
      int e = g.edge_of(d);
      if (sigma.face[e] == f.id && !used[e]) {
        used[e] = 1;
        occ.push_back(d);
      }
    }
    for (size_t i = 0; i + 2 < occ.size(); i += 3) {
      Triple t;
      t.face = f.id;
      t.start = static_cast<int>(i);
      for (int j = 0; j < 3; ++j) {
        t.darts[j] = occ[i + j];
        t.edges[j] = g.edge_of(occ[i + j]);
      }
      out.push_back(t);
    }
  }
  return out;
}

PlaneGraph materialize(const PlaneGraph& g, const FaceAssignment& sigma) {
  auto ts = triples(g, sigma);
  GraphBuilder gb(g);
  std::vector<int> mid(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) mid[e] = gb.subdivide(g.edge_darts(e).first);
  for (const auto& t : ts) {
    // The midpoint dart right after twin(d) lies in the face of d.
    std::array<int, 3> spoke{};
    for (int j = 0; j < 3; ++j) {
      int d = t.darts[j];
      int m = mid[t.edges[j]];
      spoke[j] = gb.add_dart(m, gb.twin(d));
    }
    int v = gb.add_vertex();
    int s0 = gb.add_dart(v), s2 = gb.add_dart(v), s1 = gb.add_dart(v);
    gb.set_twin(s0, spoke[0]);
    gb.set_twin(s1, spoke[1]);
    gb.set_twin(s2, spoke[2]);
  }
  return gb.finish().graph;
}

// ---------------------------------------------------------------------------

bool sigma_holds(const std::array<bool, 5>& xp, bool y3p, bool y4p, const SigmaSolution& s) {
  auto n = [](bool b) { return b ? 0 : 1; };
  const auto& x = s.x;
  const auto& y = s.y;
  auto eq = [](int l, int r) { return (l - r) % 3 == 0; };
  return eq(x[0] + y[0] + n(x[1]), xp[0] + n(xp[1])) && eq(x[2] + y[2] + n(x[3]), xp[2] + n(xp[3])) &&
         eq(x[3] + y[3] + n(x[4]), xp[3] + y3p + n(xp[4])) && eq(x[4] + y[4] + n(x[0]), xp[4] + y4p + n(xp[0])) &&
         eq(x[1] + y[1] + n(x[2]), xp[1] + n(xp[2]) + n(y3p) + n(y4p)) &&
         (n(y[0]) + n(y[1]) + n(y[2]) + n(y[3]) + n(y[4])) % 3 == 0;
}

SigmaSolution solve_sigma(const std::array<bool, 5>& xp, bool y3p, bool y4p) {
  SigmaSolution s;
  s.x = xp;
  if (y3p || y4p) {
    s.y = {false, !y3p || !y4p, false, y3p, y4p};
    // y1 = ¬y'3 + ¬y'4 is 0 or 1 here since not both are 0.
  } else if (!xp[1]) {
    s.x[1] = true;
    s.y = {true, true, false, false, false};
  } else if (xp[2]) {
    s.x[2] = false;
    s.y = {false, true, true, false, false};
  } else {
    // Remaining inputs: search, preferring the fewest changes to x.
    std::optional<SigmaSolution> best;
    int best_changes = 99;
    for (int mask = 0; mask < 1024; ++mask) {
      SigmaSolution c;
      int changes = 0;
      for (int i = 0; i < 5; ++i) {
        c.x[i] = (mask >> i) & 1;
        c.y[i] = (mask >> (5 + i)) & 1;
        changes += c.x[i] != xp[i];
      }
      if (changes < best_changes && sigma_holds(xp, y3p, y4p, c)) {
        best = c;
        best_changes = changes;
      }
    }
    require(best.has_value(), ErrorKind::InternalInvariant, "pentagon system has no solution");
    return *best;
  }
  require(sigma_holds(xp, y3p, y4p, s), ErrorKind::InternalInvariant, "pentagon branch solution fails");
  return s;
}

}  // namespace holant
