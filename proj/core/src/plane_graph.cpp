#include "holant/plane_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "holant/error.hpp"

namespace holant {

// ---------------------------------------------------------------------------
// PlaneGraph

PlaneGraph PlaneGraph::build(const RotationSpec& spec) {
  const int nd = static_cast<int>(spec.darts.size());
  const int nv = static_cast<int>(spec.vertices.size());
  PlaneGraph g;
  g.twin_.assign(nd, -1);
  g.vertex_.assign(nd, -1);
  for (const auto& rec : spec.darts) {
    require(rec.id >= 0 && rec.id < nd, ErrorKind::MalformedInput,
            "dart id " + std::to_string(rec.id) + " outside 0.." + std::to_string(nd - 1));
    require(g.vertex_[rec.id] == -1, ErrorKind::MalformedInput,
            "duplicate dart id " + std::to_string(rec.id));
    require(rec.vertex >= 0 && rec.vertex < nv, ErrorKind::MalformedInput,
            "dart " + std::to_string(rec.id) + " names unknown vertex " + std::to_string(rec.vertex));
    require(rec.twin >= 0 && rec.twin < nd, ErrorKind::NonInvolutionTwin,
            "dart " + std::to_string(rec.id) + " has out-of-range twin " + std::to_string(rec.twin));
    g.twin_[rec.id] = rec.twin;
    g.vertex_[rec.id] = rec.vertex;
  }
  for (int d = 0; d < nd; ++d) {
    require(g.twin_[d] != d, ErrorKind::NonInvolutionTwin, "dart " + std::to_string(d) + " is its own twin");
    require(g.twin_[g.twin_[d]] == d, ErrorKind::NonInvolutionTwin,
            "twin is not an involution at dart " + std::to_string(d));
  }
  g.rotation_.assign(nv, {});
  std::vector<bool> seen_vertex(nv, false);
  g.pos_.assign(nd, -1);
  for (const auto& rec : spec.vertices) {
    require(rec.id >= 0 && rec.id < nv, ErrorKind::MalformedInput,
            "vertex id " + std::to_string(rec.id) + " outside 0.." + std::to_string(nv - 1));
    require(!seen_vertex[rec.id], ErrorKind::MalformedInput, "duplicate vertex id " + std::to_string(rec.id));
    seen_vertex[rec.id] = true;
    for (int d : rec.rotation) {
      require(d >= 0 && d < nd, ErrorKind::DartMissingFromRotation,
              "rotation of vertex " + std::to_string(rec.id) + " names unknown dart " + std::to_string(d));
      require(g.pos_[d] == -1, ErrorKind::DartMissingFromRotation,
              "dart " + std::to_string(d) + " appears in more than one rotation slot");
      require(g.vertex_[d] == rec.id, ErrorKind::DartMissingFromRotation,
              "dart " + std::to_string(d) + " belongs to vertex " + std::to_string(g.vertex_[d]) +
                  " but sits in the rotation of vertex " + std::to_string(rec.id));
      g.pos_[d] = static_cast<int>(g.rotation_[rec.id].size());
      g.rotation_[rec.id].push_back(d);
    }
  }
  for (int d = 0; d < nd; ++d)
    require(g.pos_[d] != -1, ErrorKind::DartMissingFromRotation,
            "dart " + std::to_string(d) + " is missing from its vertex rotation");
  g.index();

  // Euler per component: v - e + f = 2
  std::vector<long> cv(g.num_components_, 0), ce(g.num_components_, 0), cf(g.num_components_, 0);
  for (int v = 0; v < nv; ++v) ++cv[g.component_[v]];
  for (int e = 0; e < g.num_edges(); ++e) ++ce[g.component_[g.vertex_[g.edge_darts_[e].first]]];
  for (const auto& f : g.faces_) ++cf[g.component_[g.vertex_[f.boundary.front()]]];
  for (int c = 0; c < g.num_components_; ++c) {
    // an isolated vertex has one face in the topological sense but no dart orbit
    long faces = cf[c] == 0 ? 1 : cf[c];
    require(cv[c] - ce[c] + faces == 2, ErrorKind::NonPlanarEmbedding,
            "component " + std::to_string(c) + " has v-e+f = " + std::to_string(cv[c] - ce[c] + faces));
  }
  return g;
}

PlaneGraph PlaneGraph::from_rotations(const std::vector<std::vector<int>>& rotations,
                                      const std::vector<int>& twin) {
  RotationSpec spec;
  std::vector<int> owner(twin.size(), 0);
  for (int v = 0; v < static_cast<int>(rotations.size()); ++v) {
    spec.vertices.push_back({v, rotations[v]});
    for (int d : rotations[v]) {
      require(d >= 0 && d < static_cast<int>(twin.size()), ErrorKind::DartMissingFromRotation,
              "unknown dart " + std::to_string(d));
      owner[d] = v;
    }
  }
  for (int d = 0; d < static_cast<int>(twin.size()); ++d) spec.darts.push_back({d, twin[d], owner[d]});
  return build(spec);
}

RotationSpec PlaneGraph::spec() const {
  RotationSpec s;
  for (int v = 0; v < num_vertices(); ++v) s.vertices.push_back({v, rotation_[v]});
  for (int d = 0; d < num_darts(); ++d) s.darts.push_back({d, twin_[d], vertex_[d]});
  return s;
}

void PlaneGraph::index() {
  const int nd = num_darts();
  edge_of_.assign(nd, -1);
  edge_darts_.clear();
  for (int d = 0; d < nd; ++d) {
    if (edge_of_[d] != -1) continue;
    edge_of_[d] = edge_of_[twin_[d]] = static_cast<int>(edge_darts_.size());
    edge_darts_.emplace_back(d, twin_[d]);
  }
  face_of_.assign(nd, -1);
  faces_.clear();
  for (int d = 0; d < nd; ++d) {
    if (face_of_[d] != -1) continue;
    Face f;
    f.id = static_cast<int>(faces_.size());
    int cur = d;
    do {
      face_of_[cur] = f.id;
      f.boundary.push_back(cur);
      cur = face_succ(cur);
    } while (cur != d);
    faces_.push_back(std::move(f));
  }
  component_.assign(num_vertices(), -1);
  num_components_ = 0;
  for (int s = 0; s < num_vertices(); ++s) {
    if (component_[s] != -1) continue;
    std::vector<int> stack{s};
    component_[s] = num_components_;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int d : rotation_[v]) {
        int w = vertex_[twin_[d]];
        if (component_[w] == -1) {
          component_[w] = num_components_;
          stack.push_back(w);
        }
      }
    }
    ++num_components_;
  }
}

int PlaneGraph::rot_next(int d) const {
  const auto& r = rotation_[vertex_[d]];
  int p = pos_[d] + 1;
  return r[p == static_cast<int>(r.size()) ? 0 : p];
}

int PlaneGraph::rot_prev(int d) const {
  const auto& r = rotation_[vertex_[d]];
  int p = pos_[d];
  return r[p == 0 ? r.size() - 1 : p - 1];
}

std::pair<int, int> PlaneGraph::edge_darts(int e) const {
  require(e >= 0 && e < num_edges(), ErrorKind::UnknownEdge, "unknown edge id " + std::to_string(e));
  return edge_darts_[e];
}

bool PlaneGraph::is_loop(int e) const {
  auto [a, b] = edge_darts(e);
  return vertex_[a] == vertex_[b];
}

bool PlaneGraph::is_bridge(int e) const {
  auto [a, b] = edge_darts(e);
  return face_of_[a] == face_of_[b];
}

int PlaneGraph::component_of_face(int f) const { return component_[vertex_[faces_[f].boundary.front()]]; }

bool PlaneGraph::is_cubic() const {
  return std::all_of(rotation_.begin(), rotation_.end(), [](const auto& r) { return r.size() == 3; });
}

std::vector<std::vector<int>> connected_components(const PlaneGraph& g) {
  std::vector<std::vector<int>> out(g.num_components());
  for (int v = 0; v < g.num_vertices(); ++v) out[g.component_of_vertex(v)].push_back(v);
  return out;
}

int components_without_edge(const PlaneGraph& g, int e) {
  g.edge_darts(e);  // validates e
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int count = g.num_vertices();
  for (int f = 0; f < g.num_edges(); ++f) {
    if (f == e) continue;
    auto [a, b] = g.edge_darts(f);
    int x = find(g.vertex(a)), y = find(g.vertex(b));
    if (x != y) {
      parent[x] = y;
      --count;
    }
  }
  return count;
}

DerivedGraph extract_vertices(const PlaneGraph& g, const std::vector<int>& vertices) {
  std::vector<int> vmap(g.num_vertices(), -1), dmap(g.num_darts(), -1);
  DerivedGraph out;
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  for (int v : sorted) {
    vmap[v] = static_cast<int>(out.vertex_origin.size());
    out.vertex_origin.push_back(v);
  }
  for (int d = 0; d < g.num_darts(); ++d) {
    if (vmap[g.vertex(d)] == -1) continue;
    dmap[d] = static_cast<int>(out.dart_origin.size());
    out.dart_origin.push_back(d);
  }
  std::vector<std::vector<int>> rot(sorted.size());
  std::vector<int> twin(out.dart_origin.size());
  for (int v : sorted)
    for (int d : g.rotation(v)) rot[vmap[v]].push_back(dmap[d]);
  for (int nd = 0; nd < static_cast<int>(out.dart_origin.size()); ++nd) {
    int t = dmap[g.twin(out.dart_origin[nd])];
    require(t != -1, ErrorKind::PreconditionViolation, "vertex set is not closed under adjacency");
    twin[nd] = t;
  }
  out.graph = PlaneGraph::from_rotations(rot, twin);
  return out;
}

PlaneGraph disjoint_union(const PlaneGraph& a, const PlaneGraph& b) {
  std::vector<std::vector<int>> rot;
  std::vector<int> twin;
  for (int v = 0; v < a.num_vertices(); ++v) rot.push_back(a.rotation(v));
  for (int d = 0; d < a.num_darts(); ++d) twin.push_back(a.twin(d));
  const int off = a.num_darts();
  for (int v = 0; v < b.num_vertices(); ++v) {
    std::vector<int> r;
    for (int d : b.rotation(v)) r.push_back(d + off);
    rot.push_back(r);
  }
  for (int d = 0; d < b.num_darts(); ++d) twin.push_back(b.twin(d) + off);
  return PlaneGraph::from_rotations(rot, twin);
}

// ---------------------------------------------------------------------------
// GraphBuilder

GraphBuilder::GraphBuilder(const PlaneGraph& g) {
  const int nd = g.num_darts();
  twin_.resize(nd);
  vertex_.resize(nd);
  origin_.resize(nd);
  dart_alive_.assign(nd, true);
  for (int d = 0; d < nd; ++d) {
    twin_[d] = g.twin(d);
    vertex_[d] = g.vertex(d);
    origin_[d] = d;
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    rotation_.push_back(g.rotation(v));
    vertex_alive_.push_back(true);
    vertex_origin_.push_back(v);
  }
}

int GraphBuilder::add_vertex() {
  rotation_.emplace_back();
  vertex_alive_.push_back(true);
  vertex_origin_.push_back(-1);
  return static_cast<int>(rotation_.size()) - 1;
}

int GraphBuilder::add_dart(int v, int after) {
  int d = static_cast<int>(twin_.size());
  twin_.push_back(-1);
  vertex_.push_back(v);
  origin_.push_back(-1);
  dart_alive_.push_back(true);
  auto& r = rotation_[v];
  if (after == -1) {
    r.push_back(d);
  } else {
    auto it = std::find(r.begin(), r.end(), after);
    require(it != r.end(), ErrorKind::InternalInvariant, "add_dart: anchor not in rotation");
    r.insert(it + 1, d);
  }
  return d;
}

void GraphBuilder::set_twin(int d1, int d2) {
  require(d1 != d2 && twin_[d1] == -1 && twin_[d2] == -1, ErrorKind::InternalInvariant,
          "set_twin on darts that are not both dangling");
  twin_[d1] = d2;
  twin_[d2] = d1;
}

void GraphBuilder::remove_from_rotation(int d) {
  auto& r = rotation_[vertex_[d]];
  r.erase(std::find(r.begin(), r.end(), d));
  dart_alive_[d] = false;
}

void GraphBuilder::delete_vertex(int v) {
  for (int d : rotation_[v]) {
    int t = twin_[d];
    if (t != -1 && vertex_[t] != v) twin_[t] = -1;
    dart_alive_[d] = false;
  }
  rotation_[v].clear();
  vertex_alive_[v] = false;
}

void GraphBuilder::detach(int d) {
  int t = twin_[d];
  twin_[d] = -1;
  if (t != -1) twin_[t] = -1;
}

void GraphBuilder::delete_edge(int d) {
  int t = twin_[d];
  remove_from_rotation(d);
  if (t != -1) remove_from_rotation(t);
}

int GraphBuilder::contract(int d) {
  int t = twin_[d];
  int u = vertex_[d], v = vertex_[t];
  require(u != v, ErrorKind::InternalInvariant, "contract on a loop");
  auto rotate_after = [](const std::vector<int>& r, int x) {
    std::vector<int> out;
    auto it = std::find(r.begin(), r.end(), x);
    for (auto j = it + 1; j != r.end(); ++j) out.push_back(*j);
    for (auto j = r.begin(); j != it; ++j) out.push_back(*j);
    return out;
  };
  std::vector<int> merged = rotate_after(rotation_[u], d);
  for (int y : rotate_after(rotation_[v], t)) {
    merged.push_back(y);
    vertex_[y] = u;
  }
  dart_alive_[d] = dart_alive_[t] = false;
  rotation_[u] = merged;
  rotation_[v].clear();
  vertex_alive_[v] = false;
  return u;
}

int GraphBuilder::subdivide(int d) {
  int t = twin_[d];
  int m = add_vertex();
  int p = add_dart(m);
  int q = add_dart(m);
  twin_[d] = p;
  twin_[p] = d;
  twin_[t] = q;
  twin_[q] = t;
  return m;
}

int GraphBuilder::rot_next(int d) const {
  const auto& r = rotation_[vertex_[d]];
  auto it = std::find(r.begin(), r.end(), d);
  ++it;
  return it == r.end() ? r.front() : *it;
}

DerivedGraph GraphBuilder::finish() const {
  std::vector<int> vmap(rotation_.size(), -1), dmap(twin_.size(), -1);
  DerivedGraph out;
  for (int v = 0; v < static_cast<int>(rotation_.size()); ++v) {
    if (!vertex_alive_[v]) continue;
    vmap[v] = static_cast<int>(out.vertex_origin.size());
    out.vertex_origin.push_back(vertex_origin_[v]);
  }
  for (int d = 0; d < static_cast<int>(twin_.size()); ++d) {
    if (!dart_alive_[d]) continue;
    require(twin_[d] != -1 && dart_alive_[twin_[d]], ErrorKind::InternalInvariant,
            "builder finished with a dangling dart");
    dmap[d] = static_cast<int>(out.dart_origin.size());
    out.dart_origin.push_back(origin_[d]);
  }
  std::vector<std::vector<int>> rot(out.vertex_origin.size());
  for (int v = 0; v < static_cast<int>(rotation_.size()); ++v) {
    if (!vertex_alive_[v]) continue;
    for (int d : rotation_[v]) rot[vmap[v]].push_back(dmap[d]);
  }
  std::vector<int> twin(out.dart_origin.size());
  for (int d = 0; d < static_cast<int>(twin_.size()); ++d)
    if (dart_alive_[d]) twin[dmap[d]] = dmap[twin_[d]];
  out.graph = PlaneGraph::from_rotations(rot, twin);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

std::vector<int> code_from(const PlaneGraph& g, int start, bool forward, std::vector<int>* label_out = nullptr) {
  const int nd = g.num_darts();
  std::vector<int> label(nd, -1);
  std::vector<int> order;  // darts in label order
  std::vector<int> entries;
  std::vector<bool> visited(g.num_vertices(), false);
  entries.push_back(start);
  visited[g.vertex(start)] = true;
  for (size_t i = 0; i < entries.size(); ++i) {
    int e = entries[i];
    int d = e;
    do {
      label[d] = static_cast<int>(order.size());
      order.push_back(d);
      d = forward ? g.rot_next(d) : g.rot_prev(d);
    } while (d != e);
    d = e;
    do {
      int t = g.twin(d);
      if (!visited[g.vertex(t)]) {
        visited[g.vertex(t)] = true;
        entries.push_back(t);
      }
      d = forward ? g.rot_next(d) : g.rot_prev(d);
    } while (d != e);
  }
  std::vector<int> code;
  code.reserve(entries.size() + nd);
  for (int e : entries) {
    code.push_back(-g.degree(g.vertex(e)));
    int d = e;
    do {
      code.push_back(label[g.twin(d)]);
      d = forward ? g.rot_next(d) : g.rot_prev(d);
    } while (d != e);
  }
  if (label_out) *label_out = std::move(label);
  return code;
}

}  // namespace

std::vector<int> canonical_code(const PlaneGraph& g) {
  require(g.num_components() <= 1, ErrorKind::PreconditionViolation, "canonical_code needs a connected graph");
  if (g.num_darts() == 0) return {g.num_vertices()};
  std::vector<int> best;
  for (int s = 0; s < g.num_darts(); ++s)
    for (bool fwd : {true, false}) {
      auto c = code_from(g, s, fwd);
      if (best.empty() || c < best) best = std::move(c);
    }
  return best;
}

CanonicalForm canonical_form(const PlaneGraph& g) {
  require(g.num_components() <= 1, ErrorKind::PreconditionViolation, "canonical_form needs a connected graph");
  CanonicalForm best;
  if (g.num_darts() == 0) {
    best.code = {g.num_vertices()};
    return best;
  }
  for (int s = 0; s < g.num_darts(); ++s)
    for (bool fwd : {true, false}) {
      std::vector<int> label;
      auto c = code_from(g, s, fwd, &label);
      if (best.code.empty() || c < best.code) {
        best.code = std::move(c);
        best.dart_label = std::move(label);
      }
    }
  return best;
}

bool planar_isomorphic(const PlaneGraph& a, const PlaneGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_darts() != b.num_darts()) return false;
  return canonical_code(a) == canonical_code(b);
}

std::optional<std::vector<int>> two_coloring(const PlaneGraph& g) {
  std::vector<int> color(g.num_vertices(), -1);
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int d : g.rotation(v)) {
        int w = g.vertex(g.twin(d));
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

// ---------------------------------------------------------------------------
// Small embeddings

std::vector<PlaneGraph> all_embeddings_small(int n, const std::vector<std::pair<int, int>>& edges) {
  const int ne = static_cast<int>(edges.size());
  std::vector<std::vector<int>> darts_at(n);
  std::vector<int> twin(2 * ne);
  for (int k = 0; k < ne; ++k) {
    auto [u, v] = edges[k];
    require(u >= 0 && u < n && v >= 0 && v < n, ErrorKind::MalformedInput, "edge endpoint out of range");
    darts_at[u].push_back(2 * k);
    darts_at[v].push_back(2 * k + 1);
    twin[2 * k] = 2 * k + 1;
    twin[2 * k + 1] = 2 * k;
  }
  // cyclic orders with the first dart fixed
  std::vector<std::vector<std::vector<int>>> choices(n);
  for (int v = 0; v < n; ++v) {
    auto rest = darts_at[v];
    if (rest.size() <= 2) {
      choices[v].push_back(rest);
      continue;
    }
    std::sort(rest.begin() + 1, rest.end());
    do {
      choices[v].push_back(rest);
    } while (std::next_permutation(rest.begin() + 1, rest.end()));
  }
  std::vector<PlaneGraph> out;
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) rot[v] = choices[v][idx[v]];
    try {
      out.push_back(PlaneGraph::from_rotations(rot, twin));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonPlanarEmbedding) throw;
    }
    int v = 0;
    while (v < n && ++idx[v] == choices[v].size()) idx[v++] = 0;
    if (v == n) break;
  }
  return out;
}

std::optional<PlaneGraph> embed_small(int n, const std::vector<std::pair<int, int>>& edges) {
  auto all = all_embeddings_small(n, edges);
  if (all.empty()) return std::nullopt;
  return all.front();
}

PlaneGraph theta_graph() { return PlaneGraph::from_rotations({{0, 2, 4}, {1, 5, 3}}, {1, 0, 3, 2, 5, 4}); }

PlaneGraph dumbbell_graph() {
  // vertex 0: loop (0,1) and bridge dart 4; vertex 1: loop (2,3) and bridge dart 5
  return PlaneGraph::from_rotations({{0, 1, 4}, {2, 3, 5}}, {1, 0, 3, 2, 5, 4});
}

PlaneGraph k4_graph() { return *embed_small(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}}); }

PlaneGraph cube_graph() {
  return *embed_small(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}

// ---------------------------------------------------------------------------
// Expansion moves

PlaneGraph insert_chord(const PlaneGraph& g, int d1, int d2) {
  require(g.face_of(d1) == g.face_of(d2), ErrorKind::PreconditionViolation, "chord darts on different faces");
  require(d1 == d2 || g.edge_of(d1) != g.edge_of(d2), ErrorKind::PreconditionViolation,
          "chord between the two sides of one edge");
  GraphBuilder b(g);
  if (d1 == d2) {
    int m1 = b.subdivide(d1);
    int p1 = b.twin(d1);
    int q1 = b.rotation(m1)[1];
    int m2 = b.subdivide(q1);
    int p2 = b.twin(q1);
    int r1 = b.add_dart(m1, p1);
    int r2 = b.add_dart(m2, p2);
    b.set_twin(r1, r2);
  } else {
    int m1 = b.subdivide(d1);
    int p1 = b.twin(d1);
    int m2 = b.subdivide(d2);
    int p2 = b.twin(d2);
    int r1 = b.add_dart(m1, p1);
    int r2 = b.add_dart(m2, p2);
    b.set_twin(r1, r2);
  }
  return b.finish().graph;
}

PlaneGraph insert_loop_pendant(const PlaneGraph& g, int d) {
  GraphBuilder b(g);
  int m = b.subdivide(d);
  int p = b.twin(d);
  int r = b.add_dart(m, p);
  int w = b.add_vertex();
  int s = b.add_dart(w);
  int l1 = b.add_dart(w);
  int l2 = b.add_dart(w);
  b.set_twin(r, s);
  b.set_twin(l1, l2);
  return b.finish().graph;
}

PlaneGraph insert_ladder(const PlaneGraph& g, int d1, int d2) {
  require(g.face_of(d1) == g.face_of(d2), ErrorKind::PreconditionViolation, "ladder darts on different faces");
  require(g.edge_of(d1) != g.edge_of(d2), ErrorKind::PreconditionViolation, "ladder needs two distinct edges");
  GraphBuilder b(g);
  int m1 = b.subdivide(d1);
  int p1 = b.twin(d1);
  int q1 = b.rotation(m1)[1];
  int m1b = b.subdivide(q1);
  int p1b = b.twin(q1);
  int m2 = b.subdivide(d2);
  int p2 = b.twin(d2);
  int q2 = b.rotation(m2)[1];
  int m2b = b.subdivide(q2);
  int p2b = b.twin(q2);
  int a1 = b.add_dart(m1b, p1b);
  int a2 = b.add_dart(m2, p2);
  b.set_twin(a1, a2);
  int c1 = b.add_dart(m1, p1);
  int c2 = b.add_dart(m2b, p2b);
  b.set_twin(c1, c2);
  return b.finish().graph;
}

namespace {

void check_size(int n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::InfeasibleSize,
          "cubic graphs need an even vertex count of at least 2, got " + std::to_string(n));
}

}  // namespace

PlaneGraph generate_cubic_plane(int n, std::uint64_t seed) {
  check_size(n);
  std::mt19937_64 rng(seed);
  PlaneGraph g = (rng() & 1) ? theta_graph() : dumbbell_graph();
  while (g.num_vertices() < n) {
    if (rng() % 10 == 0) {
      g = insert_loop_pendant(g, static_cast<int>(rng() % g.num_darts()));
      continue;
    }
    const auto& face = g.faces()[rng() % g.num_faces()];
    int d1 = face.boundary[rng() % face.boundary.size()];
    int d2 = face.boundary[rng() % face.boundary.size()];
    if (d1 != d2 && g.edge_of(d1) == g.edge_of(d2)) continue;
    g = insert_chord(g, d1, d2);
  }
  return g;
}

PlaneGraph generate_cubic_bipartite_plane(int n, std::uint64_t seed) {
  check_size(n);
  std::mt19937_64 rng(seed);
  PlaneGraph g = theta_graph();
  while (g.num_vertices() < n) {
    const auto& face = g.faces()[rng() % g.num_faces()];
    const int len = static_cast<int>(face.boundary.size());
    PlaneGraph next;
    if (n - g.num_vertices() < 4 || rng() % 3 == 0) {
      int d = face.boundary[rng() % len];
      next = insert_chord(g, d, d);
    } else {
      // ladder endpoints at even distance along the face keep the coloring proper
      int i = static_cast<int>(rng() % len);
      int j = static_cast<int>(rng() % len);
      if ((j - i) % 2 != 0 || g.edge_of(face.boundary[i]) == g.edge_of(face.boundary[j])) continue;
      next = insert_ladder(g, face.boundary[i], face.boundary[j]);
    }
    require(two_coloring(next).has_value(), ErrorKind::InternalInvariant, "bipartite move broke the coloring");
    g = std::move(next);
  }
  return g;
}

std::vector<PlaneGraph> enumerate_cubic_plane(int max_vertices) {
  std::vector<PlaneGraph> out;
  std::set<std::vector<int>> seen;
  std::vector<PlaneGraph> frontier;
  for (const auto& g : {theta_graph(), dumbbell_graph()}) {
    if (g.num_vertices() > max_vertices) continue;
    if (seen.insert(canonical_code(g)).second) {
      out.push_back(g);
      frontier.push_back(g);
    }
  }
  while (!frontier.empty()) {
    std::vector<PlaneGraph> next;
    for (const auto& g : frontier) {
      if (g.num_vertices() + 2 > max_vertices) continue;
      auto consider = [&](PlaneGraph h) {
        if (seen.insert(canonical_code(h)).second) {
          next.push_back(h);
          out.push_back(std::move(h));
        }
      };
      for (const auto& f : g.faces()) {
        const auto& bd = f.boundary;
        for (size_t i = 0; i < bd.size(); ++i)
          for (size_t j = i; j < bd.size(); ++j) {
            if (i != j && g.edge_of(bd[i]) == g.edge_of(bd[j])) continue;
            consider(insert_chord(g, bd[i], bd[j]));
          }
      }
      for (int d = 0; d < g.num_darts(); ++d) consider(insert_loop_pendant(g, d));
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace holant
