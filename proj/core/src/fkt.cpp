#include "holant/fkt.hpp"

#include <cstdlib>
#include <cstring>
#include <numeric>

#include "holant/error.hpp"

namespace holant {

namespace {

bool along(const PlaneGraph& g, const std::vector<int>& dir, int d) {
  int e = g.edge_of(d);
  bool first = g.edge_darts(e).first == d;
  return first == (dir[e] == 1);
}

// Pfaffian of a connected loop-free component under a fixed orientation.
Scalar component_pfaffian(const PlaneGraph& g, const KasteleynOrientation& o, const Vec& weights, bool check) {
  const int n = g.num_vertices();
  Matrix a(n, Vec(n, Scalar(0)));
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [d, t] = g.edge_darts(e);
    int u = g.vertex(d), v = g.vertex(t);
    if (o.direction[e] == -1) std::swap(u, v);
    Scalar w = weights.empty() ? Scalar(1) : weights[e];
    a[u][v] = a[u][v] + w;
    a[v][u] = a[v][u] - w;
  }
  Scalar pf = pfaffian(a);
  if (check)
    require(pf * pf == determinant(a), ErrorKind::InternalInvariant, "Pfaffian squared differs from determinant");
  return pf;
}

}  // namespace

KasteleynOrientation kasteleyn_orient(const PlaneGraph& g) {
  require(g.num_components() <= 1, ErrorKind::PreconditionViolation, "kasteleyn_orient needs a connected graph");
  const int ne = g.num_edges(), nf = g.num_faces();
  for (int e = 0; e < ne; ++e)
    require(!g.is_loop(e), ErrorKind::PreconditionViolation, "kasteleyn_orient needs a loop-free graph");
  KasteleynOrientation o;
  o.direction.assign(ne, 0);
  if (g.num_vertices() == 0) return o;

  // Primal spanning tree, oriented away from vertex 0.
  std::vector<char> tree(ne, 0), seen(g.num_vertices(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (size_t i = 0; i < queue.size(); ++i)
    for (int d : g.rotation(queue[i])) {
      int u = g.vertex(g.twin(d));
      if (seen[u]) continue;
      seen[u] = 1;
      queue.push_back(u);
      int e = g.edge_of(d);
      tree[e] = 1;
      o.direction[e] = g.edge_darts(e).first == d ? 1 : -1;
    }

  // The remaining edges form a spanning tree of the dual; fix them leaves first.
  std::vector<int> parent_edge(nf, -1), order{o.root_face};
  std::vector<char> reached(nf, 0);
  reached[o.root_face] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (int d : g.faces()[order[i]].boundary) {
      int e = g.edge_of(d);
      if (tree[e]) continue;
      int f = g.face_of(g.twin(d));
      if (reached[f]) continue;
      reached[f] = 1;
      parent_edge[f] = e;
      order.push_back(f);
    }
  for (size_t i = order.size(); i-- > 1;) {
    int f = order[i];
    int pe = parent_edge[f];
    int count = 0, pe_dart = -1;
    for (int d : g.faces()[f].boundary) {
      if (g.edge_of(d) == pe) {
        pe_dart = d;
        continue;
      }
      require(o.direction[g.edge_of(d)] != 0, ErrorKind::InternalInvariant, "dual sweep met an unoriented edge");
      count += along(g, o.direction, d);
    }
    bool want_along = count % 2 == 0;
    bool first = g.edge_darts(pe).first == pe_dart;
    o.direction[pe] = (first == want_along) ? 1 : -1;
  }
  return o;
}

std::vector<int> kasteleyn_violations(const PlaneGraph& g, const KasteleynOrientation& o) {
  std::vector<int> bad;
  for (const auto& f : g.faces()) {
    if (f.id == o.root_face) continue;
    int count = 0;
    for (int d : f.boundary) count += along(g, o.direction, d);
    if (count % 2 == 0) bad.push_back(f.id);
  }
  return bad;
}

Scalar pfaffian(Matrix a) {
  const int n = static_cast<int>(a.size());
  if (n % 2 == 1) return Scalar(0);
  Scalar result(1);
  for (int k = 0; k < n; k += 2) {
    int piv = -1;
    for (int j = k + 1; j < n; ++j)
      if (!a[k][j].is_zero()) {
        piv = j;
        break;
      }
    if (piv == -1) return Scalar(0);
    if (piv != k + 1) {
      std::swap(a[k + 1], a[piv]);
      for (auto& row : a) std::swap(row[k + 1], row[piv]);
      result = -result;
    }
    const Scalar p = a[k][k + 1];
    result = result * p;
    const Scalar inv = p.inverse();
    for (int i = k + 2; i < n; ++i) {
      const Scalar ci = a[i][k + 1] * inv, di = a[i][k] * inv;
      if (ci.is_zero() && di.is_zero()) continue;
      for (int j = k + 2; j < n; ++j) a[i][j] = a[i][j] - ci * a[k][j] + di * a[k + 1][j];
    }
  }
  return result;
}

Scalar determinant(Matrix a) {
  const int n = static_cast<int>(a.size());
  Scalar result(1);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      result = -result;
    }
    result = result * a[k][k];
    const Scalar inv = a[k][k].inverse();
    for (int i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const Scalar c = a[i][k] * inv;
      for (int j = k; j < n; ++j) a[i][j] = a[i][j] - c * a[k][j];
    }
  }
  return result;
}

bool pfaffian_check_default() {
  const char* v = std::getenv("HOLANT_CHECK_PFAFFIAN");
  return v != nullptr && std::strcmp(v, "0") != 0 && *v != '\0';
}

Scalar count_pm(const PlaneGraph& g, const Vec& weights, bool check) {
  require(weights.empty() || static_cast<int>(weights.size()) == g.num_edges(), ErrorKind::MalformedInput,
          "one weight per edge");
  // Loops never take part in a matching; removing them merges their faces.
  GraphBuilder gb(g);
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.is_loop(e)) gb.delete_edge(g.edge_darts(e).first);
  DerivedGraph clean = gb.finish();
  const PlaneGraph& h = clean.graph;

  Scalar total(1);
  for (const auto& comp : connected_components(h)) {
    if (comp.size() % 2 == 1) return Scalar(0);
    DerivedGraph sub = extract_vertices(h, comp);
    const PlaneGraph& c = sub.graph;
    Vec w;
    if (!weights.empty())
      for (int e = 0; e < c.num_edges(); ++e) {
        int hd = sub.dart_origin[c.edge_darts(e).first];
        w.push_back(weights[g.edge_of(clean.dart_origin[hd])]);
      }
    KasteleynOrientation o = kasteleyn_orient(c);
    if (check)
      require(kasteleyn_violations(c, o).empty(), ErrorKind::InternalInvariant, "orientation fails the face sweep");
    // Every matching carries the same sign; read it off the unit-weight count.
    Scalar unit = component_pfaffian(c, o, {}, check);
    if (unit.is_zero()) return Scalar(0);
    Scalar value = w.empty() ? unit : component_pfaffian(c, o, w, check);
    total = total * (unit.sign() < 0 ? -value : value);
  }
  return total;
}

}  // namespace holant
