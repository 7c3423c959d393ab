#include "holant/reductions.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>

#include "holant/error.hpp"

namespace holant {

namespace {

// Copies every node of `grid` (kind, signature, embedding) into a fresh grid.
SignatureGrid copy_nodes(const SignatureGrid& grid) {
  SignatureGrid out;
  for (int i = 0; i < grid.num_nodes(); ++i) {
    const GridNode& n = grid.nodes()[i];
    switch (n.kind) {
      case GridNode::Kind::Left: out.add_left(n.symmetric); break;
      case GridNode::Kind::Right: out.add_right(n.symmetric); break;
      case GridNode::Kind::Table: out.add_table(n.table, n.slot_sides); break;
    }
    if (!grid.embedding()[i].empty()) out.set_embedding(i, grid.embedding()[i]);
  }
  return out;
}

Side slot_side(const SignatureGrid& grid, int node, int slot) { return grid.nodes()[node].slot_sides[slot]; }

}  // namespace

// ---------------------------------------------------------------------------
// Cross-over planarization

Vec crossover_table() {
  Vec t(16, Scalar(0));
  for (int lt = 0; lt < 2; ++lt)
    for (int lb = 0; lb < 2; ++lb) t[8 * lt + 4 * lb + 2 * lb + lt] = 1;
  return t;
}

std::vector<Side> crossover_sides() { return {Side::L, Side::R, Side::L, Side::R}; }

std::vector<int> crossover_rotation() { return {0, 1, 3, 2}; }

bool is_crossover(const GridNode& node) {
  return node.kind == GridNode::Kind::Table && node.slot_sides == crossover_sides() && node.table == crossover_table();
}

SignatureGrid planarize(const SignatureGrid& grid, const std::vector<Crossing>& crossings) {
  grid.validate();
  const int ne = grid.num_edges();
  // Per edge: (position, crossing index, role) with role 0 on the left-top to
  // right-bottom diagonal and role 1 on the other one.
  struct Visit {
    int pos, crossing, role;
  };
  std::vector<std::vector<Visit>> along(ne);
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    const Crossing& x = crossings[c];
    require(x.edge_a >= 0 && x.edge_a < ne && x.edge_b >= 0 && x.edge_b < ne, ErrorKind::UnknownEdge,
            "crossing " + std::to_string(c) + " names an unknown edge");
    require(x.edge_a != x.edge_b, ErrorKind::MalformedInput, "an edge cannot cross itself");
    along[x.edge_a].push_back({x.pos_a, c, x.b_left_next ? 0 : 1});
    along[x.edge_b].push_back({x.pos_b, c, x.b_left_next ? 1 : 0});
  }
  SignatureGrid out = copy_nodes(grid);
  std::vector<int> node_of(crossings.size());
  for (size_t c = 0; c < crossings.size(); ++c) {
    node_of[c] = out.add_table(crossover_table(), crossover_sides());
    out.set_embedding(node_of[c], crossover_rotation());
  }
  for (int k = 0; k < ne; ++k) {
    GridEdge e = grid.edges()[k];
    auto& visits = along[k];
    if (visits.empty()) {
      out.connect(e.node_a, e.slot_a, e.node_b, e.slot_b);
      continue;
    }
    if (slot_side(grid, e.node_a, e.slot_a) != Side::L) {
      std::swap(e.node_a, e.node_b);
      std::swap(e.slot_a, e.slot_b);
    }
    std::sort(visits.begin(), visits.end(), [](const Visit& p, const Visit& q) { return p.pos < q.pos; });
    for (size_t i = 1; i < visits.size(); ++i)
      require(visits[i].pos != visits[i - 1].pos, ErrorKind::TripleCrossing,
              "edge " + std::to_string(k) + " has two crossings at one point");
    // Walk from the left node: enter each cross-over on its left-node arm.
    int node = e.node_a, slot = e.slot_a;
    for (const Visit& v : visits) {
      const int left_arm = v.role == 0 ? 3 : 1, right_arm = v.role == 0 ? 0 : 2;
      out.connect(node, slot, node_of[v.crossing], left_arm);
      node = node_of[v.crossing];
      slot = right_arm;
    }
    out.connect(node, slot, e.node_b, e.slot_b);
  }
  for (const auto& d : grid.dangling()) out.dangle(d.node, d.slot);
  return out;
}

// ---------------------------------------------------------------------------
// Interpolation

Vec solve_vandermonde(const std::vector<Scalar>& nodes, const std::vector<Scalar>& values) {
  const int n = static_cast<int>(nodes.size());
  require(static_cast<int>(values.size()) == n, ErrorKind::MalformedInput, "one value per node");
  Matrix a(n, Vec(n + 1));
  for (int s = 0; s < n; ++s) {
    Scalar p(1);
    for (int i = 0; i < n; ++i) {
      a[s][i] = p;
      p *= nodes[s];
    }
    a[s][n] = values[s];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    require(piv < n, ErrorKind::SingularSystem, "Vandermonde nodes are not pairwise distinct");
    std::swap(a[piv], a[col]);
    const Scalar inv = a[col][col].inverse();
    for (int j = col; j <= n; ++j) a[col][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Scalar c = a[r][col];
      for (int j = col; j <= n; ++j) a[r][j] -= c * a[col][j];
    }
  }
  Vec out;
  for (int s = 0; s < n; ++s) out.push_back(a[s][n]);
  return out;
}

InterpolationRun interpolate_recover(const SignatureGrid& grid, const Vec& f, const Oracle& oracle) {
  grid.validate();
  std::vector<int> copies;
  for (int i = 0; i < grid.num_nodes(); ++i)
    if (is_crossover(grid.nodes()[i])) copies.push_back(i);
  InterpolationRun run;
  run.copies = static_cast<int>(copies.size());
  // Each Ω_s is independent, so the oracle calls run concurrently.
  std::vector<std::future<Scalar>> pending;
  for (int s = 0; s <= run.copies; ++s) {
    GammaChain chain = gamma_chain(f, s);
    Vec table;
    for (const Vec& row : chain.gamma) table.insert(table.end(), row.begin(), row.end());
    SignatureGrid omega = grid;
    for (int i : copies) omega.nodes()[i].table = table;
    run.nodes.push_back(chain.x);
    const Rational& q = chain.x.rational();
    run.node_bits.push_back(mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2));
    pending.push_back(std::async(std::launch::async, [&oracle, omega = std::move(omega)] { return oracle(omega); }));
  }
  for (auto& p : pending) run.values.push_back(p.get());
  run.coefficients = solve_vandermonde(run.nodes, run.values);
  run.recovered = run.coefficients.back();
  return run;
}

// ---------------------------------------------------------------------------
// Unary interpolation

namespace {

Scalar det2(const Vec& u, const Vec& v) { return u[0] * v[1] - u[1] * v[0]; }

Vec row_eigenvector(const Matrix& m, const Scalar& lambda) {
  Vec r{m[1][0], lambda - m[0][0]};
  if (r[0].is_zero() && r[1].is_zero()) r = {lambda - m[1][1], m[0][1]};
  return r;
}

std::pair<Vec, Vec> eigen_rows(const Matrix& m, Scalar& lambda, Scalar& mu) {
  require(m.size() == 2 && m[0].size() == 2 && m[1].size() == 2, ErrorKind::MalformedInput, "expected a 2x2 matrix");
  for (const auto& row : m)
    for (const auto& x : row) require(x.is_rational(), ErrorKind::PreconditionViolation, "matrix must be rational");
  const Scalar tr = m[0][0] + m[1][1];
  const Scalar disc = (m[0][0] - m[1][1]) * (m[0][0] - m[1][1]) + 4 * m[0][1] * m[1][0];
  require(!disc.is_zero(), ErrorKind::PreconditionViolation, "eigenvalues are not distinct");
  require(disc.sign() > 0, ErrorKind::NegativeRadicand, "eigenvalues are not real");
  const Scalar root = Scalar::sqrt(disc.rational());
  lambda = (tr - root) / 2;
  mu = (tr + root) / 2;
  return {row_eigenvector(m, lambda), row_eigenvector(m, mu)};
}

}  // namespace

bool is_row_eigenvector(const Matrix& m, const Vec& s) {
  Scalar lambda, mu;
  auto [r1, r2] = eigen_rows(m, lambda, mu);
  return det2(s, r1).is_zero() || det2(s, r2).is_zero();
}

VadhanCertificate vadhan_interpolate(const Matrix& m, const Vec& s, const std::optional<Vec>& target) {
  require(s.size() == 2, ErrorKind::MalformedInput, "unary must have two entries");
  const Scalar det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  require(!det.is_zero(), ErrorKind::PreconditionViolation, "matrix is singular");
  VadhanCertificate c;
  std::tie(c.r1, c.r2) = eigen_rows(m, c.lambda, c.mu);
  require(!det2(s, c.r1).is_zero() && !det2(s, c.r2).is_zero(), ErrorKind::EigenvectorInput,
          "unary is proportional to a row eigenvector");
  // s = α r1 + β r2 by Cramer's rule on the basis rows.
  const Scalar d = det2(c.r1, c.r2);
  c.alpha = det2(s, c.r2) / d;
  c.beta = det2(c.r1, s) / d;
  for (int k = 0; k < 2; ++k)
    require(c.alpha * c.r1[k] + c.beta * c.r2[k] == s[k], ErrorKind::InternalInvariant, "basis change failed");
  c.ratio_not_root_of_unity = works(m);
  if (target) {
    require(target->size() == 2, ErrorKind::MalformedInput, "target must have two entries");
    Scalar p = det2(*target, c.r2) / d / c.alpha, q = det2(c.r1, *target) / d / c.beta;
    for (int k = 0; k < 2; ++k)
      require(p * c.alpha * c.r1[k] + q * c.beta * c.r2[k] == (*target)[k], ErrorKind::InternalInvariant,
              "target decomposition failed");
    c.target = {p, q};
  }
  return c;
}

// ---------------------------------------------------------------------------
// Unary absorption

Vec flat_signature(const Vec& f, const Scalar& x) { return connect_unary(f, {Scalar(1), x}); }

Lemma9Result lemma9_transform(const SignatureGrid& incidence, const Vec& f, const Scalar& x, const Scalar& y) {
  require(f.size() == 4, ErrorKind::MalformedInput, "f must be ternary");
  const Vec flat = flat_signature(f, x);
  for (const GridNode& n : incidence.nodes()) {
    if (n.kind == GridNode::Kind::Left)
      require(n.symmetric == flat, ErrorKind::WrongForm, "binary nodes must carry " + signature_str(flat));
    else
      require(n.kind == GridNode::Kind::Right && n.symmetric == Vec({1, 0, 0, 1}), ErrorKind::WrongForm,
              "right nodes must be =3");
  }
  const PlaneGraph g = merge_binary_left(incidence);
  P3emResult p3em = find_p3em(g);
  if (p3em.exception)
    fail(ErrorKind::ExceptionalGraph, "the cubic graph has a " + p3em.exception->kind + " component");
  Lemma9Result res;
  res.sigma = *p3em.assignment;
  const std::vector<Triple> tri = triples(g, res.sigma);

  const AbsorbY factors = absorb_factors_y(f, y);
  const bool use_g1 = !factors.g1.is_zero();
  require(use_g1 || !factors.g2.is_zero(), ErrorKind::ZeroFactor,
          "both absorption factors vanish at y = " + y.str() + " for f = " + signature_str(f));

  SignatureGrid& out = res.grid;
  const Vec eq3{1, 0, 0, 1};
  for (int v = 0; v < g.num_vertices(); ++v) out.add_right(eq3);
  std::vector<int> slot_at(g.num_darts());
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int k = 0; k < g.degree(v); ++k) slot_at[g.rotation(v)[k]] = k;
  std::vector<int> host_dart(g.num_edges(), -1);
  for (const Triple& t : tri)
    for (int k = 0; k < 3; ++k) host_dart[t.edges[k]] = t.darts[k];
  std::vector<int> d_node(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [d, t] = g.edge_darts(e);
    int s = out.add_left(f);
    d_node[e] = out.add_table(degenerate_D(x, y), {Side::L, Side::R});
    out.connect(s, 0, g.vertex(d), slot_at[d]);
    out.connect(s, 1, g.vertex(t), slot_at[t]);
    out.connect(s, 2, d_node[e], 1);
    // The D arm points into the host face, which lies right of its dart.
    out.set_embedding(s, host_dart[e] == d ? std::vector<int>{0, 2, 1} : std::vector<int>{0, 1, 2});
  }
  for (const Triple& t : tri) {
    // Spokes meet the host face's boundary in reverse traversal order.
    const int y0 = d_node[t.edges[0]], y1 = d_node[t.edges[1]], y2 = d_node[t.edges[2]];
    if (use_g1) {
      int c = out.add_right(eq3);
      out.connect(y2, 0, c, 0);
      out.connect(y1, 0, c, 1);
      out.connect(y0, 0, c, 2);
      ++res.g1_count;
    } else {
      int c1 = out.add_right(eq3), c2 = out.add_right(eq3), s = out.add_left(f);
      out.connect(y0, 0, c1, 0);
      out.connect(y2, 0, c1, 1);
      out.connect(s, 0, c1, 2);
      out.connect(s, 1, c2, 1);
      out.connect(s, 2, c2, 0);
      out.connect(y1, 0, c2, 2);
      ++res.g2_count;
    }
  }
  res.factor = factors.g1.pow(res.g1_count) * factors.g2.pow(res.g2_count);
  try {
    grid_graph(out);
  } catch (const Error& e) {
    fail(ErrorKind::InternalInvariant, std::string("absorbers were not placed planarly: ") + e.what());
  }
  return res;
}

// ---------------------------------------------------------------------------
// Cross-over pinned-0 gadget

SignatureGrid build_gadget_P() {
  // Node positions follow the drawing of the gadget.
  using Pt = std::pair<int, int>;
  const std::vector<Pt> circles{{0, 0}, {0, 2}, {0, 4}, {-2, 4}, {2, 4}, {3, 1}, {4, 0}, {6, 0}, {7, 1}};
  const std::vector<Pt> squares{{0, 1}, {0, 3}, {-1, 4}, {3, 0}, {1, 4}, {3, 4}, {5, 0}, {7, 0}, {6, 1}};
  const std::vector<std::pair<Pt, Pt>> single{
      {{0, 0}, {3, 0}}, {{3, 0}, {4, 0}}, {{0, 0}, {0, 1}},  {{0, 1}, {0, 2}}, {{0, 3}, {0, 4}},
      {{-1, 4}, {0, 4}}, {{0, 4}, {1, 4}}, {{2, 4}, {3, 4}},  {{0, 1}, {3, 1}}, {{3, 0}, {3, 1}},
      {{3, 1}, {3, 4}}, {{5, 0}, {6, 0}}, {{6, 0}, {7, 0}},  {{6, 0}, {6, 1}}, {{7, 0}, {7, 1}}};
  const std::vector<std::pair<Pt, Pt>> doubled{
      {{0, 2}, {0, 3}}, {{1, 4}, {2, 4}}, {{4, 0}, {5, 0}}, {{6, 1}, {7, 1}}, {{-1, 4}, {-2, 4}}};
  const std::vector<Pt> dangling{{0, 0}, {3, 4}, {-2, 4}, {7, 0}};  // red-left, red-right, blue-left, blue-right

  SignatureGrid g;
  std::map<Pt, int> id;
  std::map<int, int> next_slot;
  for (const Pt& p : circles) id[p] = g.add_right({1, 0, 0, 1});
  for (const Pt& p : squares) id[p] = g.add_left({0, 1, 0, 0});
  auto slot = [&](const Pt& p) { return next_slot[id.at(p)]++; };
  auto join = [&](const Pt& p, const Pt& q) {
    int sp = slot(p), sq = slot(q);
    g.connect(id.at(p), sp, id.at(q), sq);
  };
  for (const auto& [p, q] : single) join(p, q);
  for (const auto& [p, q] : doubled) {
    join(p, q);
    join(p, q);
  }
  for (const Pt& p : dangling) g.dangle(id.at(p), slot(p));
  g.validate();
  return g;
}

namespace {

// Internal assignments with nonzero weight once the dangling slots are fixed,
// by backtracking over the internal edges and checking each node as soon as
// all its slots are set.
Integer count_supports(const SignatureGrid& g, const std::vector<int>& external) {
  std::vector<std::vector<int>> bits(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) bits[v].assign(g.nodes()[v].arity(), -1);
  std::vector<int> pending(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) pending[v] = g.nodes()[v].arity();
  auto settle = [&](int v, int slot, int value) {
    bits[v][slot] = value;
    return --pending[v] > 0 || !g.nodes()[v].value(bits[v]).is_zero();
  };
  bool ok = true;
  for (size_t k = 0; k < external.size(); ++k) ok &= settle(g.dangling()[k].node, g.dangling()[k].slot, external[k]);
  if (!ok) return 0;
  Integer count = 0;
  std::function<void(int)> walk = [&](int k) {
    if (k == g.num_edges()) {
      ++count;
      return;
    }
    const GridEdge& e = g.edges()[k];
    for (int value = 0; value < 2; ++value) {
      const bool a = settle(e.node_a, e.slot_a, value), b = settle(e.node_b, e.slot_b, value);
      if (a && b) walk(k + 1);
      ++pending[e.node_a];
      ++pending[e.node_b];
    }
  };
  walk(0);
  return count;
}

}  // namespace

PReport verify_P() {
  PReport r;
  SignatureGrid g = build_gadget_P();
  // The two left dangling edges leave circles and the two right ones leave squares.
  const Side expect_side[4] = {Side::R, Side::L, Side::R, Side::L};
  const char* names[4] = {"red-left", "red-right", "blue-left", "blue-right"};
  for (int k = 0; k < 4; ++k)
    if (g.dangling()[k].side != expect_side[k])
      r.failures.push_back(std::string(names[k]) + " dangling edge attaches to the wrong side");
  r.table = eval_gadget(g);
  for (int row = 0; row < 16; ++row) {
    const int red_l = (row >> 3) & 1, red_r = (row >> 2) & 1, blue_l = (row >> 1) & 1, blue_r = row & 1;
    r.supports.push_back(count_supports(g, {red_l, red_r, blue_l, blue_r}));
    const bool expect = blue_l == 0 && blue_r == 0 && red_l == red_r;
    const std::string label = "red=(" + std::to_string(red_l) + "," + std::to_string(red_r) + ") blue=(" +
                              std::to_string(blue_l) + "," + std::to_string(blue_r) + ")";
    if (expect && r.supports[row] != 1)
      r.failures.push_back(label + ": expected a unique internal assignment, found " + r.supports[row].get_str());
    if (!expect && r.supports[row] != 0)
      r.failures.push_back(label + ": expected no internal assignment, found " + r.supports[row].get_str());
    // Both signatures are 0/1 valued, so the gadget value is the support count.
    if (r.table[row] != Scalar(Rational(r.supports[row])))
      r.failures.push_back(label + ": gadget value " + r.table[row].str() + " disagrees with the enumeration");
  }
  r.ok = r.failures.empty();
  return r;
}

}  // namespace holant
