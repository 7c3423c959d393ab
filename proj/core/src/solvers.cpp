#include "holant/solvers.hpp"

#include <bit>
#include <numeric>

#include "holant/error.hpp"
#include "holant/signature.hpp"

namespace holant {

namespace {

bool is_equality(const Vec& s) {
  if (s.size() < 2) return false;
  for (size_t i = 0; i < s.size(); ++i) {
    bool end = i == 0 || i + 1 == s.size();
    if (end ? !s[i].is_one() : !s[i].is_zero()) return false;
  }
  return true;
}

void require_form(bool ok, const std::string& what) { require(ok, ErrorKind::WrongForm, what); }

void require_ternary_right(const BipartiteInstance& in) {
  for (int d : in.right_degree)
    require(d == 3, ErrorKind::PreconditionViolation, "solver needs every right node to be =3");
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

BipartiteInstance analyse_instance(const SignatureGrid& grid) {
  grid.validate();
  require(grid.dangling().empty(), ErrorKind::DanglingPresent, "solvers need a closed grid");
  BipartiteInstance in;
  std::vector<int> right_index(grid.num_nodes(), -1);
  for (int i = 0; i < grid.num_nodes(); ++i) {
    const GridNode& n = grid.nodes()[i];
    require(n.kind != GridNode::Kind::Table, ErrorKind::PreconditionViolation, "solvers take symmetric nodes only");
    if (n.kind == GridNode::Kind::Left) {
      require(n.arity() == 3, ErrorKind::PreconditionViolation, "left nodes must be ternary");
      if (in.left.empty()) in.f = n.symmetric;
      require(n.symmetric == in.f, ErrorKind::PreconditionViolation, "left nodes carry different signatures");
      in.left.push_back(i);
    } else {
      require(is_equality(n.symmetric), ErrorKind::PreconditionViolation, "right nodes must be equalities");
      right_index[i] = static_cast<int>(in.right.size());
      in.right.push_back(i);
      in.right_degree.push_back(n.arity());
    }
  }
  std::vector<int> left_index(grid.num_nodes(), -1);
  for (size_t k = 0; k < in.left.size(); ++k) left_index[in.left[k]] = static_cast<int>(k);
  in.left_inputs.assign(in.left.size(), std::vector<int>(3, -1));
  for (const GridEdge& e : grid.edges()) {
    int l = e.node_a, ls = e.slot_a, r = e.node_b;
    if (left_index[l] < 0) {
      l = e.node_b;
      ls = e.slot_b;
      r = e.node_a;
    }
    require(left_index[l] >= 0 && right_index[r] >= 0, ErrorKind::PreconditionViolation, "edge is not left-right");
    in.left_inputs[left_index[l]][ls] = right_index[r];
  }
  return in;
}

// ---------------------------------------------------------------------------
// Cases with closed forms

Scalar solve_case5(const SignatureGrid& grid, const Scalar& a, const Scalar& b) {
  BipartiteInstance in = analyse_instance(grid);
  if (in.left.empty()) return Scalar(in.right.empty() ? 1 : 0);
  require_form(in.f == Vec{3 * a + b, -a - b, -a + b, 3 * a - b}, "f is not [3a+b,-a-b,-a+b,3a-b]");
  require_ternary_right(in);
  return (2 * a).pow(static_cast<long>(in.left.size())) * count_pm(grid_graph(grid).graph);
}

Scalar solve_degenerate(const SignatureGrid& grid, const Vec& u, const Scalar& scale) {
  BipartiteInstance in = analyse_instance(grid);
  require(u.size() == 2, ErrorKind::MalformedInput, "unary vector needs two entries");
  bool form = (u[0].is_one()) || (u[0].is_zero() && u[1].is_one());
  require(form, ErrorKind::NotDegenerate, "unary must be (1,t) or (0,1)");
  if (!in.left.empty()) {
    Vec expect{scale, scale * u[1], scale * u[1] * u[1], scale * u[1] * u[1] * u[1]};
    if (u[0].is_zero()) expect = {0, 0, 0, scale};
    require(in.f == expect, ErrorKind::NotDegenerate, "f is not scale times a cube of u");
  }
  // Each right variable y contributes u_y^{deg}; the left factors split off.
  Scalar value = scale.pow(static_cast<long>(in.left.size()));
  for (int d : in.right_degree) value = value * (u[0].pow(d) + u[1].pow(d));
  return value;
}

Scalar solve_geneq(const SignatureGrid& grid, const Scalar& a, const Scalar& b) {
  BipartiteInstance in = analyse_instance(grid);
  if (!in.left.empty()) require_form(in.f == Vec{a, 0, 0, b}, "f is not [a,0,0,b]");
  const int nr = static_cast<int>(in.right.size()), nl = static_cast<int>(in.left.size());
  // Union-find over right nodes plus one slot per left node.
  UnionFind uf(nr + nl);
  for (int k = 0; k < nl; ++k)
    for (int r : in.left_inputs[k]) uf.unite(nr + k, r);
  std::vector<long> left_count(nr + nl, 0);
  for (int k = 0; k < nl; ++k) ++left_count[uf.find(nr + k)];
  Scalar value(1);
  for (int x = 0; x < nr + nl; ++x)
    if (uf.find(x) == x) value = value * (a.pow(left_count[x]) + b.pow(left_count[x]));
  return value;
}

// ---------------------------------------------------------------------------
// Affine families

const char* affine_family_name(AffineFamily family) {
  switch (family) {
    case AffineFamily::EvenPlus: return "[a,0,a,0]";
    case AffineFamily::EvenMinus: return "[a,0,-a,0]";
    case AffineFamily::OddPlus: return "[0,a,0,a]";
    case AffineFamily::OddMinus: return "[0,a,0,-a]";
    case AffineFamily::Alternating: return "[a,-a,-a,a]";
    case AffineFamily::HalfSign: return "[a,a,-a,-a]";
  }
  return "?";
}

Vec affine_pattern(AffineFamily family) {
  switch (family) {
    case AffineFamily::EvenPlus: return {1, 0, 1, 0};
    case AffineFamily::EvenMinus: return {1, 0, -1, 0};
    case AffineFamily::OddPlus: return {0, 1, 0, 1};
    case AffineFamily::OddMinus: return {0, 1, 0, -1};
    case AffineFamily::Alternating: return {1, -1, -1, 1};
    case AffineFamily::HalfSign: return {1, 1, -1, -1};
  }
  return {};
}

QuadraticForm::QuadraticForm(int vars) : n(vars), linear(vars, 0), quad(vars, std::vector<char>(vars, 0)) {}

void QuadraticForm::add_pair(int i, int j) {
  if (i == j) {
    linear[i] ^= 1;
  } else {
    quad[i][j] ^= 1;
    quad[j][i] ^= 1;
  }
}

namespace {

// z_j := c + Σ a_k z_k, where a_j = 0; afterwards z_j no longer occurs.
void substitute(QuadraticForm& q, int j, bool c, const std::vector<char>& a) {
  if (q.linear[j]) {
    q.constant ^= c;
    for (int k = 0; k < q.n; ++k) q.linear[k] ^= a[k];
  }
  for (int k = 0; k < q.n; ++k) {
    if (!q.quad[j][k]) continue;
    if (c) q.linear[k] ^= 1;
    for (int m = 0; m < q.n; ++m)
      if (a[m]) q.add_pair(m, k);
  }
  q.linear[j] = 0;
  for (int k = 0; k < q.n; ++k) q.quad[j][k] = q.quad[k][j] = 0;
}

}  // namespace

Integer gauss_sum(QuadraticForm q, const std::vector<Gf2Constraint>& constraints) {
  const int n = q.n;
  // Row-reduce the constraints; each row is n coefficients plus the right side.
  std::vector<std::vector<char>> rows;
  for (const auto& c : constraints) {
    std::vector<char> row(n + 1, 0);
    for (int v : c.vars) row[v] ^= 1;
    row[n] = c.rhs;
    rows.push_back(std::move(row));
  }
  std::vector<int> pivot_of_row;
  std::vector<char> alive(n, 1);
  size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    size_t r = rank;
    while (r < rows.size() && !rows[r][col]) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != rank && rows[i][col])
        for (int k = col; k <= n; ++k) rows[i][k] ^= rows[rank][k];
    pivot_of_row.push_back(col);
    ++rank;
  }
  for (size_t i = rank; i < rows.size(); ++i)
    if (rows[i][n]) return 0;
  for (size_t i = 0; i < rank; ++i) {
    int p = pivot_of_row[i];
    std::vector<char> a(rows[i].begin(), rows[i].begin() + n);
    a[p] = 0;
    substitute(q, p, rows[i][n], a);
    alive[p] = 0;
  }

  // Eliminate the remaining variables one at a time.
  Integer factor = 1;
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    alive[i] = 0;
    int j = -1;
    for (int k = 0; k < n; ++k)
      if (q.quad[i][k]) {
        j = k;
        break;
      }
    if (j < 0) {
      if (q.linear[i]) return 0;
      factor *= 2;
      continue;
    }
    // Q = z_i L + R with L = l_i + Σ_k q_ik z_k; summing z_i forces L = 0.
    bool c = q.linear[i];
    std::vector<char> a = q.quad[i];
    a[j] = 0;
    q.linear[i] = 0;
    for (int k = 0; k < n; ++k) q.quad[i][k] = q.quad[k][i] = 0;
    substitute(q, j, c, a);
    alive[j] = 0;
    factor *= 2;
  }
  return q.constant ? Integer(-factor) : factor;
}

Scalar solve_affine(const SignatureGrid& grid, AffineFamily family) {
  BipartiteInstance in = analyse_instance(grid);
  const int n = static_cast<int>(in.right.size());
  Scalar a(1);
  if (!in.left.empty()) {
    Vec pattern = affine_pattern(family);
    a = pattern[0].is_zero() ? in.f[1] : in.f[0];
    Vec expect;
    for (const Scalar& x : pattern) expect.push_back(a * x);
    require_form(!a.is_zero() && in.f == expect, std::string("f is not in the family ") + affine_family_name(family));
  }
  const bool parity = family == AffineFamily::EvenPlus || family == AffineFamily::EvenMinus ||
                      family == AffineFamily::OddPlus || family == AffineFamily::OddMinus;
  const bool odd = family == AffineFamily::OddPlus || family == AffineFamily::OddMinus;
  const bool pairs = family != AffineFamily::EvenPlus && family != AffineFamily::OddPlus;
  const bool weight = family == AffineFamily::Alternating;

  QuadraticForm q(n);
  std::vector<Gf2Constraint> constraints;
  for (const auto& x : in.left_inputs) {
    if (parity) constraints.push_back({x, odd});
    if (pairs)
      for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) q.add_pair(x[s], x[t]);
    if (weight)
      for (int v : x) q.linear[v] ^= 1;
  }
  return a.pow(static_cast<long>(in.left.size())) * Scalar(Rational(gauss_sum(q, constraints)));
}

// ---------------------------------------------------------------------------
// Matchgate case

MatchgateDecoration even_decoration(const Scalar& ratio) { return {"even-triangle", false, ratio, Scalar(0)}; }

MatchgateDecoration odd_decoration(const Scalar& ratio) {
  return {"odd-k4", true, ratio / 3, Scalar(1)};
}

Vec decoration_target(const MatchgateDecoration& d) {
  if (d.centre) return {0, d.centre_weight, 0, 3 * d.centre_weight * d.ring_weight};
  return {1, 0, d.ring_weight, 0};
}

SignatureGrid decoration_fragment(const MatchgateDecoration& d) {
  auto exactly_one = [](int arity) {
    Vec t(std::size_t{1} << arity, Scalar(0));
    for (int k = 0; k < arity; ++k) t[std::size_t{1} << k] = 1;
    return t;
  };
  const int ta = d.centre ? 4 : 3;
  SignatureGrid g;
  int t[3];
  for (int i = 0; i < 3; ++i) t[i] = g.add_table(exactly_one(ta), std::vector<Side>(ta, Side::R));
  auto edge = [&](const Scalar& w) { return g.add_table({1, 0, 0, w}, {Side::L, Side::L}); };
  // Terminal slots: 0 external, 1 to the next terminal, [2 centre], last to the previous.
  for (int i = 0; i < 3; ++i) {
    int e = edge(d.ring_weight);
    g.connect(e, 0, t[i], 1);
    g.connect(e, 1, t[(i + 1) % 3], ta - 1);
  }
  if (d.centre) {
    int c = g.add_table(exactly_one(3), std::vector<Side>(3, Side::R));
    for (int i = 0; i < 3; ++i) {
      int e = edge(d.centre_weight);
      g.connect(e, 0, t[i], 2);
      g.connect(e, 1, c, i);
    }
  }
  for (int i = 0; i < 3; ++i) g.dangle(t[i], 0);
  return g;
}

Vec decoration_signature(const MatchgateDecoration& d) {
  Vec table = eval_gadget(decoration_fragment(d));
  // A dangling bit of 1 means the terminal is matched outside, so the edge is
  // absent from the subgraph.
  Vec sig(4);
  std::vector<char> seen(4, 0);
  for (unsigned bits = 0; bits < 8; ++bits) {
    int k = 3 - std::popcount(bits);
    if (!seen[k]) {
      sig[k] = table[bits];
      seen[k] = 1;
    }
    require(sig[k] == table[bits], ErrorKind::InternalInvariant, "decoration is not symmetric");
  }
  return sig;
}

namespace {

// Perfect-matching sum of the cubic graph with every vertex decorated.
Scalar decorated_pm(const PlaneGraph& g, const std::vector<MatchgateDecoration>& deco) {
  const int nv = g.num_vertices();
  std::vector<std::vector<int>> rot;
  std::vector<int> twin;
  std::vector<Scalar> dart_weight;
  auto new_dart = [&](int v, const Scalar& w) {
    twin.push_back(-1);
    dart_weight.push_back(w);
    rot[v].push_back(static_cast<int>(twin.size()) - 1);
    return static_cast<int>(twin.size()) - 1;
  };
  auto join = [&](int x, int y) {
    twin[x] = y;
    twin[y] = x;
  };
  std::vector<int> ext(g.num_darts(), -1);
  for (int v = 0; v < nv; ++v) {
    require(g.degree(v) == 3, ErrorKind::PreconditionViolation, "decoration needs a cubic graph");
    const auto& d = deco[v];
    int t0 = static_cast<int>(rot.size());
    rot.resize(rot.size() + 3 + (d.centre ? 1 : 0));
    std::vector<int> next(3), centre(3), prev(3);
    for (int i = 0; i < 3; ++i) {
      ext[g.rotation(v)[i]] = new_dart(t0 + i, Scalar(1));
      next[i] = new_dart(t0 + i, d.ring_weight);
      if (d.centre) centre[i] = new_dart(t0 + i, d.centre_weight);
      prev[i] = new_dart(t0 + i, d.ring_weight);
    }
    for (int i = 0; i < 3; ++i) join(next[i], prev[(i + 1) % 3]);
    if (d.centre)
      for (int i = 0; i < 3; ++i) join(centre[i], new_dart(t0 + 3, d.centre_weight));
  }
  for (int dd = 0; dd < g.num_darts(); ++dd) twin[ext[dd]] = ext[g.twin(dd)];
  PlaneGraph h = PlaneGraph::from_rotations(rot, twin);
  Vec w(h.num_edges());
  for (int e = 0; e < h.num_edges(); ++e) w[e] = dart_weight[h.edge_darts(e).first];
  return count_pm(h, w);
}

}  // namespace

Scalar solve_matchgate(const SignatureGrid& grid, const Scalar& a, const Scalar& b, int sign) {
  require(sign == 1 || sign == -1, ErrorKind::MalformedInput, "sign must be +1 or -1");
  BipartiteInstance in = analyse_instance(grid);
  const long nu = static_cast<long>(in.left.size()), nr = static_cast<long>(in.right.size());
  if (nu == 0) return Scalar(nr == 0 ? 1 : 0);
  require_form(in.f == Vec{a, b, sign * b, sign * a}, sign == 1 ? "f is not [a,b,b,a]" : "f is not [a,b,-b,-a]");
  require_ternary_right(in);

  Vec g = hadamard3(in.f);
  const Scalar quarter = Scalar::from_fraction(1, 4);
  const Scalar outer = quarter.pow(nr);
  const bool even = g[1].is_zero() && g[3].is_zero();
  const bool odd = g[0].is_zero() && g[2].is_zero();
  require(even || odd, ErrorKind::InternalInvariant, "transformed signature is not a matchgate signature");
  const Scalar p = even ? g[0] : g[1], q = even ? g[2] : g[3];
  if (p.is_zero() && q.is_zero()) return Scalar(0);

  const PlaneGraph graph = grid_graph(grid).graph;
  std::vector<char> is_left(grid.num_nodes(), 0);
  for (int u : in.left) is_left[u] = 1;
  // H(p) = Σ over subgraphs of Π_left g(deg); the even/odd shape fixes which
  // decoration realizes [1,0,q/p,0] or [0,1,0,q/p].
  auto subgraph_sum = [&](const Scalar& pp) {
    const Scalar ratio = q / pp;
    const MatchgateDecoration left = even ? even_decoration(ratio) : odd_decoration(ratio);
    const MatchgateDecoration right = even_decoration(Scalar(1));
    std::vector<MatchgateDecoration> deco;
    for (int v = 0; v < graph.num_vertices(); ++v) deco.push_back(is_left[v] ? left : right);
    return pp.pow(nu) * decorated_pm(graph, deco);
  };
  if (!p.is_zero()) return outer * subgraph_sum(p);

  // H is a polynomial of degree at most |U| in p; recover H(0) by Lagrange
  // interpolation from p = 1..|U|+1.
  Scalar h0(0);
  for (long i = 1; i <= nu + 1; ++i) {
    Scalar basis(1);
    for (long j = 1; j <= nu + 1; ++j)
      if (j != i) basis = basis * Scalar(-j) / Scalar(i - j);
    h0 = h0 + basis * subgraph_sum(Scalar(i));
  }
  return outer * h0;
}

}  // namespace holant
