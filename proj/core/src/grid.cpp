#include "holant/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <string>

#include "holant/error.hpp"

namespace holant {

namespace {

int popcount_bits(const std::vector<int>& bits) {
  int w = 0;
  for (int b : bits) w += b;
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nodes and grid construction

Scalar GridNode::value(const std::vector<int>& bits) const {
  if (kind != Kind::Table) return symmetric[popcount_bits(bits)];
  std::uint64_t row = 0;
  for (int b : bits) row = (row << 1) | static_cast<std::uint64_t>(b);
  return table[row];
}

Scalar GridNode::value_at(std::uint64_t row) const {
  if (kind == Kind::Table) return table[row];
  return symmetric[std::popcount(row)];
}

bool GridNode::uniform_side(Side& side) const {
  if (kind == Kind::Left) {
    side = Side::L;
    return true;
  }
  if (kind == Kind::Right) {
    side = Side::R;
    return true;
  }
  if (slot_sides.empty()) return false;
  side = slot_sides.front();
  for (Side s : slot_sides)
    if (s != side) return false;
  return true;
}

int SignatureGrid::add_left(Vec symmetric) {
  require(!symmetric.empty(), ErrorKind::MalformedInput, "symmetric signature needs at least one value");
  GridNode n;
  n.kind = GridNode::Kind::Left;
  n.slot_sides.assign(symmetric.size() - 1, Side::L);
  n.symmetric = std::move(symmetric);
  nodes_.push_back(std::move(n));
  embedding_.emplace_back();
  return num_nodes() - 1;
}

int SignatureGrid::add_right(Vec symmetric) {
  require(!symmetric.empty(), ErrorKind::MalformedInput, "symmetric signature needs at least one value");
  GridNode n;
  n.kind = GridNode::Kind::Right;
  n.slot_sides.assign(symmetric.size() - 1, Side::R);
  n.symmetric = std::move(symmetric);
  nodes_.push_back(std::move(n));
  embedding_.emplace_back();
  return num_nodes() - 1;
}

int SignatureGrid::add_table(Vec table, std::vector<Side> sides) {
  require(sides.size() < 31 && table.size() == (std::size_t{1} << sides.size()), ErrorKind::MalformedInput,
          "table of size " + std::to_string(table.size()) + " does not match arity " +
              std::to_string(sides.size()));
  GridNode n;
  n.kind = GridNode::Kind::Table;
  n.table = std::move(table);
  n.slot_sides = std::move(sides);
  nodes_.push_back(std::move(n));
  embedding_.emplace_back();
  return num_nodes() - 1;
}

void SignatureGrid::connect(int node_a, int slot_a, int node_b, int slot_b) {
  auto check = [&](int node, int slot) {
    require(node >= 0 && node < num_nodes(), ErrorKind::MalformedInput, "unknown node " + std::to_string(node));
    require(slot >= 0 && slot < nodes_[node].arity(), ErrorKind::MalformedInput,
            "node " + std::to_string(node) + " has no slot " + std::to_string(slot));
  };
  check(node_a, slot_a);
  check(node_b, slot_b);
  require(nodes_[node_a].slot_sides[slot_a] != nodes_[node_b].slot_sides[slot_b], ErrorKind::MalformedInput,
          "edge " + std::to_string(node_a) + "." + std::to_string(slot_a) + " - " + std::to_string(node_b) + "." +
              std::to_string(slot_b) + " joins two slots facing the same side");
  edges_.push_back({node_a, slot_a, node_b, slot_b});
}

void SignatureGrid::dangle(int node, int slot) {
  require(node >= 0 && node < num_nodes() && slot >= 0 && slot < nodes_[node].arity(), ErrorKind::MalformedInput,
          "dangling slot out of range");
  dangling_.push_back({node, slot, nodes_[node].slot_sides[slot]});
}

void SignatureGrid::set_embedding(int node, std::vector<int> cyclic_slots) {
  require(node >= 0 && node < num_nodes(), ErrorKind::MalformedInput, "unknown node " + std::to_string(node));
  embedding_[node] = std::move(cyclic_slots);
}

std::vector<int> SignatureGrid::slot_order(int node) const {
  if (!embedding_[node].empty()) return embedding_[node];
  std::vector<int> order(nodes_[node].arity());
  for (int k = 0; k < static_cast<int>(order.size()); ++k) order[k] = k;
  return order;
}

std::vector<int> SignatureGrid::nodes_of_kind(GridNode::Kind kind) const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes_[i].kind == kind) out.push_back(i);
  return out;
}

void SignatureGrid::validate() const {
  std::vector<std::vector<int>> used(nodes_.size());
  for (int i = 0; i < num_nodes(); ++i) {
    const auto& n = nodes_[i];
    used[i].assign(n.arity(), 0);
    if (n.kind == GridNode::Kind::Table)
      require(n.table.size() == (std::size_t{1} << n.arity()), ErrorKind::MalformedInput, "bad table size");
    else
      require(static_cast<int>(n.symmetric.size()) == n.arity() + 1, ErrorKind::MalformedInput,
              "bad symmetric signature length");
    if (!embedding_[i].empty()) {
      auto e = embedding_[i];
      std::sort(e.begin(), e.end());
      for (int k = 0; k < static_cast<int>(e.size()); ++k)
        require(e[k] == k && static_cast<int>(e.size()) == n.arity(), ErrorKind::MalformedInput,
                "embedding of node " + std::to_string(i) + " is not a permutation of its slots");
    }
  }
  for (const auto& e : edges_) {
    ++used[e.node_a][e.slot_a];
    ++used[e.node_b][e.slot_b];
  }
  for (const auto& d : dangling_) ++used[d.node][d.slot];
  for (int i = 0; i < num_nodes(); ++i)
    for (int k = 0; k < nodes_[i].arity(); ++k)
      require(used[i][k] == 1, ErrorKind::MalformedInput,
              "slot " + std::to_string(i) + "." + std::to_string(k) + " used " + std::to_string(used[i][k]) +
                  " times");
}

int max_enumeration_bits() {
  const char* env = std::getenv("HOLANT_MAX_EDGES");
  if (env == nullptr) return 24;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0 || v > 62) return 24;
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// Evaluation engine

namespace {

// A wire is an internal edge or a dangling slot. Variables choose values for
// groups of wires; a checker node multiplies in its value once all its wires
// are set.
class Engine {
 public:
  explicit Engine(const SignatureGrid& grid) : grid_(grid) {
    grid.validate();
    const int nn = grid.num_nodes();
    wire_of_.resize(nn);
    for (int i = 0; i < nn; ++i) wire_of_[i].assign(grid.nodes()[i].arity(), -1);
    for (int k = 0; k < grid.num_edges(); ++k) {
      const auto& e = grid.edges()[k];
      wire_of_[e.node_a][e.slot_a] = k;
      wire_of_[e.node_b][e.slot_b] = k;
    }
    num_wires_ = grid.num_edges();
    for (const auto& d : grid.dangling()) wire_of_[d.node][d.slot] = num_wires_++;
    plan();
  }

  Scalar run(const std::vector<int>& dangling_bits) {
    wires_.assign(num_wires_, -1);
    for (size_t k = 0; k < dangling_bits.size(); ++k) wires_[grid_.num_edges() + k] = dangling_bits[k];
    Scalar start(1);
    for (int c : complete_at_start_) {
      start *= checker_value(c);
      if (start.is_zero()) return Scalar();
    }
    total_ = Scalar();
    recurse(0, start);
    return total_;
  }

 private:
  struct Option {
    std::uint64_t row;
    Scalar weight;
  };
  struct Variable {
    std::vector<int> wires;
    std::vector<Option> options;
  };

  void plan() {
    const int nn = grid_.num_nodes();
    bool uniform = true;
    std::vector<Side> side(nn, Side::L);
    for (int i = 0; i < nn; ++i) {
      Side s = Side::L;
      if (grid_.nodes()[i].arity() == 0) continue;
      if (!grid_.nodes()[i].uniform_side(s)) uniform = false;
      side[i] = s;
    }
    const int cap = max_enumeration_bits();
    std::vector<int> var_nodes;
    if (uniform && nn > 0) {
      double cost[2] = {0, 0};
      for (int i = 0; i < nn; ++i) {
        if (grid_.nodes()[i].arity() == 0) continue;
        cost[side[i] == Side::L ? 0 : 1] += std::log2(std::max<double>(1.0, support_size(i)));
      }
      Side chosen = cost[0] <= cost[1] ? Side::L : Side::R;
      double bits = std::min(cost[0], cost[1]);
      require(bits <= cap + 1e-9, ErrorKind::EdgeCapExceeded,
              "enumeration needs 2^" + std::to_string(bits) + " assignments, cap is 2^" + std::to_string(cap));
      for (int i : bfs_order())
        if (grid_.nodes()[i].arity() > 0 && side[i] == chosen) var_nodes.push_back(i);
      for (int i : var_nodes) {
        Variable v;
        v.wires = wire_of_[i];
        const auto& node = grid_.nodes()[i];
        for (std::uint64_t row = 0; row < (std::uint64_t{1} << node.arity()); ++row) {
          Scalar w = node.value_at(row);
          if (!w.is_zero()) v.options.push_back({row, w});
        }
        vars_.push_back(std::move(v));
      }
    } else {
      require(grid_.num_edges() <= cap, ErrorKind::EdgeCapExceeded,
              std::to_string(grid_.num_edges()) + " edges exceed the brute-force cap of " + std::to_string(cap));
      for (int k = 0; k < grid_.num_edges(); ++k) vars_.push_back({{k}, {{0, Scalar(1)}, {1, Scalar(1)}}});
    }
    // step at which each wire is set (-1: dangling)
    std::vector<int> set_at(num_wires_, -1);
    for (int s = 0; s < static_cast<int>(vars_.size()); ++s)
      for (int w : vars_[s].wires) set_at[w] = s;
    std::vector<bool> is_var(nn, false);
    for (int i : var_nodes) is_var[i] = true;
    complete_at_.assign(vars_.size(), {});
    for (int i = 0; i < nn; ++i) {
      if (is_var[i]) continue;
      int step = -1;
      for (int w : wire_of_[i]) step = std::max(step, set_at[w]);
      if (step == -1)
        complete_at_start_.push_back(i);
      else
        complete_at_[step].push_back(i);
    }
  }

  std::uint64_t support_size(int i) const {
    const auto& node = grid_.nodes()[i];
    std::uint64_t count = 0;
    for (std::uint64_t row = 0; row < (std::uint64_t{1} << node.arity()); ++row)
      if (!node.value_at(row).is_zero()) ++count;
    return count;
  }

  std::vector<int> bfs_order() const {
    const int nn = grid_.num_nodes();
    std::vector<std::vector<int>> adj(nn);
    for (const auto& e : grid_.edges()) {
      adj[e.node_a].push_back(e.node_b);
      adj[e.node_b].push_back(e.node_a);
    }
    std::vector<int> order;
    std::vector<bool> seen(nn, false);
    for (int s = 0; s < nn; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      std::queue<int> q;
      q.push(s);
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int w : adj[v])
          if (!seen[w]) {
            seen[w] = true;
            q.push(w);
          }
      }
    }
    return order;
  }

  Scalar checker_value(int i) const {
    const auto& node = grid_.nodes()[i];
    std::uint64_t row = 0;
    for (int w : wire_of_[i]) row = (row << 1) | static_cast<std::uint64_t>(wires_[w]);
    return node.value_at(row);
  }

  void recurse(size_t k, const Scalar& acc) {
    if (k == vars_.size()) {
      total_ += acc;
      return;
    }
    const auto& var = vars_[k];
    const int arity = static_cast<int>(var.wires.size());
    for (const auto& opt : var.options) {
      bool consistent = true;
      for (int j = 0; j < arity; ++j) {
        int bit = static_cast<int>((opt.row >> (arity - 1 - j)) & 1);
        int w = var.wires[j];
        if (w >= grid_.num_edges()) {
          if (wires_[w] != bit) consistent = false;
        } else {
          wires_[w] = bit;
        }
      }
      if (!consistent) continue;
      Scalar w = acc * opt.weight;
      for (int c : complete_at_[k]) {
        if (w.is_zero()) break;
        w *= checker_value(c);
      }
      if (!w.is_zero()) recurse(k + 1, w);
    }
  }

  const SignatureGrid& grid_;
  std::vector<std::vector<int>> wire_of_;
  int num_wires_ = 0;
  std::vector<Variable> vars_;
  std::vector<std::vector<int>> complete_at_;
  std::vector<int> complete_at_start_;
  std::vector<int> wires_;
  Scalar total_;
};

}  // namespace

Scalar eval(const SignatureGrid& grid) {
  require(grid.dangling().empty(), ErrorKind::DanglingPresent,
          "grid has " + std::to_string(grid.dangling().size()) + " dangling slots");
  Engine engine(grid);
  return engine.run({});
}

Vec eval_gadget(const SignatureGrid& grid) {
  const int k = static_cast<int>(grid.dangling().size());
  require(k < 31, ErrorKind::EdgeCapExceeded, "too many dangling slots");
  Engine engine(grid);
  Vec out;
  out.reserve(std::size_t{1} << k);
  std::vector<int> bits(k);
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << k); ++row) {
    for (int j = 0; j < k; ++j) bits[j] = static_cast<int>((row >> (k - 1 - j)) & 1);
    out.push_back(engine.run(bits));
  }
  return out;
}

Scalar eval_collapsed(const SignatureGrid& grid) {
  grid.validate();
  require(grid.dangling().empty(), ErrorKind::DanglingPresent, "collapsed evaluation needs a closed grid");
  const int nn = grid.num_nodes();
  std::vector<int> right_index(nn, -1);
  std::vector<int> rights;
  for (int i = 0; i < nn; ++i) {
    const auto& n = grid.nodes()[i];
    Side s;
    bool uniform = n.uniform_side(s) || n.arity() == 0;
    if (n.arity() > 0 && uniform && s == Side::R) {
      require(n.kind == GridNode::Kind::Right, ErrorKind::PreconditionViolation,
              "right-facing table node " + std::to_string(i) + " is not an equality");
      for (int w = 1; w < n.arity(); ++w)
        require(n.symmetric[w].is_zero(), ErrorKind::PreconditionViolation,
                "right node " + std::to_string(i) + " is not a generalized equality");
      right_index[i] = static_cast<int>(rights.size());
      rights.push_back(i);
    } else {
      require(uniform, ErrorKind::PreconditionViolation, "node " + std::to_string(i) + " has mixed slot sides");
    }
  }
  const int cap = max_enumeration_bits();
  require(static_cast<int>(rights.size()) <= cap, ErrorKind::EdgeCapExceeded,
          std::to_string(rights.size()) + " right nodes exceed the cap of " + std::to_string(cap));
  // for each left node slot, the right node at the far end
  std::vector<std::vector<int>> far(nn);
  for (int i = 0; i < nn; ++i) far[i].assign(grid.nodes()[i].arity(), -1);
  for (const auto& e : grid.edges()) {
    far[e.node_a][e.slot_a] = e.node_b;
    far[e.node_b][e.slot_b] = e.node_a;
  }
  Scalar total;
  const int nr = static_cast<int>(rights.size());
  std::vector<int> bits;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nr); ++mask) {
    Scalar term(1);
    for (int j = 0; j < nr && !term.is_zero(); ++j) {
      const auto& n = grid.nodes()[rights[j]];
      term *= ((mask >> j) & 1) ? n.symmetric.back() : n.symmetric.front();
    }
    for (int i = 0; i < nn && !term.is_zero(); ++i) {
      if (right_index[i] != -1) continue;
      bits.clear();
      for (int r : far[i]) bits.push_back(static_cast<int>((mask >> right_index[r]) & 1));
      term *= grid.nodes()[i].value(bits);
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Conversions

GridGraph grid_graph(const SignatureGrid& grid) {
  grid.validate();
  require(grid.dangling().empty(), ErrorKind::DanglingPresent, "underlying graph needs a closed grid");
  const int nn = grid.num_nodes();
  std::vector<std::vector<int>> dart_at(nn);
  for (int i = 0; i < nn; ++i) dart_at[i].assign(grid.nodes()[i].arity(), -1);
  GridGraph out;
  std::vector<int> twin(2 * grid.num_edges());
  for (int k = 0; k < grid.num_edges(); ++k) {
    const auto& e = grid.edges()[k];
    dart_at[e.node_a][e.slot_a] = 2 * k;
    dart_at[e.node_b][e.slot_b] = 2 * k + 1;
    twin[2 * k] = 2 * k + 1;
    twin[2 * k + 1] = 2 * k;
    out.dart_edge.push_back(k);
    out.dart_edge.push_back(k);
  }
  std::vector<std::vector<int>> rot(nn);
  for (int i = 0; i < nn; ++i)
    for (int s : grid.slot_order(i)) rot[i].push_back(dart_at[i][s]);
  out.graph = PlaneGraph::from_rotations(rot, twin);
  return out;
}

SignatureGrid incidence_grid(const PlaneGraph& g, const Vec& left_sig, const Vec& right_sig) {
  require(g.is_cubic(), ErrorKind::NotCubic, "incidence grid needs a 3-regular graph");
  require(left_sig.size() == 3, ErrorKind::MalformedInput, "left signature must be binary");
  require(right_sig.size() == 4, ErrorKind::MalformedInput, "right signature must be ternary");
  SignatureGrid grid;
  for (int v = 0; v < g.num_vertices(); ++v) grid.add_right(right_sig);
  for (int e = 0; e < g.num_edges(); ++e) grid.add_left(left_sig);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& rot = g.rotation(v);
    for (int k = 0; k < 3; ++k) {
      int d = rot[k];
      int e = g.edge_of(d);
      int slot = g.edge_darts(e).first == d ? 0 : 1;
      grid.connect(g.num_vertices() + e, slot, v, k);
    }
  }
  return grid;
}

PlaneGraph merge_binary_left(const SignatureGrid& grid) {
  grid.validate();
  require(grid.dangling().empty(), ErrorKind::DanglingPresent, "merge needs a closed grid");
  const int nn = grid.num_nodes();
  std::vector<int> vertex_of(nn, -1);
  int nv = 0;
  for (int i = 0; i < nn; ++i) {
    const auto& n = grid.nodes()[i];
    Side s;
    require(n.uniform_side(s), ErrorKind::PreconditionViolation, "mixed-side node cannot be merged");
    if (s == Side::R) {
      vertex_of[i] = nv++;
    } else {
      require(n.arity() == 2, ErrorKind::PreconditionViolation, "left node of arity other than 2");
    }
  }
  // dart per right slot, numbered in node order then slot-order position
  std::vector<std::vector<int>> dart_at(nn);
  std::vector<std::vector<int>> rot(nv);
  int nd = 0;
  for (int i = 0; i < nn; ++i) {
    if (vertex_of[i] == -1) continue;
    dart_at[i].assign(grid.nodes()[i].arity(), -1);
    for (int s : grid.slot_order(i)) {
      dart_at[i][s] = nd;
      rot[vertex_of[i]].push_back(nd++);
    }
  }
  std::vector<std::vector<int>> far_dart(nn);
  for (int i = 0; i < nn; ++i) far_dart[i].assign(grid.nodes()[i].arity(), -1);
  for (const auto& e : grid.edges()) {
    if (vertex_of[e.node_a] != -1) far_dart[e.node_b][e.slot_b] = dart_at[e.node_a][e.slot_a];
    if (vertex_of[e.node_b] != -1) far_dart[e.node_a][e.slot_a] = dart_at[e.node_b][e.slot_b];
  }
  std::vector<int> twin(nd, -1);
  for (int i = 0; i < nn; ++i) {
    if (vertex_of[i] != -1) continue;
    int a = far_dart[i][0], b = far_dart[i][1];
    twin[a] = b;
    twin[b] = a;
  }
  return PlaneGraph::from_rotations(rot, twin);
}

SignatureGrid bipartite_grid(const PlaneGraph& g, const std::vector<int>& coloring, const Vec& left_sig,
                             const Vec& right_sig) {
  SignatureGrid grid;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const Vec& sig = coloring[v] == 0 ? left_sig : right_sig;
    require(static_cast<int>(sig.size()) == g.degree(v) + 1, ErrorKind::MalformedInput,
            "signature arity does not match degree of vertex " + std::to_string(v));
    if (coloring[v] == 0)
      grid.add_left(sig);
    else
      grid.add_right(sig);
  }
  auto slot_of = [&](int d) {
    const auto& r = g.rotation(g.vertex(d));
    return static_cast<int>(std::find(r.begin(), r.end(), d) - r.begin());
  };
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [a, b] = g.edge_darts(e);
    if (coloring[g.vertex(a)] != 0) std::swap(a, b);
    require(coloring[g.vertex(a)] == 0 && coloring[g.vertex(b)] == 1, ErrorKind::PreconditionViolation,
            "coloring is not proper");
    grid.connect(g.vertex(a), slot_of(a), g.vertex(b), slot_of(b));
  }
  return grid;
}

Vec expand_symmetric(const Vec& symmetric) {
  const int n = static_cast<int>(symmetric.size()) - 1;
  Vec out;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << n); ++row) out.push_back(symmetric[std::popcount(row)]);
  return out;
}

}  // namespace holant

// ---------------------------------------------------------------------------
// Variable elimination

namespace holant {

namespace {

struct Factor {
  std::vector<int> vars;  // distinct, most significant first
  Vec table;
};

// Restricts a node table to its wires, merging slots that share a wire.
Factor node_factor(const GridNode& n, const std::vector<int>& wires) {
  Factor f;
  for (int w : wires)
    if (std::find(f.vars.begin(), f.vars.end(), w) == f.vars.end()) f.vars.push_back(w);
  const int k = static_cast<int>(f.vars.size());
  f.table.assign(std::size_t{1} << k, Scalar(0));
  std::vector<int> bits(wires.size());
  for (std::uint64_t row = 0; row < f.table.size(); ++row) {
    for (size_t s = 0; s < wires.size(); ++s) {
      int pos = static_cast<int>(std::find(f.vars.begin(), f.vars.end(), wires[s]) - f.vars.begin());
      bits[s] = static_cast<int>((row >> (k - 1 - pos)) & 1);
    }
    f.table[row] = n.value(bits);
  }
  return f;
}

}  // namespace

Scalar eval_contract(const SignatureGrid& grid) {
  grid.validate();
  require(grid.dangling().empty(), ErrorKind::DanglingPresent, "contraction needs a closed grid");
  const int nn = grid.num_nodes(), ne = grid.num_edges();
  std::vector<std::vector<int>> wires(nn);
  for (int i = 0; i < nn; ++i) wires[i].assign(grid.nodes()[i].arity(), -1);
  for (int k = 0; k < ne; ++k) {
    const auto& e = grid.edges()[k];
    wires[e.node_a][e.slot_a] = k;
    wires[e.node_b][e.slot_b] = k;
  }
  std::vector<Factor> factors;
  Scalar constant(1);
  for (int i = 0; i < nn; ++i) {
    Factor f = node_factor(grid.nodes()[i], wires[i]);
    if (f.vars.empty())
      constant *= f.table[0];
    else
      factors.push_back(std::move(f));
  }
  const int cap = max_enumeration_bits();
  std::vector<char> alive(factors.size(), 1);
  for (int step = 0; step < ne; ++step) {
    // Pick the variable whose elimination creates the smallest factor.
    int best = -1;
    std::size_t best_size = 0;
    std::vector<int> best_scope;
    for (int v = 0; v < ne; ++v) {
      std::vector<int> scope;
      bool used = false;
      for (size_t j = 0; j < factors.size(); ++j) {
        if (!alive[j]) continue;
        const auto& vars = factors[j].vars;
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) continue;
        used = true;
        for (int u : vars)
          if (u != v && std::find(scope.begin(), scope.end(), u) == scope.end()) scope.push_back(u);
      }
      if (!used) continue;
      if (best < 0 || scope.size() < best_size) {
        best = v;
        best_size = scope.size();
        best_scope = scope;
      }
    }
    if (best < 0) break;
    require(static_cast<int>(best_size) <= cap, ErrorKind::EdgeCapExceeded,
            "intermediate factor over " + std::to_string(best_size) + " edges exceeds the cap of " +
                std::to_string(cap));
    std::vector<int> members;
    for (size_t j = 0; j < factors.size(); ++j)
      if (alive[j] && std::find(factors[j].vars.begin(), factors[j].vars.end(), best) != factors[j].vars.end())
        members.push_back(static_cast<int>(j));
    Factor out;
    out.vars = best_scope;
    const int k = static_cast<int>(out.vars.size());
    out.table.assign(std::size_t{1} << k, Scalar(0));
    // Bit position of each member variable within the extended scope (scope, then best).
    std::vector<std::vector<int>> shift(members.size());
    for (size_t m = 0; m < members.size(); ++m)
      for (int u : factors[members[m]].vars) {
        int pos = u == best ? k : static_cast<int>(std::find(out.vars.begin(), out.vars.end(), u) - out.vars.begin());
        shift[m].push_back(k - pos);  // scope bit k-1-pos sits at (row<<1) position k-pos
      }
    for (std::uint64_t row = 0; row < out.table.size(); ++row) {
      Scalar sum(0);
      for (std::uint64_t b = 0; b < 2; ++b) {
        const std::uint64_t ext = (row << 1) | b;
        Scalar prod(1);
        for (size_t m = 0; m < members.size() && !prod.is_zero(); ++m) {
          const Factor& f = factors[members[m]];
          std::uint64_t idx = 0;
          for (int s : shift[m]) idx = (idx << 1) | ((ext >> s) & 1);
          prod *= f.table[idx];
        }
        sum += prod;
      }
      out.table[row] = sum;
    }
    for (int m : members) alive[m] = 0;
    if (out.vars.empty()) {
      constant *= out.table[0];
    } else {
      factors.push_back(std::move(out));
      alive.push_back(1);
    }
  }
  for (size_t j = 0; j < factors.size(); ++j)
    if (alive[j]) fail(ErrorKind::InternalInvariant, "factor left after elimination");
  return constant;
}

}  // namespace holant
