#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holant/plane_graph.hpp"
#include "holant/scalar.hpp"

namespace holant {

/// Which side of the bipartition a slot faces. A left node's slots are all L,
/// a right node's slots are all R; explicit tables type each slot.
enum class Side { L, R };

inline Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }

struct GridNode {
  enum class Kind { Left, Right, Table };
  Kind kind = Kind::Left;
  Vec symmetric;                // [f0..fn] for Left and Right nodes
  Vec table;                    // 2^arity entries, row-major, slot 0 most significant
  std::vector<Side> slot_sides;

  int arity() const { return static_cast<int>(slot_sides.size()); }
  /// bits[k] is the value on slot k.
  Scalar value(const std::vector<int>& bits) const;
  Scalar value_at(std::uint64_t row) const;  // row index in table order
  bool uniform_side(Side& side) const;
};

struct GridEdge {
  int node_a = 0, slot_a = 0, node_b = 0, slot_b = 0;
};

struct DanglingSlot {
  int node = 0, slot = 0;
  Side side = Side::L;
};

/// Bipartite signature grid with optional dangling slots and an optional
/// per-node cyclic slot order (slot order when absent).
class SignatureGrid {
 public:
  int add_left(Vec symmetric);
  int add_right(Vec symmetric);
  int add_table(Vec table, std::vector<Side> sides);
  void connect(int node_a, int slot_a, int node_b, int slot_b);
  void dangle(int node, int slot);
  void set_embedding(int node, std::vector<int> cyclic_slots);

  /// Every slot used exactly once; tables sized 2^arity.
  void validate() const;

  const std::vector<GridNode>& nodes() const { return nodes_; }
  std::vector<GridNode>& nodes() { return nodes_; }
  const std::vector<GridEdge>& edges() const { return edges_; }
  const std::vector<DanglingSlot>& dangling() const { return dangling_; }
  const std::vector<std::vector<int>>& embedding() const { return embedding_; }
  /// Cyclic slot order at node, slot order when no embedding was given.
  std::vector<int> slot_order(int node) const;

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::vector<int> nodes_of_kind(GridNode::Kind kind) const;

 private:
  std::vector<GridNode> nodes_;
  std::vector<GridEdge> edges_;
  std::vector<DanglingSlot> dangling_;
  std::vector<std::vector<int>> embedding_;
};

/// Brute-force cap on enumeration size, read from HOLANT_MAX_EDGES (default 24).
int max_enumeration_bits();

/// Exact Holant value. Enumerates the supports of the cheaper uniform side when
/// every node is one-sided, otherwise every edge; throws EdgeCapExceeded when the
/// enumeration exceeds 2^max_enumeration_bits().
Scalar eval(const SignatureGrid& grid);

/// Signature of a gadget: entry i (row-major, first dangling slot most
/// significant) is the Holant value with the dangling slots fixed to i's bits.
Vec eval_gadget(const SignatureGrid& grid);

/// Sums over one boolean per right node; every right node must be a
/// generalized equality [a,0,...,0,b].
Scalar eval_collapsed(const SignatureGrid& grid);

/// Exact Holant value by eliminating edge variables one at a time, cheapest
/// first. Independent of the enumerating evaluator and practical whenever the
/// grid has small treewidth; throws EdgeCapExceeded if an intermediate factor
/// would exceed 2^max_enumeration_bits() entries.
Scalar eval_contract(const SignatureGrid& grid);

/// Embedded underlying graph of a dangling-free grid: vertex i is node i and
/// dart 2k / 2k+1 are the two ends of edge k. Validated for planarity.
struct GridGraph {
  PlaneGraph graph;
  std::vector<int> dart_edge;  // edge id of each dart
};
GridGraph grid_graph(const SignatureGrid& grid);

/// Every vertex becomes a right node with right_sig, every edge a binary left
/// node with left_sig; slot orders follow the rotations.
SignatureGrid incidence_grid(const PlaneGraph& g, const Vec& left_sig, const Vec& right_sig);
/// Inverse of incidence_grid: merges each binary left node into an edge.
PlaneGraph merge_binary_left(const SignatureGrid& grid);

/// Pl-Holant(f | right) instance on a 2-colored plane graph: color-0 vertices
/// become left nodes with f, color-1 vertices right nodes.
SignatureGrid bipartite_grid(const PlaneGraph& g, const std::vector<int>& coloring, const Vec& left_sig,
                             const Vec& right_sig);

/// Symmetric signature expanded to its 2^arity table.
Vec expand_symmetric(const Vec& symmetric);

}  // namespace holant
