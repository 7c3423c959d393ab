#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace holant {

struct DartRecord {
  int id = 0;
  int twin = 0;
  int vertex = 0;
};

struct VertexRecord {
  int id = 0;
  std::vector<int> rotation;  // counterclockwise dart order
};

struct RotationSpec {
  std::vector<VertexRecord> vertices;
  std::vector<DartRecord> darts;
};

struct Face {
  int id = 0;
  std::vector<int> boundary;  // orbit of the face successor, starting at its smallest dart
};

/// Plane multigraph stored as a rotation system. Loops and parallel edges are
/// allowed. The face successor of dart d is the rotation successor of twin(d)
/// at vertex(twin(d)); every query is O(1) after build.
///
/// Edge ids are assigned in increasing order of their smaller dart id.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  /// Validates twins, rotations and Euler's formula per component.
  static PlaneGraph build(const RotationSpec& spec);
  /// Shorthand: rotations[v] lists v's darts; twin[d] is d's twin.
  static PlaneGraph from_rotations(const std::vector<std::vector<int>>& rotations,
                                   const std::vector<int>& twin);
  RotationSpec spec() const;

  int num_vertices() const { return static_cast<int>(rotation_.size()); }
  int num_darts() const { return static_cast<int>(twin_.size()); }
  int num_edges() const { return static_cast<int>(edge_darts_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_components() const { return num_components_; }

  int twin(int d) const { return twin_[d]; }
  int vertex(int d) const { return vertex_[d]; }
  int rot_next(int d) const;
  int rot_prev(int d) const;
  int face_succ(int d) const { return rot_next(twin_[d]); }
  const std::vector<int>& rotation(int v) const { return rotation_[v]; }
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }

  int edge_of(int d) const { return edge_of_[d]; }
  std::pair<int, int> edge_darts(int e) const;
  bool is_loop(int e) const;
  /// In a plane embedding an edge is a bridge iff one face lies on both sides.
  bool is_bridge(int e) const;

  const std::vector<Face>& faces() const { return faces_; }
  int face_of(int d) const { return face_of_[d]; }
  int component_of_vertex(int v) const { return component_[v]; }
  int component_of_face(int f) const;

  bool is_cubic() const;

 private:
  void index();

  std::vector<int> twin_;
  std::vector<int> vertex_;
  std::vector<int> pos_;
  std::vector<std::vector<int>> rotation_;
  std::vector<int> edge_of_;
  std::vector<std::pair<int, int>> edge_darts_;
  std::vector<Face> faces_;
  std::vector<int> face_of_;
  std::vector<int> component_;
  int num_components_ = 0;
};

/// Vertex sets of the connected components, each sorted.
std::vector<std::vector<int>> connected_components(const PlaneGraph& g);

/// Component count after deleting edge e; used as a bridge oracle.
int components_without_edge(const PlaneGraph& g, int e);

/// A subgraph extracted from a parent, with maps from its darts and vertices
/// back to the parent's ids (-1 for darts created by surgery).
struct DerivedGraph {
  PlaneGraph graph;
  std::vector<int> dart_origin;
  std::vector<int> vertex_origin;
};

/// The subgraph on a vertex set closed under adjacency (a union of components).
DerivedGraph extract_vertices(const PlaneGraph& g, const std::vector<int>& vertices);

/// Mutable rotation system for local surgery. Darts remember the parent dart
/// they came from so assignments can be transported back.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(const PlaneGraph& g);

  int add_vertex();
  /// New dart at v placed right after `after` in v's rotation (appended when -1).
  int add_dart(int v, int after = -1);
  void set_twin(int d1, int d2);
  /// Removes v; the far ends of its non-loop edges become dangling darts.
  void delete_vertex(int v);
  void delete_edge(int d);
  /// Unlinks d from its twin; both darts stay in place, dangling.
  void detach(int d);
  /// Contracts the non-loop edge of d; the merged vertex keeps vertex(d)'s id.
  int contract(int d);
  /// Splits the edge of d with a new degree-2 vertex m; afterwards twin(d) is at m.
  int subdivide(int d);

  int twin(int d) const { return twin_[d]; }
  int vertex(int d) const { return vertex_[d]; }
  bool dart_alive(int d) const { return dart_alive_[d]; }
  bool vertex_alive(int v) const { return vertex_alive_[v]; }
  const std::vector<int>& rotation(int v) const { return rotation_[v]; }
  int rot_next(int d) const;

  /// Compacts ids and validates planarity; dangling darts are an internal error.
  DerivedGraph finish() const;

 private:
  void remove_from_rotation(int d);

  std::vector<int> twin_;
  std::vector<int> vertex_;
  std::vector<int> origin_;
  std::vector<bool> dart_alive_;
  std::vector<std::vector<int>> rotation_;
  std::vector<bool> vertex_alive_;
  std::vector<int> vertex_origin_;
};

/// Canonical code of a connected plane graph under orientation-preserving and
/// orientation-reversing relabelings; equal codes mean planar isomorphic.
std::vector<int> canonical_code(const PlaneGraph& g);
bool planar_isomorphic(const PlaneGraph& a, const PlaneGraph& b);

/// Canonical code plus the dart labelling that realizes it; darts with equal
/// labels in two graphs with equal codes correspond under the isomorphism.
struct CanonicalForm {
  std::vector<int> code;
  std::vector<int> dart_label;
};
CanonicalForm canonical_form(const PlaneGraph& g);

/// Proper 2-coloring of the vertices, if one exists.
std::optional<std::vector<int>> two_coloring(const PlaneGraph& g);

/// Small fixed graphs.
PlaneGraph theta_graph();     // M_{2,3}
PlaneGraph dumbbell_graph();  // two loop vertices joined by a bridge
PlaneGraph k4_graph();
PlaneGraph cube_graph();

/// Embeds an abstract multigraph (loops as (v,v)) by exhaustive rotation
/// search; practical for small graphs only. Edge k gets darts 2k (at first
/// endpoint) and 2k+1.
std::optional<PlaneGraph> embed_small(int n, const std::vector<std::pair<int, int>>& edges);
std::vector<PlaneGraph> all_embeddings_small(int n, const std::vector<std::pair<int, int>>& edges);

/// Expansion moves. Each adds two vertices (the ladder adds four) and keeps
/// the graph cubic and plane.
/// Chord between subdivision points of the edges of d1 and d2, which must lie
/// on one face; d1 == d2 puts both points on the same edge (parallel pair).
PlaneGraph insert_chord(const PlaneGraph& g, int d1, int d2);
/// Pendant vertex carrying a loop, attached at a subdivision point of d's edge.
PlaneGraph insert_loop_pendant(const PlaneGraph& g, int d);
/// Two rungs between double subdivisions of the edges of d1 and d2 on one face.
PlaneGraph insert_ladder(const PlaneGraph& g, int d1, int d2);

PlaneGraph generate_cubic_plane(int n, std::uint64_t seed);
PlaneGraph generate_cubic_bipartite_plane(int n, std::uint64_t seed);

/// Closure of {theta, dumbbell} under chord and loop-pendant moves, restricted
/// to at most max_vertices vertices, deduplicated by canonical code.
std::vector<PlaneGraph> enumerate_cubic_plane(int max_vertices);

/// Disjoint union; darts and vertices of b are shifted after a's.
PlaneGraph disjoint_union(const PlaneGraph& a, const PlaneGraph& b);

}  // namespace holant
