#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "holant/plane_graph.hpp"

namespace holant {

/// Planar 3-way edge matching certificate: face[e] is the face edge e is
/// assigned to. Valid when every edge goes to an incident face and every face
/// receives a multiple of three edges.
struct FaceAssignment {
  std::vector<int> face;
};

/// A component that admits no matching.
struct ExceptionalGraph {
  std::string kind;           // "K4" or "M23"
  std::vector<int> vertices;  // the offending component
};

struct P3emResult {
  std::optional<FaceAssignment> assignment;
  std::optional<ExceptionalGraph> exception;
};

/// Constructive matching for a cubic plane multigraph. Throws NotCubic.
P3emResult find_p3em(const PlaneGraph& g);

struct VerifyReport {
  bool ok = true;
  std::string violation;  // "DomainViolation", "IncidenceViolation" or "Mod3Violation"
  int edge = -1;
  int face = -1;
  std::string message;
};
VerifyReport verify(const PlaneGraph& g, const FaceAssignment& sigma);

/// Three edges matched inside a host face; darts are the boundary occurrences
/// in traversal order and start is the window's index among the face's
/// assigned occurrences.
struct Triple {
  int face = 0;
  std::array<int, 3> edges{};
  std::array<int, 3> darts{};
  int start = 0;
};
/// Groups consecutive assigned edges of each face, walking its boundary from
/// its smallest dart. Throws InvalidAssignment unless verify passes.
std::vector<Triple> triples(const PlaneGraph& g, const FaceAssignment& sigma);

/// Subdivides every edge and adds one vertex per triple inside its host face,
/// joined to the three midpoints. Throws InvalidAssignment.
PlaneGraph materialize(const PlaneGraph& g, const FaceAssignment& sigma);

/// Hard-coded matching for the eight base cases of the induction, when g is
/// planarly isomorphic to one of them.
std::optional<FaceAssignment> base_case(const PlaneGraph& g);
/// The eight base-case graphs with the colour class of every edge.
struct BaseCaseGraph {
  std::string name;
  PlaneGraph graph;
  std::vector<int> colour;  // per edge id
};
const std::vector<BaseCaseGraph>& base_case_graphs();

/// One inductive step on a connected cubic graph that is neither a base case
/// nor exceptional. Children may be disconnected; `local` lists the parent
/// edges re-assigned by the lift, every other edge inherits from a child.
struct Reduction {
  std::string label;    // self_loop, parallel_edges, triangle, bridge, square, chord, pentagon
  std::string variant;  // sub-case within the label
  std::vector<DerivedGraph> children;
  std::vector<int> local;
};
/// Throws NoApplicableCase when no case applies.
Reduction step_reduce(const PlaneGraph& g);
/// Applies one named case if its pattern occurs, ignoring the priority order.
std::optional<Reduction> try_reduction(const PlaneGraph& g, const std::string& label);
/// Combines valid child matchings into a valid parent matching. Throws
/// InternalInvariant if no completion of the local edges exists.
FaceAssignment lift(const PlaneGraph& parent, const Reduction& r, const std::vector<FaceAssignment>& child_sigmas);

/// The pentagon system: x'[0..4] and y'3, y'4 describe the reduced graph,
/// x[0..4] and y[0..4] the original pentagon and its spokes.
struct SigmaSolution {
  std::array<bool, 5> x{};
  std::array<bool, 5> y{};
};
bool sigma_holds(const std::array<bool, 5>& xp, bool y3p, bool y4p, const SigmaSolution& s);
SigmaSolution solve_sigma(const std::array<bool, 5>& xp, bool y3p, bool y4p);

}  // namespace holant
