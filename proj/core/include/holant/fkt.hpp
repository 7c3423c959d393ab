#pragma once

#include <vector>

#include "holant/plane_graph.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"

namespace holant {

/// Direction per edge: +1 points from the vertex of edge_darts(e).first to the
/// other end, -1 the reverse. Every face except `root_face` has an odd number
/// of edges pointing along its boundary traversal, which makes the orientation
/// Pfaffian (it is a Kasteleyn orientation of the mirror drawing).
struct KasteleynOrientation {
  std::vector<int> direction;
  int root_face = 0;
};

/// Requires a connected loop-free plane graph.
KasteleynOrientation kasteleyn_orient(const PlaneGraph& g);
/// Faces other than the root whose parity condition fails.
std::vector<int> kasteleyn_violations(const PlaneGraph& g, const KasteleynOrientation& o);

/// Exact Pfaffian of a skew-symmetric matrix by pivoted elimination.
Scalar pfaffian(Matrix a);
Scalar determinant(Matrix a);

/// HOLANT_CHECK_PFAFFIAN=1 turns on the Pf^2 = det cross-check.
bool pfaffian_check_default();

/// Weighted perfect-matching sum Σ_M Π_{e∈M} w_e; weights default to 1 and
/// loops never match. With check set, every Pfaffian is squared against the
/// determinant and a mismatch throws InternalInvariant.
Scalar count_pm(const PlaneGraph& g, const Vec& weights = {}, bool check = pfaffian_check_default());

}  // namespace holant
