#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holant/grid.hpp"
#include "holant/p3em.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"

namespace holant {

// ---------------------------------------------------------------------------
// Cross-over planarization

/// Four-slot cross-over table. Slots are [left-top, left-bottom, right-top,
/// right-bottom]; the top slots belong to left-type vertices and the bottom
/// ones to right-type vertices. Value 1 iff left-top = right-bottom and
/// left-bottom = right-top, i.e. the matrix [[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]].
Vec crossover_table();
std::vector<Side> crossover_sides();
/// Counterclockwise slot order of the drawn cross-over.
std::vector<int> crossover_rotation();
bool is_crossover(const GridNode& node);

/// Two grid edges crossing at one point. pos_a and pos_b rank the crossing
/// along each edge starting at its left-node end. b_left_next tells the local
/// rotation: counterclockwise after edge a's arm toward its right node comes
/// edge b's arm toward its left node (true) or toward its right node (false).
struct Crossing {
  int edge_a = 0, edge_b = 0;
  int pos_a = 0, pos_b = 0;
  bool b_left_next = true;
};
/// Replaces every crossing by a cross-over node, keeping node embeddings.
/// Throws TripleCrossing when two crossings share a position on one edge.
SignatureGrid planarize(const SignatureGrid& grid, const std::vector<Crossing>& crossings);

// ---------------------------------------------------------------------------
// Interpolation of the cross-over

struct InterpolationRun {
  int copies = 0;
  std::vector<Scalar> nodes;         // x_s for s = 0..copies
  std::vector<Scalar> values;        // oracle value of each Ω_s
  std::vector<Scalar> coefficients;  // c_0..c_copies
  Scalar recovered;                  // c_copies
  std::vector<std::size_t> node_bits;  // numerator plus denominator bit length of x_s
};
using Oracle = std::function<Scalar(const SignatureGrid&)>;
/// Replaces every cross-over node by the chain table Γ_{2s+1} of f = [1,a,1,a],
/// evaluates each Ω_s with the oracle and solves the Vandermonde system.
InterpolationRun interpolate_recover(const SignatureGrid& grid, const Vec& f, const Oracle& oracle = eval);
/// Solves Σ_i x_s^i c_i = v_s exactly. Throws SingularSystem on repeated nodes.
Vec solve_vandermonde(const std::vector<Scalar>& nodes, const std::vector<Scalar>& values);

// ---------------------------------------------------------------------------
// Unary interpolation from a straddled matrix

struct VadhanCertificate {
  Scalar lambda, mu;
  Vec r1, r2;            // row eigenvectors: r1·M = λ r1, r2·M = μ r2
  Scalar alpha, beta;    // s = α r1 + β r2, both nonzero
  bool ratio_not_root_of_unity = false;
  std::optional<std::pair<Scalar, Scalar>> target;  // t = p·(α r1) + q·(β r2)
};
bool is_row_eigenvector(const Matrix& m, const Vec& s);
/// Requires a rational non-singular M with distinct eigenvalues; throws
/// EigenvectorInput when s is proportional to a row eigenvector.
VadhanCertificate vadhan_interpolate(const Matrix& m, const Vec& s, const std::optional<Vec>& target = std::nullopt);

// ---------------------------------------------------------------------------
// Unary absorption through a planar 3-way edge matching

/// f connected with [1,x] on one slot.
Vec flat_signature(const Vec& f, const Scalar& x);

struct Lemma9Result {
  SignatureGrid grid;
  Scalar factor;  // eval(grid) = factor · eval(input)
  int g1_count = 0, g2_count = 0;
  FaceAssignment sigma;
};
/// The input is the incidence grid of a cubic plane graph whose binary left
/// nodes carry flat_signature(f, x). Each binary node becomes f plus an
/// explicit D = [y,1]⊗[1,x] table; the dangling [y,1] ends are absorbed three
/// per face by the g1 or g2 gadget. Throws ExceptionalGraph and ZeroFactor.
Lemma9Result lemma9_transform(const SignatureGrid& incidence, const Vec& f, const Scalar& x, const Scalar& y);

// ---------------------------------------------------------------------------
// Cross-over pinned-0 gadget

/// [0,1,0,0] on squares, =3 on circles. Dangling order: red-left,
/// red-right, blue-left, blue-right.
SignatureGrid build_gadget_P();

struct PReport {
  bool ok = true;
  Vec table;                      // eval_gadget, first dangling slot most significant
  std::vector<Integer> supports;  // internal assignments with nonzero weight, per row, by enumeration
  std::vector<std::string> failures;
};
PReport verify_P();

}  // namespace holant
