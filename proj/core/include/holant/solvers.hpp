#pragma once

#include <string>
#include <vector>

#include "holant/fkt.hpp"
#include "holant/grid.hpp"
#include "holant/scalar.hpp"

namespace holant {

/// Shape shared by the tractable solvers: every left node carries the same
/// symmetric ternary f, every right node is an equality [1,0,...,0,1].
struct BipartiteInstance {
  Vec f;
  std::vector<int> left, right;                // node ids
  std::vector<std::vector<int>> left_inputs;   // per left node, index into `right` per slot
  std::vector<int> right_degree;               // per right index
};
/// Throws PreconditionViolation on dangling slots, tables or mixed left signatures.
BipartiteInstance analyse_instance(const SignatureGrid& grid);

/// f = [3a+b, -a-b, -a+b, 3a-b] with ternary right equalities.
Scalar solve_case5(const SignatureGrid& grid, const Scalar& a, const Scalar& b);

/// f = scale·u^{⊗3} with u = (1,t) or u = (0,1).
Scalar solve_degenerate(const SignatureGrid& grid, const Vec& u, const Scalar& scale);

/// f = [a,0,0,b].
Scalar solve_geneq(const SignatureGrid& grid, const Scalar& a, const Scalar& b);

enum class AffineFamily {
  EvenPlus,   // [a,0,a,0]
  EvenMinus,  // [a,0,-a,0]
  OddPlus,    // [0,a,0,a]
  OddMinus,   // [0,a,0,-a]
  Alternating,  // [a,-a,-a,a]
  HalfSign,     // [a,a,-a,-a]
};
const char* affine_family_name(AffineFamily family);
/// The pattern of a family with a = 1.
Vec affine_pattern(AffineFamily family);
Scalar solve_affine(const SignatureGrid& grid, AffineFamily family);

/// Σ_{z ∈ GF(2)^n, A z = c} (-1)^{Q(z)}, the core of the affine solver.
struct QuadraticForm {
  int n = 0;
  bool constant = false;
  std::vector<char> linear;
  std::vector<std::vector<char>> quad;  // symmetric, zero diagonal
  explicit QuadraticForm(int vars);
  void add_pair(int i, int j);  // z_i z_j, with z_i z_i = z_i
};
struct Gf2Constraint {
  std::vector<int> vars;  // with repetition, reduced mod 2
  bool rhs = false;
};
Integer gauss_sum(QuadraticForm q, const std::vector<Gf2Constraint>& constraints);

/// f = [a,b,b,a] (sign +1) or [a,b,-b,-a] (sign -1) with ternary right
/// equalities, evaluated after a Hadamard change of basis as an even or odd
/// subgraph sum turned into perfect matchings of a decorated graph.
Scalar solve_matchgate(const SignatureGrid& grid, const Scalar& a, const Scalar& b, int sign);

/// Local decoration that turns the subgraph-degree signature of a vertex into
/// a matching gadget. `external` is the degree; the target is indexed by the
/// number of incident edges in the subgraph.
struct MatchgateDecoration {
  std::string name;
  bool centre = false;
  Scalar ring_weight;    // terminal-terminal edges
  Scalar centre_weight;  // centre-terminal edges
};
MatchgateDecoration even_decoration(const Scalar& ratio);  // [1,0,ratio,0]
MatchgateDecoration odd_decoration(const Scalar& ratio);   // [0,1,0,ratio]
/// Fragment grid whose three dangling slots are the external edges; its
/// eval_gadget must equal decoration_target.
SignatureGrid decoration_fragment(const MatchgateDecoration& d);
Vec decoration_target(const MatchgateDecoration& d);
/// Symmetric degree signature of the decoration read off its fragment table.
Vec decoration_signature(const MatchgateDecoration& d);

}  // namespace holant
