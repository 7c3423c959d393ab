#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holant/grid.hpp"
#include "holant/scalar.hpp"

namespace holant {

/// Dense matrix of exact scalars, row-major.
using Matrix = std::vector<Vec>;

Matrix mat_identity(int n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_pow(const Matrix& m, long exponent);
Matrix mat_scale(const Matrix& m, const Scalar& s);
/// Reshapes a gadget table into a matrix whose rows index the first row_bits slots.
Matrix table_to_matrix(const Vec& table, int row_bits);
std::string mat_str(const Matrix& m);

/// f T^{⊗n} for a symmetric f of arity n: g(y) = Σ_x f(|x|) Π T[x_i][y_i].
Vec transform_symmetric(const Vec& f, const Matrix& t);
/// f H^{⊗3} with H = [[1,1],[1,-1]].
Vec hadamard3(const Vec& f);
/// (H^{⊗3})^{-1} g.
Vec hadamard3_inv(const Vec& g);
/// Symmetric signature of a table, when the table is symmetric.
std::optional<Vec> symmetric_from_table(const Vec& table);

/// Contracts one slot of a symmetric f with unary u.
Vec connect_unary(const Vec& f, const Vec& u);

/// Gadget grids. Dangling slots come first-left then right as documented per
/// gadget; squares carry f and circles carry =3.
SignatureGrid grid_G1(const Vec& f);
SignatureGrid grid_G2(const Vec& f);
SignatureGrid grid_G3(const Vec& f);
/// Dangling order: top-left, bottom-left, top-right, bottom-right.
SignatureGrid grid_G4(const Vec& f);
/// Two degenerate straddled D tables feed unaries into the gadget; dangling
/// order: the two D right slots, then the output.
SignatureGrid grid_nonlinearity(const Vec& f, const Scalar& x, const Scalar& y);

/// Straddled 2x2 signature matrices, rows indexed by the left dangling edge.
Matrix gadget_G1(const Vec& f);
Matrix gadget_G2(const Vec& f);
Vec gadget_G3(const Vec& f);
/// Unnormalized 4x4 matrix indexed [2*tl+bl][2*tr+br].
Matrix gadget_G4(const Vec& f);

struct G4Normalized {
  Scalar scale;  // a + a^2
  Scalar z;
  Matrix matrix;
};
/// f must be [1,a,1,a] with a not in {0,-1}.
G4Normalized gadget_G4_normalized(const Vec& f);
/// The two 4x4 factors with G4 = A·B·A.
std::pair<Matrix, Matrix> factor_AB(const Scalar& a);

struct GammaChain {
  Matrix gamma;  // G4^{2s+1} normalized so off-pattern entries are 1
  Scalar x;
};
/// Normalized odd matrix power of G4; requires a not in {0, ±1}.
GammaChain gamma_chain(const Vec& f, int s);
/// x_s by the recurrence x_{s+1} = (6+6z+3x+z^2 x)/(7+4z+z^2+2x+2zx), x_0 = z.
Scalar gamma_recurrence(const Scalar& z, int s);

/// The matrix D = [y,1] ⊗ [1,x] as a table; slot 0 faces the circles (L),
/// slot 1 faces the squares (R).
Vec degenerate_D(const Scalar& x, const Scalar& y);

/// Non-degenerate tensor factor [y^2+yb, ya+c] of the non-linearity gadget,
/// computed from the grid (f normalized so f0 = 1 is not required).
Vec nonlinearity_gadget(const Vec& f, const Scalar& y);

struct Eigen2 {
  Scalar delta, lambda, mu, x, y;
};
/// For M = [[m00,m01],[m10,m11]]: Δ^2 = (m00-m11)^2 + 4 m01 m10, λ = (t-Δ)/2,
/// μ = (t+Δ)/2 and eigenvectors (-x,1), (y,1). Requires m10 != 0.
Eigen2 eigen2(const Matrix& m);

struct WorksReport {
  bool nonsingular = false;
  bool trace_zero = false;      // t = 0
  bool ratio_order3 = false;    // t^2 = d
  bool ratio_order4 = false;    // t^2 = 2d
  bool ratio_order6 = false;    // t^2 = 3d
  bool equal_eigen = false;     // t^2 = 4d
  bool works() const;
};
WorksReport works_report(const Matrix& m);
/// Non-singular with eigenvalue ratio not a root of unity.
bool works(const Matrix& m);

/// Absorption gadget grids and their values.
SignatureGrid grid_absorb_g1(const Scalar& y);
SignatureGrid grid_absorb_g2(const Vec& f, const Scalar& y);
SignatureGrid grid_absorb_f1(const Vec& f, const Scalar& x);
SignatureGrid grid_absorb_f2(const Vec& f, const Scalar& x);
SignatureGrid grid_absorb_f3(const Vec& f, const Scalar& x);

struct AbsorbY {
  Scalar g1, g2;
};
struct AbsorbX {
  Scalar f1, f2, f3;
};
AbsorbY absorb_factors_y(const Vec& f, const Scalar& y);
AbsorbX absorb_factors_x(const Vec& f, const Scalar& x);

/// Normalizes f to f0 = 1, or flips 0/1 first when f0 = 0 and f3 != 0.
struct Normalized {
  Vec f;
  Scalar scale;
  bool flipped = false;
};
std::optional<Normalized> normalize_f0(const Vec& f);

Vec parse_signature(const std::string& text);
std::string signature_str(const Vec& f);

}  // namespace holant
