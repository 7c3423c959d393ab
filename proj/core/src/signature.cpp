#include "holant/signature.hpp"

#include <bit>
#include <sstream>

#include "holant/error.hpp"

namespace holant {

// ---------------------------------------------------------------------------
// Matrices

Matrix mat_identity(int n) {
  Matrix m(n, Vec(n));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(), ErrorKind::PreconditionViolation,
          "matrix shapes do not match");
  Matrix c(a.size(), Vec(b[0].size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Matrix mat_pow(const Matrix& m, long exponent) {
  require(exponent >= 0, ErrorKind::PreconditionViolation, "negative matrix power");
  Matrix result = mat_identity(static_cast<int>(m.size()));
  Matrix base = m;
  while (exponent > 0) {
    if (exponent & 1) result = mat_mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mat_mul(base, base);
  }
  return result;
}

Matrix mat_scale(const Matrix& m, const Scalar& s) {
  Matrix out = m;
  for (auto& row : out)
    for (auto& v : row) v *= s;
  return out;
}

Matrix table_to_matrix(const Vec& table, int row_bits) {
  int total = std::countr_zero(table.size());
  int col_bits = total - row_bits;
  Matrix m(std::size_t{1} << row_bits, Vec(std::size_t{1} << col_bits));
  for (size_t k = 0; k < table.size(); ++k) m[k >> col_bits][k & ((std::size_t{1} << col_bits) - 1)] = table[k];
  return m;
}

std::string mat_str(const Matrix& m) {
  std::string out = "[";
  for (size_t i = 0; i < m.size(); ++i) {
    out += i ? ",[" : "[";
    for (size_t j = 0; j < m[i].size(); ++j) out += (j ? "," : "") + m[i][j].str();
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Symmetric signatures

Vec transform_symmetric(const Vec& f, const Matrix& t) {
  const int n = static_cast<int>(f.size()) - 1;
  Vec g(n + 1);
  for (int w = 0; w <= n; ++w) {
    std::uint64_t y = (std::uint64_t{1} << w) - 1;  // representative of weight w
    Scalar sum;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      Scalar term = f[std::popcount(x)];
      for (int i = 0; i < n && !term.is_zero(); ++i) term *= t[(x >> i) & 1][(y >> i) & 1];
      sum += term;
    }
    g[w] = sum;
  }
  return g;
}

Vec hadamard3(const Vec& f) {
  require(f.size() == 4, ErrorKind::MalformedInput, "hadamard3 needs a ternary signature");
  return transform_symmetric(f, {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(-1)}});
}

Vec hadamard3_inv(const Vec& g) {
  require(g.size() == 4, ErrorKind::MalformedInput, "hadamard3_inv needs a ternary signature");
  Scalar h(Rational(1, 2));
  return transform_symmetric(g, {{h, h}, {h, -h}});
}

std::optional<Vec> symmetric_from_table(const Vec& table) {
  const int n = std::countr_zero(table.size());
  Vec f(n + 1);
  std::vector<bool> seen(n + 1, false);
  for (std::uint64_t row = 0; row < table.size(); ++row) {
    int w = std::popcount(row);
    if (!seen[w]) {
      f[w] = table[row];
      seen[w] = true;
    } else if (f[w] != table[row]) {
      return std::nullopt;
    }
  }
  return f;
}

Vec connect_unary(const Vec& f, const Vec& u) {
  require(f.size() >= 2 && u.size() == 2, ErrorKind::MalformedInput, "connect_unary needs arity >= 1 and a unary");
  Vec out(f.size() - 1);
  for (size_t k = 0; k + 1 < f.size(); ++k) out[k] = f[k] * u[0] + f[k + 1] * u[1];
  return out;
}

std::optional<Normalized> normalize_f0(const Vec& f) {
  if (!f.front().is_zero()) {
    Normalized n{f, f.front(), false};
    for (auto& v : n.f) v /= n.scale;
    return n;
  }
  if (!f.back().is_zero()) {
    Normalized n{Vec(f.rbegin(), f.rend()), f.back(), true};
    for (auto& v : n.f) v /= n.scale;
    return n;
  }
  return std::nullopt;
}

Vec parse_signature(const std::string& text) {
  std::string clean;
  for (char c : text)
    if (c != '[' && c != ']' && c != '"' && c != ' ' && c != '\t' && c != '\n') clean += c;
  Vec out;
  std::stringstream ss(clean);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Scalar::parse(item));
  require(!out.empty(), ErrorKind::MalformedInput, "empty signature '" + text + "'");
  return out;
}

std::string signature_str(const Vec& f) {
  std::string out = "[";
  for (size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i].str();
  return out + "]";
}

// ---------------------------------------------------------------------------
// Gadget grids

namespace {

const Vec kEq3 = {Scalar(1), Scalar(0), Scalar(0), Scalar(1)};

void require_ternary(const Vec& f) {
  require(f.size() == 4, ErrorKind::MalformedInput, "expected a ternary signature [f0,f1,f2,f3]");
}

}  // namespace

SignatureGrid grid_G1(const Vec& f) {
  require_ternary(f);
  SignatureGrid g;
  int s = g.add_left(f);
  int c = g.add_right(kEq3);
  g.connect(s, 1, c, 0);
  g.connect(s, 2, c, 1);
  g.dangle(s, 0);
  g.dangle(c, 2);
  return g;
}

SignatureGrid grid_G2(const Vec& f) {
  require_ternary(f);
  SignatureGrid g;
  int s1 = g.add_left(f);
  int s2 = g.add_left(f);
  int c1 = g.add_right(kEq3);
  int c2 = g.add_right(kEq3);
  g.connect(s1, 1, c1, 0);
  g.connect(s1, 2, c2, 0);
  g.connect(s2, 0, c1, 1);
  g.connect(s2, 1, c2, 1);
  g.connect(s2, 2, c2, 2);
  g.dangle(s1, 0);
  g.dangle(c1, 2);
  return g;
}

SignatureGrid grid_G3(const Vec& f) {
  require_ternary(f);
  SignatureGrid g;
  int s1 = g.add_left(f), s2 = g.add_left(f), s3 = g.add_left(f), s4 = g.add_left(f);
  int c0 = g.add_right(kEq3), cl = g.add_right(kEq3), cr = g.add_right(kEq3);
  g.connect(s1, 1, c0, 0);
  g.connect(s1, 2, cl, 0);
  g.connect(s2, 1, c0, 1);
  g.connect(s2, 2, cr, 0);
  g.connect(s3, 0, cl, 1);
  g.connect(s3, 1, cr, 1);
  g.connect(s4, 0, c0, 2);
  g.connect(s4, 1, cl, 2);
  g.connect(s4, 2, cr, 2);
  g.dangle(s1, 0);
  g.dangle(s2, 0);
  g.dangle(s3, 2);
  return g;
}

SignatureGrid grid_G4(const Vec& f) {
  require_ternary(f);
  SignatureGrid g;
  int t1 = g.add_left(f), t3 = g.add_left(f), b2 = g.add_left(f);
  int t2 = g.add_right(kEq3), b1 = g.add_right(kEq3), b3 = g.add_right(kEq3);
  g.connect(t1, 1, t2, 0);
  g.connect(t1, 2, b1, 2);
  g.connect(t3, 0, t2, 1);
  g.connect(t3, 1, b3, 1);
  g.connect(b2, 0, b1, 1);
  g.connect(b2, 1, b3, 0);
  g.connect(b2, 2, t2, 2);
  g.dangle(t1, 0);
  g.dangle(b1, 0);
  g.dangle(t3, 2);
  g.dangle(b3, 2);
  return g;
}

Vec degenerate_D(const Scalar& x, const Scalar& y) {
  // D[i][j] = [y,1][i] * [1,x][j]
  return {y, y * x, Scalar(1), x};
}

SignatureGrid grid_nonlinearity(const Vec& f, const Scalar& x, const Scalar& y) {
  require_ternary(f);
  SignatureGrid g;
  Vec d = degenerate_D(x, y);
  int d1 = g.add_table(d, {Side::L, Side::R});
  int d2 = g.add_table(d, {Side::L, Side::R});
  int c1 = g.add_right(kEq3);
  int c2 = g.add_right(kEq3);
  int s = g.add_left(f);
  g.connect(d1, 0, c1, 0);
  g.connect(s, 0, c1, 1);
  g.connect(s, 1, c1, 2);
  g.connect(s, 2, c2, 0);
  g.connect(d2, 0, c2, 1);
  g.dangle(d1, 1);
  g.dangle(d2, 1);
  g.dangle(c2, 2);
  return g;
}

Matrix gadget_G1(const Vec& f) { return table_to_matrix(eval_gadget(grid_G1(f)), 1); }
Matrix gadget_G2(const Vec& f) { return table_to_matrix(eval_gadget(grid_G2(f)), 1); }

Vec gadget_G3(const Vec& f) {
  auto sym = symmetric_from_table(eval_gadget(grid_G3(f)));
  require(sym.has_value(), ErrorKind::InternalInvariant, "G3 table is not symmetric");
  return *sym;
}

Matrix gadget_G4(const Vec& f) { return table_to_matrix(eval_gadget(grid_G4(f)), 2); }

namespace {

Scalar require_1a1a(const Vec& f) {
  require(f.size() == 4 && f[0].is_one() && f[2].is_one() && f[1] == f[3], ErrorKind::WrongForm,
          "expected a signature of the form [1,a,1,a], got " + signature_str(f));
  return f[1];
}

}  // namespace

G4Normalized gadget_G4_normalized(const Vec& f) {
  Scalar a = require_1a1a(f);
  Scalar scale = a + a * a;
  require(!scale.is_zero(), ErrorKind::NormalizationZero, "a + a^2 = 0 for a = " + a.str());
  Matrix m = gadget_G4(f);
  G4Normalized out{scale, Scalar(), mat_scale(m, scale.inverse())};
  out.z = out.matrix[0][0];
  return out;
}

std::pair<Matrix, Matrix> factor_AB(const Scalar& a) {
  Scalar o(1), z;
  Matrix A = {{o, z, a, z}, {z, a, z, o}, {a, z, o, z}, {z, o, z, a}};
  Matrix B = {{o, a, z, z}, {a, o, z, z}, {z, z, a, o}, {z, z, o, a}};
  return {A, B};
}

GammaChain gamma_chain(const Vec& f, int s) {
  Scalar a = require_1a1a(f);
  require(!(a * a).is_one(), ErrorKind::NormalizationZero, "a = ±1 makes the chain degenerate");
  require(s >= 0, ErrorKind::PreconditionViolation, "negative chain index");
  G4Normalized g = gadget_G4_normalized(f);
  Matrix p = mat_pow(g.matrix, 2L * s + 1);
  Scalar off = p[0][1];
  require(!off.is_zero(), ErrorKind::NormalizationZero, "chain power has a zero off-pattern entry");
  GammaChain out{mat_scale(p, off.inverse()), Scalar()};
  out.x = out.gamma[0][0];
  return out;
}

Scalar gamma_recurrence(const Scalar& z, int s) {
  Scalar x = z;
  for (int k = 0; k < s; ++k) {
    Scalar num = Scalar(6) + Scalar(6) * z + Scalar(3) * x + z * z * x;
    Scalar den = Scalar(7) + Scalar(4) * z + z * z + Scalar(2) * x + Scalar(2) * z * x;
    require(!den.is_zero(), ErrorKind::NormalizationZero, "recurrence denominator vanished");
    x = num / den;
  }
  return x;
}

Vec nonlinearity_gadget(const Vec& f, const Scalar& y) {
  Vec table = eval_gadget(grid_nonlinearity(f, Scalar(1), y));
  return {table[0], table[1]};
}

// ---------------------------------------------------------------------------
// Eigen-analysis

Eigen2 eigen2(const Matrix& m) {
  require(m.size() == 2 && m[0].size() == 2 && m[1].size() == 2, ErrorKind::MalformedInput, "eigen2 needs 2x2");
  const Scalar& m00 = m[0][0];
  const Scalar& m01 = m[0][1];
  const Scalar& m10 = m[1][0];
  const Scalar& m11 = m[1][1];
  require(!m10.is_zero(), ErrorKind::ZeroSubdiagonal, "lower-left entry is zero");
  Scalar diff = m00 - m11;
  Scalar disc = diff * diff + Scalar(4) * m01 * m10;
  require(disc.is_rational(), ErrorKind::PreconditionViolation, "discriminant must be rational");
  Eigen2 e;
  e.delta = Scalar::sqrt(disc.rational());
  Scalar t = m00 + m11;
  Scalar half(Rational(1, 2));
  e.lambda = (t - e.delta) * half;
  e.mu = (t + e.delta) * half;
  Scalar two_m10 = Scalar(2) * m10;
  e.x = (e.delta - diff) / two_m10;
  e.y = (e.delta + diff) / two_m10;
  return e;
}

bool WorksReport::works() const {
  return nonsingular && !trace_zero && !ratio_order3 && !ratio_order4 && !ratio_order6 && !equal_eigen;
}

WorksReport works_report(const Matrix& m) {
  require(m.size() == 2 && m[0].size() == 2, ErrorKind::MalformedInput, "works needs 2x2");
  Scalar t = m[0][0] + m[1][1];
  Scalar d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Scalar t2 = t * t;
  WorksReport r;
  r.nonsingular = !d.is_zero();
  r.trace_zero = t.is_zero();
  r.ratio_order3 = t2 == d;
  r.ratio_order4 = t2 == Scalar(2) * d;
  r.ratio_order6 = t2 == Scalar(3) * d;
  r.equal_eigen = t2 == Scalar(4) * d;
  return r;
}

bool works(const Matrix& m) { return works_report(m).works(); }

// ---------------------------------------------------------------------------
// Absorption gadgets

SignatureGrid grid_absorb_g1(const Scalar& y) {
  SignatureGrid g;
  int c = g.add_right(kEq3);
  for (int k = 0; k < 3; ++k) g.connect(g.add_left({y, Scalar(1)}), 0, c, k);
  return g;
}

SignatureGrid grid_absorb_g2(const Vec& f, const Scalar& y) {
  require_ternary(f);
  SignatureGrid g;
  int c1 = g.add_right(kEq3), c2 = g.add_right(kEq3);
  int s = g.add_left(f);
  g.connect(g.add_left({y, Scalar(1)}), 0, c1, 0);
  g.connect(g.add_left({y, Scalar(1)}), 0, c1, 1);
  g.connect(s, 0, c1, 2);
  g.connect(s, 1, c2, 0);
  g.connect(s, 2, c2, 1);
  g.connect(g.add_left({y, Scalar(1)}), 0, c2, 2);
  return g;
}

SignatureGrid grid_absorb_f1(const Vec& f, const Scalar& x) {
  require_ternary(f);
  SignatureGrid g;
  int s = g.add_left(f);
  for (int k = 0; k < 3; ++k) g.connect(s, k, g.add_right({Scalar(1), x}), 0);
  return g;
}

SignatureGrid grid_absorb_f2(const Vec& f, const Scalar& x) {
  require_ternary(f);
  SignatureGrid g;
  int s1 = g.add_left(f), s2 = g.add_left(f);
  int c = g.add_right(kEq3);
  g.connect(s1, 0, g.add_right({Scalar(1), x}), 0);
  g.connect(s1, 1, g.add_right({Scalar(1), x}), 0);
  g.connect(s1, 2, c, 0);
  g.connect(s2, 0, c, 1);
  g.connect(s2, 1, c, 2);
  g.connect(s2, 2, g.add_right({Scalar(1), x}), 0);
  return g;
}

SignatureGrid grid_absorb_f3(const Vec& f, const Scalar& x) {
  require_ternary(f);
  SignatureGrid g;
  int s1 = g.add_left(f), s2 = g.add_left(f), s3 = g.add_left(f);
  int c1 = g.add_right(kEq3), c2 = g.add_right(kEq3);
  g.connect(s1, 0, c1, 0);
  g.connect(s1, 1, c1, 1);
  g.connect(s1, 2, c2, 0);
  g.connect(s2, 0, c1, 2);
  g.connect(s2, 1, g.add_right({Scalar(1), x}), 0);
  g.connect(s2, 2, g.add_right({Scalar(1), x}), 0);
  g.connect(s3, 0, c2, 1);
  g.connect(s3, 1, c2, 2);
  g.connect(s3, 2, g.add_right({Scalar(1), x}), 0);
  return g;
}

AbsorbY absorb_factors_y(const Vec& f, const Scalar& y) {
  return {eval(grid_absorb_g1(y)), eval(grid_absorb_g2(f, y))};
}

AbsorbX absorb_factors_x(const Vec& f, const Scalar& x) {
  return {eval(grid_absorb_f1(f, x)), eval(grid_absorb_f2(f, x)), eval(grid_absorb_f3(f, x))};
}

}  // namespace holant
