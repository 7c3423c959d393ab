#include <gtest/gtest.h>

#include <complex>
#include <functional>

#include "holant/error.hpp"
#include "holant/signature.hpp"
#include "test_util.hpp"

using namespace holant;
using namespace holant::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an exception";
  return ErrorKind::InternalInvariant;
}

struct Abc {
  Scalar a, b, c;
  Vec f() const { return {Scalar(1), a, b, c}; }
};

Abc random_abc(std::mt19937_64& rng) { return {random_rational(rng), random_rational(rng), random_rational(rng)}; }

Matrix m2(Scalar a, Scalar b, Scalar c, Scalar d) { return {{a, b}, {c, d}}; }

}  // namespace

TEST(Signature, G1ClosedForm) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 60; ++t) {
    Vec f = random_ternary(rng);
    EXPECT_EQ(gadget_G1(f), m2(f[0], f[2], f[1], f[3]));
  }
  EXPECT_EQ(gadget_G1(eq3()), mat_identity(2));
}

TEST(Signature, G2ClosedForm) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    auto [a, b, c] = random_abc(rng);
    EXPECT_EQ(gadget_G2({1, a, b, c}), m2(Scalar(1) + a * b, a * a + b * c, a + b * b, a * b + c * c));
  }
  EXPECT_EQ(gadget_G2(eq3()), mat_identity(2));
  EXPECT_EQ(gadget_G2({1, -1, 0, 2}), m2(1, 1, -1, 4));
}

TEST(Signature, G3ClosedForm) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    auto [a, b, c] = random_abc(rng);
    Scalar a2 = a * a, a3 = a2 * a, b2 = b * b, b3 = b2 * b, c2 = c * c;
    Vec expect = {Scalar(1) + Scalar(3) * a3 + Scalar(3) * a2 * b2 + b3 * c,
                  a + a2 * a2 + Scalar(2) * a2 * b + a2 * b * c + Scalar(2) * a * b3 + b2 * c2,
                  a2 + a * b2 + Scalar(2) * a3 * b + b2 * b2 + Scalar(2) * a * b2 * c + b * c2 * c,
                  a3 + Scalar(3) * a2 * b2 + Scalar(3) * b3 * c + c2 * c2};
    EXPECT_EQ(gadget_G3({1, a, b, c}), expect);
  }
}

TEST(Signature, G3SpecialFamilies) {
  for (int n : {-3, -2, 2, 3, 5}) {
    Scalar a(n);
    Scalar a2 = a * a, a3 = a2 * a;
    EXPECT_EQ(gadget_G3({Scalar(1), a, -a.inverse(), Scalar(0)}),
              (Vec{Scalar(3) * a3 + Scalar(4), a2 * a2 - a - Scalar(2) / a2, -a2 + a.inverse() + (a2 * a2).inverse(),
                   a3 + Scalar(3)}));
    EXPECT_EQ(gadget_G3({Scalar(1), a, Scalar(0), Scalar(0)}),
              (Vec{Scalar(3) * a3 + Scalar(1), a2 * a2 + a, a2, a3}));
  }
  Vec e = gadget_G3(eq3());
  EXPECT_EQ(e, eq3());
}

TEST(Signature, G4PatternAndFactorization) {
  for (int n : {2, 3, -2, -3, 5}) {
    Scalar a(n);
    G4Normalized g = gadget_G4_normalized({Scalar(1), a, Scalar(1), a});
    Scalar z = g.z;
    EXPECT_EQ(z, a + a.inverse() - Scalar(1));
    Scalar o(1);
    Matrix pattern = {{z, o, o, o}, {o, o, z, o}, {o, z, o, o}, {o, o, o, z}};
    EXPECT_EQ(g.matrix, pattern);
    auto [A, B] = factor_AB(a);
    EXPECT_EQ(mat_mul(mat_mul(A, B), A), gadget_G4({Scalar(1), a, Scalar(1), a}));
    // rotating the gadget by 90 degrees permutes slots tl->tr->br->bl
    Matrix m = g.matrix;
    auto entry = [&](int tl, int bl, int tr, int br) { return m[2 * tl + bl][2 * tr + br]; };
    for (int bits = 0; bits < 16; ++bits) {
      int tl = bits >> 3 & 1, bl = bits >> 2 & 1, tr = bits >> 1 & 1, br = bits & 1;
      EXPECT_EQ(entry(tl, bl, tr, br), entry(bl, br, tl, tr));
    }
  }
  EXPECT_EQ(gadget_G4_normalized({1, 2, 1, 2}).z, Scalar(Rational(3, 2)));
  EXPECT_EQ(kind_of([] { gadget_G4_normalized({1, -1, 1, -1}); }), ErrorKind::NormalizationZero);
  EXPECT_EQ(kind_of([] { gadget_G4_normalized({1, 2, 3, 4}); }), ErrorKind::WrongForm);
}

TEST(Signature, GammaChainMatchesRecurrence) {
  for (int n : {2, 3, -2}) {
    Vec f = {Scalar(1), Scalar(n), Scalar(1), Scalar(n)};
    Scalar z = gadget_G4_normalized(f).z;
    EXPECT_EQ(gamma_chain(f, 0).x, z);
    for (int s = 0; s <= 10; ++s) {
      GammaChain g = gamma_chain(f, s);
      EXPECT_EQ(g.x, gamma_recurrence(z, s)) << "a=" << n << " s=" << s;
      Scalar o(1), x = g.x;
      EXPECT_EQ(g.gamma, (Matrix{{x, o, o, o}, {o, o, x, o}, {o, x, o, o}, {o, o, o, x}}));
    }
  }
  EXPECT_EQ(kind_of([] { gamma_chain({1, 1, 1, 1}, 1); }), ErrorKind::NormalizationZero);
}

TEST(Signature, GammaNodesAreMonotone) {
  Scalar zp = gadget_G4_normalized({1, 2, 1, 2}).z;
  Scalar zn = gadget_G4_normalized({1, -2, 1, -2}).z;
  Scalar prev_p = gamma_recurrence(zp, 0), prev_n = gamma_recurrence(zn, 0);
  EXPECT_GT(prev_p, Scalar(1));
  EXPECT_LT(prev_n, Scalar(-3));
  for (int s = 1; s <= 20; ++s) {
    Scalar p = gamma_recurrence(zp, s), n = gamma_recurrence(zn, s);
    EXPECT_LT(p, prev_p);
    EXPECT_GT(p, Scalar(1));
    EXPECT_GT(n, prev_n);
    EXPECT_LT(n, Scalar(-3));
    prev_p = p;
    prev_n = n;
  }
}

TEST(Signature, HadamardIdentities) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    Scalar a = random_rational(rng);
    EXPECT_EQ(hadamard3({1, a, a, 1}), (Vec{Scalar(2) + Scalar(6) * a, 0, Scalar(2) - Scalar(2) * a, 0}));
  }
  Scalar q(Rational(1, 4));
  EXPECT_EQ(hadamard3_inv(eq3()), (Vec{q, 0, q, 0}));
  EXPECT_EQ(hadamard3({1, 0, 0, 0}), (Vec{1, 1, 1, 1}));
  for (int t = 0; t < 20; ++t) {
    Vec f = random_ternary(rng);
    Vec twice = hadamard3(hadamard3(f));
    for (int k = 0; k < 4; ++k) EXPECT_EQ(twice[k], Scalar(8) * f[k]);
    EXPECT_EQ(hadamard3_inv(hadamard3(f)), f);
  }
}

TEST(Signature, ConnectUnary) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    auto [a, b, c] = random_abc(rng);
    Scalar x = random_rational(rng), y = random_rational(rng);
    EXPECT_EQ(connect_unary({1, a, b, c}, {1, x}), (Vec{Scalar(1) + a * x, a + b * x, b + c * x}));
    EXPECT_EQ(connect_unary({1, a, b, c}, {y, 1}), (Vec{y + a, y * a + b, y * b + c}));
    EXPECT_EQ(connect_unary({1, a, b, c}, {1, 0}), (Vec{1, a, b}));
  }
}

TEST(Signature, NonlinearityGadget) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 60; ++t) {
    auto [a, b, c] = random_abc(rng);
    Scalar y = random_rational(rng);
    EXPECT_EQ(nonlinearity_gadget({1, a, b, c}, y), (Vec{y * y + y * b, y * a + c}));
    // the full table factors as [1,x] x [1,x] x [y^2+yb, ya+c]
    Scalar x = random_rational(rng);
    Vec table = eval_gadget(grid_nonlinearity({1, a, b, c}, x, y));
    Vec u = {y * y + y * b, y * a + c}, ux = {Scalar(1), x};
    for (int k = 0; k < 8; ++k) EXPECT_EQ(table[k], ux[k >> 2 & 1] * ux[k >> 1 & 1] * u[k & 1]);
  }
  EXPECT_EQ(nonlinearity_gadget({1, 2, 3, 4}, 0), (Vec{0, 4}));
}

TEST(Signature, NonlinearityInQuadraticField) {
  Vec f = {1, 1, 2, 1};
  Scalar y = Scalar::sqrt(Rational(2));
  EXPECT_EQ(nonlinearity_gadget(f, y), (Vec{y * y + y * f[2], y * f[1] + f[3]}));
}

TEST(Signature, AbsorptionFactors) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 60; ++t) {
    auto [a, b, c] = random_abc(rng);
    Scalar x = random_rational(rng), y = random_rational(rng);
    Scalar x2 = x * x, x3 = x2 * x;
    AbsorbY g = absorb_factors_y({1, a, b, c}, y);
    EXPECT_EQ(g.g1, y * y * y + Scalar(1));
    EXPECT_EQ(g.g2, y * y * y + b * y * y + a * y + c);
    AbsorbX h = absorb_factors_x({1, a, b, c}, x);
    Scalar o(1), two(2), three(3);
    EXPECT_EQ(h.f1, c * x3 + three * b * x2 + three * a * x + o);
    EXPECT_EQ(h.f2, (a * b + c * c) * x3 + (three * b * c + two * a * a + b) * x2 +
                        (two * b * b + a * c + three * a) * x + a * b + o);
    EXPECT_EQ(h.f3, (a * b + two * a * b * c + c * c * c) * x3 +
                        (two * a * a + b + two * a * a * c + three * a * b * b + b * c + three * b * c * c) * x2 +
                        (three * a + three * a * a * b + a * c + two * b * b + two * b * b * c + a * c * c) * x + o +
                        two * a * b + a * b * c);
  }
  EXPECT_TRUE(absorb_factors_y({1, 1, 1, 1}, -1).g1.is_zero());
  EXPECT_EQ(absorb_factors_y({1, 1, 1, 1}, 1).g2, Scalar(4));
}

TEST(Signature, Eigen2) {
  std::mt19937_64 rng(17);
  for (int c : {-3, 0, 2, 5}) {
    Eigen2 e = eigen2(m2(1, 0, 3, c));
    EXPECT_EQ(e.delta, Scalar(std::abs(1 - c)));
    EXPECT_TRUE((e.lambda == Scalar(1) && e.mu == Scalar(c)) || (e.lambda == Scalar(c) && e.mu == Scalar(1)));
  }
  Eigen2 ones = eigen2(m2(1, 1, 1, 1));
  EXPECT_EQ(ones.delta, Scalar(2));
  EXPECT_EQ(ones.lambda, Scalar(0));
  EXPECT_EQ(ones.mu, Scalar(2));
  int checked = 0;
  for (int t = 0; t < 200 && checked < 60; ++t) {
    Matrix m = m2(random_rational(rng), random_rational(rng), random_rational(rng, 5, true), random_rational(rng));
    Scalar diff = m[0][0] - m[1][1];
    if ((diff * diff + Scalar(4) * m[0][1] * m[1][0]).sign() < 0) continue;
    Eigen2 e = eigen2(m);
    EXPECT_EQ(-m[0][0] * e.x + m[0][1], -e.lambda * e.x);
    EXPECT_EQ(-m[1][0] * e.x + m[1][1], e.lambda);
    EXPECT_EQ(m[0][0] * e.y + m[0][1], e.mu * e.y);
    EXPECT_EQ(m[1][0] * e.y + m[1][1], e.mu);
    ++checked;
  }
  EXPECT_GE(checked, 50);
  EXPECT_EQ(kind_of([] { eigen2(m2(1, 2, 0, 3)); }), ErrorKind::ZeroSubdiagonal);
}

TEST(Signature, WorksBasicCases) {
  EXPECT_FALSE(works(m2(1, 1, 1, -1)));
  EXPECT_FALSE(works(m2(1, 1, 2, 2)));
  EXPECT_TRUE(works(m2(1, 0, 1, 2)));
}

TEST(Signature, WorksMatchesConditionListForG1) {
  // [[1,b],[a,c]] works iff c != ab and none of the five listed conditions hold
  for (int an = -4; an <= 4; ++an)
    for (int bn = -4; bn <= 4; ++bn)
      for (int cn = -8; cn <= 8; ++cn) {
        Scalar a(Rational(an, 2)), b(bn), c(Rational(cn, 2));
        Scalar o(1), two(2), three(3), four(4);
        bool excluded = c == a * b || (c + o).is_zero() || (a * b + c * c + c + o).is_zero() ||
                        (two * a * b + c * c + o).is_zero() || (three * a * b + c * c - c + o).is_zero() ||
                        (four * a * b + c * c - two * c + o).is_zero();
        EXPECT_EQ(works(m2(o, b, a, c)), !excluded) << an << "/2 " << bn << " " << cn << "/2";
      }
}

TEST(Signature, WorksMatchesConditionListForG2) {
  for (int an = -3; an <= 3; ++an)
    for (int bn = -3; bn <= 3; ++bn)
      for (int cn = -3; cn <= 3; ++cn) {
        Scalar a(an), b(bn), c(cn);
        Matrix g = gadget_G2({1, a, b, c});
        Scalar w = g[0][0], bp = g[0][1], ap = g[1][0], cp = g[1][1];
        Scalar A = w + cp, B = (cp - w) * (cp - w) + Scalar(4) * ap * bp;
        bool degenerate = (w * cp - ap * bp).is_zero();
        bool excluded = degenerate || A.is_zero() || B.is_zero() || (A * A + B).is_zero() ||
                        (A * A + Scalar(3) * B).is_zero() || (Scalar(3) * A * A + B).is_zero();
        EXPECT_EQ(works(g), !excluded);
      }
}

TEST(Signature, WorksAgreesWithNumericRootOfUnityScreen) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 3000; ++t) {
    Matrix m = m2(random_rational(rng, 3), random_rational(rng, 3), random_rational(rng, 3), random_rational(rng, 3));
    double a = m[0][0].approx(), b = m[0][1].approx(), c = m[1][0].approx(), d = m[1][1].approx();
    double det = a * d - b * c;
    bool root = std::abs(det) < 1e-12;
    if (!root) {
      std::complex<double> tr(a + d), disc = std::sqrt(std::complex<double>((a - d) * (a - d) + 4 * b * c));
      std::complex<double> l = (tr - disc) / 2.0, mu = (tr + disc) / 2.0;
      std::complex<double> r = l / mu, p = r;
      for (int k = 1; k <= 12 && !root; ++k, p *= r)
        if (std::abs(p - 1.0) < 1e-9) root = true;
    }
    EXPECT_EQ(works(m), !root) << mat_str(m);
  }
}

TEST(Signature, NormalizeAndParse) {
  Vec f = parse_signature("[2, 4, -1/2, 0]");
  auto n = normalize_f0(f);
  ASSERT_TRUE(n.has_value());
  EXPECT_EQ(n->f, (Vec{1, 2, Scalar(Rational(-1, 4)), 0}));
  auto flip = normalize_f0({0, 1, 2, 4});
  ASSERT_TRUE(flip.has_value());
  EXPECT_TRUE(flip->flipped);
  EXPECT_EQ(flip->f, (Vec{1, Scalar(Rational(1, 2)), Scalar(Rational(1, 4)), 0}));
  EXPECT_FALSE(normalize_f0({0, 1, 1, 0}).has_value());
  EXPECT_EQ(kind_of([] { parse_signature("[1,x]"); }), ErrorKind::MalformedInput);
}
