#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "holant/error.hpp"
#include "holant/fkt.hpp"
#include "holant/json_io.hpp"
#include "holant/signature.hpp"
#include "holant/solvers.hpp"
#include "test_util.hpp"

using namespace holant;
using namespace holant::testing;

namespace {

SignatureGrid figure1() { return grid_from_json(load_json_file(data_path("figure1.json"))); }

// Weighted perfect matchings by recursion on the smallest unmatched vertex.
Scalar brute_pm(const PlaneGraph& g, const Vec& w) {
  std::vector<char> used(g.num_vertices(), 0);
  std::function<Scalar()> rec = [&]() -> Scalar {
    int v = 0;
    while (v < g.num_vertices() && used[v]) ++v;
    if (v == g.num_vertices()) return Scalar(1);
    Scalar total(0);
    used[v] = 1;
    for (int d : g.rotation(v)) {
      int e = g.edge_of(d);
      int u = g.vertex(g.twin(d));
      if (used[u]) continue;
      used[u] = 1;
      total = total + (w.empty() ? Scalar(1) : w[e]) * rec();
      used[u] = 0;
    }
    used[v] = 0;
    return total;
  };
  return rec();
}

PlaneGraph cycle(int n) {
  std::vector<std::vector<int>> rot(n);
  std::vector<int> twin(2 * n);
  for (int k = 0; k < n; ++k) {
    twin[2 * k] = 2 * k + 1;
    twin[2 * k + 1] = 2 * k;
    rot[k].push_back(2 * k);
    rot[(k + 1) % n].push_back(2 * k + 1);
  }
  return PlaneGraph::from_rotations(rot, twin);
}

// Left node per vertex of a cubic plane graph, right =2 per edge.
SignatureGrid subdivided_grid(const PlaneGraph& g, const Vec& f) {
  SignatureGrid grid;
  for (int v = 0; v < g.num_vertices(); ++v) grid.add_left(f);
  for (int e = 0; e < g.num_edges(); ++e) grid.add_right({1, 0, 1});
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int k = 0; k < 3; ++k) {
      int d = g.rotation(v)[k];
      int e = g.edge_of(d);
      grid.connect(v, k, g.num_vertices() + e, g.edge_darts(e).first == d ? 0 : 1);
    }
  return grid;
}

// Random instance with at most 12 edges, alternating between =3 and =2 right sides.
SignatureGrid random_instance(std::mt19937_64& rng, const Vec& f, int t) {
  if (t % 3 != 2) return random_bipartite_grid(rng, f, eq3(), 12);
  std::uniform_int_distribution<int> n(1, 2);
  return subdivided_grid(generate_cubic_plane(2 * n(rng), rng()), f);
}

SignatureGrid triple_edge(const Vec& f) {
  SignatureGrid g;
  int s = g.add_left(f), c = g.add_right(eq3());
  for (int k = 0; k < 3; ++k) g.connect(s, k, c, k);
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Perfect matchings

TEST(Fkt, SpecExamples) {
  EXPECT_EQ(count_pm(grid_graph(figure1()).graph, {}, true), Scalar(9));
  EXPECT_EQ(count_pm(cycle(4), {}, true), Scalar(2));
  EXPECT_EQ(count_pm(k4_graph(), {}, true), Scalar(3));
  EXPECT_EQ(count_pm(cycle(5), {}, true), Scalar(0));
  EXPECT_EQ(count_pm(PlaneGraph{}, {}, true), Scalar(1));
}

TEST(Fkt, TriangleWithPendantPathHasNoMatching) {
  PlaneGraph h = straight_line_graph({{0, 0}, {2, 0}, {1, 1}, {1, 2}, {1, 3}},
                                     {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
  KasteleynOrientation o = kasteleyn_orient(h);
  EXPECT_TRUE(kasteleyn_violations(h, o).empty());
  EXPECT_EQ(count_pm(h, {}, true), Scalar(0));
  PlaneGraph g = straight_line_graph({{0, 0}, {2, 0}, {1, 1}, {1, 2}},
                                     {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  EXPECT_EQ(count_pm(g, {}, true), Scalar(1));
}

TEST(Fkt, OrientationPassesFaceSweep) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    PlaneGraph g = generate_cubic_plane(2 + 2 * (t % 15), rng());
    bool loops = false;
    for (int e = 0; e < g.num_edges(); ++e) loops |= g.is_loop(e);
    if (loops) continue;
    KasteleynOrientation o = kasteleyn_orient(g);
    EXPECT_TRUE(kasteleyn_violations(g, o).empty());
    for (int dir : o.direction) EXPECT_TRUE(dir == 1 || dir == -1);
  }
}

TEST(Fkt, PfaffianSquaredIsDeterminant) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    int n = 2 * (1 + t % 4);
    Matrix a(n, Vec(n, Scalar(0)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a[i][j] = random_rational(rng);
        a[j][i] = -a[i][j];
      }
    Scalar pf = pfaffian(a);
    EXPECT_EQ(pf * pf, determinant(a));
  }
  Matrix two{{0, Scalar(5)}, {Scalar(-5), 0}};
  EXPECT_EQ(pfaffian(two), Scalar(5));
}

TEST(Fkt, AgreesWithBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 120; ++t) {
    PlaneGraph g = generate_cubic_plane(2 + 2 * (t % 7), rng());
    Vec w;
    if (t % 2)
      for (int e = 0; e < g.num_edges(); ++e) w.push_back(random_rational(rng));
    EXPECT_EQ(count_pm(g, w, true), brute_pm(g, w)) << "t=" << t;
  }
}

TEST(Fkt, DisconnectedAndBridged) {
  std::mt19937_64 rng(6);
  PlaneGraph a = cube_graph(), b = k4_graph();
  EXPECT_EQ(count_pm(disjoint_union(a, b), {}, true), Scalar(9 * 3));
  EXPECT_EQ(count_pm(disjoint_union(a, dumbbell_graph()), {}, true), Scalar(9));
  PlaneGraph odd = disjoint_union(a, cycle(3));
  EXPECT_EQ(count_pm(odd, {}, true), Scalar(0));
  for (int t = 0; t < 20; ++t) {
    PlaneGraph g = insert_loop_pendant(generate_cubic_plane(4 + 2 * (t % 3), rng()), 0);
    EXPECT_EQ(count_pm(g, {}, true), brute_pm(g, {}));
  }
}

TEST(Fkt, QuadraticFieldWeights) {
  PlaneGraph g = cube_graph();
  Vec w(g.num_edges(), Scalar(1));
  w[0] = Scalar::sqrt(2);
  w[3] = Scalar::sqrt(2) + 1;
  EXPECT_EQ(count_pm(g, w, true), brute_pm(g, w));
}

TEST(Fkt, RejectsWrongWeightCount) {
  EXPECT_THROW(count_pm(cycle(4), {Scalar(1)}), Error);
}

// ---------------------------------------------------------------------------
// Closed-form solvers

TEST(Solvers, Case5ShippedInstance) {
  SignatureGrid g = figure1();
  EXPECT_EQ(solve_case5(g, Scalar::from_fraction(1, 2), Scalar::from_fraction(-1, 2)), Scalar(9));
  EXPECT_THROW(solve_case5(g, Scalar(1), Scalar(0)), Error);
}

TEST(Solvers, Case5MatchesEval) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 110; ++t) {
    Scalar a = random_rational(rng), b = random_rational(rng);
    Vec f{3 * a + b, -a - b, -a + b, 3 * a - b};
    SignatureGrid g = random_bipartite_grid(rng, f, eq3(), 12);
    EXPECT_EQ(solve_case5(g, a, b), eval(g)) << signature_str(f);
  }
}

TEST(Solvers, DegenerateExamples) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    SignatureGrid g = random_bipartite_grid(rng, {1, 1, 1, 1}, eq3(), 12);
    long k = static_cast<long>(g.nodes_of_kind(GridNode::Kind::Right).size());
    EXPECT_EQ(solve_degenerate(g, {1, 1}, Scalar(1)), Scalar(2).pow(k));
  }
  PlaneGraph cube = cube_graph();
  SignatureGrid g = bipartite_grid(cube, *two_coloring(cube), {0, 0, 0, 5}, eq3());
  EXPECT_EQ(solve_degenerate(g, {0, 1}, Scalar(5)), Scalar(625));
  EXPECT_EQ(eval(g), Scalar(625));
  EXPECT_THROW(solve_degenerate(g, {1, 1}, Scalar(5)), Error);
  EXPECT_THROW(solve_degenerate(g, {2, 1}, Scalar(5)), Error);
}

TEST(Solvers, DegenerateMatchesEval) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 110; ++t) {
    Scalar s = random_rational(rng), x = random_rational(rng);
    Vec u = t % 5 == 4 ? Vec{0, 1} : Vec{1, x};
    Vec f{s * u[0], s * u[1] * (u[0] * u[0]), s * u[1] * u[1] * u[0], s * u[1] * u[1] * u[1]};
    SignatureGrid g = random_instance(rng, f, t);
    EXPECT_EQ(solve_degenerate(g, u, s), eval(g)) << signature_str(f);
  }
}

TEST(Solvers, GenEqExamples) {
  PlaneGraph cube = cube_graph();
  SignatureGrid one = bipartite_grid(cube, *two_coloring(cube), {1, 0, 0, 1}, eq3());
  EXPECT_EQ(solve_geneq(one, Scalar(1), Scalar(1)), Scalar(2));
  PlaneGraph two = disjoint_union(cube_graph(), theta_graph());
  SignatureGrid g = bipartite_grid(two, *two_coloring(two), {2, 0, 0, 3}, eq3());
  // |U| = 4 and 1: (16 + 81)(2 + 3)
  EXPECT_EQ(solve_geneq(g, Scalar(2), Scalar(3)), Scalar(97 * 5));
  EXPECT_EQ(solve_geneq(g, Scalar(2), Scalar(3)), eval(g));
  SignatureGrid tiny = triple_edge({2, 0, 0, 3});
  EXPECT_EQ(solve_geneq(tiny, Scalar(2), Scalar(3)), Scalar(5));
  PlaneGraph thetas = disjoint_union(theta_graph(), theta_graph());
  SignatureGrid pair = bipartite_grid(thetas, *two_coloring(thetas), {2, 0, 0, 3}, eq3());
  EXPECT_EQ(solve_geneq(pair, Scalar(2), Scalar(3)), Scalar(25));
}

TEST(Solvers, GenEqMatchesEval) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 110; ++t) {
    Scalar a = random_rational(rng), b = random_rational(rng);
    SignatureGrid g = random_instance(rng, {a, 0, 0, b}, t);
    EXPECT_EQ(solve_geneq(g, a, b), eval(g));
  }
}

// ---------------------------------------------------------------------------
// Affine

TEST(Solvers, AffineExamples) {
  EXPECT_EQ(solve_affine(triple_edge({1, 0, 1, 0}), AffineFamily::EvenPlus), Scalar(1));
  EXPECT_EQ(solve_affine(triple_edge({1, 1, -1, -1}), AffineFamily::HalfSign), Scalar(0));
  EXPECT_THROW(solve_affine(triple_edge({1, 0, 2, 0}), AffineFamily::EvenPlus), Error);
}

TEST(Solvers, GaussSumAgreesWithEnumeration) {
  std::mt19937_64 rng(14);
  std::bernoulli_distribution coin(0.4);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + t % 7;
    QuadraticForm q(n);
    q.constant = coin(rng);
    for (int i = 0; i < n; ++i) {
      q.linear[i] = coin(rng);
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) q.add_pair(i, j);
    }
    std::vector<Gf2Constraint> cons;
    for (int c = 0; c < t % 3; ++c) {
      Gf2Constraint k;
      for (int i = 0; i < n; ++i)
        if (coin(rng)) k.vars.push_back(i);
      k.rhs = coin(rng);
      cons.push_back(k);
    }
    Integer brute = 0;
    for (unsigned z = 0; z < (1u << n); ++z) {
      auto bit = [&](int i) { return (z >> i) & 1u; };
      bool ok = true;
      for (const auto& k : cons) {
        unsigned s = 0;
        for (int i : k.vars) s ^= bit(i);
        ok &= s == static_cast<unsigned>(k.rhs);
      }
      if (!ok) continue;
      unsigned v = q.constant;
      for (int i = 0; i < n; ++i) {
        v ^= q.linear[i] & bit(i);
        for (int j = i + 1; j < n; ++j) v ^= q.quad[i][j] & bit(i) & bit(j);
      }
      brute += v ? -1 : 1;
    }
    EXPECT_EQ(gauss_sum(q, cons), brute) << "t=" << t;
  }
}

TEST(Solvers, AffineFamiliesMatchEval) {
  std::mt19937_64 rng(15);
  for (AffineFamily fam : {AffineFamily::EvenPlus, AffineFamily::EvenMinus, AffineFamily::OddPlus,
                           AffineFamily::OddMinus, AffineFamily::Alternating, AffineFamily::HalfSign}) {
    for (int t = 0; t < 110; ++t) {
      Scalar a = random_rational(rng, 5, true);
      Vec f;
      for (const Scalar& x : affine_pattern(fam)) f.push_back(a * x);
      SignatureGrid g = random_instance(rng, f, t);
      EXPECT_EQ(solve_affine(g, fam), eval(g)) << affine_family_name(fam) << " t=" << t;
    }
  }
}

// ---------------------------------------------------------------------------
// Matchgates

TEST(Solvers, DecorationsReproduceTheirTargets) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 20; ++t) {
    Scalar r = random_rational(rng);
    for (const MatchgateDecoration& d : {even_decoration(r), odd_decoration(r)})
      EXPECT_EQ(decoration_signature(d), decoration_target(d)) << d.name;
    EXPECT_EQ(decoration_target(even_decoration(r)), (Vec{1, 0, r, 0}));
    EXPECT_EQ(decoration_target(odd_decoration(r)), (Vec{0, 1, 0, r}));
  }
  EXPECT_EQ(decoration_signature(even_decoration(Scalar(1))), (Vec{1, 0, 1, 0}));
}

TEST(Solvers, HadamardOfCase4) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    Scalar a = random_rational(rng);
    EXPECT_EQ(hadamard3({1, a, a, 1}), (Vec{2 + 6 * a, 0, 2 - 2 * a, 0}));
  }
}

TEST(Solvers, MatchgateAgreesWithDegenerate) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 10; ++t) {
    SignatureGrid g = random_bipartite_grid(rng, {1, 1, 1, 1}, eq3(), 12);
    EXPECT_EQ(solve_matchgate(g, Scalar(1), Scalar(1), 1), solve_degenerate(g, {1, 1}, Scalar(1)));
  }
}

TEST(Solvers, MatchgateMatchesEval) {
  std::mt19937_64 rng(19);
  for (int sign : {1, -1}) {
    for (int t = 0; t < 110; ++t) {
      Scalar a = random_rational(rng), b = random_rational(rng);
      // Exercise the interpolation path where the transformed p vanishes.
      if (t % 10 == 0) b = sign == 1 ? -a / 3 : -a;
      Vec f{a, b, sign * b, sign * a};
      SignatureGrid g = random_bipartite_grid(rng, f, eq3(), 12);
      EXPECT_EQ(solve_matchgate(g, a, b, sign), eval(g)) << signature_str(f);
    }
  }
}

TEST(Solvers, RejectsWrongShapes) {
  SignatureGrid g = figure1();
  EXPECT_THROW(solve_geneq(g, Scalar(1), Scalar(2)), Error);
  EXPECT_THROW(solve_matchgate(g, Scalar(1), Scalar(0), 1), Error);
  SignatureGrid dangling;
  dangling.dangle(dangling.add_left({1, 0, 0, 1}), 0);
  EXPECT_THROW(analyse_instance(dangling), Error);
}
