#include <gtest/gtest.h>

#include <cstdlib>
#include <functional>

#include "holant/error.hpp"
#include "holant/grid.hpp"
#include "holant/json_io.hpp"
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

SignatureGrid figure1() { return grid_from_json(load_json_file(data_path("figure1.json"))); }

}  // namespace

TEST(Grid, ShippedInstanceValueIsNine) {
  SignatureGrid g = figure1();
  EXPECT_EQ(eval(g), Scalar(9));
  EXPECT_EQ(eval_collapsed(g), Scalar(9));
  EXPECT_EQ(grid_graph(g).graph.num_faces(), 6);  // the cube
}

TEST(Grid, EmptyGridIsOne) { EXPECT_EQ(eval(SignatureGrid{}), Scalar(1)); }

TEST(Grid, TripleEdgeGivesF0PlusF3) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    Vec f = random_ternary(rng);
    SignatureGrid g;
    int s = g.add_left(f), c = g.add_right(eq3());
    for (int k = 0; k < 3; ++k) g.connect(s, k, c, k);
    EXPECT_EQ(eval(g), f[0] + f[3]);
    EXPECT_EQ(eval_collapsed(g), f[0] + f[3]);
  }
}

TEST(Grid, EqualityWithThreeUnaryOnes) {
  SignatureGrid g;
  int c = g.add_right(eq3());
  for (int k = 0; k < 3; ++k) g.connect(g.add_left({Scalar(1), Scalar(1)}), 0, c, k);
  EXPECT_EQ(eval(g), Scalar(2));
  EXPECT_EQ(eval_collapsed(g), Scalar(2));
}

TEST(Grid, DanglingRejectedByEval) {
  EXPECT_EQ(kind_of([] { eval(grid_G1({1, 2, 3, 4})); }), ErrorKind::DanglingPresent);
}

TEST(Grid, SingleNodeGadgetIsItsTable) {
  Vec f = {Scalar(1), Scalar(2), Scalar(3), Scalar(5)};
  SignatureGrid g;
  int s = g.add_left(f);
  for (int k = 0; k < 3; ++k) g.dangle(s, k);
  EXPECT_EQ(eval_gadget(g), expand_symmetric(f));
}

TEST(Grid, SameSideEdgeRejected) {
  SignatureGrid g;
  int a = g.add_left({1, 0, 1});
  int b = g.add_left({1, 0, 1});
  EXPECT_EQ(kind_of([&] { g.connect(a, 0, b, 0); }), ErrorKind::MalformedInput);
}

TEST(Grid, CollapsedAgreesWithEval) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 60; ++t) {
    SignatureGrid g = random_bipartite_grid(rng, random_ternary(rng), eq3());
    EXPECT_EQ(eval(g), eval_collapsed(g));
  }
}

TEST(Grid, CollapsedRejectsNonEqualityRight) {
  SignatureGrid g;
  int s = g.add_left({1, 0, 0, 1}), c = g.add_right({1, 1, 0, 1});
  for (int k = 0; k < 3; ++k) g.connect(s, k, c, k);
  EXPECT_EQ(kind_of([&] { eval_collapsed(g); }), ErrorKind::PreconditionViolation);
}

TEST(Grid, MultiplicativeOverComponents) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Vec f = random_ternary(rng);
    PlaneGraph a = generate_cubic_bipartite_plane(4, rng());
    PlaneGraph b = generate_cubic_bipartite_plane(2 + 2 * (t % 2), rng());
    PlaneGraph u = disjoint_union(a, b);
    Scalar va = eval(bipartite_grid(a, *two_coloring(a), f, eq3()));
    Scalar vb = eval(bipartite_grid(b, *two_coloring(b), f, eq3()));
    EXPECT_EQ(eval(bipartite_grid(u, *two_coloring(u), f, eq3())), va * vb);
  }
}

TEST(Grid, HolographicInvarianceUnderHadamard) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    Vec f = random_ternary(rng);
    PlaneGraph g = generate_cubic_bipartite_plane(2 + 2 * (t % 4), rng());
    auto col = *two_coloring(g);
    Scalar direct = eval(bipartite_grid(g, col, f, eq3()));
    Scalar transformed = eval(bipartite_grid(g, col, hadamard3(f), hadamard3_inv(eq3())));
    EXPECT_EQ(direct, transformed);
  }
}

TEST(Grid, ComposedGadgetsMultiplyAsMatrices) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Vec f = random_ternary(rng), h = random_ternary(rng);
    // G1(f) then G1(h): the circle's right edge of the first meets the square's left edge of the second
    SignatureGrid g;
    int s1 = g.add_left(f), c1 = g.add_right(eq3());
    int s2 = g.add_left(h), c2 = g.add_right(eq3());
    g.connect(s1, 1, c1, 0);
    g.connect(s1, 2, c1, 1);
    g.connect(s2, 1, c2, 0);
    g.connect(s2, 2, c2, 1);
    g.connect(s2, 0, c1, 2);
    g.dangle(s1, 0);
    g.dangle(c2, 2);
    EXPECT_EQ(table_to_matrix(eval_gadget(g), 1), mat_mul(gadget_G1(f), gadget_G1(h)));
  }
}

TEST(Grid, IncidenceGridShapes) {
  Vec bin = {Scalar(1), Scalar(0), Scalar(1)};
  SignatureGrid theta = incidence_grid(theta_graph(), bin, eq3());
  EXPECT_EQ(theta.nodes_of_kind(GridNode::Kind::Left).size(), 3u);
  EXPECT_EQ(theta.nodes_of_kind(GridNode::Kind::Right).size(), 2u);
  SignatureGrid k4 = incidence_grid(k4_graph(), bin, eq3());
  EXPECT_EQ(k4.nodes_of_kind(GridNode::Kind::Left).size(), 6u);
  EXPECT_EQ(k4.nodes_of_kind(GridNode::Kind::Right).size(), 4u);
  PlaneGraph square = PlaneGraph::from_rotations({{0, 7}, {1, 2}, {3, 4}, {5, 6}}, {1, 0, 3, 2, 5, 4, 7, 6});
  EXPECT_EQ(kind_of([&] { incidence_grid(square, bin, eq3()); }), ErrorKind::NotCubic);
}

TEST(Grid, IncidenceRoundTrip) {
  Vec bin = {Scalar(1), Scalar(0), Scalar(1)};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PlaneGraph g = generate_cubic_plane(2 + 2 * static_cast<int>(seed % 9), seed);
    PlaneGraph back = merge_binary_left(incidence_grid(g, bin, eq3()));
    ASSERT_EQ(back.num_vertices(), g.num_vertices());
    // incidence_grid keeps vertex ids and rotation positions, so darts map by (vertex, position)
    for (int v = 0; v < g.num_vertices(); ++v)
      for (int k = 0; k < 3; ++k) {
        int d = g.rotation(v)[k], bd = back.rotation(v)[k];
        int t = g.twin(d), bt = back.twin(bd);
        EXPECT_EQ(g.vertex(t), back.vertex(bt));
        const auto& rt = g.rotation(g.vertex(t));
        const auto& brt = back.rotation(back.vertex(bt));
        EXPECT_EQ(std::find(rt.begin(), rt.end(), t) - rt.begin(), std::find(brt.begin(), brt.end(), bt) - brt.begin());
      }
    EXPECT_TRUE(planar_isomorphic(g, back));
  }
}

TEST(Grid, EdgeCapEnforced) {
  std::mt19937_64 rng(6);
  SignatureGrid g = random_bipartite_grid(rng, {1, 1, 1, 1}, eq3(), 12);
  setenv("HOLANT_MAX_EDGES", "1", 1);
  EXPECT_EQ(kind_of([&] { eval(g); }), ErrorKind::EdgeCapExceeded);
  unsetenv("HOLANT_MAX_EDGES");
  EXPECT_NO_THROW(eval(g));
}

TEST(Grid, JsonRoundTrip) {
  SignatureGrid g = grid_nonlinearity({1, 2, 3, 4}, Scalar(2), Scalar::sqrt(Rational(2)));
  SignatureGrid back = grid_from_json(grid_to_json(g));
  EXPECT_EQ(grid_to_json(back), grid_to_json(g));
  EXPECT_EQ(eval_gadget(back), eval_gadget(g));
  EXPECT_EQ(kind_of([] { grid_from_json(parse_json_text(R"({"nodes":[{"id":0,"side":"up"}],"edges":[]})")); }),
            ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([] { parse_json_text("{nope"); }), ErrorKind::MalformedInput);
}

TEST(Grid, ContractionAgreesWithEnumeration) {
  EXPECT_EQ(eval_contract(figure1()), Scalar(9));
  EXPECT_EQ(eval_contract(SignatureGrid{}), Scalar(1));
  std::mt19937_64 rng(40);
  for (int t = 0; t < 60; ++t) {
    SignatureGrid g = random_bipartite_grid(rng, random_ternary(rng), eq3(), 15);
    EXPECT_EQ(eval_contract(g), eval(g));
  }
  // Mixed-side tables: a straddled table between a left and a right node pair.
  for (int t = 0; t < 30; ++t) {
    Vec f = random_ternary(rng);
    Vec table;
    for (int k = 0; k < 4; ++k) table.push_back(random_rational(rng));
    SignatureGrid g;
    int s = g.add_left(f), c = g.add_right(eq3());
    int d = g.add_table(table, {Side::L, Side::R});
    g.connect(s, 0, c, 0);
    g.connect(s, 1, c, 1);
    g.connect(s, 2, d, 1);
    g.connect(d, 0, c, 2);
    EXPECT_EQ(eval_contract(g), eval(g));
  }
}
