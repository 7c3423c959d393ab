#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>
#include <string>

#include "holant/grid.hpp"
#include "holant/plane_graph.hpp"
#include "holant/scalar.hpp"

namespace holant::testing {

inline std::string data_path(const std::string& name) { return std::string(HOLANT_DATA_DIR) + "/" + name; }

inline Scalar random_rational(std::mt19937_64& rng, int range = 5, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  while (true) {
    Scalar s = Scalar::from_fraction(num(rng), den(rng));
    if (!nonzero || !s.is_zero()) return s;
  }
}

inline Vec random_ternary(std::mt19937_64& rng) {
  Vec f;
  for (int k = 0; k < 4; ++k) f.push_back(random_rational(rng));
  return f;
}

inline Vec eq3() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }

/// Random Pl-Holant(f | =3) instance with at most max_edges edges.
inline SignatureGrid random_bipartite_grid(std::mt19937_64& rng, const Vec& f, const Vec& right, int max_edges = 12) {
  int max_n = (2 * max_edges) / 3;
  std::uniform_int_distribution<int> half(1, max_n / 2);
  int n = 2 * half(rng);
  PlaneGraph g = generate_cubic_bipartite_plane(n, rng());
  auto coloring = *two_coloring(g);
  return bipartite_grid(g, coloring, f, right);
}

/// Plane graph of a straight-line drawing: rotations sort darts by angle
/// counterclockwise. Edge k gets darts 2k (first endpoint) and 2k+1.
inline PlaneGraph straight_line_graph(const std::vector<std::pair<double, double>>& points,
                                      const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> rot(points.size());
  std::vector<int> twin(2 * edges.size());
  std::vector<double> angle(2 * edges.size());
  for (size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    int d = static_cast<int>(2 * k);
    twin[d] = d + 1;
    twin[d + 1] = d;
    angle[d] = std::atan2(points[v].second - points[u].second, points[v].first - points[u].first);
    angle[d + 1] = std::atan2(points[u].second - points[v].second, points[u].first - points[v].first);
    rot[u].push_back(d);
    rot[v].push_back(d + 1);
  }
  for (auto& r : rot) std::sort(r.begin(), r.end(), [&](int a, int b) { return angle[a] < angle[b]; });
  return PlaneGraph::from_rotations(rot, twin);
}

/// Dodecahedron: outer pentagon, a ten-cycle and an inner pentagon.
inline PlaneGraph dodecahedron() {
  const double pi = std::acos(-1.0);
  std::vector<std::pair<double, double>> pts;
  auto at = [&](double r, double deg) { pts.emplace_back(r * std::cos(deg * pi / 180), r * std::sin(deg * pi / 180)); };
  for (int k = 0; k < 5; ++k) at(3, 72 * k);                 // 0..4 outer
  for (int j = 0; j < 10; ++j) at(2, 36 * j);                // 5..14 ring
  for (int k = 0; k < 5; ++k) at(1, 72 * k + 36);            // 15..19 inner
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < 5; ++k) {
    edges.emplace_back(k, (k + 1) % 5);
    edges.emplace_back(k, 5 + 2 * k);
    edges.emplace_back(5 + 2 * k + 1, 15 + k);
    edges.emplace_back(15 + k, 15 + (k + 1) % 5);
  }
  for (int j = 0; j < 10; ++j) edges.emplace_back(5 + j, 5 + (j + 1) % 10);
  return straight_line_graph(pts, edges);
}

}  // namespace holant::testing
