#include "holant/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "holant/error.hpp"

namespace holant {

namespace {

// Wraps library exceptions from field access into MalformedInput.
template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string(what) + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  require(j.is_string(), ErrorKind::MalformedInput, "expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Side side_from_json(const Json& j) {
  std::string s = j.get<std::string>();
  if (s == "L") return Side::L;
  if (s == "R") return Side::R;
  fail(ErrorKind::MalformedInput, "slot side must be \"L\" or \"R\", got \"" + s + "\"");
}

std::string side_str(Side s) { return s == Side::L ? "L" : "R"; }

}  // namespace

Json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return to_string(s.a());
  return Json{{"a", to_string(s.a())}, {"b", to_string(s.b())}, {"d", s.d().get_str()}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_object()) {
    return guarded("scalar", [&] {
      Rational d = rational_from_json(j.at("d"));
      Scalar root = Scalar::sqrt(d);
      return Scalar(rational_from_json(j.at("a"))) + Scalar(rational_from_json(j.at("b"))) * root;
    });
  }
  return Scalar(rational_from_json(j));
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(scalar_to_json(s));
  return out;
}

Vec vec_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::MalformedInput, "expected an array of scalars");
  Vec out;
  for (const auto& e : j) out.push_back(scalar_from_json(e));
  return out;
}

Json graph_to_json(const PlaneGraph& g) {
  Json vertices = Json::array(), darts = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back({{"id", v}, {"rotation", g.rotation(v)}});
  for (int d = 0; d < g.num_darts(); ++d) darts.push_back({{"id", d}, {"twin", g.twin(d)}, {"vertex", g.vertex(d)}});
  return {{"vertices", vertices}, {"darts", darts}};
}

PlaneGraph graph_from_json(const Json& j) {
  RotationSpec spec = guarded("graph", [&] {
    RotationSpec s;
    for (const auto& v : j.at("vertices")) s.vertices.push_back({v.at("id").get<int>(), v.at("rotation").get<std::vector<int>>()});
    for (const auto& d : j.at("darts"))
      s.darts.push_back({d.at("id").get<int>(), d.at("twin").get<int>(), d.at("vertex").get<int>()});
    return s;
  });
  return PlaneGraph::build(spec);
}

Json grid_to_json(const SignatureGrid& g) {
  Json nodes = Json::array();
  for (int i = 0; i < g.num_nodes(); ++i) {
    const auto& n = g.nodes()[i];
    Json node{{"id", i}};
    if (n.kind == GridNode::Kind::Table) {
      node["side"] = "table";
      node["table"] = vec_to_json(n.table);
      Json slots = Json::array();
      for (Side s : n.slot_sides) slots.push_back({{"side", side_str(s)}});
      node["slots"] = slots;
    } else {
      node["side"] = n.kind == GridNode::Kind::Left ? "left" : "right";
      node["symmetric"] = vec_to_json(n.symmetric);
    }
    nodes.push_back(node);
  }
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"nodeA", e.node_a}, {"slotA", e.slot_a}, {"nodeB", e.node_b}, {"slotB", e.slot_b}});
  Json dangling = Json::array();
  for (const auto& d : g.dangling()) dangling.push_back({{"node", d.node}, {"slot", d.slot}, {"side", side_str(d.side)}});
  Json out{{"nodes", nodes}, {"edges", edges}, {"dangling", dangling}};
  bool any_embedding = std::any_of(g.embedding().begin(), g.embedding().end(), [](const auto& e) { return !e.empty(); });
  if (any_embedding) {
    Json emb = Json::array();
    for (int i = 0; i < g.num_nodes(); ++i) emb.push_back(g.slot_order(i));
    out["embedding"] = emb;
  }
  return out;
}

SignatureGrid grid_from_json(const Json& j) {
  return guarded("grid", [&] {
    SignatureGrid g;
    const auto& nodes = j.at("nodes");
    std::vector<const Json*> by_id(nodes.size(), nullptr);
    for (const auto& n : nodes) {
      int id = n.at("id").get<int>();
      require(id >= 0 && id < static_cast<int>(nodes.size()) && by_id[id] == nullptr, ErrorKind::MalformedInput,
              "node ids must be dense and unique, bad id " + std::to_string(id));
      by_id[id] = &n;
    }
    for (const Json* n : by_id) {
      std::string side = n->at("side").get<std::string>();
      if (side == "table") {
        std::vector<Side> sides;
        for (const auto& s : n->at("slots")) sides.push_back(side_from_json(s.at("side")));
        g.add_table(vec_from_json(n->at("table")), sides);
      } else if (side == "left" || side == "right") {
        Vec sym = vec_from_json(n->at("symmetric"));
        if (n->contains("slots")) {
          Side want = side == "left" ? Side::L : Side::R;
          for (const auto& s : n->at("slots"))
            require(side_from_json(s.at("side")) == want, ErrorKind::MalformedInput,
                    "slot side contradicts node side");
        }
        if (side == "left")
          g.add_left(sym);
        else
          g.add_right(sym);
      } else {
        fail(ErrorKind::MalformedInput, "node side must be left, right or table, got \"" + side + "\"");
      }
    }
    for (const auto& e : j.at("edges"))
      g.connect(e.at("nodeA").get<int>(), e.at("slotA").get<int>(), e.at("nodeB").get<int>(), e.at("slotB").get<int>());
    if (j.contains("dangling"))
      for (const auto& d : j.at("dangling")) {
        g.dangle(d.at("node").get<int>(), d.at("slot").get<int>());
        if (d.contains("side"))
          require(side_from_json(d.at("side")) == g.dangling().back().side, ErrorKind::MalformedInput,
                  "dangling side contradicts slot side");
      }
    if (j.contains("embedding")) {
      const auto& emb = j.at("embedding");
      require(emb.size() == nodes.size(), ErrorKind::MalformedInput, "embedding needs one entry per node");
      for (int i = 0; i < static_cast<int>(emb.size()); ++i) g.set_embedding(i, emb[i].get<std::vector<int>>());
    }
    g.validate();
    return g;
  });
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const Vec& row : m) out.push_back(vec_to_json(row));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::MalformedInput, "expected an array of rows");
  Matrix m;
  for (const auto& row : j) m.push_back(vec_from_json(row));
  for (const Vec& row : m)
    require(row.size() == m.size(), ErrorKind::MalformedInput, "expected a square matrix");
  return m;
}

Json assignment_to_json(const FaceAssignment& sigma) {
  Json out = Json::object();
  for (size_t e = 0; e < sigma.face.size(); ++e) out[std::to_string(e)] = sigma.face[e];
  return out;
}

FaceAssignment assignment_from_json(const Json& j) {
  return guarded("assignment", [&] {
    const Json& m = j.contains("assignment") ? j.at("assignment") : j;
    require(m.is_object(), ErrorKind::MalformedInput, "assignment must map edge ids to face ids");
    FaceAssignment sigma;
    sigma.face.assign(m.size(), -1);
    for (const auto& [key, face] : m.items()) {
      std::size_t used = 0;
      int e = -1;
      try {
        e = std::stoi(key, &used);
      } catch (const std::exception&) {
      }
      require(used == key.size() && e >= 0 && e < static_cast<int>(m.size()), ErrorKind::MalformedInput,
              "assignment keys must be the edge ids 0..m-1, got \"" + key + "\"");
      sigma.face[e] = face.get<int>();
    }
    return sigma;
  });
}

Json crossings_to_json(const std::vector<Crossing>& crossings) {
  Json out = Json::array();
  for (const Crossing& c : crossings)
    out.push_back({{"edgeA", c.edge_a}, {"edgeB", c.edge_b}, {"posA", c.pos_a}, {"posB", c.pos_b},
                   {"bLeftNext", c.b_left_next}});
  return out;
}

std::vector<Crossing> crossings_from_json(const Json& j) {
  return guarded("crossings", [&] {
    std::vector<Crossing> out;
    for (const auto& c : j)
      out.push_back({c.at("edgeA").get<int>(), c.at("edgeB").get<int>(), c.at("posA").get<int>(),
                     c.at("posB").get<int>(), c.value("bLeftNext", true)});
    return out;
  });
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::MalformedInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

}  // namespace holant
