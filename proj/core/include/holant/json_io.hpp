#pragma once

#include <string>

#include "holant/grid.hpp"
#include "holant/p3em.hpp"
#include "holant/plane_graph.hpp"
#include "holant/reductions.hpp"
#include "holant/scalar.hpp"
#include "json.hpp"

namespace holant {

using Json = nlohmann::json;

/// Rationals as "p/q" strings (plain JSON integers are accepted on input);
/// quadratic elements as {"a":"p/q","b":"p/q","d":"p/q"}.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

/// {"vertices":[{"id","rotation":[...]}],"darts":[{"id","twin","vertex"}]}
Json graph_to_json(const PlaneGraph& g);
PlaneGraph graph_from_json(const Json& j);

/// {"nodes":[{"id","side":"left|right|table","symmetric"|"table","slots"}],
///  "edges":[{"nodeA","slotA","nodeB","slotB"}],"dangling":[{"node","slot","side"}],
///  "embedding":[[slot,...],...]}
Json grid_to_json(const SignatureGrid& g);
SignatureGrid grid_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"edgeId": faceId, ...}; also accepts the object under an "assignment" key.
Json assignment_to_json(const FaceAssignment& sigma);
FaceAssignment assignment_from_json(const Json& j);

/// [{"edgeA","edgeB","posA","posB","bLeftNext"}]; bLeftNext defaults to true.
Json crossings_to_json(const std::vector<Crossing>& crossings);
std::vector<Crossing> crossings_from_json(const Json& j);

/// Parses a file; syntax errors become MalformedInput.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

}  // namespace holant
