#pragma once

// Structured text records for graphs. A record looks like
//   {"edges":[[0,"i0"],[1,"i0"]],"external":[0,1],"internal_count":1,
//    "mode":"projective","sign":1}
// External vertices are written as their integer labels, internal vertices as
// "i<k>". Edges are sorted pairs, and the edge array is sorted, so dumping a
// parsed record reproduces the input byte for byte.

#include <string>
#include <string_view>

#include <json.hpp>

#include "pgc/graph.hpp"

namespace pgc {

nlohmann::json graph_to_json(const SignedCanonicalGraph& g);
/// Throws LoadError when the record is malformed or not in canonical form.
SignedCanonicalGraph graph_from_json(const nlohmann::json& record);

std::string dump_graph(const SignedCanonicalGraph& g);
SignedCanonicalGraph parse_graph(std::string_view text);

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

}  // namespace pgc
