#include "pgc/interchange.hpp"

#include "pgc/errors.hpp"

namespace pgc {

std::string to_string(Mode mode) { return mode == Mode::affine ? "affine" : "projective"; }

Mode parse_mode(std::string_view text) {
  if (text == "affine") return Mode::affine;
  if (text == "projective") return Mode::projective;
  throw ArgumentError("unknown mode '" + std::string(text) + "'");
}

namespace {

nlohmann::json vertex_to_json(const CanonicalGraph& g, VertexId v) {
  if (v < g.n()) return g.externals[static_cast<std::size_t>(v)];
  return "i" + std::to_string(v - g.n());
}

VertexId vertex_from_json(const nlohmann::json& j, const std::vector<Label>& externals, int m) {
  int n = static_cast<int>(externals.size());
  if (j.is_number_integer()) {
    Label label = j.get<Label>();
    auto it = std::lower_bound(externals.begin(), externals.end(), label);
    if (it == externals.end() || *it != label) {
      throw LoadError("edge endpoint " + std::to_string(label) + " is not an external label");
    }
    return static_cast<VertexId>(it - externals.begin());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.size() >= 2 && s[0] == 'i' &&
        s.find_first_not_of("0123456789", 1) == std::string::npos) {
      int k = std::stoi(s.substr(1));
      if (k < m) return n + k;
    }
    throw LoadError("bad internal vertex name '" + s + "'");
  }
  throw LoadError("edge endpoint must be an integer label or \"i<k>\"");
}

}  // namespace

nlohmann::json graph_to_json(const SignedCanonicalGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.graph.edges) {
    edges.push_back(nlohmann::json::array({vertex_to_json(g.graph, e.a), vertex_to_json(g.graph, e.b)}));
  }
  return nlohmann::json{{"external", g.graph.externals},
                        {"internal_count", g.graph.internal_count},
                        {"edges", std::move(edges)},
                        {"sign", g.sign},
                        {"mode", to_string(g.graph.mode)}};
}

SignedCanonicalGraph graph_from_json(const nlohmann::json& record) {
  try {
    auto externals = record.at("external").get<std::vector<Label>>();
    int m = record.at("internal_count").get<int>();
    Mode mode = parse_mode(record.at("mode").get<std::string>());
    int sign = record.at("sign").get<int>();
    if (sign < -1 || sign > 1) throw LoadError("sign must be -1, 0 or 1");
    std::vector<Edge> edges;
    for (const auto& pair : record.at("edges")) {
      if (!pair.is_array() || pair.size() != 2) throw LoadError("edge must be a 2-element array");
      VertexId a = vertex_from_json(pair[0], externals, m);
      VertexId b = vertex_from_json(pair[1], externals, m);
      if (a >= b) throw LoadError("edge endpoints must be sorted and distinct");
      edges.emplace_back(a, b);
    }
    if (!std::is_sorted(edges.begin(), edges.end())) throw LoadError("edge array must be sorted");
    OrientedGraph og = OrientedGraph::from_edges(externals, m, mode, edges);
    SignedCanonicalGraph canon = canonicalize(og);
    if (canon.graph.edges != edges) throw LoadError("graph record is not in canonical form");
    SignedCanonicalGraph out{std::move(canon.graph), sign};
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("graph record: ") + e.what());
  } catch (const StructuralError& e) {
    throw LoadError(std::string("graph record: ") + e.what());
  } catch (const ArgumentError& e) {
    throw LoadError(std::string("graph record: ") + e.what());
  }
}

std::string dump_graph(const SignedCanonicalGraph& g) { return graph_to_json(g).dump(); }

SignedCanonicalGraph parse_graph(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("graph record: ") + e.what());
  }
  return graph_from_json(j);
}

}  // namespace pgc
