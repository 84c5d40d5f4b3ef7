#include "resest/graphs/graph_io.hpp"

#include "resest/common/error.hpp"

namespace resest::graphs {

Json graph_to_json(const DiGraph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) {
    if (!g.directed() && i > j) continue;
    edges.push_back({i, j});
  }
  return Json{{"nodes", g.node_count()}, {"directed", g.directed()}, {"edges", std::move(edges)}};
}

DiGraph graph_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_number_integer())
    throw InvalidInput("graph JSON needs an integer \"nodes\" field");
  const int n = doc["nodes"].get<int>();
  if (n < 0) throw InvalidInput("graph node count must be non-negative");
  const bool directed = doc.value("directed", true);
  DiGraph g(n, directed);
  if (doc.contains("edges")) {
    const auto& edges = doc["edges"];
    if (!edges.is_array()) throw InvalidInput("\"edges\" must be an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw InvalidInput("each edge must be a pair of integers");
      const int i = e[0].get<int>();
      const int j = e[1].get<int>();
      if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidInput("edge endpoint out of range");
      if (i == j) throw InvalidInput("self-loops are not allowed in graph files");
      g.add_edge(i, j);
    }
  }
  return g;
}

void save_graph(const std::string& path, const DiGraph& g) {
  write_text_file(path, dump_json(graph_to_json(g)));
}

DiGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

}  // namespace resest::graphs
