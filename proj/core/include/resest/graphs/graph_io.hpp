#pragma once

#include <string>

#include "resest/common/json_io.hpp"
#include "resest/graphs/digraph.hpp"

namespace resest::graphs {

/// {"nodes": N, "directed": bool, "edges": [[i, j], ...]}
///
/// Edges are written in lexicographic order; undirected graphs write each
/// link once as (low, high) and reading restores both orientations.
Json graph_to_json(const DiGraph& g);
DiGraph graph_from_json(const Json& doc);

void save_graph(const std::string& path, const DiGraph& g);
DiGraph load_graph(const std::string& path);

}  // namespace resest::graphs
