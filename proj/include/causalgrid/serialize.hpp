#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "causalgrid/graph.hpp"

namespace causalgrid {

/// Canonical graph serialization: sorted keys, posterior masses at full
/// double precision, lexicon config embedded so a saved graph is
/// self-contained. graph_from_json(graph_to_json(g)) reproduces g.
nlohmann::json graph_to_json(const CausalGraph& graph);
CausalGraph graph_from_json(const nlohmann::json& doc);

void save_graph(const CausalGraph& graph, const std::filesystem::path& path);
CausalGraph load_graph(const std::filesystem::path& path);

/// DOT text: one node statement per concept, one edge statement per causal
/// edge labeled "adverb (MAP=…, H=…)" with pen width growing with the
/// observation count (1 + log2(n), capped at 8). Contradictory edges are
/// dashed.
std::string graph_to_dot(const CausalGraph& graph);

/// Per-edge (x, p) tables, one blank-line-separated block per edge with a
/// '#' header naming the edge; columns are whitespace-separated so any
/// plotting tool can read them.
std::string graph_to_curves(const CausalGraph& graph);

}  // namespace causalgrid
