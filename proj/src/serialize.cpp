#include "causalgrid/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace causalgrid {

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

std::string format(const char* fmt, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), fmt, value);
    return buffer;
}

}  // namespace

nlohmann::json graph_to_json(const CausalGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& [id, node] : graph.nodes()) {
        nodes.push_back({{"id", node.id}, {"label", node.label}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [key, e] : graph.edges()) {
        edges.push_back({{"source", e.source},
                         {"target", e.target},
                         {"observations", e.observations},
                         {"posterior", e.posterior.masses()},
                         {"contradiction", e.contradiction}});
    }
    return nlohmann::json{
        {"resolution", graph.resolution()},
        {"contradiction_threshold", graph.options().contradiction_threshold},
        {"agreement_floor", graph.options().agreement_floor},
        {"lexicon", graph.lexicon().to_json()},
        {"nodes", std::move(nodes)},
        {"edges", std::move(edges)},
    };
}

CausalGraph graph_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("graph document must be a JSON object");
    }
    for (const char* field : {"resolution", "lexicon", "nodes", "edges"}) {
        if (!doc.contains(field)) {
            throw ConfigError(std::string("graph document misses field '") + field + "'");
        }
    }
    const auto resolution = doc["resolution"].get<std::size_t>();
    GraphOptions options;
    if (doc.contains("contradiction_threshold")) {
        options.contradiction_threshold = doc["contradiction_threshold"].get<double>();
    }
    if (doc.contains("agreement_floor")) {
        options.agreement_floor = doc["agreement_floor"].get<double>();
    }
    auto lexicon = std::make_shared<const Lexicon>(Lexicon::from_json(doc["lexicon"], resolution));
    CausalGraph graph(std::move(lexicon), options);

    for (const auto& node : doc["nodes"]) {
        graph.insert_node(ConceptNode{node.at("id").get<std::string>(),
                                      node.at("label").get<std::string>()});
    }
    for (const auto& e : doc["edges"]) {
        GridDistribution posterior =
            GridDistribution::from_normalized(e.at("posterior").get<std::vector<double>>());
        graph.insert_edge(CausalEdge{e.at("source").get<std::string>(),
                                     e.at("target").get<std::string>(),
                                     e.at("observations").get<std::vector<std::string>>(),
                                     std::move(posterior),
                                     e.at("contradiction").get<bool>()});
    }
    return graph;
}

void save_graph(const CausalGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write graph file " + path.string());
    }
    out << graph_to_json(graph).dump(2) << "\n";
    if (!out) {
        throw IoError("I/O failure while writing " + path.string());
    }
}

CausalGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open graph file " + path.string());
    }
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
        throw ConfigError(path.string() + ": not valid JSON");
    }
    return graph_from_json(doc);
}

std::string graph_to_dot(const CausalGraph& graph) {
    std::ostringstream os;
    os << "digraph causal_graph {\n";
    os << "  rankdir=LR;\n";
    for (const auto& [id, node] : graph.nodes()) {
        os << "  \"" << dot_escape(node.id) << "\" [label=\"" << dot_escape(node.label)
           << "\"];\n";
    }
    for (const auto& [key, e] : graph.edges()) {
        const EdgeReport report = graph.edge_report(e.source, e.target);
        const double width =
            std::min(8.0, 1.0 + std::log2(static_cast<double>(e.observation_count())));
        os << "  \"" << dot_escape(e.source) << "\" -> \"" << dot_escape(e.target)
           << "\" [label=\"" << dot_escape(report.best_adverb)
           << " (MAP=" << format("%.3f", report.map) << ", H=" << format("%.3f", report.entropy)
           << ")\", penwidth=" << format("%.2f", width);
        if (e.contradiction) {
            os << ", style=dashed";
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string graph_to_curves(const CausalGraph& graph) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, e] : graph.edges()) {
        if (!first) {
            os << "\n";
        }
        first = false;
        os << "# " << e.source << " -> " << e.target
           << (e.contradiction ? "  [contradiction]" : "") << "\n";
        for (std::size_t k = 0; k < e.posterior.resolution(); ++k) {
            os << format("%.17g", e.posterior.cell_center(k)) << " "
               << format("%.17g", e.posterior.mass(k)) << "\n";
        }
    }
    return os.str();
}

}  // namespace causalgrid
