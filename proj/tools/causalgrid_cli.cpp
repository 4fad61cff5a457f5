// Command-line front end: build graphs from relation corpora, answer path
// queries, export DOT/JSON/curve data and generate synthetic corpora.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "causalgrid/build.hpp"
#include "causalgrid/errors.hpp"
#include "causalgrid/graph.hpp"
#include "causalgrid/ingest.hpp"
#include "causalgrid/lexicon.hpp"
#include "causalgrid/serialize.hpp"

namespace {

using namespace causalgrid;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;       // parse/config errors, unknown node/format
constexpr int kExitEmptyCorpus = 2;
constexpr int kExitNoPath = 3;

std::string format(const char* fmt, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), fmt, value);
    return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("I/O failure while writing " + path.string());
    }
}

struct BuildArgs {
    std::string corpus;
    std::string lexicon;
    std::size_t resolution = kDefaultResolution;
    std::string out;
};

int cmd_build(const BuildArgs& args) {
    ParseResult parsed;
    try {
        parsed = parse_relations_file(args.corpus);
    } catch (const EmptyCorpusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmptyCorpus;
    }
    for (const auto& diag : parsed.diagnostics) {
        std::cerr << "warning: " << args.corpus << ":" << diag.line << ": " << diag.message
                  << "\n";
    }

    auto lexicon = std::make_shared<const Lexicon>(
        args.lexicon.empty() ? Lexicon::defaults(args.resolution)
                             : Lexicon::load_file(args.lexicon, args.resolution));
    BuildResult result = build_graph(parsed.records, std::move(lexicon));
    for (const auto& diag : result.diagnostics) {
        std::cerr << "warning: record " << diag.record_index + 1 << ": " << diag.message << "\n";
    }
    save_graph(result.graph, args.out);

    std::cout << "nodes: " << result.graph.node_count() << "\n"
              << "edges: " << result.graph.edge_count() << "\n"
              << "contradictions: " << result.graph.contradiction_count() << "\n"
              << "mean edge entropy: " << format("%.4f", result.graph.mean_edge_entropy())
              << "\n";
    return kExitOk;
}

struct QueryArgs {
    std::string graph;
    std::string from;
    std::string to;
    std::size_t max_hops = 6;
    bool json = false;
};

int cmd_query(const QueryArgs& args) {
    const CausalGraph graph = load_graph(args.graph);
    std::vector<std::vector<std::string>> paths;
    try {
        paths = graph.find_paths(args.from, args.to, args.max_hops);
    } catch (const UnknownNodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    if (paths.empty()) {
        if (args.json) {
            std::cout << "[]\n";
        }
        std::cerr << "no directed path from '" << CausalGraph::normalize_id(args.from)
                  << "' to '" << CausalGraph::normalize_id(args.to) << "' within "
                  << args.max_hops << " hops\n";
        return kExitNoPath;
    }

    nlohmann::json out = nlohmann::json::array();
    for (const auto& path : paths) {
        const PathQueryResult result = graph.compose_path(path);
        if (args.json) {
            out.push_back({{"path", result.path},
                           {"map", result.map_value},
                           {"best_adverb", result.best_adverb},
                           {"entropy", result.entropy_value},
                           {"contradiction", result.contradiction},
                           {"posterior", result.composed.masses()}});
            continue;
        }
        std::cout << "path:";
        for (std::size_t i = 0; i < result.path.size(); ++i) {
            std::cout << (i == 0 ? " " : " -> ") << result.path[i];
        }
        std::cout << "\n"
                  << "  composed MAP:  " << format("%.4f", result.map_value) << "\n"
                  << "  best adverb:   " << result.best_adverb << "\n"
                  << "  entropy:       " << format("%.4f", result.entropy_value) << " nats\n"
                  << "  contradiction: " << (result.contradiction ? "yes" : "no") << "\n";
    }
    if (args.json) {
        std::cout << out.dump(2) << "\n";
    }
    return kExitOk;
}

struct ExportArgs {
    std::string graph;
    std::string fmt;
    std::string out;
};

int cmd_export(const ExportArgs& args) {
    if (args.fmt != "dot" && args.fmt != "json" && args.fmt != "curves") {
        std::cerr << "error: unknown format '" << args.fmt << "' (expected dot, json or curves)\n";
        return kExitError;
    }
    const CausalGraph graph = load_graph(args.graph);
    if (args.fmt == "dot") {
        write_file(args.out, graph_to_dot(graph));
    } else if (args.fmt == "curves") {
        write_file(args.out, graph_to_curves(graph));
    } else {
        write_file(args.out, graph_to_json(graph).dump(2) + "\n");
    }
    return kExitOk;
}

struct SynthArgs {
    std::string config;
    std::string out;
};

int cmd_synth(const SynthArgs& args) {
    const SyntheticConfig config = load_synthetic_config(args.config);
    const Lexicon lexicon = Lexicon::defaults();
    const auto records = generate_synthetic(config, lexicon);
    write_file(args.out, serialize_relations(records));
    std::cout << "wrote " << records.size() << " relations to " << args.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal graphs with distribution-weighted edges"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "build a graph from a relation corpus");
    build->add_option("--corpus", build_args.corpus, "relation corpus file")->required();
    build->add_option("--lexicon", build_args.lexicon, "adverb lexicon JSON (default: built-in)");
    build->add_option("--resolution", build_args.resolution, "grid resolution (default 1000)");
    build->add_option("--out", build_args.out, "output graph JSON")->required();

    QueryArgs query_args;
    auto* query = app.add_subcommand("query", "compose paths between two concepts");
    query->add_option("--graph", query_args.graph, "graph JSON file")->required();
    query->add_option("--from", query_args.from, "source concept")->required();
    query->add_option("--to", query_args.to, "target concept")->required();
    query->add_option("--max-hops", query_args.max_hops, "maximum path length in edges (default 6)");
    query->add_flag("--json", query_args.json, "machine-readable output");

    ExportArgs export_args;
    auto* exp = app.add_subcommand("export", "export a graph as dot, json or curves");
    exp->add_option("--graph", export_args.graph, "graph JSON file")->required();
    exp->add_option("--format", export_args.fmt, "dot, json or curves")->required();
    exp->add_option("--out", export_args.out, "output file")->required();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic relation corpus");
    synth->add_option("--config", synth_args.config, "synthetic config JSON")->required();
    synth->add_option("--out", synth_args.out, "output corpus file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (build->parsed()) {
            return cmd_build(build_args);
        }
        if (query->parsed()) {
            return cmd_query(query_args);
        }
        if (exp->parsed()) {
            return cmd_export(export_args);
        }
        return cmd_synth(synth_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
