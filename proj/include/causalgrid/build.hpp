#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "causalgrid/graph.hpp"
#include "causalgrid/ingest.hpp"

namespace causalgrid {

struct BuildDiagnostic {
    std::size_t record_index;  // 0-based position in the record list
    std::string message;
};

struct BuildResult {
    CausalGraph graph;
    std::vector<BuildDiagnostic> diagnostics;
};

/// Folds a record corpus into a graph. Records with unknown adverbs or
/// self-loops become diagnostics; the rest are ingested. Edges are fused in
/// parallel when OpenMP is available; per-edge folds keep corpus order, so
/// the result is identical to the serial reference bit for bit.
BuildResult build_graph(std::span<const RelationRecord> records,
                        std::shared_ptr<const Lexicon> lexicon, GraphOptions options = {});

/// Serial reference: one add_observation per record. Kept for testing and
/// benchmarking against the parallel kernel.
BuildResult build_graph_serial(std::span<const RelationRecord> records,
                               std::shared_ptr<const Lexicon> lexicon,
                               GraphOptions options = {});

}  // namespace causalgrid
