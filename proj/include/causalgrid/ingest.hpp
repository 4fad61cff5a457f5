#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalgrid/lexicon.hpp"

namespace causalgrid {

/// One ingested (cause, adverb, effect) observation. source_tag identifies
/// the originating document; empty means absent.
struct RelationRecord {
    std::string cause;
    std::string adverb;
    std::string effect;
    std::string source_tag;

    bool operator==(const RelationRecord&) const = default;
};

struct ParseDiagnostic {
    std::size_t line;  // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<RelationRecord> records;
    std::vector<ParseDiagnostic> diagnostics;
};

/// Parses the pipe-separated relation format, one record per line:
///   cause | adverb | effect [| source_tag]
/// '#' starts a comment line; blank lines are skipped; fields are trimmed;
/// both \n and \r\n line endings are accepted. Malformed lines become
/// diagnostics instead of aborting the parse. Throws EmptyCorpusError when
/// no line yields a valid record.
ParseResult parse_relations(std::istream& input);

/// Same contract for the sibling structured format: one JSON object per line
/// with fields {"cause", "adverb", "effect"} and optional "source_tag".
ParseResult parse_relations_jsonl(std::istream& input);

/// Dispatches on extension: .jsonl/.ndjson use the structured parser, all
/// other extensions the pipe format.
ParseResult parse_relations_file(const std::filesystem::path& path);

/// Writes records in the pipe format; parse(serialize(records)) is identity.
std::string serialize_relations(std::span<const RelationRecord> records);

enum class AdverbSimilarity {
    kSimilar,  // per edge, draw from one pool entry and its pool neighbors
    kMixed,    // draw uniformly from the whole pool
};

struct SyntheticConfig {
    std::vector<std::string> node_names;
    std::vector<std::pair<std::string, std::string>> allowed_edges;
    std::size_t relations_per_edge = 1;
    std::vector<std::string> adverb_pool;
    AdverbSimilarity adverb_similarity = AdverbSimilarity::kMixed;
    std::uint64_t seed = 0;
};

/// Schema: {"nodes": [...], "edges": [[cause, effect], ...],
///          "relations_per_edge": n, "adverb_pool": [...],
///          "adverb_similarity": "similar"|"mixed", "seed": n}
SyntheticConfig synthetic_config_from_json(const nlohmann::json& config);
SyntheticConfig load_synthetic_config(const std::filesystem::path& path);

/// Emits relations_per_edge records per allowed edge, deterministically for a
/// fixed seed. In similar mode each edge commits to one randomly chosen pool
/// entry for all of its records; mixed mode draws every record uniformly from
/// the whole pool.
std::vector<RelationRecord> generate_synthetic(const SyntheticConfig& config,
                                               const Lexicon& lexicon);

}  // namespace causalgrid
