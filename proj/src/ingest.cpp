#include "causalgrid/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace causalgrid {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto bar = line.find('|', start);
        if (bar == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, bar - start)));
        start = bar + 1;
    }
}

void finish(ParseResult& result) {
    if (result.records.empty()) {
        std::ostringstream os;
        os << "corpus contains no valid relation records";
        if (!result.diagnostics.empty()) {
            os << " (" << result.diagnostics.size() << " malformed lines)";
        }
        throw EmptyCorpusError(os.str());
    }
}

}  // namespace

ParseResult parse_relations(std::istream& input) {
    if (!input) {
        throw IoError("cannot read relation stream");
    }
    ParseResult result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        auto fields = split_fields(content);
        if (fields.size() < 3 || fields.size() > 4) {
            std::ostringstream os;
            os << "expected 'cause | adverb | effect [| source]', got " << fields.size()
               << " fields";
            result.diagnostics.push_back({line_number, os.str()});
            continue;
        }
        if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
            result.diagnostics.push_back({line_number, "empty cause, adverb or effect field"});
            continue;
        }
        result.records.push_back({std::move(fields[0]), std::move(fields[1]),
                                  std::move(fields[2]),
                                  fields.size() == 4 ? std::move(fields[3]) : std::string{}});
    }
    if (input.bad()) {
        throw IoError("I/O failure while reading relation stream");
    }
    finish(result);
    return result;
}

ParseResult parse_relations_jsonl(std::istream& input) {
    if (!input) {
        throw IoError("cannot read relation stream");
    }
    ParseResult result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        nlohmann::json record = nlohmann::json::parse(content, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            result.diagnostics.push_back({line_number, "not a JSON object"});
            continue;
        }
        const auto field = [&record](const char* name) -> std::string {
            const auto it = record.find(name);
            return it != record.end() && it->is_string() ? trim(it->get<std::string>())
                                                         : std::string{};
        };
        RelationRecord rec{field("cause"), field("adverb"), field("effect"),
                           field("source_tag")};
        if (rec.cause.empty() || rec.adverb.empty() || rec.effect.empty()) {
            result.diagnostics.push_back(
                {line_number, "missing or empty cause/adverb/effect field"});
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    if (input.bad()) {
        throw IoError("I/O failure while reading relation stream");
    }
    finish(result);
    return result;
}

ParseResult parse_relations_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open corpus file " + path.string());
    }
    const auto ext = path.extension().string();
    return ext == ".jsonl" || ext == ".ndjson" ? parse_relations_jsonl(in) : parse_relations(in);
}

std::string serialize_relations(std::span<const RelationRecord> records) {
    std::ostringstream os;
    for (const auto& rec : records) {
        os << rec.cause << " | " << rec.adverb << " | " << rec.effect;
        if (!rec.source_tag.empty()) {
            os << " | " << rec.source_tag;
        }
        os << "\n";
    }
    return os.str();
}

SyntheticConfig synthetic_config_from_json(const nlohmann::json& config) {
    if (!config.is_object()) {
        throw ConfigError("synthetic config must be a JSON object");
    }
    const auto require = [&config](const char* name) -> const nlohmann::json& {
        const auto it = config.find(name);
        if (it == config.end()) {
            throw ConfigError(std::string("synthetic config misses field '") + name + "'");
        }
        return *it;
    };

    SyntheticConfig out;
    for (const auto& node : require("nodes")) {
        if (!node.is_string()) {
            throw ConfigError("'nodes' must be an array of strings");
        }
        out.node_names.push_back(node.get<std::string>());
    }
    for (const auto& edge : require("edges")) {
        if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() ||
            !edge[1].is_string()) {
            throw ConfigError("'edges' must be an array of [cause, effect] pairs");
        }
        out.allowed_edges.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
    const auto& per_edge = require("relations_per_edge");
    if (!per_edge.is_number_unsigned() || per_edge.get<std::size_t>() == 0) {
        throw ConfigError("'relations_per_edge' must be a positive integer");
    }
    out.relations_per_edge = per_edge.get<std::size_t>();
    for (const auto& adverb : require("adverb_pool")) {
        if (!adverb.is_string()) {
            throw ConfigError("'adverb_pool' must be an array of strings");
        }
        out.adverb_pool.push_back(adverb.get<std::string>());
    }
    const std::string similarity = require("adverb_similarity").get<std::string>();
    if (similarity == "similar") {
        out.adverb_similarity = AdverbSimilarity::kSimilar;
    } else if (similarity == "mixed") {
        out.adverb_similarity = AdverbSimilarity::kMixed;
    } else {
        throw ConfigError("'adverb_similarity' must be \"similar\" or \"mixed\"");
    }
    if (!require("seed").is_number()) {
        throw ConfigError("'seed' must be an integer");
    }
    out.seed = require("seed").get<std::uint64_t>();
    return out;
}

SyntheticConfig load_synthetic_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open synthetic config " + path.string());
    }
    nlohmann::json config = nlohmann::json::parse(in, nullptr, false);
    if (config.is_discarded()) {
        throw ConfigError(path.string() + ": not valid JSON");
    }
    return synthetic_config_from_json(config);
}

std::vector<RelationRecord> generate_synthetic(const SyntheticConfig& config,
                                               const Lexicon& lexicon) {
    if (config.adverb_pool.empty()) {
        throw ConfigError("adverb pool must be nonempty");
    }
    for (const auto& adverb : config.adverb_pool) {
        lexicon.prior_of(adverb);  // throws UnknownAdverbError on a miss
    }
    const std::set<std::string> known(config.node_names.begin(), config.node_names.end());
    for (const auto& [cause, effect] : config.allowed_edges) {
        if (!known.contains(cause) || !known.contains(effect)) {
            throw ConfigError("edge (" + cause + ", " + effect + ") uses an unlisted node");
        }
        if (cause == effect) {
            throw ConfigError("edge (" + cause + ", " + effect + ") is a self-pair");
        }
    }

    std::mt19937_64 rng(config.seed);
    const std::size_t pool_size = config.adverb_pool.size();
    std::vector<RelationRecord> records;
    records.reserve(config.allowed_edges.size() * config.relations_per_edge);
    for (const auto& [cause, effect] : config.allowed_edges) {
        std::size_t low = 0;
        std::size_t high = pool_size - 1;
        if (config.adverb_similarity == AdverbSimilarity::kSimilar) {
            // each edge commits to one pool entry, so its draws agree
            std::uniform_int_distribution<std::size_t> center_index(0, pool_size - 1);
            low = high = center_index(rng);
        }
        std::uniform_int_distribution<std::size_t> pick(low, high);
        for (std::size_t i = 0; i < config.relations_per_edge; ++i) {
            records.push_back({cause, config.adverb_pool[pick(rng)], effect, {}});
        }
    }
    return records;
}

}  // namespace causalgrid
