#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "causalgrid/build.hpp"
#include "causalgrid/serialize.hpp"

using namespace causalgrid;

namespace {

std::vector<RelationRecord> synthetic_corpus(AdverbSimilarity mode, std::uint64_t seed,
                                             std::size_t edges, std::size_t per_edge,
                                             const Lexicon& lexicon) {
    SyntheticConfig config;
    for (std::size_t i = 0; i <= edges; ++i) {
        config.node_names.push_back("n" + std::to_string(i));
    }
    for (std::size_t i = 0; i < edges; ++i) {
        config.allowed_edges.emplace_back(config.node_names[i], config.node_names[i + 1]);
    }
    config.relations_per_edge = per_edge;
    config.adverb_pool = lexicon.names();
    config.adverb_similarity = mode;
    config.seed = seed;
    return generate_synthetic(config, lexicon);
}

void check_identical(const BuildResult& a, const BuildResult& b) {
    REQUIRE(a.diagnostics.size() == b.diagnostics.size());
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
        CHECK(a.diagnostics[i].record_index == b.diagnostics[i].record_index);
        CHECK(a.diagnostics[i].message == b.diagnostics[i].message);
    }
    // bit-exact graph equality, posterior arrays included
    CHECK(graph_to_json(a.graph) == graph_to_json(b.graph));
}

}  // namespace

TEST_CASE("parallel and serial builds produce identical graphs") {
    const auto lexicon = std::make_shared<const Lexicon>(Lexicon::defaults(400));
    for (const auto mode : {AdverbSimilarity::kSimilar, AdverbSimilarity::kMixed}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto records = synthetic_corpus(mode, seed, 12, 20, *lexicon);
            check_identical(build_graph_serial(records, lexicon), build_graph(records, lexicon));
        }
    }
}

TEST_CASE("both builders report the same diagnostics for dirty corpora") {
    const auto lexicon = std::make_shared<const Lexicon>(Lexicon::defaults(200));
    std::vector<RelationRecord> records{
        {"a", "often", "b", ""},
        {"a", "allegedly", "b", ""},   // unknown adverb
        {"Stress", "always", "stress", ""},  // self-loop after normalization
        {"a", "never", "b", ""},
        {"", "often", "b", ""},  // empty cause
        {"b", "sometimes", "c", ""},
    };
    const auto serial = build_graph_serial(records, lexicon);
    const auto parallel = build_graph(records, lexicon);
    REQUIRE(serial.diagnostics.size() == 3);
    CHECK(serial.diagnostics[0].record_index == 1);
    CHECK(serial.diagnostics[1].record_index == 2);
    CHECK(serial.diagnostics[2].record_index == 4);
    check_identical(serial, parallel);
    CHECK(parallel.graph.edge_count() == 2);
    CHECK(parallel.graph.edge("a", "b").observation_count() == 2);
}

TEST_CASE("batch builds match incremental construction") {
    const auto lexicon = std::make_shared<const Lexicon>(Lexicon::defaults(300));
    const auto records = synthetic_corpus(AdverbSimilarity::kMixed, 9, 6, 15, *lexicon);

    CausalGraph incremental(lexicon);
    for (const auto& rec : records) {
        incremental.add_observation(rec.cause, rec.effect, rec.adverb);
    }
    const auto batch = build_graph(records, lexicon);
    CHECK(graph_to_json(incremental) == graph_to_json(batch.graph));
}

TEST_CASE("contradiction states survive the parallel path") {
    const auto lexicon = std::make_shared<const Lexicon>(Lexicon::defaults(250));
    std::vector<RelationRecord> records;
    for (int i = 0; i < 40; ++i) {
        records.push_back({"x", i % 2 == 0 ? "always" : "never", "y", ""});
        records.push_back({"p", "often", "q", ""});
    }
    const auto serial = build_graph_serial(records, lexicon);
    const auto parallel = build_graph(records, lexicon);
    CHECK(parallel.graph.edge("x", "y").contradiction);
    CHECK_FALSE(parallel.graph.edge("p", "q").contradiction);
    check_identical(serial, parallel);
}
