// Benchmark: serial reference vs OpenMP-parallel graph build on synthetic
// corpora, verifying that both produce identical graphs.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "causalgrid/build.hpp"
#include "causalgrid/ingest.hpp"
#include "causalgrid/serialize.hpp"

namespace {

using namespace causalgrid;
using Clock = std::chrono::steady_clock;

std::vector<RelationRecord> make_corpus(std::size_t edges, std::size_t per_edge,
                                        std::uint64_t seed) {
    SyntheticConfig config;
    for (std::size_t i = 0; i < edges + 1; ++i) {
        config.node_names.push_back("n" + std::to_string(i));
    }
    for (std::size_t i = 0; i < edges; ++i) {
        config.allowed_edges.emplace_back(config.node_names[i], config.node_names[i + 1]);
    }
    config.relations_per_edge = per_edge;
    config.adverb_pool = Lexicon::defaults(2).names();
    config.adverb_similarity = AdverbSimilarity::kMixed;
    config.seed = seed;
    return generate_synthetic(config, Lexicon::defaults(2));
}

template <typename F>
double median_seconds(F&& run, std::size_t repeats) {
    std::vector<double> times;
    for (std::size_t i = 0; i < repeats; ++i) {
        const auto start = Clock::now();
        run();
        times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t edges = 200;
    std::size_t per_edge = 250;
    std::size_t resolution = kDefaultResolution;
    std::size_t repeats = 5;

    CLI::App app{"compare serial and parallel graph builds"};
    app.add_option("--edges", edges, "number of distinct edges");
    app.add_option("--per-edge", per_edge, "observations per edge");
    app.add_option("--resolution", resolution, "grid resolution");
    app.add_option("--repeats", repeats, "timed repetitions (median reported)");
    CLI11_PARSE(app, argc, argv);

    const auto records = make_corpus(edges, per_edge, 42);
    const auto lexicon = std::make_shared<const Lexicon>(Lexicon::defaults(resolution));

    std::printf("observations=%zu edges=%zu resolution=%zu\n", records.size(), edges, resolution);
#ifdef _OPENMP
    std::printf("threads=%d\n", omp_get_max_threads());
#else
    std::printf("threads=1 (built without OpenMP)\n");
#endif

    const double serial =
        median_seconds([&] { build_graph_serial(records, lexicon); }, repeats);
    const double parallel = median_seconds([&] { build_graph(records, lexicon); }, repeats);

    const auto a = build_graph_serial(records, lexicon);
    const auto b = build_graph(records, lexicon);
    const bool identical = graph_to_json(a.graph) == graph_to_json(b.graph);

    std::printf("serial:   %.4f s (median of %zu)\n", serial, repeats);
    std::printf("parallel: %.4f s (median of %zu)\n", parallel, repeats);
    std::printf("speedup:  %.2fx\n", serial / parallel);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
