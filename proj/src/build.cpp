#include "causalgrid/build.hpp"

#include <cstddef>
#include <map>
#include <utility>

namespace causalgrid {

namespace {

struct EdgeGroup {
    std::string source;
    std::string target;
    std::vector<const GridDistribution*> priors;  // corpus order
    std::vector<std::string> adverbs;             // normalized, corpus order
};

struct GroupedCorpus {
    std::map<std::string, std::string> labels;  // node id -> first-seen label
    std::vector<EdgeGroup> groups;              // first-appearance order
    std::vector<BuildDiagnostic> diagnostics;
};

/// Shared validation/normalization pass. Emits the same diagnostics the
/// serial reference gets from add_observation, in record order.
GroupedCorpus group_records(std::span<const RelationRecord> records, const Lexicon& lexicon) {
    GroupedCorpus out;
    std::map<CausalGraph::EdgeKey, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RelationRecord& rec = records[i];
        const std::string cause_id = CausalGraph::normalize_id(rec.cause);
        const std::string effect_id = CausalGraph::normalize_id(rec.effect);
        if (cause_id.empty() || effect_id.empty()) {
            out.diagnostics.push_back({i, "cause and effect must be nonempty"});
            continue;
        }
        if (cause_id == effect_id) {
            out.diagnostics.push_back({i, SelfLoopError(cause_id).what()});
            continue;
        }
        const AdverbPrior* prior = nullptr;
        try {
            prior = &lexicon.entry(rec.adverb);
        } catch (const UnknownAdverbError& e) {
            out.diagnostics.push_back({i, e.what()});
            continue;
        }
        out.labels.try_emplace(cause_id, rec.cause);
        out.labels.try_emplace(effect_id, rec.effect);

        const auto [it, inserted] =
            index.try_emplace(CausalGraph::EdgeKey{cause_id, effect_id}, out.groups.size());
        if (inserted) {
            out.groups.push_back({cause_id, effect_id, {}, {}});
        }
        EdgeGroup& group = out.groups[it->second];
        group.priors.push_back(&prior->grid);
        group.adverbs.push_back(prior->name);
    }
    return out;
}

}  // namespace

BuildResult build_graph(std::span<const RelationRecord> records,
                        std::shared_ptr<const Lexicon> lexicon, GraphOptions options) {
    CausalGraph graph(std::move(lexicon), options);
    GroupedCorpus corpus = group_records(records, graph.lexicon());
    const double threshold = graph.entropy_threshold_nats();
    const double agreement_floor = graph.options().agreement_floor;

    struct Fold {
        std::vector<double> posterior;
        bool contradiction = false;
    };
    std::vector<Fold> folds(corpus.groups.size());

    // Edges are independent, so the folds parallelize cleanly; each fold
    // visits its observations in corpus order, which keeps the arithmetic
    // identical to the serial reference.
    const auto group_count = static_cast<std::ptrdiff_t>(corpus.groups.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t g = 0; g < group_count; ++g) {
        Fold& fold = folds[static_cast<std::size_t>(g)];
        for (const GridDistribution* prior : corpus.groups[static_cast<std::size_t>(g)].priors) {
            detail::fuse_observation(fold.posterior, fold.contradiction, *prior, threshold,
                                     agreement_floor);
        }
    }

    for (auto& [id, label] : corpus.labels) {
        graph.insert_node(ConceptNode{id, std::move(label)});
    }
    for (std::size_t g = 0; g < corpus.groups.size(); ++g) {
        EdgeGroup& group = corpus.groups[g];
        graph.insert_edge(CausalEdge{std::move(group.source), std::move(group.target),
                                     std::move(group.adverbs),
                                     GridDistribution::from_normalized(std::move(folds[g].posterior)),
                                     folds[g].contradiction});
    }
    return BuildResult{std::move(graph), std::move(corpus.diagnostics)};
}

BuildResult build_graph_serial(std::span<const RelationRecord> records,
                               std::shared_ptr<const Lexicon> lexicon, GraphOptions options) {
    BuildResult result{CausalGraph(std::move(lexicon), options), {}};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RelationRecord& rec = records[i];
        try {
            result.graph.add_observation(rec.cause, rec.effect, rec.adverb);
        } catch (const Error& e) {
            result.diagnostics.push_back({i, e.what()});
        }
    }
    return result;
}

}  // namespace causalgrid
