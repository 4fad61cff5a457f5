#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causalgrid/grid_distribution.hpp"
#include "causalgrid/lexicon.hpp"

namespace causalgrid {

struct ConceptNode {
    std::string id;     // normalized token
    std::string label;  // original display string
};

/// Directed cause -> effect link with its observation history and the fused
/// posterior over the latent certainty factor.
struct CausalEdge {
    std::string source;
    std::string target;
    std::vector<std::string> observations;  // normalized adverbs, arrival order
    GridDistribution posterior;
    bool contradiction = false;

    std::size_t observation_count() const noexcept { return observations.size(); }
};

struct EdgeReport {
    double map;
    double mean;
    double median;
    double entropy;
    std::string best_adverb;
    double best_adverb_divergence;
    std::size_t observation_count;
    bool contradiction;
};

struct PathQueryResult {
    std::vector<std::string> path;  // node ids, length >= 2
    GridDistribution composed;
    double map_value;
    std::string best_adverb;
    double entropy_value;
    bool contradiction;
};

struct GraphOptions {
    /// An edge or composed path whose entropy exceeds this fraction of the
    /// maximum log(R) counts as contradictory.
    double contradiction_threshold = 0.9;

    /// Minimum relative agreement for a fusion step. The agreement is the
    /// pre-normalization product mass scaled by R, so two uniform grids score
    /// 1 and disjoint evidence scores near 0. A step below the floor puts the
    /// edge into the contradiction state.
    double agreement_floor = 0.05;
};

/// Directed graph of concepts whose edges carry full posterior distributions
/// over certainty factors. Single-writer during construction; any number of
/// concurrent readers afterwards.
class CausalGraph {
public:
    using EdgeKey = std::pair<std::string, std::string>;

    explicit CausalGraph(std::shared_ptr<const Lexicon> lexicon, GraphOptions options = {});

    /// Records one (cause, adverb, effect) observation. Creates nodes and the
    /// edge as needed; otherwise fuses the adverb's prior into the edge
    /// posterior. Evidence that underflows or leaves the fused posterior
    /// near-flat puts the edge into the contradiction state: the posterior
    /// resets to uniform and a persistent flag is set.
    void add_observation(std::string_view cause, std::string_view effect,
                         std::string_view adverb);

    bool has_node(std::string_view node) const;
    bool has_edge(std::string_view cause, std::string_view effect) const;
    const CausalEdge& edge(std::string_view cause, std::string_view effect) const;
    const GridDistribution& edge_posterior(std::string_view cause,
                                           std::string_view effect) const;

    /// Point diagnostics of one edge as a consistent snapshot.
    EdgeReport edge_report(std::string_view cause, std::string_view effect) const;

    /// Left-fold of multiply_normalize over the per-hop posteriors, plus the
    /// derived point diagnostics. Throws BrokenPathError naming the first
    /// missing hop.
    PathQueryResult compose_path(std::span<const std::string> path) const;

    /// All simple directed paths from source to target with at most max_hops
    /// edges, in lexicographic node-id order.
    std::vector<std::vector<std::string>> find_paths(std::string_view source,
                                                     std::string_view target,
                                                     std::size_t max_hops) const;

    const std::map<std::string, ConceptNode>& nodes() const noexcept { return nodes_; }
    const std::map<EdgeKey, CausalEdge>& edges() const noexcept { return edges_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t contradiction_count() const;
    double mean_edge_entropy() const;

    const Lexicon& lexicon() const noexcept { return *lexicon_; }
    std::shared_ptr<const Lexicon> lexicon_ptr() const noexcept { return lexicon_; }
    std::size_t resolution() const noexcept { return lexicon_->resolution(); }
    const GraphOptions& options() const noexcept { return options_; }
    /// Entropy above which a distribution counts as contradictory:
    /// contradiction_threshold * log(R).
    double entropy_threshold_nats() const noexcept;

    /// Used by loaders and batch builders; inputs are assumed normalized.
    void insert_node(ConceptNode node);
    void insert_edge(CausalEdge edge);

    /// Trim, case-fold (ASCII) and collapse inner whitespace runs.
    static std::string normalize_id(std::string_view raw);

private:
    std::shared_ptr<const Lexicon> lexicon_;
    GraphOptions options_;
    std::map<std::string, ConceptNode> nodes_;
    std::map<EdgeKey, CausalEdge> edges_;
};

namespace detail {

/// One step of the edge posterior state machine, shared by the incremental
/// and batch builders so both produce bit-identical results.
///
/// An empty accumulator takes the prior directly. Otherwise the prior is
/// fused in and the step counts as contradictory when the relative agreement
/// falls below agreement_floor (disjoint or near-disjoint evidence) or when
/// the fused result stays above the entropy threshold; either way the
/// accumulator resets to uniform and the contradiction flag latches. A flat
/// unflagged accumulator (ignorance prior) is exempt from the entropy check.
void fuse_observation(std::vector<double>& accumulator, bool& contradiction,
                      const GridDistribution& prior, double entropy_threshold_nats,
                      double agreement_floor);

}  // namespace detail

}  // namespace causalgrid
