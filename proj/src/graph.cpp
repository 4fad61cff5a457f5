#include "causalgrid/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace causalgrid {

namespace detail {

void fuse_observation(std::vector<double>& accumulator, bool& contradiction,
                      const GridDistribution& prior, double entropy_threshold_nats,
                      double agreement_floor) {
    if (accumulator.empty()) {
        accumulator = prior.masses();
        return;
    }
    // A flat accumulator that is not a contradiction reset is an ignorance
    // prior; fusing onto it is equivalent to a first observation and is
    // exempt from the entropy check. A reset edge is not exempt: while its
    // evidence keeps fusing to near-flat posteriors it stays pinned at
    // uniform.
    const auto [min_it, max_it] = std::minmax_element(accumulator.begin(), accumulator.end());
    const bool exempt = *min_it == *max_it && !contradiction;

    const double mass = multiply_normalize_inplace(accumulator, prior.masses());
    const double agreement = mass * static_cast<double>(accumulator.size());
    const bool fused = mass >= kDisjointMassFloor && agreement >= agreement_floor;
    if (fused && (exempt || entropy_span(accumulator) <= entropy_threshold_nats)) {
        return;
    }
    std::fill(accumulator.begin(), accumulator.end(),
              1.0 / static_cast<double>(accumulator.size()));
    contradiction = true;
}

}  // namespace detail

CausalGraph::CausalGraph(std::shared_ptr<const Lexicon> lexicon, GraphOptions options)
    : lexicon_(std::move(lexicon)), options_(options) {
    if (!lexicon_) {
        throw ParameterError("graph needs a lexicon");
    }
    if (!(options_.contradiction_threshold > 0.0 && options_.contradiction_threshold <= 1.0)) {
        throw ParameterError("contradiction threshold must lie in (0, 1]");
    }
    if (!(options_.agreement_floor >= 0.0)) {
        throw ParameterError("agreement floor must be non-negative");
    }
}

double CausalGraph::entropy_threshold_nats() const noexcept {
    return options_.contradiction_threshold * std::log(static_cast<double>(resolution()));
}

void CausalGraph::add_observation(std::string_view cause, std::string_view effect,
                                  std::string_view adverb) {
    const std::string cause_id = normalize_id(cause);
    const std::string effect_id = normalize_id(effect);
    if (cause_id.empty() || effect_id.empty()) {
        throw ParameterError("cause and effect must be nonempty");
    }
    if (cause_id == effect_id) {
        throw SelfLoopError(cause_id);
    }
    const AdverbPrior& prior = lexicon_->entry(adverb);

    nodes_.try_emplace(cause_id, ConceptNode{cause_id, std::string(cause)});
    nodes_.try_emplace(effect_id, ConceptNode{effect_id, std::string(effect)});

    const EdgeKey key{cause_id, effect_id};
    auto it = edges_.find(key);
    if (it == edges_.end()) {
        edges_.emplace(key, CausalEdge{cause_id, effect_id, {prior.name}, prior.grid, false});
        return;
    }
    CausalEdge& e = it->second;
    std::vector<double> accumulator = e.posterior.masses();
    detail::fuse_observation(accumulator, e.contradiction, prior.grid,
                             entropy_threshold_nats(), options_.agreement_floor);
    e.posterior = GridDistribution::from_normalized(std::move(accumulator));
    e.observations.push_back(prior.name);
}

bool CausalGraph::has_node(std::string_view node) const {
    return nodes_.contains(normalize_id(node));
}

bool CausalGraph::has_edge(std::string_view cause, std::string_view effect) const {
    return edges_.contains(EdgeKey{normalize_id(cause), normalize_id(effect)});
}

const CausalEdge& CausalGraph::edge(std::string_view cause, std::string_view effect) const {
    const EdgeKey key{normalize_id(cause), normalize_id(effect)};
    const auto it = edges_.find(key);
    if (it == edges_.end()) {
        throw MissingEdgeError(key.first, key.second);
    }
    return it->second;
}

const GridDistribution& CausalGraph::edge_posterior(std::string_view cause,
                                                    std::string_view effect) const {
    return edge(cause, effect).posterior;
}

EdgeReport CausalGraph::edge_report(std::string_view cause, std::string_view effect) const {
    const CausalEdge& e = edge(cause, effect);
    const auto match = lexicon_->best_adverb(e.posterior);
    return EdgeReport{
        map_estimate(e.posterior),  mean_estimate(e.posterior), median_estimate(e.posterior),
        entropy(e.posterior),       match.adverb,               match.divergence,
        e.observation_count(),      e.contradiction,
    };
}

PathQueryResult CausalGraph::compose_path(std::span<const std::string> path) const {
    if (path.size() < 2) {
        throw ParameterError("path must contain at least two nodes");
    }
    std::vector<std::string> ids;
    ids.reserve(path.size());
    for (const auto& node : path) {
        ids.push_back(normalize_id(node));
    }

    std::vector<const std::vector<double>*> hops;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        const auto it = edges_.find(EdgeKey{ids[i], ids[i + 1]});
        if (it == edges_.end()) {
            throw BrokenPathError(ids[i], ids[i + 1]);
        }
        hops.push_back(&it->second.posterior.masses());
    }

    std::vector<double> accumulator = *hops.front();
    for (std::size_t i = 1; i < hops.size(); ++i) {
        if (detail::multiply_normalize_inplace(accumulator, *hops[i]) < kDisjointMassFloor) {
            // numerically disjoint hops compose to ignorance
            accumulator.assign(resolution(), 1.0 / static_cast<double>(resolution()));
        }
    }

    GridDistribution composed = GridDistribution::from_normalized(std::move(accumulator));
    const double h = entropy(composed);
    const double map_value = map_estimate(composed);
    const auto match = lexicon_->best_adverb(composed);
    const bool contradiction = h > entropy_threshold_nats();
    return PathQueryResult{std::move(ids), std::move(composed), map_value,
                           match.adverb,   h,                   contradiction};
}

std::vector<std::vector<std::string>> CausalGraph::find_paths(std::string_view source,
                                                              std::string_view target,
                                                              std::size_t max_hops) const {
    const std::string source_id = normalize_id(source);
    const std::string target_id = normalize_id(target);
    if (!nodes_.contains(source_id)) {
        throw UnknownNodeError(source_id);
    }
    if (!nodes_.contains(target_id)) {
        throw UnknownNodeError(target_id);
    }

    // edges_ is ordered by (source, target), so successors come out sorted
    // and the DFS emits paths in lexicographic order.
    std::map<std::string, std::vector<std::string>> successors;
    for (const auto& [key, e] : edges_) {
        successors[key.first].push_back(key.second);
    }

    std::vector<std::vector<std::string>> paths;
    std::vector<std::string> current{source_id};
    std::set<std::string> visited{source_id};

    const auto dfs = [&](const auto& self, const std::string& node) -> void {
        if (current.size() > max_hops + 1) {
            return;
        }
        if (node == target_id && current.size() >= 2) {
            paths.push_back(current);
            return;
        }
        const auto it = successors.find(node);
        if (it == successors.end() || current.size() > max_hops) {
            return;
        }
        for (const auto& next : it->second) {
            if (visited.contains(next)) {
                continue;
            }
            visited.insert(next);
            current.push_back(next);
            self(self, next);
            current.pop_back();
            visited.erase(next);
        }
    };
    dfs(dfs, source_id);
    return paths;
}

std::size_t CausalGraph::contradiction_count() const {
    std::size_t count = 0;
    for (const auto& [key, e] : edges_) {
        count += e.contradiction ? 1 : 0;
    }
    return count;
}

double CausalGraph::mean_edge_entropy() const {
    if (edges_.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& [key, e] : edges_) {
        total += entropy(e.posterior);
    }
    return total / static_cast<double>(edges_.size());
}

void CausalGraph::insert_node(ConceptNode node) {
    if (node.id.empty()) {
        throw ParameterError("node id must be nonempty");
    }
    nodes_.try_emplace(node.id, std::move(node));
}

void CausalGraph::insert_edge(CausalEdge edge) {
    if (!nodes_.contains(edge.source) || !nodes_.contains(edge.target)) {
        throw UnknownNodeError(nodes_.contains(edge.source) ? edge.target : edge.source);
    }
    if (edge.source == edge.target) {
        throw SelfLoopError(edge.source);
    }
    if (edge.observations.empty()) {
        throw ParameterError("edge needs at least one observation");
    }
    if (edge.posterior.resolution() != resolution()) {
        throw ResolutionMismatchError(resolution(), edge.posterior.resolution());
    }
    EdgeKey key{edge.source, edge.target};
    edges_.insert_or_assign(std::move(key), std::move(edge));
}

std::string CausalGraph::normalize_id(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (const char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace causalgrid
