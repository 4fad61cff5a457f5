#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "causalgrid/grid_distribution.hpp"

namespace causalgrid {

/// One hedge adverb together with its prior over certainty factors.
struct AdverbPrior {
    std::string name;  // normalized token, e.g. "hardly_ever"
    DistributionFamily family;
    GridDistribution grid;  // family materialized at the lexicon resolution
};

/// Immutable registry mapping hedge adverbs to priors. Lookup tokens are
/// case-folded and inner whitespace is mapped to underscores, so "Hardly Ever"
/// and "hardly_ever" name the same entry.
class Lexicon {
public:
    /// Builds a lexicon from (name, family) pairs, materializing each prior
    /// on a grid of the given resolution.
    Lexicon(const std::vector<std::pair<std::string, DistributionFamily>>& entries,
            std::size_t resolution);

    /// Parses the JSON config schema:
    ///   {"adverbs": [{"name": ..., "family": "gaussian|beta|exponential|uniform",
    ///                 "params": [...], "orientation": "rising"|"falling"}, ...]}
    /// params: gaussian [mean, stddev]; beta [alpha, beta]; exponential [rate];
    /// uniform none. orientation is required for exponential entries only.
    static Lexicon from_json(const nlohmann::json& config,
                             std::size_t resolution = kDefaultResolution);
    static Lexicon from_json_text(std::string_view text,
                                  std::size_t resolution = kDefaultResolution);
    static Lexicon load_file(const std::filesystem::path& path,
                             std::size_t resolution = kDefaultResolution);

    /// The lexicon shipped with the library (time adverbs from "never" up to
    /// "always"). Also available in-tree as data/default_lexicon.json.
    static Lexicon defaults(std::size_t resolution = kDefaultResolution);

    std::size_t resolution() const noexcept { return resolution_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool contains(std::string_view adverb) const;
    const AdverbPrior& entry(std::string_view adverb) const;

    /// Cached prior grid of the adverb. Throws UnknownAdverbError (listing the
    /// nearest known names) when the adverb is absent.
    const GridDistribution& prior_of(std::string_view adverb) const;

    struct Match {
        std::string adverb;
        double divergence;
    };

    /// Entry minimizing kl_divergence(prior, posterior); ties broken by
    /// lexicographic name. Set posterior_first to use the swapped argument
    /// order kl_divergence(posterior, prior) instead.
    Match best_adverb(const GridDistribution& posterior, bool posterior_first = false) const;

    /// Entry names in lexicographic order.
    std::vector<std::string> names() const;

    const std::map<std::string, AdverbPrior>& entries() const noexcept { return entries_; }

    /// Config round-trip: from_json(to_json()) reproduces this lexicon.
    nlohmann::json to_json() const;

    /// Trim, case-fold (ASCII) and map inner whitespace runs to underscores.
    static std::string normalize_token(std::string_view raw);

private:
    std::map<std::string, AdverbPrior> entries_;
    std::size_t resolution_;
};

}  // namespace causalgrid
