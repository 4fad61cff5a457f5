#include "causalgrid/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace causalgrid {

namespace {

/// Levenshtein distance, used to suggest names for unknown adverbs.
std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        row[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t substitution = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
            diagonal = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, substitution});
        }
    }
    return row[b.size()];
}

DistributionFamily family_from_json(const nlohmann::json& entry, const std::string& context) {
    const auto fail = [&context](const std::string& message) -> void {
        throw ConfigError(context + ": " + message);
    };

    if (!entry.contains("family") || !entry["family"].is_string()) {
        fail("missing string field 'family'");
    }
    const std::string family = entry["family"].get<std::string>();

    std::vector<double> params;
    if (entry.contains("params")) {
        if (!entry["params"].is_array()) {
            fail("'params' must be an array of numbers");
        }
        for (const auto& v : entry["params"]) {
            if (!v.is_number()) {
                fail("'params' must be an array of numbers");
            }
            params.push_back(v.get<double>());
        }
    }
    const bool has_orientation = entry.contains("orientation");
    if (has_orientation && family != "exponential") {
        fail("'orientation' is only valid for exponential entries");
    }

    if (family == "gaussian") {
        if (params.size() != 2) {
            fail("gaussian needs params [mean, stddev]");
        }
        return Gaussian{params[0], params[1]};
    }
    if (family == "beta") {
        if (params.size() != 2) {
            fail("beta needs params [alpha, beta]");
        }
        return Beta{params[0], params[1]};
    }
    if (family == "exponential") {
        if (params.size() != 1) {
            fail("exponential needs params [rate]");
        }
        if (!has_orientation || !entry["orientation"].is_string()) {
            fail("exponential needs an 'orientation' of \"rising\" or \"falling\"");
        }
        const std::string orientation = entry["orientation"].get<std::string>();
        if (orientation == "rising") {
            return Exponential{params[0], Orientation::kRisingTowardOne};
        }
        if (orientation == "falling") {
            return Exponential{params[0], Orientation::kFallingTowardZero};
        }
        fail("orientation must be \"rising\" or \"falling\", got \"" + orientation + "\"");
    }
    if (family == "uniform") {
        if (!params.empty()) {
            fail("uniform takes no params");
        }
        return Uniform{};
    }
    fail("unknown family \"" + family + "\"");
    return Uniform{};  // unreachable
}

nlohmann::json family_to_json(const DistributionFamily& family) {
    nlohmann::json out;
    std::visit(
        [&out](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Gaussian>) {
                out["family"] = "gaussian";
                out["params"] = {f.mean, f.stddev};
            } else if constexpr (std::is_same_v<F, Beta>) {
                out["family"] = "beta";
                out["params"] = {f.alpha, f.beta};
            } else if constexpr (std::is_same_v<F, Exponential>) {
                out["family"] = "exponential";
                out["params"] = {f.rate};
                out["orientation"] =
                    f.orientation == Orientation::kRisingTowardOne ? "rising" : "falling";
            } else {
                out["family"] = "uniform";
                out["params"] = nlohmann::json::array();
            }
        },
        family);
    return out;
}

}  // namespace

Lexicon::Lexicon(const std::vector<std::pair<std::string, DistributionFamily>>& entries,
                 std::size_t resolution)
    : resolution_(resolution) {
    if (entries.empty()) {
        throw ConfigError("lexicon must contain at least one adverb");
    }
    for (const auto& [raw_name, family] : entries) {
        const std::string name = normalize_token(raw_name);
        if (name.empty()) {
            throw ConfigError("adverb name must be nonempty");
        }
        if (entries_.contains(name)) {
            throw DuplicateAdverbError(name);
        }
        try {
            entries_.emplace(name, AdverbPrior{name, family, make_grid(family, resolution)});
        } catch (const ParameterError& e) {
            throw ParameterError("adverb '" + name + "': " + e.what());
        }
    }
}

Lexicon Lexicon::from_json(const nlohmann::json& config, std::size_t resolution) {
    if (!config.is_object() || !config.contains("adverbs") || !config["adverbs"].is_array()) {
        throw ConfigError("lexicon config must be an object with an \"adverbs\" array");
    }
    std::vector<std::pair<std::string, DistributionFamily>> entries;
    std::size_t index = 0;
    for (const auto& entry : config["adverbs"]) {
        std::ostringstream context;
        context << "adverbs[" << index << "]";
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
            throw ConfigError(context.str() + ": entry must be an object with a string 'name'");
        }
        const std::string name = entry["name"].get<std::string>();
        context << " (\"" << name << "\")";
        entries.emplace_back(name, family_from_json(entry, context.str()));
        ++index;
    }
    return Lexicon(entries, resolution);
}

Lexicon Lexicon::from_json_text(std::string_view text, std::size_t resolution) {
    nlohmann::json config;
    try {
        config = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("lexicon config is not valid JSON: ") + e.what());
    }
    return from_json(config, resolution);
}

Lexicon Lexicon::load_file(const std::filesystem::path& path, std::size_t resolution) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open lexicon file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return from_json_text(text.str(), resolution);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Lexicon Lexicon::defaults(std::size_t resolution) {
    // Strength-ordered hedge adverbs. "never"/"always" are spiky exponentials
    // rather than point masses so that future contrary evidence still has
    // support to act on.
    const std::vector<std::pair<std::string, DistributionFamily>> entries = {
        {"never", Exponential{25.0, Orientation::kFallingTowardZero}},
        {"hardly_ever", Gaussian{0.15, 0.05}},
        {"rarely", Beta{2.0, 8.0}},
        {"occasionally", Gaussian{0.35, 0.1}},
        {"sometimes", Gaussian{0.5, 0.15}},
        {"often", Beta{5.0, 2.0}},
        {"frequently", Beta{6.0, 2.0}},
        {"almost_always", Beta{8.0, 2.0}},
        {"always", Exponential{25.0, Orientation::kRisingTowardOne}},
    };
    return Lexicon(entries, resolution);
}

bool Lexicon::contains(std::string_view adverb) const {
    return entries_.contains(normalize_token(adverb));
}

const AdverbPrior& Lexicon::entry(std::string_view adverb) const {
    const std::string name = normalize_token(adverb);
    const auto it = entries_.find(name);
    if (it == entries_.end()) {
        std::vector<std::pair<std::size_t, std::string>> ranked;
        for (const auto& [known, prior] : entries_) {
            ranked.emplace_back(edit_distance(name, known), known);
        }
        std::sort(ranked.begin(), ranked.end());
        std::vector<std::string> nearest;
        for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
            nearest.push_back(ranked[i].second);
        }
        throw UnknownAdverbError(name, nearest);
    }
    return it->second;
}

const GridDistribution& Lexicon::prior_of(std::string_view adverb) const {
    return entry(adverb).grid;
}

Lexicon::Match Lexicon::best_adverb(const GridDistribution& posterior,
                                    bool posterior_first) const {
    if (posterior.resolution() != resolution_) {
        throw ResolutionMismatchError(resolution_, posterior.resolution());
    }
    const AdverbPrior* best = nullptr;
    double best_divergence = 0.0;
    for (const auto& [name, prior] : entries_) {
        const double d = posterior_first ? kl_divergence(posterior, prior.grid)
                                         : kl_divergence(prior.grid, posterior);
        if (best == nullptr || d < best_divergence) {
            best = &prior;
            best_divergence = d;
        }
    }
    return Match{best->name, best_divergence};
}

std::vector<std::string> Lexicon::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [name, prior] : entries_) {
        out.push_back(name);
    }
    return out;
}

nlohmann::json Lexicon::to_json() const {
    nlohmann::json adverbs = nlohmann::json::array();
    for (const auto& [name, prior] : entries_) {
        nlohmann::json entry = family_to_json(prior.family);
        entry["name"] = name;
        adverbs.push_back(std::move(entry));
    }
    return nlohmann::json{{"adverbs", std::move(adverbs)}};
}

std::string Lexicon::normalize_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_separator = false;
    for (const char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_separator = !out.empty();
            continue;
        }
        if (pending_separator) {
            out.push_back('_');
            pending_separator = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace causalgrid
