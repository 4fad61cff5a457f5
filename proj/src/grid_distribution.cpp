#include "causalgrid/grid_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace causalgrid {

namespace detail {

double multiply_normalize_inplace(std::span<double> acc, std::span<const double> q) noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < acc.size(); ++k) {
        acc[k] *= q[k];
        sum += acc[k];
    }
    if (!(sum >= kDisjointMassFloor)) {
        return sum;
    }
    for (double& v : acc) {
        v /= sum;
    }
    return sum;
}

double entropy_span(std::span<const double> masses) noexcept {
    double h = 0.0;
    for (double p : masses) {
        if (p > 0.0) {
            h -= p * std::log(p);
        }
    }
    return h;
}

std::size_t argmax_cell(std::span<const double> masses) noexcept {
    std::size_t best = 0;
    for (std::size_t k = 1; k < masses.size(); ++k) {
        if (masses[k] > masses[best]) {
            best = k;
        }
    }
    return best;
}

}  // namespace detail

namespace {

void require_resolution(std::size_t resolution) {
    if (resolution < 2) {
        std::ostringstream os;
        os << "grid resolution must be at least 2, got " << resolution;
        throw ResolutionError(os.str());
    }
}

void require_same_resolution(const GridDistribution& p, const GridDistribution& q) {
    if (p.resolution() != q.resolution()) {
        throw ResolutionMismatchError(p.resolution(), q.resolution());
    }
}

void require_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
        std::ostringstream os;
        os << name << " must be positive and finite, got " << value;
        throw ParameterError(os.str());
    }
}

/// Log-density of the family at x, up to an additive constant.
double log_density(const DistributionFamily& family, double x) {
    return std::visit(
        [x](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Gaussian>) {
                const double z = (x - f.mean) / f.stddev;
                return -0.5 * z * z;
            } else if constexpr (std::is_same_v<F, Beta>) {
                return (f.alpha - 1.0) * std::log(x) + (f.beta - 1.0) * std::log1p(-x);
            } else if constexpr (std::is_same_v<F, Exponential>) {
                return f.orientation == Orientation::kRisingTowardOne ? -f.rate * (1.0 - x)
                                                                      : -f.rate * x;
            } else {
                return 0.0;
            }
        },
        family);
}

void validate_family(const DistributionFamily& family) {
    std::visit(
        [](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Gaussian>) {
                require_positive(f.stddev, "gaussian stddev");
                if (!(std::isfinite(f.mean) && f.mean >= 0.0 && f.mean <= 1.0)) {
                    std::ostringstream os;
                    os << "gaussian mean must lie in [0, 1], got " << f.mean;
                    throw ParameterError(os.str());
                }
            } else if constexpr (std::is_same_v<F, Beta>) {
                require_positive(f.alpha, "beta alpha");
                require_positive(f.beta, "beta beta");
            } else if constexpr (std::is_same_v<F, Exponential>) {
                require_positive(f.rate, "exponential rate");
            }
        },
        family);
}

}  // namespace

namespace {

double validated_sum(const std::vector<double>& masses) {
    require_resolution(masses.size());
    double sum = 0.0;
    for (double v : masses) {
        if (!(std::isfinite(v) && v >= 0.0)) {
            std::ostringstream os;
            os << "grid masses must be non-negative and finite, got " << v;
            throw ParameterError(os.str());
        }
        sum += v;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw ParameterError("grid masses must have positive finite total");
    }
    return sum;
}

}  // namespace

GridDistribution::GridDistribution(std::vector<double> masses) : masses_(std::move(masses)) {
    const double sum = validated_sum(masses_);
    for (double& v : masses_) {
        v /= sum;
    }
}

GridDistribution GridDistribution::from_normalized(std::vector<double> masses) {
    const double sum = validated_sum(masses);
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "masses are not normalized: total " << sum;
        throw ParameterError(os.str());
    }
    return GridDistribution(NormalizedTag{}, std::move(masses));
}

std::size_t GridDistribution::cell_of(double x) const noexcept {
    const auto r = static_cast<double>(resolution());
    auto k = static_cast<std::ptrdiff_t>(x * r);
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(resolution()) - 1);
    return static_cast<std::size_t>(k);
}

GridDistribution make_grid(const DistributionFamily& family, std::size_t resolution) {
    require_resolution(resolution);
    validate_family(family);

    std::vector<double> logs(resolution);
    const auto r = static_cast<double>(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        const double x = (static_cast<double>(k) + 0.5) / r;
        logs[k] = log_density(family, x);
    }
    // Shift by the max before exponentiating so spiky families stay finite.
    const double shift = *std::max_element(logs.begin(), logs.end());
    std::vector<double> masses(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        masses[k] = std::exp(logs[k] - shift);
    }
    return GridDistribution(std::move(masses));
}

GridDistribution multiply_normalize(const GridDistribution& p, const GridDistribution& q) {
    require_same_resolution(p, q);
    std::vector<double> acc = p.masses();
    if (detail::multiply_normalize_inplace(acc, q.masses()) < kDisjointMassFloor) {
        throw DisjointEvidenceError(map_estimate(p), map_estimate(q));
    }
    return GridDistribution::from_normalized(std::move(acc));
}

double map_estimate(const GridDistribution& p) {
    return p.cell_center(detail::argmax_cell(p.masses()));
}

double entropy(const GridDistribution& p) {
    return detail::entropy_span(p.masses());
}

double kl_divergence(const GridDistribution& p, const GridDistribution& q) {
    require_same_resolution(p, q);
    double floored_sum = 0.0;
    for (double v : q.masses()) {
        floored_sum += std::max(v, kKlEpsilonFloor);
    }
    double divergence = 0.0;
    for (std::size_t k = 0; k < p.resolution(); ++k) {
        const double pk = p.mass(k);
        if (pk > 0.0) {
            const double qk = std::max(q.mass(k), kKlEpsilonFloor) / floored_sum;
            divergence += pk * std::log(pk / qk);
        }
    }
    return divergence;
}

double mean_estimate(const GridDistribution& p) {
    double mean = 0.0;
    for (std::size_t k = 0; k < p.resolution(); ++k) {
        mean += p.cell_center(k) * p.mass(k);
    }
    return mean;
}

double median_estimate(const GridDistribution& p) {
    double cumulative = 0.0;
    for (std::size_t k = 0; k < p.resolution(); ++k) {
        cumulative += p.mass(k);
        if (cumulative >= 0.5) {
            return p.cell_center(k);
        }
    }
    return p.cell_center(p.resolution() - 1);
}

std::vector<double> mh_sample(const GridDistribution& p, std::size_t n_samples,
                              double proposal_stddev, std::uint64_t seed) {
    if (n_samples < 1) {
        throw ParameterError("mh_sample needs at least one sample");
    }
    require_positive(proposal_stddev, "proposal stddev");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, proposal_stddev);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Start at the MAP so the chain begins in positive-density territory.
    double x = map_estimate(p);
    double fx = p.mass(p.cell_of(x));

    std::vector<double> chain(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double proposal = x + step(rng);
        if (proposal >= 0.0 && proposal <= 1.0) {
            const double fp = p.mass(p.cell_of(proposal));
            if (unit(rng) * fx < fp) {
                x = proposal;
                fx = fp;
            }
        }
        chain[i] = x;
    }

    const std::size_t burn_in = n_samples / 10;
    chain.erase(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(burn_in));
    return chain;
}

}  // namespace causalgrid
