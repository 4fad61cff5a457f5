#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "causalgrid/errors.hpp"

namespace causalgrid {

/// Grid resolution used when callers do not pick one.
inline constexpr std::size_t kDefaultResolution = 1000;

/// A cell-wise product whose total mass falls below this is treated as
/// numerically disjoint evidence instead of being renormalized into noise.
inline constexpr double kDisjointMassFloor = 1e-300;

/// Floor applied to the second argument of kl_divergence before the log
/// ratio, so cells with zero mass do not make the divergence undefined.
inline constexpr double kKlEpsilonFloor = 1e-12;

struct Gaussian {
    double mean;    // in [0, 1]
    double stddev;  // > 0
};

struct Beta {
    double alpha;  // > 0
    double beta;   // > 0
};

enum class Orientation {
    kRisingTowardOne,    // density peaks at x = 1
    kFallingTowardZero,  // density peaks at x = 0
};

struct Exponential {
    double rate;  // > 0
    Orientation orientation;
};

struct Uniform {};

/// Parametric forms available for priors over certainty factors.
using DistributionFamily = std::variant<Gaussian, Beta, Exponential, Uniform>;

/// Normalized discrete distribution over a uniform grid on [0, 1].
///
/// Values are probability mass per cell (not density). Cell k covers
/// [k/R, (k+1)/R) and is represented by its center x_k = (k + 0.5) / R.
/// Invariants: resolution >= 2, every mass >= 0 and finite, masses sum to 1.
class GridDistribution {
public:
    /// Takes raw non-negative weights and normalizes them to sum 1.
    explicit GridDistribution(std::vector<double> masses);

    /// Wraps masses that already sum to 1 (within 1e-9) without renormalizing,
    /// keeping the caller's bits. Used by fusion folds and deserialization so
    /// every build path produces identical results.
    static GridDistribution from_normalized(std::vector<double> masses);

    std::size_t resolution() const noexcept { return masses_.size(); }
    const std::vector<double>& masses() const noexcept { return masses_; }
    double mass(std::size_t k) const { return masses_[k]; }

    /// Center of cell k: (k + 0.5) / R.
    double cell_center(std::size_t k) const noexcept {
        return (static_cast<double>(k) + 0.5) / static_cast<double>(resolution());
    }

    /// Index of the cell containing x; expects x in [0, 1] (x = 1 maps to
    /// the last cell).
    std::size_t cell_of(double x) const noexcept;

private:
    struct NormalizedTag {};
    GridDistribution(NormalizedTag, std::vector<double> masses) : masses_(std::move(masses)) {}

    std::vector<double> masses_;
};

/// Evaluates the family's density at the cell centers, truncates to [0, 1]
/// and renormalizes to total mass 1.
GridDistribution make_grid(const DistributionFamily& family, std::size_t resolution);

/// Cell-wise product of p and q, renormalized to sum 1. This is the posterior
/// update used to fuse two sources of evidence about the same quantity.
/// Throws DisjointEvidenceError when the product mass underflows.
GridDistribution multiply_normalize(const GridDistribution& p, const GridDistribution& q);

/// Center of the maximal cell; ties broken by lowest index.
double map_estimate(const GridDistribution& p);

/// Shannon entropy -sum p_k log p_k in nats, with 0 log 0 := 0.
double entropy(const GridDistribution& p);

/// sum_k p_k log(p_k / q_k). q is floored at kKlEpsilonFloor and renormalized
/// before the ratio, so the result is finite and non-negative for all inputs.
double kl_divergence(const GridDistribution& p, const GridDistribution& q);

/// sum_k x_k p_k.
double mean_estimate(const GridDistribution& p);

/// Smallest cell center whose cumulative mass reaches 0.5.
double median_estimate(const GridDistribution& p);

/// Random-walk Metropolis-Hastings chain targeting the piecewise-constant
/// density induced by p. Symmetric Gaussian proposals; proposals outside
/// [0, 1] are rejected (the chain stays put). The first 10% of the chain is
/// discarded as burn-in. Deterministic for a fixed seed.
std::vector<double> mh_sample(const GridDistribution& p, std::size_t n_samples,
                              double proposal_stddev, std::uint64_t seed);

namespace detail {

/// In-place cell-wise product of acc by q followed by renormalization.
/// Returns the pre-normalization product mass (the agreement between the two
/// operands); when that mass falls below kDisjointMassFloor the product is
/// left unnormalized and the caller must treat the evidence as disjoint.
double multiply_normalize_inplace(std::span<double> acc, std::span<const double> q) noexcept;

double entropy_span(std::span<const double> masses) noexcept;

std::size_t argmax_cell(std::span<const double> masses) noexcept;

}  // namespace detail

}  // namespace causalgrid
