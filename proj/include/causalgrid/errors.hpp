#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace causalgrid {

/// Base class for every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Distribution parameters outside their valid domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Grid resolution below the minimum of 2 cells.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Two grids of different resolution where equal resolutions are required.
class ResolutionMismatchError : public Error {
public:
    ResolutionMismatchError(std::size_t lhs, std::size_t rhs);
};

/// Cell-wise product mass underflowed: the operands share no numerical support.
/// Carries the MAP of each operand for diagnostics.
class DisjointEvidenceError : public Error {
public:
    DisjointEvidenceError(double lhs_map, double rhs_map);
    double lhs_map() const noexcept { return lhs_map_; }
    double rhs_map() const noexcept { return rhs_map_; }

private:
    double lhs_map_;
    double rhs_map_;
};

/// Adverb not present in the lexicon; the message lists the nearest known names.
class UnknownAdverbError : public Error {
public:
    UnknownAdverbError(const std::string& adverb, const std::vector<std::string>& nearest);
    const std::string& adverb() const noexcept { return adverb_; }

private:
    std::string adverb_;
};

/// Two lexicon entries share the same (normalized) adverb name.
class DuplicateAdverbError : public Error {
public:
    explicit DuplicateAdverbError(const std::string& adverb);
};

/// Structured config (lexicon or synthetic corpus) failed to parse or validate.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Cause and effect normalize to the same concept.
class SelfLoopError : public Error {
public:
    explicit SelfLoopError(const std::string& node_id);
};

class UnknownNodeError : public Error {
public:
    explicit UnknownNodeError(const std::string& node_id);
};

class MissingEdgeError : public Error {
public:
    MissingEdgeError(const std::string& cause, const std::string& effect);
};

/// A queried path references a hop that is not an edge of the graph.
class BrokenPathError : public Error {
public:
    BrokenPathError(const std::string& from, const std::string& to);
};

/// A corpus yielded zero valid relation records.
class EmptyCorpusError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace causalgrid
