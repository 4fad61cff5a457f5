#include "causalgrid/errors.hpp"

#include <sstream>

namespace causalgrid {

namespace {

std::string mismatch_message(std::size_t lhs, std::size_t rhs) {
    std::ostringstream os;
    os << "resolution mismatch: " << lhs << " vs " << rhs;
    return os.str();
}

std::string disjoint_message(double lhs_map, double rhs_map) {
    std::ostringstream os;
    os << "disjoint evidence: product mass underflowed (operand MAPs " << lhs_map << " and "
       << rhs_map << ")";
    return os.str();
}

std::string unknown_adverb_message(const std::string& adverb,
                                   const std::vector<std::string>& nearest) {
    std::ostringstream os;
    os << "unknown adverb '" << adverb << "'";
    if (!nearest.empty()) {
        os << " (closest known:";
        for (const auto& name : nearest) {
            os << " " << name;
        }
        os << ")";
    }
    return os.str();
}

}  // namespace

ResolutionMismatchError::ResolutionMismatchError(std::size_t lhs, std::size_t rhs)
    : Error(mismatch_message(lhs, rhs)) {}

DisjointEvidenceError::DisjointEvidenceError(double lhs_map, double rhs_map)
    : Error(disjoint_message(lhs_map, rhs_map)), lhs_map_(lhs_map), rhs_map_(rhs_map) {}

UnknownAdverbError::UnknownAdverbError(const std::string& adverb,
                                       const std::vector<std::string>& nearest)
    : Error(unknown_adverb_message(adverb, nearest)), adverb_(adverb) {}

DuplicateAdverbError::DuplicateAdverbError(const std::string& adverb)
    : Error("duplicate adverb '" + adverb + "'") {}

SelfLoopError::SelfLoopError(const std::string& node_id)
    : Error("self-loop: cause and effect both normalize to '" + node_id + "'") {}

UnknownNodeError::UnknownNodeError(const std::string& node_id)
    : Error("unknown node '" + node_id + "'") {}

MissingEdgeError::MissingEdgeError(const std::string& cause, const std::string& effect)
    : Error("no edge " + cause + " -> " + effect) {}

BrokenPathError::BrokenPathError(const std::string& from, const std::string& to)
    : Error("broken path: no edge " + from + " -> " + to) {}

}  // namespace causalgrid
