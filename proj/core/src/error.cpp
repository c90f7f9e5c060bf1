#include "ringlab/error.hpp"

namespace ringlab {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::kNotATransactionGraph: return "NotATransactionGraph";
    case ErrorKind::kEmptyRing: return "EmptyRing";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kMatchingNotMaximum: return "MatchingNotMaximum";
    case ErrorKind::kRingCrossesChunks: return "RingCrossesChunks";
    case ErrorKind::kInvalidPartition: return "InvalidPartition";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kInvalidBeta: return "InvalidBeta";
    case ErrorKind::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::kNoFeasibleK: return "NoFeasibleK";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kHypothesisViolated: return "HypothesisViolated";
    case ErrorKind::kInvalidDistribution: return "InvalidDistribution";
    case ErrorKind::kParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace ringlab
